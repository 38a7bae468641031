//! The quotient `P × Z₂^N / ∼` as an explicit finite cell complex.
//!
//! Given generator vectors `μ(F_i) ∈ Z₂^N`, a point `(x, a)` is identified with
//! `(x, b)` when `a + b` lies in the span of `μ(F)` over the facets `F ∋ x`.
//! Over the relative interior of a face `G_T` (`T` its facet set) the quotient
//! is a disjoint union of open cells, one per coset of `span{μ(F_j) : j ∈ T}`.
//! The closure of the cell `(T, a)` is the image of `G_T × {a}`, which meets
//! each cell `(T ∪ {j}, a)` of its boundary exactly once, so every incidence
//! is `1 mod 2`.
//!
//! With `N = n` and `μ = λ` this is the small cover `M_{P,λ}`. Appending the
//! bits of a class `c` as an extra column gives `μ = (λ | c)`, and the
//! quotient by `Z₂^{n+1}` is the double cover `M_w` for `w = Σ cᵢ vᵢ`:
//! forgetting the last coordinate is a two-sheeted covering whose sheets swap
//! exactly when a path crosses `p⁻¹(F_i)` with `cᵢ = 1`.

mod morse_cells;
mod section;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::charmap::{CharacteristicMap, CohomologyClass};
use crate::gf2::{BitMatrix, BitVec, EchelonBasis};
use crate::polytope::{is_subset, FacetId, FaceLattice, SimplePolytope};

pub use morse_cells::{filtration_e1_table, frontier_check, E1Entry, E1Table, FrontierViolation};
pub use section::{
    facet_section_class, section_to_class, DualEdge, EdgeLabel, FacetSection, SectionClass,
    SectionError, SlicedDualGraph,
};

/// Default upper bound on the number of cells of a built complex.
pub const DEFAULT_CELL_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("generator matrix is {rows}x{cols}, expected {m} rows and at least {n} columns")]
    Shape {
        rows: usize,
        cols: usize,
        m: usize,
        n: usize,
    },
    #[error("generators at vertices {0:?} are linearly dependent")]
    Dependent(Vec<usize>),
    #[error("complex would have {cells} cells, above the cap of {cap}")]
    TooLarge { cells: u128, cap: usize },
    #[error("class has length {found}, expected {expected}")]
    ClassLength { expected: usize, found: usize },
}

/// One open cell: a face of `P` times a coset of its stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Id in the polytope's face lattice.
    pub face: usize,
    pub facets: Vec<FacetId>,
    /// Canonical coset representative (zero at the stabilizer's pivot coordinates).
    pub coset: BitVec,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct QuotientComplex {
    n: usize,
    generators: BitMatrix,
    cells: Vec<Cell>,
    boundary: Vec<Vec<usize>>,
    by_dim: Vec<Vec<usize>>,
    /// Position of each cell inside `by_dim[cell.dim]`.
    position: Vec<usize>,
}

impl QuotientComplex {
    pub fn build(p: &SimplePolytope, generators: &BitMatrix) -> Result<Self, ComplexError> {
        Self::build_with_cap(p, generators, DEFAULT_CELL_CAP)
    }

    pub fn build_with_cap(
        p: &SimplePolytope,
        generators: &BitMatrix,
        cap: usize,
    ) -> Result<Self, ComplexError> {
        let n = p.dim();
        let m = p.facet_count();
        let big_n = generators.ncols();
        if generators.nrows() != m || big_n < n {
            return Err(ComplexError::Shape {
                rows: generators.nrows(),
                cols: big_n,
                m,
                n,
            });
        }
        let dependent: Vec<usize> = (0..p.vertex_count())
            .filter(|&v| generators.select_rows(p.vertex(v)).rank() < n)
            .collect();
        if !dependent.is_empty() {
            return Err(ComplexError::Dependent(dependent));
        }

        let lattice = p.face_lattice();
        let stabilizers: Vec<EchelonBasis> = lattice
            .faces()
            .iter()
            .map(|t| EchelonBasis::spanned_by(big_n, t.iter().map(|&j| generators.row(j))))
            .collect();
        let total: u128 = stabilizers
            .iter()
            .map(|s| 1u128 << (big_n - s.rank()).min(127))
            .sum();
        if total > cap as u128 {
            return Err(ComplexError::TooLarge { cells: total, cap });
        }

        let mut cells = Vec::with_capacity(total as usize);
        let mut lookup: HashMap<(usize, BitVec), usize> = HashMap::new();
        for (face, stab) in stabilizers.iter().enumerate() {
            let facets = lattice.face(face).to_vec();
            let mut cosets = stab.coset_representatives();
            cosets.sort();
            for coset in cosets {
                lookup.insert((face, coset.clone()), cells.len());
                cells.push(Cell {
                    face,
                    dim: n - facets.len(),
                    facets: facets.clone(),
                    coset,
                });
            }
        }

        let boundary: Vec<Vec<usize>> = cells
            .iter()
            .map(|cell| {
                lattice
                    .coface_facets(&cell.facets, m)
                    .into_iter()
                    .map(|j| {
                        let bigger = crate::polytope::insert_sorted(&cell.facets, j);
                        let id = lattice.id(&bigger).expect("coface is a face");
                        let coset = stabilizers[id].reduce(&cell.coset);
                        lookup[&(id, coset)]
                    })
                    .collect()
            })
            .collect();

        let mut by_dim = vec![Vec::new(); n + 1];
        let mut position = vec![0; cells.len()];
        for (i, cell) in cells.iter().enumerate() {
            position[i] = by_dim[cell.dim].len();
            by_dim[cell.dim].push(i);
        }
        Ok(Self {
            n,
            generators: generators.clone(),
            cells,
            boundary,
            by_dim,
            position,
        })
    }

    /// The small cover `M_{P,λ}`.
    pub fn small_cover(p: &SimplePolytope, map: &CharacteristicMap) -> Result<Self, ComplexError> {
        Self::build(p, map.matrix())
    }

    /// The double cover `M_w` for `w = Σ cᵢ vᵢ`, built from `μ = (λ | c)`.
    pub fn double_cover(
        p: &SimplePolytope,
        map: &CharacteristicMap,
        c: &CohomologyClass,
    ) -> Result<Self, ComplexError> {
        Self::double_cover_with_cap(p, map, c, DEFAULT_CELL_CAP)
    }

    pub fn double_cover_with_cap(
        p: &SimplePolytope,
        map: &CharacteristicMap,
        c: &CohomologyClass,
        cap: usize,
    ) -> Result<Self, ComplexError> {
        if c.len() != map.facet_count() {
            return Err(ComplexError::ClassLength {
                expected: map.facet_count(),
                found: c.len(),
            });
        }
        Self::build_with_cap(p, &map.matrix().with_column(c.bits()), cap)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &BitMatrix {
        &self.generators
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Indices of the boundary cells of `cell`, each with incidence 1.
    pub fn boundary_of(&self, cell: usize) -> &[usize] {
        &self.boundary[cell]
    }

    /// Number of cells in each dimension `0..=n`.
    pub fn cell_counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// `∂_k: C_k → C_{k−1}` as a matrix with one column per `k`-cell. Zero
    /// sized for `k = 0` or `k > n`.
    pub fn boundary_matrix(&self, k: usize) -> BitMatrix {
        if k == 0 || k > self.n {
            let rows = if k == 0 { 0 } else { self.by_dim.get(k - 1).map_or(0, Vec::len) };
            let cols = self.by_dim.get(k).map_or(0, Vec::len);
            return BitMatrix::zeros(rows, cols);
        }
        let mut d = BitMatrix::zeros(self.by_dim[k - 1].len(), self.by_dim[k].len());
        for (col, &cell) in self.by_dim[k].iter().enumerate() {
            for &face in &self.boundary[cell] {
                let row = self.position[face];
                d.set(row, col, !d.get(row, col));
            }
        }
        d
    }

    /// Mod-2 Betti numbers `b_k = #C_k − rank ∂_k − rank ∂_{k+1}`.
    pub fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.n + 1)
            .map(|k| {
                if k == 0 || k > self.n {
                    0
                } else {
                    self.boundary_matrix(k).rank()
                }
            })
            .collect();
        (0..=self.n)
            .map(|k| self.by_dim[k].len() - ranks[k] - ranks[k + 1])
            .collect()
    }

    /// `∂_{k−1} ∘ ∂_k = 0` for every `k`.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..=self.n).all(|k| self.boundary_matrix(k - 1).mul(&self.boundary_matrix(k)).is_zero())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(k, cells)| if k % 2 == 0 { cells.len() as i64 } else { -(cells.len() as i64) })
            .sum()
    }

    /// Connected components of the whole complex.
    pub fn components(&self) -> usize {
        self.components_where(|_| true)
    }

    /// Components of the subcomplex of cells lying over faces of `G_T`, i.e.
    /// of `p⁻¹(G_T)`.
    pub fn subcomplex_components(&self, facets: &[FacetId]) -> usize {
        self.components_where(|cell| is_subset(facets, &cell.facets))
    }

    fn components_where(&self, keep: impl Fn(&Cell) -> bool) -> usize {
        let mut parent: Vec<usize> = (0..self.cells.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut kept = self.cells.iter().filter(|c| keep(c)).count();
        for (i, cell) in self.cells.iter().enumerate() {
            if !keep(cell) {
                continue;
            }
            for &j in &self.boundary[i] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                    kept -= 1;
                }
            }
        }
        kept
    }

    /// Stable JSON description: cells in complex order with face, coset bits,
    /// dimension and boundary indices.
    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            schema: 1,
            dim: self.n,
            generators: self.generators.rows().iter().map(BitVec::to_bits).collect(),
            cell_counts: self.cell_counts(),
            cells: self
                .cells
                .iter()
                .enumerate()
                .map(|(i, c)| CellDump {
                    index: i,
                    dim: c.dim,
                    face: c.facets.clone(),
                    coset: c.coset.to_bits(),
                    boundary: self.boundary[i].clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexDump {
    pub schema: u32,
    pub dim: usize,
    pub generators: Vec<Vec<u8>>,
    pub cell_counts: Vec<usize>,
    pub cells: Vec<CellDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellDump {
    pub index: usize,
    pub dim: usize,
    pub face: Vec<FacetId>,
    pub coset: Vec<u8>,
    pub boundary: Vec<usize>,
}

/// `2^{N − rank{μ(F_j) : F_j ∩ G_T ≠ ∅}}`, the number of components of `p⁻¹(G_T)`.
pub fn preimage_components(lattice: &FaceLattice, generators: &BitMatrix, facets: &[FacetId]) -> usize {
    let meeting = lattice.facets_meeting(facets, generators.nrows());
    let rank = generators.select_rows(&meeting).rank();
    1 << (generators.ncols() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cube, pentagon, permutohedron, segment};

    fn torus() -> (SimplePolytope, CharacteristicMap) {
        let p = cube(2).unwrap();
        let map = CharacteristicMap::from_coloring(&p, &[1, 1, 2, 2]).unwrap();
        (p, map)
    }

    #[test]
    fn segment_circle() {
        let p = segment();
        let mu = BitMatrix::from_nested(&[vec![1], vec![1]]);
        let x = QuotientComplex::build(&p, &mu).unwrap();
        assert_eq!(x.cell_counts(), vec![2, 2]);
        assert_eq!(x.betti(), vec![1, 1]);
        assert_eq!(x.euler_characteristic(), 0);
    }

    #[test]
    fn torus_cells_and_betti() {
        let (p, map) = torus();
        let x = QuotientComplex::small_cover(&p, &map).unwrap();
        assert_eq!(x.cell_counts(), vec![4, 8, 4]);
        assert_eq!(x.euler_characteristic(), 0);
        assert_eq!(x.betti(), vec![1, 2, 1]);
        assert!(x.boundary_squares_to_zero());
        assert_eq!(x.components(), 1);
    }

    #[test]
    fn pentagon_betti() {
        let p = pentagon();
        let map = CharacteristicMap::new(
            &p,
            BitMatrix::from_nested(&[vec![1, 0], vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 1]]),
        )
        .unwrap();
        assert_eq!(QuotientComplex::small_cover(&p, &map).unwrap().betti(), vec![1, 3, 1]);
    }

    #[test]
    fn permutohedron_double_cover_cell_count() {
        let p = permutohedron(3).unwrap();
        let colors: Vec<usize> = p.facet_names().iter().map(|s| s.len()).collect();
        let map = CharacteristicMap::from_coloring(&p, &colors).unwrap();
        let c = CohomologyClass::indicator(14, [0]);
        let x = QuotientComplex::double_cover(&p, &map, &c).unwrap();
        assert_eq!(x.cell_counts(), vec![48, 144, 112, 16]);
        assert_eq!(x.len(), 320);
    }

    #[test]
    fn double_covers_of_torus() {
        let (p, map) = torus();
        let x = QuotientComplex::double_cover(&p, &map, &CohomologyClass::indicator(4, [0])).unwrap();
        assert_eq!(x.betti(), vec![1, 2, 1]);
        assert_eq!(x.components(), 1);
        let x = QuotientComplex::double_cover(&p, &map, &CohomologyClass::indicator(4, [0, 1])).unwrap();
        assert_eq!(x.betti(), vec![2, 4, 2]);
        assert_eq!(x.components(), 2);
    }

    #[test]
    fn preimage_component_formula() {
        let (p, map) = torus();
        let lattice = p.face_lattice();
        let bottom = p.facet_index("B").unwrap();
        assert_eq!(preimage_components(&lattice, map.matrix(), &[bottom]), 1);
        assert_eq!(preimage_components(&lattice, map.matrix(), &[]), 1);
        let c3 = cube(3).unwrap();
        let map3 = CharacteristicMap::from_coloring(&c3, &[1, 1, 2, 2, 3, 3]).unwrap();
        let d = c3.facet_index("D").unwrap();
        assert_eq!(preimage_components(&c3.face_lattice(), map3.matrix(), &[d]), 1);
        // A vertex has 2^{N-n} preimages.
        assert_eq!(preimage_components(&c3.face_lattice(), map3.matrix(), c3.vertex(0)), 1);
    }

    #[test]
    fn rejects_dependent_generators_and_caps() {
        let p = cube(2).unwrap();
        let mu = BitMatrix::from_nested(&[vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(QuotientComplex::build(&p, &mu).unwrap_err(), ComplexError::Dependent(vec![0, 1]));
        let (p, map) = torus();
        assert!(matches!(
            QuotientComplex::build_with_cap(&p, map.matrix(), 10),
            Err(ComplexError::TooLarge { cells: 16, cap: 10 })
        ));
        assert!(matches!(
            QuotientComplex::build(&p, &BitMatrix::zeros(4, 1)),
            Err(ComplexError::Shape { .. })
        ));
    }

    #[test]
    fn dump_is_ordered() {
        let (p, map) = torus();
        let dump = QuotientComplex::small_cover(&p, &map).unwrap().dump();
        assert_eq!(dump.schema, 1);
        assert_eq!(dump.cells.len(), 16);
        assert_eq!(dump.cells[0].face, Vec::<usize>::new());
        assert_eq!(dump.cells[0].coset, vec![0, 0]);
        assert_eq!(dump.cells[3].coset, vec![1, 1]);
        assert_eq!(dump.cells[15].dim, 0);
    }
}
