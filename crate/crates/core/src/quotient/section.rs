//! Section classes: the class dual to a component of `p⁻¹(S)`.
//!
//! For a generic hyperplane section `S`, the preimage `p⁻¹(S)` has one
//! component per coset of `V = span{λ(F) : F crosses S}`. When `V` has rank
//! `n − 1` there are two, told apart by a nonzero functional `ψ` vanishing on
//! `V`; the component `ψ = 0` is `Y`.
//!
//! The class `w = D[Y]` is recovered from loops. Cutting `M` along `p⁻¹(S)`
//! leaves the top cells `P_± × {a}`; joining them across facets and across `S`
//! gives a graph whose cycles generate `H₁(M; Z₂)`. Along a cycle `γ`,
//! `⟨vᵢ, γ⟩` is the number of crossings of `p⁻¹(F_i)` and `⟨w, γ⟩` the number
//! of crossings of `Y`, both mod 2, so `c` solves `Σ cᵢ⟨vᵢ, γ⟩ = ⟨w, γ⟩` for
//! every fundamental cycle.

use std::collections::VecDeque;

use thiserror::Error;

use crate::charmap::{CharacteristicMap, CohomologyClass};
use crate::gf2::{BitMatrix, BitVec};
use crate::polytope::{h_from_f, is_subset, FacetId, PolytopeError, SectionData, Side, SimplePolytope};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SectionError {
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("connected preimage (crossed facets span rank {rank} = n): not a section class")]
    ConnectedPreimage { rank: usize },
    #[error("preimage of the section has {components} components; only the two-component case is supported")]
    TooManyComponents { components: usize },
    #[error("preimage of facet {facet} is disconnected (neighbors span rank {rank} < {n})")]
    DisconnectedFacet { facet: FacetId, rank: usize, n: usize },
    #[error("facet {0} does not exist")]
    FacetOutOfRange(FacetId),
    #[error("facet class of facet {0} is trivial")]
    TrivialFacetClass(FacetId),
    #[error("dimension {0} is too large for the dual graph")]
    TooLarge(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeLabel {
    /// Crossing `p⁻¹(F_i)` on one side of the section.
    Facet(FacetId),
    /// Crossing `S × {a}`; the flag is `ψ(a)`.
    Section { psi: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

impl DualEdge {
    fn other(&self, node: usize) -> usize {
        if self.from == node {
            self.to
        } else {
            self.from
        }
    }
}

/// Nodes are `(side, a)` with `a ∈ Z₂ⁿ`, numbered `side · 2ⁿ + a`.
#[derive(Clone, Debug)]
pub struct SlicedDualGraph {
    pub n: usize,
    pub edges: Vec<DualEdge>,
    adjacency: Vec<Vec<usize>>,
}

impl SlicedDualGraph {
    pub fn build(
        p: &SimplePolytope,
        map: &CharacteristicMap,
        section: &SectionData,
        psi: &BitVec,
    ) -> Result<Self, SectionError> {
        let n = p.dim();
        if n > 20 {
            return Err(SectionError::TooLarge(n));
        }
        let group = 1usize << n;
        let as_int = |v: &BitVec| v.iter_ones().fold(0usize, |acc, i| acc | (1 << i));
        let mut edges = Vec::new();
        for (s, side) in [Side::Minus, Side::Plus].into_iter().enumerate() {
            for f in 0..p.facet_count() {
                let present = (0..p.vertex_count())
                    .any(|v| section.side[v] == side && p.vertex(v).binary_search(&f).is_ok());
                if !present {
                    continue;
                }
                let shift = as_int(map.row(f));
                for a in 0..group {
                    let b = a ^ shift;
                    if a < b {
                        edges.push(DualEdge {
                            from: s * group + a,
                            to: s * group + b,
                            label: EdgeLabel::Facet(f),
                        });
                    }
                }
            }
        }
        for a in 0..group {
            edges.push(DualEdge {
                from: a,
                to: group + a,
                label: EdgeLabel::Section {
                    psi: psi.dot(&BitVec::from_u64(n, a as u64)),
                },
            });
        }
        let mut adjacency = vec![Vec::new(); 2 * group];
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.from].push(i);
            adjacency[e.to].push(i);
        }
        Ok(Self { n, edges, adjacency })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Breadth-first spanning tree from `root`: the parent edge of every
    /// vertex and the vertices in discovery order.
    fn spanning_tree(&self, root: usize) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent_edge = vec![None; self.node_count()];
        let mut reached = vec![false; self.node_count()];
        reached[root] = true;
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adjacency[u] {
                let w = self.edges[e].other(u);
                if !reached[w] {
                    reached[w] = true;
                    parent_edge[w] = Some(e);
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        (parent_edge, order)
    }

    pub fn is_connected(&self) -> bool {
        self.spanning_tree(0).1.len() == self.node_count()
    }

    /// Per fundamental cycle: facet crossing parities and the crossing parities
    /// of the `ψ = 0` and `ψ = 1` components.
    pub fn fundamental_cycles(&self, m: usize, root: usize) -> Vec<(BitVec, bool, bool)> {
        let (parent_edge, order) = self.spanning_tree(root);
        let label_vector = |label: EdgeLabel| -> (BitVec, bool, bool) {
            match label {
                EdgeLabel::Facet(f) => (BitVec::unit(m, f), false, false),
                EdgeLabel::Section { psi } => (BitVec::zeros(m), !psi, psi),
            }
        };
        // Parities along the tree path from the root.
        let mut potential: Vec<Option<(BitVec, bool, bool)>> = vec![None; self.node_count()];
        potential[root] = Some((BitVec::zeros(m), false, false));
        for &v in &order[1..] {
            let e = parent_edge[v].expect("non-root vertex has a parent");
            let (pu, a, b) = potential[self.edges[e].other(v)].clone().expect("parent first");
            let (l, la, lb) = label_vector(self.edges[e].label);
            potential[v] = Some((pu.xor(&l), a ^ la, b ^ lb));
        }
        let mut in_tree = vec![false; self.edges.len()];
        for e in parent_edge.into_iter().flatten() {
            in_tree[e] = true;
        }
        self.edges
            .iter()
            .enumerate()
            .filter(|&(i, e)| !in_tree[i] && potential[e.from].is_some())
            .map(|(_, e)| {
                let (pu, ua, ub) = potential[e.from].clone().expect("reached");
                let (pv, va, vb) = potential[e.to].clone().expect("reached");
                let (l, la, lb) = label_vector(e.label);
                (pu.xor(&pv).xor(&l), ua ^ va ^ la, ub ^ vb ^ lb)
            })
            .collect()
    }
}

/// Result of `section_to_class`.
#[derive(Clone, Debug)]
pub struct SectionClass {
    /// Canonical representative of `D[Y]`, `Y` the `ψ = 0` component.
    pub class: CohomologyClass,
    /// Canonical representative of the class of the `ψ = 1` component.
    pub other_class: CohomologyClass,
    pub psi: BitVec,
    pub section: SectionData,
    /// Rank of the cycle/facet pairing matrix; always `m − n`.
    pub pairing_rank: usize,
}

/// The vectors `λ(F)` of the crossed facets, one per row.
fn crossed_vectors(map: &CharacteristicMap, section: &SectionData) -> BitMatrix {
    BitMatrix::from_rows(
        section.crossed_facets.iter().map(|&f| map.row(f).clone()).collect(),
        map.dim(),
    )
}

pub fn section_to_class(
    p: &SimplePolytope,
    map: &CharacteristicMap,
    direction: &[f64],
    threshold: f64,
) -> Result<SectionClass, SectionError> {
    section_to_class_rooted(p, map, direction, threshold, 0)
}

pub(crate) fn section_to_class_rooted(
    p: &SimplePolytope,
    map: &CharacteristicMap,
    direction: &[f64],
    threshold: f64,
    root: usize,
) -> Result<SectionClass, SectionError> {
    let section = p.slice(direction, threshold)?;
    let n = p.dim();
    let m = p.facet_count();
    let crossed = crossed_vectors(map, &section);
    let rank = crossed.rank();
    if rank == n {
        return Err(SectionError::ConnectedPreimage { rank });
    }
    if rank + 1 < n {
        return Err(SectionError::TooManyComponents {
            components: 1 << (n - rank),
        });
    }
    let psi = crossed
        .kernel_basis()
        .into_iter()
        .next()
        .ok_or_else(|| SectionError::Internal("no functional vanishing on V".into()))?;
    let graph = SlicedDualGraph::build(p, map, &section, &psi)?;
    if !graph.is_connected() {
        return Err(SectionError::Internal("sliced dual graph is disconnected".into()));
    }
    let cycles = graph.fundamental_cycles(m, root % graph.node_count());
    let pairing = BitMatrix::from_rows(cycles.iter().map(|(v, _, _)| v.clone()).collect(), m);
    let pairing_rank = pairing.rank();
    if pairing_rank != m - n {
        return Err(SectionError::Internal(format!(
            "pairing matrix has rank {pairing_rank}, expected {}",
            m - n
        )));
    }
    let solve = |mono: BitVec| -> Result<CohomologyClass, SectionError> {
        let c = pairing
            .solve(&mono)
            .ok_or_else(|| SectionError::Internal("monodromy system is inconsistent".into()))?;
        Ok(map.canonical_rep(&CohomologyClass::from_bits(c)))
    };
    let class = solve(BitVec::from_bits(cycles.iter().map(|(_, a, _)| *a)))?;
    let other_class = solve(BitVec::from_bits(cycles.iter().map(|(_, _, b)| *b)))?;
    Ok(SectionClass {
        class,
        other_class,
        psi,
        section,
        pairing_rank,
    })
}

/// The class `v_i` of a facet together with the facet's h-vector.
#[derive(Clone, Debug, PartialEq)]
pub struct FacetSection {
    pub facet: FacetId,
    pub class: CohomologyClass,
    pub h_vector: Vec<i64>,
}

/// Requires `p⁻¹(F_i)` connected, i.e. the facets meeting `F_i` carry
/// vectors of full rank, and `v_i ≠ 0`.
pub fn facet_section_class(
    p: &SimplePolytope,
    map: &CharacteristicMap,
    facet: FacetId,
) -> Result<FacetSection, SectionError> {
    let m = p.facet_count();
    let n = p.dim();
    if facet >= m {
        return Err(SectionError::FacetOutOfRange(facet));
    }
    let lattice = p.face_lattice();
    let meeting = lattice.facets_meeting(&[facet], m);
    let rank = map.matrix().select_rows(&meeting).rank();
    if rank < n {
        return Err(SectionError::DisconnectedFacet { facet, rank, n });
    }
    let class = CohomologyClass::indicator(m, [facet]);
    if map.is_trivial(&class) {
        return Err(SectionError::TrivialFacetClass(facet));
    }
    let mut f = vec![0; n - 1];
    for t in lattice.faces() {
        if t.len() >= 2 && is_subset(&[facet], t) {
            f[t.len() - 2] += 1;
        }
    }
    Ok(FacetSection {
        facet,
        class,
        h_vector: h_from_f(n - 1, &f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cube, polygon, prism};

    fn torus() -> (SimplePolytope, CharacteristicMap) {
        let p = cube(2).unwrap();
        let map = CharacteristicMap::from_coloring(&p, &[1, 1, 2, 2]).unwrap();
        (p, map)
    }

    #[test]
    fn torus_vertical_slice() {
        let (p, map) = torus();
        let sc = section_to_class(&p, &map, &[1.0, 0.0], 0.5).unwrap();
        assert_eq!(sc.class, CohomologyClass::from_names(&p, &["L"]).unwrap());
        assert_eq!(sc.other_class, sc.class);
        assert_eq!(sc.psi, BitVec::unit(2, 0));
        assert_eq!(sc.section.h_vector, vec![1, 1]);
        assert_eq!(sc.pairing_rank, 2);
        for root in 0..8 {
            let again = section_to_class_rooted(&p, &map, &[1.0, 0.0], 0.5, root).unwrap();
            assert_eq!(again.class, sc.class);
        }
    }

    #[test]
    fn cube_horizontal_slice() {
        let p = cube(3).unwrap();
        let map = CharacteristicMap::from_coloring(&p, &[1, 1, 2, 2, 3, 3]).unwrap();
        let sc = section_to_class(&p, &map, &[0.0, 0.0, 1.0], 0.5).unwrap();
        assert_eq!(sc.class, CohomologyClass::from_names(&p, &["D"]).unwrap());
        assert!(map.same_class(&sc.class, &CohomologyClass::from_names(&p, &["U"]).unwrap()));
        assert_eq!(sc.psi, BitVec::unit(3, 2));
    }

    #[test]
    fn triangle_slice_is_connected() {
        let p = polygon(3).unwrap();
        let map = CharacteristicMap::new(
            &p,
            BitMatrix::from_nested(&[vec![1, 0], vec![0, 1], vec![1, 1]]),
        )
        .unwrap();
        assert_eq!(
            section_to_class(&p, &map, &[1.0, 0.3], 0.0).unwrap_err(),
            SectionError::ConnectedPreimage { rank: 2 }
        );
    }

    #[test]
    fn too_many_components() {
        // Each crossed edge carries n - 1 independent vectors, so a
        // characteristic map always gives rank >= n - 1; force a lower rank.
        let p = cube(3).unwrap();
        let lambda = CharacteristicMap::unchecked(BitMatrix::from_nested(&[
            vec![1, 0, 0],
            vec![1, 0, 0],
            vec![1, 0, 0],
            vec![1, 0, 0],
            vec![0, 0, 1],
            vec![0, 0, 1],
        ]));
        assert_eq!(
            section_to_class(&p, &lambda, &[0.0, 0.0, 1.0], 0.5).unwrap_err(),
            SectionError::TooManyComponents { components: 4 }
        );
    }

    #[test]
    fn facet_classes() {
        let (p, map) = torus();
        let b = p.facet_index("B").unwrap();
        let fs = facet_section_class(&p, &map, b).unwrap();
        assert_eq!(fs.class, CohomologyClass::indicator(4, [b]));
        assert_eq!(fs.h_vector, vec![1, 1]);
        assert_eq!(facet_section_class(&p, &map, 9).unwrap_err(), SectionError::FacetOutOfRange(9));
    }

    #[test]
    fn disconnected_facet_preimage() {
        // The vectors at any vertex of a facet already span, so this needs a
        // map that is not characteristic.
        let p = cube(2).unwrap();
        let lambda = CharacteristicMap::unchecked(BitMatrix::from_nested(&[
            vec![1, 0],
            vec![1, 0],
            vec![1, 0],
            vec![1, 0],
        ]));
        let b = p.facet_index("B").unwrap();
        assert_eq!(
            facet_section_class(&p, &lambda, b).unwrap_err(),
            SectionError::DisconnectedFacet { facet: b, rank: 1, n: 2 }
        );
    }

    #[test]
    fn prism_facets_are_section_classes() {
        let q = prism(&cube(2).unwrap()).unwrap();
        let lambda = CharacteristicMap::from_coloring(&q, &[1, 1, 2, 2, 3, 3]).unwrap();
        for f in 0..6 {
            assert_eq!(facet_section_class(&q, &lambda, f).unwrap().h_vector, vec![1, 2, 1]);
        }
    }
}
