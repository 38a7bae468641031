//! Characteristic maps `λ: facets → Z₂ⁿ` and degree-one cohomology classes.
//!
//! A class `w = Σ cᵢ vᵢ` is stored as its raw facet vector `c`; two vectors
//! give the same class exactly when their sum is a combination of the linear
//! forms `Σ_k λ_i(F_k) v_k`, i.e. of the columns of `Λ`.

use std::fmt;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec, EchelonBasis};
use crate::polytope::{prism, FacetId, PolytopeError, SimplePolytope};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharMapError {
    #[error("map has {rows}x{cols} entries, expected {m} rows of length {n}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        m: usize,
        n: usize,
    },
    #[error("vectors at vertices {vertices:?} do not form a basis")]
    NotCharacteristic { vertices: Vec<usize> },
    #[error("coloring repeats a color at vertex {vertex}")]
    ImproperColoring { vertex: usize },
    #[error("color {color} of facet {facet} is outside 1..={n}")]
    ColorOutOfRange { facet: FacetId, color: usize, n: usize },
    #[error("facet {facet} out of range for {m} facets")]
    FacetOutOfRange { facet: FacetId, m: usize },
    #[error("vector has length {found}, expected {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// Vertices at which the rows of `lambda` fail to form a basis.
pub fn offending_vertices(p: &SimplePolytope, lambda: &BitMatrix) -> Result<Vec<usize>, CharMapError> {
    if lambda.nrows() != p.facet_count() || lambda.ncols() != p.dim() {
        return Err(CharMapError::DimensionMismatch {
            rows: lambda.nrows(),
            cols: lambda.ncols(),
            m: p.facet_count(),
            n: p.dim(),
        });
    }
    Ok((0..p.vertex_count())
        .filter(|&v| lambda.select_rows(p.vertex(v)).rank() < p.dim())
        .collect())
}

pub fn validate(p: &SimplePolytope, lambda: &BitMatrix) -> Result<(), CharMapError> {
    let bad = offending_vertices(p, lambda)?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CharMapError::NotCharacteristic { vertices: bad })
    }
}

/// True if `a` has an odd number of nonzero coordinates.
pub fn has_odd_weight(a: &BitVec) -> bool {
    a.count_ones() % 2 == 1
}

/// A validated characteristic map; row `i` is `λ(F_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicMap {
    lambda: BitMatrix,
}

impl CharacteristicMap {
    pub fn new(p: &SimplePolytope, lambda: BitMatrix) -> Result<Self, CharMapError> {
        validate(p, &lambda)?;
        Ok(Self { lambda })
    }

    #[cfg(test)]
    pub(crate) fn unchecked(lambda: BitMatrix) -> Self {
        Self { lambda }
    }

    /// `λ(F) = e_{color(F)}` for a coloring with colors `1..=n`.
    pub fn from_coloring(p: &SimplePolytope, colors: &[usize]) -> Result<Self, CharMapError> {
        let n = p.dim();
        if colors.len() != p.facet_count() {
            return Err(CharMapError::VectorLength {
                expected: p.facet_count(),
                found: colors.len(),
            });
        }
        if let Some((facet, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > n) {
            return Err(CharMapError::ColorOutOfRange { facet, color, n });
        }
        for v in 0..p.vertex_count() {
            let mut seen = vec![false; n + 1];
            for &f in p.vertex(v) {
                if std::mem::replace(&mut seen[colors[f]], true) {
                    return Err(CharMapError::ImproperColoring { vertex: v });
                }
            }
        }
        let rows = colors.iter().map(|&c| BitVec::unit(n, c - 1)).collect();
        Self::new(p, BitMatrix::from_rows(rows, n))
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.lambda.ncols()
    }

    pub fn facet_count(&self) -> usize {
        self.lambda.nrows()
    }

    pub fn row(&self, facet: FacetId) -> &BitVec {
        self.lambda.row(facet)
    }

    /// The map `ν` equal to `λ` except `ν(G) = λ(G) + a`.
    pub fn perturb(&self, p: &SimplePolytope, g: FacetId, a: &BitVec) -> Result<Self, CharMapError> {
        if g >= self.facet_count() {
            return Err(CharMapError::FacetOutOfRange {
                facet: g,
                m: self.facet_count(),
            });
        }
        if a.len() != self.dim() {
            return Err(CharMapError::VectorLength {
                expected: self.dim(),
                found: a.len(),
            });
        }
        let mut lambda = self.lambda.clone();
        lambda.set_row(g, self.row(g).xor(a));
        Self::new(p, lambda)
    }

    /// The map `λ_w` on `P × [0,1]` for `w = Σ cᵢ vᵢ`: side facet `F_i × [0,1]`
    /// gets `λ(F_i)` with `cᵢ` appended as the new last coordinate, and both
    /// bases get `e_{n+1}`. Returns the prism together with the map.
    pub fn prism_charmap(
        &self,
        p: &SimplePolytope,
        c: &CohomologyClass,
    ) -> Result<(SimplePolytope, CharacteristicMap), CharMapError> {
        self.check_class(c)?;
        let n = self.dim();
        let base = BitVec::unit(n + 1, n);
        let mut rows: Vec<BitVec> = (0..self.facet_count())
            .map(|i| self.row(i).pushed(c.bits().get(i)))
            .collect();
        rows.push(base.clone());
        rows.push(base);
        let q = prism(p)?;
        let map = Self::new(&q, BitMatrix::from_rows(rows, n + 1))?;
        Ok((q, map))
    }

    /// The linear forms `Σ_k λ_i(F_k) v_k`, one facet vector per coordinate `i`.
    pub fn linear_forms(&self) -> Vec<BitVec> {
        (0..self.dim()).map(|i| self.lambda.column(i)).collect()
    }

    fn relations(&self) -> EchelonBasis {
        EchelonBasis::spanned_by(self.facet_count(), &self.linear_forms())
    }

    fn check_class(&self, c: &CohomologyClass) -> Result<(), CharMapError> {
        if c.len() != self.facet_count() {
            return Err(CharMapError::VectorLength {
                expected: self.facet_count(),
                found: c.len(),
            });
        }
        Ok(())
    }

    /// # Panics
    /// Panics if the class length differs from the facet count.
    pub fn is_trivial(&self, c: &CohomologyClass) -> bool {
        self.relations().contains(c.bits())
    }

    /// Canonical representative of the class of `c`: the unique vector in
    /// `c + span(linear forms)` that vanishes on the pivot facets of the
    /// forms, pivots being taken at the highest facet index.
    pub fn canonical_rep(&self, c: &CohomologyClass) -> CohomologyClass {
        CohomologyClass::from_bits(self.relations().reduce(c.bits()))
    }

    pub fn same_class(&self, a: &CohomologyClass, b: &CohomologyClass) -> bool {
        self.is_trivial(&CohomologyClass::from_bits(a.bits().xor(b.bits())))
    }

    /// One canonical representative per class, `2^{m-n}` in total, starting with zero.
    pub fn class_representatives(&self) -> Vec<CohomologyClass> {
        self.relations()
            .coset_representatives()
            .into_iter()
            .map(CohomologyClass::from_bits)
            .collect()
    }
}

/// A facet vector `c` standing for `w = Σ cᵢ vᵢ ∈ H¹`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CohomologyClass {
    bits: BitVec,
}

impl CohomologyClass {
    pub fn zero(m: usize) -> Self {
        Self {
            bits: BitVec::zeros(m),
        }
    }

    pub fn from_bits(bits: BitVec) -> Self {
        Self { bits }
    }

    pub fn indicator<I: IntoIterator<Item = FacetId>>(m: usize, facets: I) -> Self {
        Self::from_bits(BitVec::from_indices(m, facets))
    }

    /// Indicator of the named facets of `p`. Returns the unknown name on failure.
    pub fn from_names(p: &SimplePolytope, names: &[&str]) -> Result<Self, String> {
        let mut ids = Vec::with_capacity(names.len());
        for name in names {
            ids.push(p.facet_index(name).ok_or_else(|| name.to_string())?);
        }
        Ok(Self::indicator(p.facet_count(), ids))
    }

    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn support(&self) -> Vec<FacetId> {
        self.bits.iter_ones().collect()
    }

    /// Facet names of the support, comma-separated.
    pub fn describe(&self, p: &SimplePolytope) -> String {
        let names: Vec<&str> = self
            .support()
            .into_iter()
            .map(|f| p.facet_names()[f].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// The class `D[p̃⁻¹(P×0)] + D[p̃⁻¹(P×1)]` on the prism over a polytope
    /// with `self.len()` facets, in the facet order used by `prism`.
    pub fn pullback_to_prism(&self) -> Self {
        let m = self.len();
        Self::indicator(m + 2, [m, m + 1])
    }
}

impl fmt::Display for CohomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}
