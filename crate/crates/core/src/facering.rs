//! The graded ring `Z₂[v₁,…,v_m] / (I + J)`.
//!
//! `I` is the Stanley–Reisner ideal (monomials whose support is not a face)
//! and `J` is generated by the linear forms `Σ_k λ_i(F_k) v_k`. Every monomial
//! with non-face support already lies in `I`, so each degree is modelled on the
//! span of face-supported monomials and `J` contributes the products
//! `(linear form) × (face monomial of degree d-1)` with their non-face terms
//! dropped. The relation space of degree `d` in the full polynomial ring is
//! spanned by the non-face monomials together with those products, so both
//! descriptions give the same quotient dimension.
//!
//! The same quotient carries the cup product with a degree-one class `w`,
//! which is all that the Gysin sequence of the double cover `M_w` needs.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::charmap::{CharacteristicMap, CohomologyClass};
use crate::gf2::{BitVec, EchelonBasis};
use crate::polytope::{binomial, FacetId, SimplePolytope};

/// Largest number of face-supported monomials allowed in one degree.
pub const DEFAULT_MONOMIAL_CAP: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("degree {degree} needs {count} monomials, above the cap of {cap}")]
    TooLarge { degree: usize, count: u128, cap: usize },
    #[error("degree {0} was not built")]
    NotBuilt(usize),
    #[error("expected a vector of length {expected}, got {found}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("inputs are not a valid (P, S) pair: degree {degree} would be {value}")]
    InvalidPair { degree: usize, value: i64 },
    #[error("negative Betti number {value} in degree {degree}")]
    Negative { degree: usize, value: i64 },
}

/// Exponent vector over the `m` facet variables.
pub type Monomial = Vec<u8>;

#[derive(Clone, Debug)]
struct DegreePart {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    relations: EchelonBasis,
    /// Non-pivot monomials of the relation space: a basis of the quotient.
    basis: Vec<usize>,
}

/// Graded pieces of the face ring modulo the linear forms, degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct GradedRingModel {
    n: usize,
    m: usize,
    faces: HashSet<Vec<FacetId>>,
    degrees: Vec<DegreePart>,
}

/// Betti numbers of a double cover obtained from the Gysin recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GysinBetti {
    pub betti: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    /// The class is zero, so the cover is two disjoint copies of the base.
    pub disconnected: bool,
}

impl GradedRingModel {
    /// Builds degrees `0..=n+1`.
    pub fn build(p: &SimplePolytope, map: &CharacteristicMap) -> Result<Self, RingError> {
        Self::build_with(p, map, p.dim() + 1, DEFAULT_MONOMIAL_CAP)
    }

    pub fn build_with(
        p: &SimplePolytope,
        map: &CharacteristicMap,
        max_degree: usize,
        cap: usize,
    ) -> Result<Self, RingError> {
        let m = p.facet_count();
        if map.facet_count() != m {
            return Err(RingError::ShapeMismatch {
                expected: m,
                found: map.facet_count(),
            });
        }
        let lattice = p.face_lattice();
        let faces: HashSet<Vec<FacetId>> = lattice.faces().iter().cloned().collect();

        for d in 0..=max_degree {
            let count: u128 = (0..=p.dim().min(d))
                .map(|k| {
                    let faces_k = lattice.codim(k).len() as u128;
                    match (d, k) {
                        (0, 0) => 1,
                        (_, 0) => 0,
                        _ => faces_k * binomial(d - 1, k - 1),
                    }
                })
                .sum();
            if count > cap as u128 {
                return Err(RingError::TooLarge {
                    degree: d,
                    count,
                    cap,
                });
            }
        }

        let mut model = Self {
            n: p.dim(),
            m,
            faces,
            degrees: Vec::with_capacity(max_degree + 1),
        };
        let forms = map.linear_forms();
        for d in 0..=max_degree {
            let mut monomials = Vec::new();
            for k in 0..=p.dim().min(d) {
                for face in lattice.codim(k) {
                    compositions_on(face, d, m, &mut monomials);
                }
            }
            // Graded lexicographic: v_0^d first.
            monomials.sort_by(|a, b| b.cmp(a));
            let index: HashMap<Monomial, usize> = monomials
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, mono)| (mono, i))
                .collect();
            let mut part = DegreePart {
                relations: EchelonBasis::new(monomials.len()),
                monomials,
                index,
                basis: Vec::new(),
            };
            if d > 0 {
                let lower = &model.degrees[d - 1];
                for form in &forms {
                    for u in &lower.monomials {
                        let product = model.times_linear_monomial(&part, u, form);
                        part.relations.insert(product);
                    }
                }
            }
            part.basis = part.relations.free_positions();
            model.degrees.push(part);
        }
        Ok(model)
    }

    /// `Σ_k coeffs_k · v_k · u` as a vector over the face monomials of `target`.
    fn times_linear_monomial(&self, target: &DegreePart, u: &Monomial, coeffs: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(target.monomials.len());
        for k in coeffs.iter_ones() {
            let mut prod = u.clone();
            prod[k] += 1;
            if let Some(&i) = target.index.get(&prod) {
                out.flip(i);
            } else {
                debug_assert!(!self.faces.contains(&support(&prod)));
            }
        }
        out
    }

    fn part(&self, d: usize) -> Result<&DegreePart, RingError> {
        self.degrees.get(d).ok_or(RingError::NotBuilt(d))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    /// Dimension of the quotient in degree `d`.
    pub fn quotient_dim(&self, d: usize) -> Result<usize, RingError> {
        Ok(self.part(d)?.basis.len())
    }

    /// `(d_0, …, d_n)`.
    pub fn graded_dims(&self) -> Vec<usize> {
        (0..=self.n)
            .map(|d| self.degrees.get(d).map_or(0, |p| p.basis.len()))
            .collect()
    }

    /// Number of degree-`d` monomials in all `m` variables.
    pub fn monomial_count(&self, d: usize) -> u128 {
        if self.m == 0 {
            return u128::from(d == 0);
        }
        binomial(self.m + d - 1, d)
    }

    /// Rank of the relation space of degree `d` inside all degree-`d` monomials.
    pub fn relation_rank(&self, d: usize) -> Result<u128, RingError> {
        let part = self.part(d)?;
        let nonface = self.monomial_count(d) - part.monomials.len() as u128;
        Ok(nonface + part.relations.rank() as u128)
    }

    /// Quotient basis monomials of degree `d`.
    pub fn basis_monomials(&self, d: usize) -> Result<Vec<&Monomial>, RingError> {
        let part = self.part(d)?;
        Ok(part.basis.iter().map(|&i| &part.monomials[i]).collect())
    }

    fn check_class(&self, c: &CohomologyClass) -> Result<(), RingError> {
        if c.len() != self.m {
            return Err(RingError::ShapeMismatch {
                expected: self.m,
                found: c.len(),
            });
        }
        Ok(())
    }

    /// Rank of `w ⌣ −` from degree `d` to degree `d + 1`.
    fn cup_rank(&self, c: &CohomologyClass, d: usize) -> Result<usize, RingError> {
        let source = self.part(d)?;
        let Some(target) = self.degrees.get(d + 1) else {
            if d + 1 > self.n {
                return Ok(0);
            }
            return Err(RingError::NotBuilt(d + 1));
        };
        let mut image = EchelonBasis::new(target.monomials.len());
        for &b in &source.basis {
            let product = self.times_linear_monomial(target, &source.monomials[b], c.bits());
            image.insert(target.relations.reduce(&product));
        }
        Ok(image.rank())
    }

    /// `k_d = dim ker(w ⌣ −: H^d → H^{d+1})` for `d = 0..=n`.
    pub fn cup_kernel_dims(&self, c: &CohomologyClass) -> Result<Vec<usize>, RingError> {
        self.check_class(c)?;
        (0..=self.n)
            .map(|d| Ok(self.part(d)?.basis.len() - self.cup_rank(c, d)?))
            .collect()
    }

    /// Betti numbers of the double cover `M_w` via
    /// `b_d = d_d − d_{d−1} + k_{d−1} + k_d`.
    pub fn gysin_betti(&self, c: &CohomologyClass) -> Result<GysinBetti, RingError> {
        let k = self.cup_kernel_dims(c)?;
        let dims = self.graded_dims();
        let mut betti = Vec::with_capacity(self.n + 1);
        for d in 0..=self.n {
            let prev = |v: &[usize]| if d == 0 { 0 } else { v[d - 1] as i64 };
            let value = dims[d] as i64 - prev(&dims) + prev(&k) + k[d] as i64;
            if value < 0 {
                return Err(RingError::Negative { degree: d, value });
            }
            betti.push(value as usize);
        }
        Ok(GysinBetti {
            betti,
            disconnected: k[0] != 0,
            kernel_dims: k,
        })
    }

    /// Whether `w² = 0` in degree 2.
    pub fn square_is_zero(&self, c: &CohomologyClass) -> Result<bool, RingError> {
        self.check_class(c)?;
        let one = self.part(1)?;
        let two = self.part(2)?;
        let mut square = BitVec::zeros(two.monomials.len());
        for i in c.bits().iter_ones() {
            let v_i = &one.monomials[one.index[&unit_monomial(self.m, i)]];
            square.xor_assign(&self.times_linear_monomial(two, v_i, c.bits()));
        }
        Ok(two.relations.contains(&square))
    }

    /// Checks `k_d = d_d − h_Y[d]` for every degree, `h_Y` padded with zeros.
    pub fn lemma_k_check(&self, c: &CohomologyClass, h_y: &[i64]) -> Result<bool, RingError> {
        let k = self.cup_kernel_dims(c)?;
        let dims = self.graded_dims();
        Ok((0..=self.n).all(|d| {
            let hy = h_y.get(d).copied().unwrap_or(0);
            k[d] as i64 == dims[d] as i64 - hy
        }))
    }
}

/// `2 h_m(P) − h_{m−1}(S) − h_m(S)` for `m = 0..=n`, where `h_S` has length
/// `n` and `h_{−1}(S) = h_n(S) = 0`.
pub fn theorem3_betti(h_p: &[i64], h_s: &[i64]) -> Result<Vec<usize>, RingError> {
    if h_p.is_empty() || h_s.len() + 1 != h_p.len() {
        return Err(RingError::ShapeMismatch {
            expected: h_p.len().saturating_sub(1),
            found: h_s.len(),
        });
    }
    let s = |i: isize| -> i64 {
        if i < 0 {
            0
        } else {
            h_s.get(i as usize).copied().unwrap_or(0)
        }
    };
    h_p.iter()
        .enumerate()
        .map(|(m, &hp)| {
            let value = 2 * hp - s(m as isize - 1) - s(m as isize);
            if value < 0 {
                Err(RingError::InvalidPair { degree: m, value })
            } else {
                Ok(value as usize)
            }
        })
        .collect()
}

fn unit_monomial(m: usize, i: usize) -> Monomial {
    let mut mono = vec![0; m];
    mono[i] = 1;
    mono
}

fn support(mono: &Monomial) -> Vec<FacetId> {
    mono.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, _)| i)
        .collect()
}

/// Pushes every degree-`d` monomial whose support is exactly `face`.
fn compositions_on(face: &[FacetId], d: usize, m: usize, out: &mut Vec<Monomial>) {
    if face.is_empty() {
        if d == 0 {
            out.push(vec![0; m]);
        }
        return;
    }
    if d < face.len() {
        return;
    }
    fn rec(face: &[FacetId], at: usize, left: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if at + 1 == face.len() {
            cur[face[at]] = left as u8;
            out.push(cur.clone());
            cur[face[at]] = 0;
            return;
        }
        let remaining = face.len() - at - 1;
        for e in 1..=(left - remaining) {
            cur[face[at]] = e as u8;
            rec(face, at + 1, left - e, cur, out);
        }
        cur[face[at]] = 0;
    }
    rec(face, 0, d, &mut vec![0; m], out);
}
