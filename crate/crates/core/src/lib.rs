//! Small covers of simple polytopes and their two-fold covers.
//!
//! A simple polytope `P` with a characteristic map `λ` determines the small
//! cover `M_{P,λ}`, and a class `w ∈ H¹(M; Z₂)` determines a double cover
//! `M_w`. Mod-2 Betti numbers can be obtained three ways here:
//!
//! - from the h-vector of `P` ([`polytope::SimplePolytope::h_vector`]),
//! - from the face ring modulo linear forms, with the Gysin recurrence for
//!   double covers ([`facering::GradedRingModel`]),
//! - by building the quotient `P × Z₂^N / ∼` as a cell complex and taking
//!   ranks of boundary matrices ([`quotient::QuotientComplex`]).
//!
//! ```
//! use smallcover::fixtures::fixture;
//! use smallcover::facering::GradedRingModel;
//! use smallcover::quotient::QuotientComplex;
//!
//! let torus = fixture("torus").unwrap();
//! let ring = GradedRingModel::build(&torus.polytope, &torus.map).unwrap();
//! let oracle = QuotientComplex::small_cover(&torus.polytope, &torus.map).unwrap();
//! assert_eq!(torus.polytope.h_vector(), vec![1, 2, 1]);
//! assert_eq!(ring.graded_dims(), vec![1, 2, 1]);
//! assert_eq!(oracle.betti(), vec![1, 2, 1]);
//! ```

pub mod charmap;
pub mod facering;
pub mod fixtures;
pub mod gf2;
pub mod io;
pub mod polytope;
pub mod quotient;

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/small-covers.md")]
    mod small_covers {}
    #[doc = include_str!("../../../book/src/double-covers.md")]
    mod double_covers {}
    #[doc = include_str!("../../../book/src/pentagon.md")]
    mod pentagon {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
