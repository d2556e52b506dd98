//! Compactness of embeddings of weighted radial Sobolev spaces.
//!
//! Given radial potentials `V >= 0` and `K > 0` on `R^N`, the energy space
//! `H^1_{V,r}` embeds compactly into `L^{q1}_K + L^{q2}_K` for exponent ranges
//! determined by the growth of `K / (r^alpha V^beta)` and the decay of
//! `r^gamma V` near the origin and at infinity. This crate computes those
//! ranges exactly and checks the supporting inequalities numerically.
//!
//! ```
//! use radial_embed::{best_verdict, catalog, Dimension};
//!
//! let n = Dimension::new(3)?;
//! let case = catalog::find("EX_SWW").unwrap();
//! let bindings = case.bind(&[("a", "1")])?;
//! let (origin, infinity) = case.specs(&bindings)?;
//! let verdict = best_verdict(&origin, &infinity, n)?;
//! assert_eq!(verdict.single_q.to_string(), "(10/3, 6)");
//! # Ok::<(), radial_embed::Error>(())
//! ```

// NaN-rejecting guards are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod document;
pub mod engine;
mod error;
pub mod exponent;
mod interval;
pub mod numerics;
pub mod potential;
pub mod region;
mod scalar;
pub mod verify;

pub use engine::{
    best_verdict, combine, infinity_admissible, origin_admissible, BetaRange, ChosenParams, EmbeddingVerdict,
    GrowthFamily, InfinitySpec, InfinityTheorem, OriginSpec, OriginTheorem,
};
pub use error::{Error, Result};
pub use exponent::{Dimension, GrowthPair};
pub use interval::QInterval;
pub use potential::{Potential, Side};
pub use region::{membership, slice_interval, GammaCase, RegionSpec};
pub use scalar::{fmt_q, parse_q, q, q_from_f64, q_to_f64, qi, serde_q, ExtReal, Scalar, FLOAT_TOL, Q};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/exponents.md")]
    mod exponents {}
    #[doc = include_str!("../../../book/src/region.md")]
    mod region {}
    #[doc = include_str!("../../../book/src/engine.md")]
    mod engine {}
    #[doc = include_str!("../../../book/src/potentials.md")]
    mod potentials {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
}
