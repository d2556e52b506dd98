//! Quadrature-backed checks on sampled radial profiles.
//!
//! Functions live on log-spaced grids and are integrated with the trapezoid
//! rule in `t = ln r`, which spreads relative error evenly over power-like
//! integrands. Every supremum over the unit sphere of the energy space is
//! only estimated from below, by trial families.

mod fit;
mod grid;
mod inequality;
mod norms;
mod scaling;

pub use fit::decay_slope_fit;
pub use grid::{bump_profile, bump_profile_derivative, BumpFamily, RadialFunction, RadialGrid, ScaleMode};
pub use inequality::{
    annulus_check, lemma_omega_check, ni_constant, pointwise_ratio, sobolev_constant, InequalityReport, PointwiseMode,
    INEQUALITY_TOL,
};
pub use norms::{h1v_norm, sphere_area, sum_norm_split, weighted_lq};
pub use scaling::{r_lower_bound, s_lower_bound, scaling_exponent};
