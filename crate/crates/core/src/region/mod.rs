//! The admissible region in the `(alpha, q)` plane for a fixed `(beta, gamma)`, `gamma >= 2`.

mod boundary;
mod xi;

pub use boundary::{boundary_export, EdgeSide, Polyline, RegionBoundary};
pub use xi::{xi_feasible_brute, XiSearch};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{alpha_thresholds, base_floor, q_sub, q_subsub, Dimension};
use crate::interval::QInterval;
use crate::scalar::{max2, min2, ExtReal, Scalar};

/// Position of `gamma` relative to the poles `N` and `2N-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GammaCase {
    GammaBelowN,
    GammaEqN,
    GammaBetween,
    GammaEq2Nm2,
    GammaAbove,
}

impl GammaCase {
    pub fn tag(self) -> &'static str {
        match self {
            GammaCase::GammaBelowN => "gamma-below-n",
            GammaCase::GammaEqN => "gamma-eq-n",
            GammaCase::GammaBetween => "gamma-between",
            GammaCase::GammaEq2Nm2 => "gamma-eq-2n-2",
            GammaCase::GammaAbove => "gamma-above",
        }
    }

    fn classify<T: Scalar>(gamma: &T, n: Dimension) -> GammaCase {
        let nn: T = n.value();
        let pole2 = T::int(2) * nn.clone() - T::int(2);
        if gamma.near(&nn) {
            GammaCase::GammaEqN
        } else if gamma.near(&pole2) {
            GammaCase::GammaEq2Nm2
        } else if *gamma < nn {
            GammaCase::GammaBelowN
        } else if *gamma < pole2 {
            GammaCase::GammaBetween
        } else {
            GammaCase::GammaAbove
        }
    }
}

/// Parameters `(beta, gamma, N)` fixing one region.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionSpec<T> {
    beta: T,
    gamma: T,
    n: Dimension,
    case: GammaCase,
}

impl<T: Scalar> RegionSpec<T> {
    /// Requires `beta <= 1` and `gamma >= 2`.
    pub fn new(beta: T, gamma: T, n: Dimension) -> Result<Self> {
        if T::int(1).lt_strict(&beta) {
            return Err(Error::OutOfRange(format!("beta = {beta:?} exceeds 1")));
        }
        if gamma.lt_strict(&T::int(2)) {
            return Err(Error::OutOfRange(format!("gamma = {gamma:?} is below 2")));
        }
        let case = GammaCase::classify(&gamma, n);
        Ok(RegionSpec { beta, gamma, n, case })
    }

    pub fn beta(&self) -> &T {
        &self.beta
    }

    pub fn gamma(&self) -> &T {
        &self.gamma
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn case(&self) -> GammaCase {
        self.case
    }

    fn q_sub(&self, alpha: &T) -> T {
        q_sub(alpha, &self.beta, &self.gamma, self.n).expect("case excludes the pole")
    }

    fn q_subsub(&self, alpha: &T) -> T {
        q_subsub(alpha, &self.beta, &self.gamma, self.n).expect("case excludes the pole")
    }
}

/// Whether `(alpha, q)` lies in the region. Boundary points are excluded.
pub fn membership<T: Scalar>(alpha: &T, q: &T, spec: &RegionSpec<T>) -> bool {
    let floor = base_floor(&spec.beta);
    if !floor.lt_strict(q) {
        return false;
    }
    let th = || alpha_thresholds(&spec.beta, &spec.gamma, spec.n);
    match spec.case {
        GammaCase::GammaBelowN => q.lt_strict(&spec.q_sub(alpha)) && q.lt_strict(&spec.q_subsub(alpha)),
        GammaCase::GammaEqN => q.lt_strict(&spec.q_subsub(alpha)) && th().alpha2.lt_strict(alpha),
        GammaCase::GammaBetween => spec.q_sub(alpha).lt_strict(q) && q.lt_strict(&spec.q_subsub(alpha)),
        GammaCase::GammaEq2Nm2 => spec.q_sub(alpha).lt_strict(q) && th().alpha1.lt_strict(alpha),
        GammaCase::GammaAbove => spec.q_sub(alpha).lt_strict(q) && spec.q_subsub(alpha).lt_strict(q),
    }
}

/// The set `{q : (alpha, q) in region}` as an open interval.
pub fn slice_interval<T: Scalar>(alpha: &T, spec: &RegionSpec<T>) -> QInterval<T> {
    let floor = base_floor(&spec.beta);
    let th = || alpha_thresholds(&spec.beta, &spec.gamma, spec.n);
    let out = match spec.case {
        GammaCase::GammaBelowN => QInterval::finite(floor, min2(spec.q_sub(alpha), spec.q_subsub(alpha))),
        GammaCase::GammaEqN => {
            if th().alpha2.lt_strict(alpha) {
                QInterval::finite(floor, spec.q_subsub(alpha))
            } else {
                QInterval::empty()
            }
        }
        GammaCase::GammaBetween => QInterval::finite(max2(floor, spec.q_sub(alpha)), spec.q_subsub(alpha)),
        GammaCase::GammaEq2Nm2 => {
            if th().alpha1.lt_strict(alpha) {
                QInterval::new(ExtReal::Finite(max2(floor, spec.q_sub(alpha))), ExtReal::PosInf)
            } else {
                QInterval::empty()
            }
        }
        GammaCase::GammaAbove => QInterval::above(max2(max2(floor, spec.q_sub(alpha)), spec.q_subsub(alpha))),
    };
    if out.is_empty() {
        QInterval::empty()
    } else {
        out
    }
}

/// Distance from `(alpha, q)` to the nearest curve or vertical threshold that
/// can bound any region with these parameters.
pub fn boundary_distance(alpha: f64, q: f64, beta: f64, gamma: f64, n: Dimension) -> f64 {
    let mut d = (q - 1.0).abs().min((q - 2.0 * beta).abs());
    if let Ok(v) = q_sub(&alpha, &beta, &gamma, n) {
        d = d.min((q - v).abs());
    }
    if let Ok(v) = q_subsub(&alpha, &beta, &gamma, n) {
        d = d.min((q - v).abs());
    }
    let th = alpha_thresholds(&beta, &gamma, n);
    for a in [th.alpha1, th.alpha2, th.alpha3] {
        d = d.min((alpha - a).abs());
    }
    d
}
