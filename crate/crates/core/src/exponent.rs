//! Exponent functions and threshold formulas.
//!
//! Every function is generic over [`Scalar`]: use [`Q`](crate::Q) for exact
//! answers and `f64` for quick estimates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{max2, Scalar};

/// Space dimension `N >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n >= 3 {
            Ok(Dimension(n))
        } else {
            Err(Error::InvalidDimension(n))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn value<T: Scalar>(self) -> T {
        T::int(i64::from(self.0))
    }

    /// Critical Sobolev exponent `2N/(N-2)`.
    pub fn critical_exponent<T: Scalar>(self) -> T {
        let n: T = self.value();
        T::int(2) * n.clone() / (n - T::int(2))
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        Dimension::new(n)
    }
}

impl From<Dimension> for u32 {
    fn from(d: Dimension) -> u32 {
        d.0
    }
}

/// Exponents `(alpha, beta)` bounding `K / (r^alpha V^beta)` near one end.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthPair<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> GrowthPair<T> {
    /// Requires `beta <= 1`.
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if T::int(1) < beta {
            return Err(Error::OutOfRange(format!("beta = {beta:?} exceeds 1")));
        }
        Ok(GrowthPair { alpha, beta })
    }

    /// Requires `0 <= beta <= 1`, as the theorems do.
    pub fn admissible(alpha: T, beta: T) -> Result<Self> {
        if beta < T::int(0) {
            return Err(Error::OutOfRange(format!("beta = {beta:?} is negative")));
        }
        GrowthPair::new(alpha, beta)
    }
}

/// `alpha*(beta) = max{2beta - 1 - N/2, -(1-beta)N}`.
pub fn alpha_star<T: Scalar>(beta: &T, n: Dimension) -> T {
    let nn: T = n.value();
    let one = T::int(1);
    let a = T::int(2) * beta.clone() - one.clone() - nn.clone() / T::int(2);
    let b = -((one - beta.clone()) * nn);
    max2(a, b)
}

/// `q*(alpha, beta) = 2(alpha - 2beta + N)/(N-2)`.
pub fn q_star<T: Scalar>(alpha: &T, beta: &T, n: Dimension) -> T {
    let nn: T = n.value();
    T::int(2) * (alpha.clone() - T::int(2) * beta.clone() + nn.clone()) / (nn - T::int(2))
}

/// `q_*(alpha, beta, gamma) = 2(alpha - gamma beta + N)/(N - gamma)`, undefined at `gamma = N`.
pub fn q_sub<T: Scalar>(alpha: &T, beta: &T, gamma: &T, n: Dimension) -> Result<T> {
    let nn: T = n.value();
    let den = nn.clone() - gamma.clone();
    if den.near(&T::int(0)) {
        return Err(Error::UndefinedAtPole {
            function: "q_*",
            pole: format!("{gamma:?}"),
        });
    }
    Ok(T::int(2) * (alpha.clone() - gamma.clone() * beta.clone() + nn) / den)
}

/// `q_**(alpha, beta, gamma) = 2(2alpha + (1-2beta)gamma + 2(N-1))/(2(N-1) - gamma)`,
/// undefined at `gamma = 2N-2`.
pub fn q_subsub<T: Scalar>(alpha: &T, beta: &T, gamma: &T, n: Dimension) -> Result<T> {
    let two = T::int(2);
    let nm1: T = n.value::<T>() - T::int(1);
    let den = two.clone() * nm1.clone() - gamma.clone();
    if den.near(&T::int(0)) {
        return Err(Error::UndefinedAtPole {
            function: "q_**",
            pole: format!("{gamma:?}"),
        });
    }
    let num =
        two.clone() * alpha.clone() + (T::int(1) - two.clone() * beta.clone()) * gamma.clone() + two.clone() * nm1;
    Ok(two * num / den)
}

/// The three vertical thresholds of the region pictures.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaThresholds<T> {
    /// `-(1-beta)gamma`
    pub alpha1: T,
    /// `-(1-beta)N`
    pub alpha2: T,
    /// `-(N + (1-2beta)gamma)/2`
    pub alpha3: T,
}

impl<T: Scalar> AlphaThresholds<T> {
    pub fn max23(&self) -> T {
        max2(self.alpha2.clone(), self.alpha3.clone())
    }
}

pub fn alpha_thresholds<T: Scalar>(beta: &T, gamma: &T, n: Dimension) -> AlphaThresholds<T> {
    let nn: T = n.value();
    let one = T::int(1);
    let alpha1 = -((one.clone() - beta.clone()) * gamma.clone());
    let alpha2 = -((one.clone() - beta.clone()) * nn.clone());
    let alpha3 = -(nn + (one - T::int(2) * beta.clone()) * gamma.clone()) / T::int(2);
    AlphaThresholds { alpha1, alpha2, alpha3 }
}

/// `max{1, 2beta}`, the common lower bound of every admissible range.
pub fn base_floor<T: Scalar>(beta: &T) -> T {
    max2(T::int(1), T::int(2) * beta.clone())
}

/// Lower threshold for `q2` from the pure growth condition at infinity:
/// `max{1, 2beta, q*(alpha, beta)}`.
pub fn growth_threshold<T: Scalar>(alpha: &T, beta: &T, n: Dimension) -> T {
    max2(base_floor(beta), q_star(alpha, beta, n))
}

/// Same value through the split at `alpha = alpha*(beta)`.
pub fn growth_threshold_piecewise<T: Scalar>(alpha: &T, beta: &T, n: Dimension) -> T {
    if *alpha <= alpha_star(beta, n) {
        base_floor(beta)
    } else {
        q_star(alpha, beta, n)
    }
}

/// Lower threshold for `q2` when `r^gamma V` is bounded below at infinity,
/// `gamma <= 2`: `max{1, 2beta, q_*, q_**}`.
pub fn decay_threshold<T: Scalar>(alpha: &T, beta: &T, gamma: &T, n: Dimension) -> Result<T> {
    check_gamma_at_most_two(gamma)?;
    let lo = base_floor(beta);
    let a = q_sub(alpha, beta, gamma, n)?;
    let b = q_subsub(alpha, beta, gamma, n)?;
    Ok(max2(lo, max2(a, b)))
}

/// Same value through the three-branch description in `alpha`.
pub fn decay_threshold_piecewise<T: Scalar>(alpha: &T, beta: &T, gamma: &T, n: Dimension) -> Result<T> {
    check_gamma_at_most_two(gamma)?;
    let th = alpha_thresholds(beta, gamma, n);
    if *alpha >= th.alpha1 {
        q_subsub(alpha, beta, gamma, n)
    } else if *alpha >= th.max23() {
        q_sub(alpha, beta, gamma, n)
    } else {
        Ok(base_floor(beta))
    }
}

fn check_gamma_at_most_two<T: Scalar>(gamma: &T) -> Result<()> {
    if T::int(2).lt_strict(gamma) {
        return Err(Error::OutOfRange(format!("gamma = {gamma:?} must be at most 2")));
    }
    Ok(())
}
