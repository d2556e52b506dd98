//! Brute-force search over the auxiliary exponent `xi`.
//!
//! Membership in the region is equivalent to the existence of `xi` in
//! `[max{0, (1-2beta)/2}, 1-beta]` with
//!
//! ```text
//! q > 2(beta + xi)
//! (2N - 2 - gamma) q < 4(alpha + xi gamma) + 4N - 2(gamma + 2)(beta + xi)
//! ```
//!
//! Both constraints are affine in `xi`, so checking the grid together with
//! every root and the midpoints between consecutive roots decides the system.

use crate::error::{Error, Result};
use crate::exponent::Dimension;
use crate::scalar::{max2, Scalar};

/// Search window and resolution for [`xi_feasible_brute`].
#[derive(Debug, Clone, PartialEq)]
pub struct XiSearch<T> {
    pub xi_lo: T,
    pub xi_hi: T,
    pub grid_points: usize,
    pub margin: f64,
}

impl<T: Scalar> XiSearch<T> {
    pub const MIN_GRID: usize = 1000;

    pub fn new(beta: &T, grid_points: usize, margin: f64) -> Result<Self> {
        if T::int(1).lt_strict(beta) {
            return Err(Error::OutOfRange(format!("beta = {beta:?} exceeds 1")));
        }
        if grid_points < Self::MIN_GRID {
            return Err(Error::OutOfRange(format!(
                "grid_points = {grid_points} is below {}",
                Self::MIN_GRID
            )));
        }
        if !(margin > 0.0) {
            return Err(Error::OutOfRange(format!("margin = {margin} must be positive")));
        }
        let one = T::int(1);
        let xi_lo = max2(T::int(0), (one.clone() - T::int(2) * beta.clone()) / T::int(2));
        let xi_hi = one - beta.clone();
        Ok(XiSearch {
            xi_lo,
            xi_hi,
            grid_points,
            margin,
        })
    }
}

/// Whether some `xi` in the search window satisfies the system above.
pub fn xi_feasible_brute<T: Scalar>(
    alpha: &T,
    beta: &T,
    gamma: &T,
    q: &T,
    search: &XiSearch<T>,
    n: Dimension,
) -> Result<bool> {
    if !T::int(2).lt_strict(gamma) {
        return Err(Error::OutOfRange(format!("gamma = {gamma:?} must exceed 2")));
    }
    let two = T::int(2);
    let four = T::int(4);
    let nn: T = n.value();
    let slope_coef = two.clone() * nn.clone() - two.clone() - gamma.clone();

    let holds = |xi: &T| -> bool {
        let first = (two.clone() * (beta.clone() + xi.clone())).lt_strict(q);
        let lhs = slope_coef.clone() * q.clone();
        let rhs = four.clone() * (alpha.clone() + xi.clone() * gamma.clone()) + four.clone() * nn.clone()
            - two.clone() * (gamma.clone() + two.clone()) * (beta.clone() + xi.clone());
        first && lhs.lt_strict(&rhs)
    };

    let (lo, hi) = (search.xi_lo.clone(), search.xi_hi.clone());
    let inside = |x: &T| !x.lt_strict(&lo) && !hi.lt_strict(x);

    let mut points: Vec<T> = Vec::with_capacity(search.grid_points + 8);
    let steps = search.grid_points as i64 - 1;
    let width = hi.clone() - lo.clone();
    for i in 0..=steps {
        points.push(lo.clone() + width.clone() * T::int(i) / T::int(steps));
    }

    let mut roots = vec![lo.clone(), hi.clone()];
    roots.push(q.clone() / two.clone() - beta.clone());
    let root2 = (slope_coef.clone() * q.clone() - four.clone() * alpha.clone() - four.clone() * nn.clone()
        + two.clone() * (gamma.clone() + two.clone()) * beta.clone())
        / (two.clone() * gamma.clone() - four.clone());
    roots.push(root2);
    let pole_gap = nn.clone() - gamma.clone();
    if !pole_gap.near(&T::int(0)) {
        roots.push((alpha.clone() + (T::int(1) - beta.clone()) * nn.clone()) / pole_gap);
    }
    roots.retain(|r| inside(r));
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    for pair in roots.windows(2) {
        points.push((pair[0].clone() + pair[1].clone()) / two.clone());
    }
    points.extend(roots);

    Ok(points.iter().any(holds))
}
