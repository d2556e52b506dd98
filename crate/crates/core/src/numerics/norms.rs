use statrs::function::gamma::gamma;

use super::grid::RadialFunction;
use crate::error::{Error, Result};
use crate::exponent::Dimension;
use crate::potential::Potential;

/// Surface measure of the unit sphere in `R^N`.
pub fn sphere_area(n: Dimension) -> f64 {
    let half = f64::from(n.get()) / 2.0;
    2.0 * std::f64::consts::PI.powf(half) / gamma(half)
}

pub(crate) fn sampled(p: &Potential, nodes: &[f64]) -> Vec<f64> {
    nodes.iter().map(|&r| p.eval(r)).collect()
}

/// Energy norm `(int |u'|^2 + V u^2 dx)^{1/2}`.
///
/// With a supplied derivative the gradient term uses the trapezoid rule;
/// for sampled profiles it uses the slope on each cell, which keeps kinks
/// at nodes exact.
pub fn h1v_norm(u: &RadialFunction, v: &Potential, n: Dimension) -> Result<f64> {
    let grid = u.grid();
    let nodes = grid.nodes();
    let dim = f64::from(n.get());
    let mut f = Vec::with_capacity(grid.len());
    for (i, &r) in nodes.iter().enumerate() {
        let val = u.values()[i];
        let mut e = if u.has_exact_derivative() {
            u.derivative()[i].powi(2)
        } else {
            0.0
        };
        if val != 0.0 {
            let pot = v.eval(r);
            if !pot.is_finite() {
                return Err(Error::NonIntegrable(format!(
                    "V is not finite at r = {r:e} inside the support"
                )));
            }
            e += pot * val * val;
        }
        f.push(e * r.powf(dim - 1.0));
    }
    let mut total = grid.integrate(&f, 0.0, f64::INFINITY);
    if !u.has_exact_derivative() {
        let vals = u.values();
        for i in 0..nodes.len() - 1 {
            let (a, b) = (nodes[i], nodes[i + 1]);
            let slope = (vals[i + 1] - vals[i]) / (b - a);
            if slope != 0.0 {
                total += slope * slope * (b.powf(dim) - a.powf(dim)) / dim;
            }
        }
    }
    let total = sphere_area(n) * total;
    if !total.is_finite() {
        return Err(Error::NonIntegrable("energy integral overflowed".into()));
    }
    Ok(total.sqrt())
}

/// `int_{r_lo < |x| < r_hi} K |u|^q dx`; `r_hi` may be `+inf`.
pub fn weighted_lq(u: &RadialFunction, k: &Potential, q: f64, r_lo: f64, r_hi: f64, n: Dimension) -> Result<f64> {
    if !(q > 1.0) {
        return Err(Error::OutOfRange(format!("q = {q} must exceed 1")));
    }
    let grid = u.grid();
    let dim = f64::from(n.get());
    let f: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(u.values())
        .map(|(&r, &val)| {
            if val == 0.0 {
                0.0
            } else {
                k.eval(r) * val.abs().powf(q) * r.powf(dim - 1.0)
            }
        })
        .collect();
    let total = sphere_area(n) * grid.integrate(&f, r_lo, r_hi);
    if !total.is_finite() {
        return Err(Error::NonIntegrable("weighted integral overflowed".into()));
    }
    Ok(total)
}

/// Upper bound for the norm of `u` in `L^{p1}_K + L^{p2}_K`, from splits
/// `u = u 1_E + u 1_{E^c}` with `E` a ball or the complement of a ball
/// whose radius runs over the grid (empty and full `E` included).
pub fn sum_norm_split(u: &RadialFunction, k: &Potential, p1: f64, p2: f64, n: Dimension) -> Result<f64> {
    if !(p1 > 1.0 && p1 <= p2) {
        return Err(Error::OutOfRange(format!(
            "need 1 < p1 <= p2, got p1 = {p1}, p2 = {p2}"
        )));
    }
    let grid = u.grid();
    let dim = f64::from(n.get());
    let omega = sphere_area(n);
    let w = grid.weights(0..grid.len());
    let mass = |p: f64| -> Vec<f64> {
        grid.nodes()
            .iter()
            .zip(u.values())
            .zip(&w)
            .map(|((&r, &val), &wi)| {
                if val == 0.0 {
                    0.0
                } else {
                    omega * wi * k.eval(r) * val.abs().powf(p) * r.powf(dim - 1.0)
                }
            })
            .collect()
    };
    let (m1, m2) = (mass(p1), mass(p2));
    let prefix = |m: &[f64]| -> Vec<f64> {
        let mut acc = vec![0.0];
        for x in m {
            acc.push(acc.last().unwrap() + x);
        }
        acc
    };
    let (c1, c2) = (prefix(&m1), prefix(&m2));
    let len = grid.len();
    let mut best = f64::INFINITY;
    for i in 0..=len {
        // inner part in L^{p1}, outer part in L^{p2}
        let a = c1[i].powf(1.0 / p1).max((c2[len] - c2[i]).powf(1.0 / p2));
        // and the other way round
        let b = c2[i].powf(1.0 / p2).max((c1[len] - c1[i]).powf(1.0 / p1));
        best = best.min(a).min(b);
    }
    if !best.is_finite() {
        return Err(Error::NonIntegrable("sum norm overflowed".into()));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::numerics::{BumpFamily, RadialGrid};
    use crate::scalar::qi;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn hat(grid: &Arc<RadialGrid>) -> RadialFunction {
        RadialFunction::sample(grid.clone(), |r| (1.0 - r).max(0.0))
    }

    #[test]
    fn sphere_areas() {
        assert!((sphere_area(dim(3)) - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!((sphere_area(dim(4)) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
    }

    #[test]
    fn hat_profile_norms() {
        let g = Arc::new(RadialGrid::log_with_breaks(1e-6, 1e3, 1 << 12, &[1.0]).unwrap());
        let u = hat(&g);
        let pi = std::f64::consts::PI;
        let norm = h1v_norm(&u, &Potential::Zero, dim(3)).unwrap();
        assert!((norm - (4.0 * pi / 3.0).sqrt()).abs() / norm < 1e-3);
        let lq = weighted_lq(&u, &Potential::monomial(qi(0)), 2.0, 0.0, f64::INFINITY, dim(3)).unwrap();
        assert!((lq - 4.0 * pi / 30.0).abs() / lq < 1e-3);
        assert_eq!(
            weighted_lq(&u, &Potential::monomial(qi(0)), 2.0, 0.5, 0.5, dim(3)).unwrap(),
            0.0
        );
    }

    #[test]
    fn zero_function() {
        let g = Arc::new(RadialGrid::standard());
        let z = RadialFunction::zero(g);
        let k = Potential::monomial(qi(1));
        assert_eq!(h1v_norm(&z, &Potential::ExpInvR { b: qi(1) }, dim(3)).unwrap(), 0.0);
        assert_eq!(weighted_lq(&z, &k, 3.0, 0.0, f64::INFINITY, dim(3)).unwrap(), 0.0);
        assert_eq!(sum_norm_split(&z, &k, 2.0, 3.0, dim(3)).unwrap(), 0.0);
    }

    #[test]
    fn bump_gradient_norm_is_scale_free() {
        let g = Arc::new(RadialGrid::standard());
        let n = dim(3);
        let a = h1v_norm(&BumpFamily::member(&g, 0.01, n), &Potential::Zero, n).unwrap();
        let b = h1v_norm(&BumpFamily::member(&g, 5.0, n), &Potential::Zero, n).unwrap();
        assert!((a - b).abs() / a < 1e-6, "{a} vs {b}");
    }

    #[test]
    fn sum_norm_bounds() {
        let g = Arc::new(RadialGrid::standard());
        let n = dim(4);
        let k = Potential::monomial(qi(0));
        let u = BumpFamily::member(&g, 0.7, n);
        let l = |p: f64| weighted_lq(&u, &k, p, 0.0, f64::INFINITY, n).unwrap().powf(1.0 / p);
        let s = sum_norm_split(&u, &k, 2.0, 5.0, n).unwrap();
        assert!(s <= l(2.0).max(l(5.0)) * (1.0 + 1e-12));
        let same = sum_norm_split(&u, &k, 3.0, 3.0, n).unwrap();
        assert!(same <= l(3.0) * (1.0 + 1e-12));
        assert!(sum_norm_split(&u, &k, 3.0, 2.0, n).is_err());
    }

    #[test]
    fn singular_potential_inside_support() {
        let g = Arc::new(RadialGrid::log(1e-6, 10.0, 512).unwrap());
        let u = RadialFunction::sample(g, |r| (-r).exp());
        let v = Potential::ExpInvR { b: qi(1) };
        assert!(matches!(h1v_norm(&u, &v, dim(3)), Err(Error::NonIntegrable(_))));
    }
}
