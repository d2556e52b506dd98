use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use super::grid::RadialFunction;
use super::norms::{h1v_norm, sampled, sphere_area};
use crate::error::{Error, Result};
use crate::exponent::Dimension;
use crate::potential::Potential;

/// Relative slack allowed on the right-hand side.
pub const INEQUALITY_TOL: f64 = 1e-9;

/// Outcome of comparing both sides of an inequality by quadrature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub case_label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    /// Constants that entered the right-hand side.
    pub constants: BTreeMap<String, f64>,
}

impl InequalityReport {
    fn new(case_label: impl Into<String>, lhs: f64, rhs: f64, constants: BTreeMap<String, f64>) -> Self {
        InequalityReport {
            case_label: case_label.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
            holds: lhs <= rhs * (1.0 + INEQUALITY_TOL),
            constants,
        }
    }
}

/// Sharp constant `S_N` in `||u||_{2*} <= S_N ||grad u||_2`.
pub fn sobolev_constant(n: Dimension) -> f64 {
    let d = f64::from(n.get());
    let s = PI * d * (d - 2.0) * (gamma(d / 2.0) / gamma(d)).powf(2.0 / d);
    s.powf(-0.5)
}

/// Constant in `|u(r)| <= C ||grad u|| r^{-(N-2)/2}` obtained by
/// Cauchy-Schwarz on `u(r) = -int_r^inf u'`.
pub fn ni_constant(n: Dimension) -> f64 {
    let d = f64::from(n.get());
    1.0 / (sphere_area(n) * (d - 2.0)).sqrt()
}

/// Weight used by [`pointwise_ratio`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointwiseMode {
    Ni,
    /// Decay `V >= lambda r^{-gamma}` near the origin; `u` supported in `B_R`.
    Origin {
        gamma: f64,
        lambda: f64,
        radius: f64,
    },
    /// Decay `V >= lambda r^{-gamma}` outside `B_R`.
    Infinity {
        gamma: f64,
        lambda: f64,
        radius: f64,
    },
}

/// `max |u(r)| w(r) / ||u||` over the relevant nodes.
pub fn pointwise_ratio(u: &RadialFunction, v: &Potential, mode: PointwiseMode, n: Dimension) -> Result<f64> {
    if u.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let norm = h1v_norm(u, v, n)?;
    if norm == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let d = f64::from(n.get());
    let nodes = u.grid().nodes();
    if let PointwiseMode::Origin { radius, .. } = mode {
        if let Some((_, last)) = u.support() {
            if nodes[last] >= radius {
                return Err(Error::PreconditionViolated(format!(
                    "support reaches r = {} >= R = {radius}",
                    nodes[last]
                )));
            }
        }
    }
    let weight = |r: f64| -> Option<f64> {
        match mode {
            PointwiseMode::Ni => Some(r.powf((d - 2.0) / 2.0)),
            PointwiseMode::Infinity { gamma, lambda, radius } => {
                (r > radius).then(|| r.powf((2.0 * (d - 1.0) - gamma) / 4.0) * lambda.powf(0.25))
            }
            PointwiseMode::Origin { gamma, lambda, radius } => (r < radius).then(|| {
                let denom = lambda.powf(-0.5) + radius.powf((gamma - 2.0) / 2.0) / lambda;
                r.powf((2.0 * d - 2.0 - gamma) / 4.0) / denom.sqrt()
            }),
        }
    };
    let weighted: Vec<Option<f64>> = nodes
        .iter()
        .zip(u.values())
        .map(|(&r, &x)| weight(r).map(|w| x.abs() * w))
        .collect();
    let sup = refined_max(nodes, &weighted);
    Ok(sup / norm)
}

/// Largest sample, refined by the parabola through it and its neighbours
/// in `ln r` when the peak is interior.
fn refined_max(nodes: &[f64], f: &[Option<f64>]) -> f64 {
    let Some((i, best)) = f
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
    else {
        return 0.0;
    };
    if i == 0 || i + 1 >= f.len() {
        return best;
    }
    let (Some(fl), Some(fr)) = (f[i - 1], f[i + 1]) else {
        return best;
    };
    let (tl, t0, tr) = (nodes[i - 1].ln(), nodes[i].ln(), nodes[i + 1].ln());
    let (dl, dr) = (t0 - tl, tr - t0);
    // divided differences of the interpolating parabola
    let s1 = (best - fl) / dl;
    let s2 = (fr - best) / dr;
    let c = (s2 - s1) / (dl + dr);
    if c >= 0.0 {
        return best;
    }
    let slope0 = s1 + c * dl;
    best - slope0 * slope0 / (4.0 * c)
}

struct Annulus {
    idx: std::ops::Range<usize>,
    mu: Vec<f64>,
}

impl Annulus {
    fn new(u: &RadialFunction, r_lo: f64, r_hi: f64, n: Dimension) -> Result<Self> {
        let grid = u.grid();
        let idx = grid.index_range(r_lo, r_hi);
        if idx.len() < 2 {
            return Err(Error::EmptyRange(format!("fewer than two nodes in [{r_lo}, {r_hi}]")));
        }
        let d = f64::from(n.get());
        let omega = sphere_area(n);
        let w = grid.weights(idx.clone());
        let mu = grid
            .nodes()
            .iter()
            .zip(&w)
            .map(|(r, w)| omega * w * r.powf(d - 1.0))
            .collect();
        Ok(Annulus { idx, mu })
    }

    fn integrate(&self, f: impl Fn(usize) -> f64) -> f64 {
        self.idx
            .clone()
            .map(|i| if self.mu[i] == 0.0 { 0.0 } else { self.mu[i] * f(i) })
            .sum()
    }
}

/// Compares `int_Omega K |u|^{q-1} |h|` with the bound obtained from the
/// growth estimate `K <= Lambda r^alpha V^beta` and `|u| <= m r^{-nu}` on the
/// annulus `Omega`, splitting on `beta` as in the proof of the bound.
#[allow(clippy::too_many_arguments)]
pub fn lemma_omega_check(
    u: &RadialFunction,
    h: &RadialFunction,
    annulus: (f64, f64),
    alpha: f64,
    beta: f64,
    q: f64,
    v: &Potential,
    k: &Potential,
    m: f64,
    nu: f64,
    n: Dimension,
) -> Result<InequalityReport> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::OutOfRange(format!("beta = {beta} outside [0, 1]")));
    }
    if beta == 1.0 && q <= 2.0 {
        return Err(Error::BranchDomain(format!("beta = 1 needs q > 2, got q = {q}")));
    }
    if !(q > 1.0f64.max(2.0 * beta)) {
        return Err(Error::PreconditionViolated(format!(
            "q = {q} must exceed max(1, 2 beta)"
        )));
    }
    let d = f64::from(n.get());
    let om = Annulus::new(u, annulus.0, annulus.1, n)?;
    let nodes = u.grid().nodes();
    let (uv, hv) = (u.values(), h.values());
    for i in om.idx.clone() {
        let bound = m * nodes[i].powf(-nu);
        if uv[i].abs() > bound * (1.0 + 1e-12) {
            return Err(Error::PreconditionViolated(format!(
                "|u| = {} exceeds m r^-nu = {bound} at r = {}",
                uv[i].abs(),
                nodes[i]
            )));
        }
    }
    let (vr, kr) = (sampled(v, nodes), sampled(k, nodes));
    let lambda = om
        .idx
        .clone()
        .map(|i| {
            let denom = nodes[i].powf(alpha) * if beta == 0.0 { 1.0 } else { vr[i].powf(beta) };
            if kr[i] == 0.0 {
                0.0
            } else {
                kr[i] / denom
            }
        })
        .fold(0.0, f64::max);
    let lhs = om.integrate(|i| kr[i] * uv[i].abs().powf(q - 1.0) * hv[i].abs());
    let h_norm = h1v_norm(h, v, n)?;
    let mut constants = BTreeMap::from([("Lambda".to_string(), lambda)]);

    let (label, rhs) = if beta <= 0.5 {
        let s_n = sobolev_constant(n);
        constants.insert("S_N".into(), s_n);
        let p = (d + 2.0 * (1.0 - 2.0 * beta)) / (2.0 * d);
        let e = (alpha - nu * (q - 1.0)) / p;
        let radial = om.integrate(|i| nodes[i].powf(e)).powf(p);
        (
            "beta in [0, 1/2]",
            lambda * m.powf(q - 1.0) * s_n.powf(1.0 - 2.0 * beta) * radial * h_norm,
        )
    } else if beta < 1.0 {
        let u_norm = h1v_norm(u, v, n)?;
        let e = (alpha - nu * (q - 2.0 * beta)) / (1.0 - beta);
        let radial = om.integrate(|i| nodes[i].powf(e)).powf(1.0 - beta);
        (
            "beta in (1/2, 1)",
            lambda * m.powf(q - 2.0 * beta) * radial * u_norm.powf(2.0 * beta - 1.0) * h_norm,
        )
    } else {
        let e = 2.0 * alpha - 2.0 * nu * (q - 2.0);
        let weighted = om.integrate(|i| nodes[i].powf(e) * vr[i] * uv[i] * uv[i]).sqrt();
        ("beta = 1", lambda * m.powf(q - 2.0) * weighted * h_norm)
    };
    // 0 * inf from a vanishing factor still bounds a zero left side
    let rhs = if rhs.is_nan() && lhs == 0.0 { 0.0 } else { rhs };
    Ok(InequalityReport::new(label, lhs, rhs, constants))
}

/// Compares `int_{r<|x|<R} K |u|^{q-1} |h|` with the annulus bound built
/// from `||K||_{L^s}`, with `q~ = 2(1 + 1/N - 1/s)` separating the branches.
#[allow(clippy::too_many_arguments)]
pub fn annulus_check(
    u: &RadialFunction,
    h: &RadialFunction,
    r: f64,
    big_r: f64,
    q: f64,
    k: &Potential,
    s: f64,
    v: &Potential,
    n: Dimension,
) -> Result<InequalityReport> {
    let d = f64::from(n.get());
    if !(big_r > r && r > 0.0) {
        return Err(Error::OutOfRange(format!("need 0 < r < R, got r = {r}, R = {big_r}")));
    }
    if !(q > 1.0) {
        return Err(Error::OutOfRange(format!("q = {q} must exceed 1")));
    }
    if !(s > 2.0 * d / (d + 2.0)) {
        return Err(Error::OutOfRange(format!("s = {s} must exceed 2N/(N+2)")));
    }
    let om = Annulus::new(u, r, big_r, n)?;
    let nodes = u.grid().nodes();
    let (uv, hv) = (u.values(), h.values());
    let kr = sampled(k, nodes);
    let k_s = om.integrate(|i| kr[i].powf(s));
    if !k_s.is_finite() {
        return Err(Error::PreconditionViolated(
            "K^s is not integrable on the annulus".into(),
        ));
    }
    let k_norm = k_s.powf(1.0 / s);
    let q_tilde = 2.0 * (1.0 + 1.0 / d - 1.0 / s);
    let s_n = sobolev_constant(n);
    let h_norm = h1v_norm(h, v, n)?;
    let u_l2 = om.integrate(|i| uv[i] * uv[i]);
    let lhs = om.integrate(|i| kr[i] * uv[i].abs().powf(q - 1.0) * hv[i].abs());
    let mut constants = BTreeMap::from([
        ("S_N".to_string(), s_n),
        ("q_tilde".to_string(), q_tilde),
        ("K_Ls".to_string(), k_norm),
    ]);
    let (label, rhs) = if q <= q_tilde {
        let area = om.integrate(|_| 1.0);
        constants.insert("measure".into(), area);
        (
            "q <= q~",
            s_n * k_norm * h_norm * area.powf((q_tilde - q) / 2.0) * u_l2.powf((q - 1.0) / 2.0),
        )
    } else {
        let u_norm = h1v_norm(u, v, n)?;
        let theory = ni_constant(n);
        let observed = if u_norm > 0.0 {
            om.idx
                .clone()
                .map(|i| uv[i].abs() * nodes[i].powf((d - 2.0) / 2.0) / u_norm)
                .fold(0.0, f64::max)
        } else {
            0.0
        };
        let c_n = theory.max(observed);
        constants.insert("C_N_bound".into(), theory);
        constants.insert("C_N_observed".into(), observed);
        let point = c_n * u_norm / r.powf((d - 2.0) / 2.0);
        (
            "q > q~",
            s_n * k_norm * h_norm * point.powf(q - q_tilde) * u_l2.powf((q_tilde - 1.0) / 2.0),
        )
    };
    Ok(InequalityReport::new(label, lhs, rhs, constants))
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

    #[test]
    fn sobolev_constant_n3() {
        // S = 3 (pi/2)^{4/3} in dimension three
        let s = 3.0 * (PI / 2.0).powf(4.0 / 3.0);
        assert!((sobolev_constant(dim(3)) - s.powf(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn ni_ratio_is_scale_free() {
        let g = Arc::new(RadialGrid::standard());
        let n = dim(3);
        let ratios: Vec<f64> = (-4..=4)
            .map(|j| {
                let u = BumpFamily::member(&g, 2f64.powi(j), n);
                pointwise_ratio(&u, &Potential::Zero, PointwiseMode::Ni, n).unwrap()
            })
            .collect();
        for r in &ratios {
            assert!((r - ratios[0]).abs() / ratios[0] < 1e-6);
            assert!(*r <= ni_constant(n));
        }
    }

    #[test]
    fn pointwise_errors() {
        let g = Arc::new(RadialGrid::standard());
        let n = dim(3);
        let z = RadialFunction::zero(g.clone());
        assert_eq!(
            pointwise_ratio(&z, &Potential::Zero, PointwiseMode::Ni, n),
            Err(Error::ZeroFunction)
        );
        let u = BumpFamily::member(&g, 1.0, n);
        let mode = PointwiseMode::Origin {
            gamma: 3.0,
            lambda: 1.0,
            radius: 1.0,
        };
        assert!(matches!(
            pointwise_ratio(&u, &Potential::Zero, mode, n),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn omega_examples() {
        let g = Arc::new(RadialGrid::standard());
        let n = dim(3);
        let u = BumpFamily::member(&g, 0.5, n);
        let m = u.values().iter().cloned().fold(0.0, f64::max);
        let k = Potential::monomial(qi(0));
        let rep = lemma_omega_check(&u, &u, (0.1, 2.0), 0.0, 0.0, 3.0, &Potential::Zero, &k, m, 0.0, n).unwrap();
        assert!(rep.holds, "{rep:?}");
        let v = Potential::monomial(qi(-2));
        let err = lemma_omega_check(&u, &u, (0.1, 2.0), 0.0, 1.0, 2.0, &v, &k, m, 0.0, n);
        assert!(matches!(err, Err(Error::BranchDomain(_))));
        let z = RadialFunction::zero(g);
        let rep = lemma_omega_check(&z, &u, (0.1, 2.0), 0.0, 0.0, 3.0, &Potential::Zero, &k, m, 0.0, n).unwrap();
        assert_eq!(rep.lhs, 0.0);
        assert!(rep.holds);
    }

    #[test]
    fn annulus_examples() {
        let g = Arc::new(RadialGrid::standard());
        let n = dim(3);
        let u = BumpFamily::member(&g, 0.5, n);
        let k = Potential::monomial(qi(0));
        for (q, label) in [(1.5, "q <= q~"), (3.0, "q > q~")] {
            let rep = annulus_check(&u, &u, 0.2, 0.9, q, &k, 2.0, &Potential::Zero, n).unwrap();
            assert!(rep.holds, "{rep:?}");
            assert_eq!(rep.case_label, label);
        }
        let z = RadialFunction::zero(g);
        assert!(
            annulus_check(&z, &z, 0.2, 0.9, 3.0, &k, 2.0, &Potential::Zero, n)
                .unwrap()
                .holds
        );
    }
}
