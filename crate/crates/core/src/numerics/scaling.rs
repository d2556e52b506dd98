use std::sync::Arc;

use super::grid::{BumpFamily, RadialGrid};
use super::norms::{h1v_norm, sampled, sphere_area};
use crate::error::{Error, Result};
use crate::exponent::{q_star, Dimension};
use crate::potential::{Potential, Side};

/// `(N-2)(q*(alpha, 0) - q)/2`, the exponent of `R` picked up by the
/// origin functional under `V = 0`, `K = r^alpha`.
pub fn scaling_exponent(alpha: f64, q: f64, n: Dimension) -> f64 {
    (f64::from(n.get()) - 2.0) * (q_star(&alpha, &0.0, n) - q) / 2.0
}

fn side_range(side: Side, radius: f64) -> (f64, f64) {
    match side {
        Side::Origin => (0.0, radius),
        Side::Infinity => (radius, f64::INFINITY),
    }
}

struct Member {
    values: Vec<f64>,
    norm: f64,
}

fn normalized_members(
    grid: &Arc<RadialGrid>,
    radius: f64,
    v: &Potential,
    family: &BumpFamily,
    n: Dimension,
) -> Result<Vec<Member>> {
    if family.scales.is_empty() {
        return Err(Error::EmptyRange("trial family has no scales".into()));
    }
    if !(radius > 0.0) {
        return Err(Error::OutOfRange(format!("radius {radius} must be positive")));
    }
    let mut out = Vec::new();
    for u in family.members(grid, radius, n) {
        let norm = h1v_norm(&u, v, n)?;
        if norm > 0.0 {
            out.push(Member {
                values: u.values().to_vec(),
                norm,
            });
        }
    }
    Ok(out)
}

fn side_integral(grid: &RadialGrid, f: &[f64], kr: &[f64], side: Side, radius: f64, n: Dimension) -> f64 {
    let dim = f64::from(n.get());
    let g: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(f)
        .zip(kr)
        .map(|((&r, &x), &k)| if x == 0.0 { 0.0 } else { k * x * r.powf(dim - 1.0) })
        .collect();
    let (lo, hi) = side_range(side, radius);
    sphere_area(n) * grid.integrate(&g, lo, hi)
}

/// Lower bound for the supremum of `int K |u|^q` over unit-norm `u`, taken
/// over `B_R` (origin) or its complement (infinity), from the trial family.
#[allow(clippy::too_many_arguments)]
pub fn s_lower_bound(
    grid: &Arc<RadialGrid>,
    q: f64,
    radius: f64,
    side: Side,
    v: &Potential,
    k: &Potential,
    family: &BumpFamily,
    n: Dimension,
) -> Result<f64> {
    let kr = sampled(k, grid.nodes());
    let mut best: f64 = 0.0;
    for m in normalized_members(grid, radius, v, family, n)? {
        let f: Vec<f64> = m.values.iter().map(|x| (x.abs() / m.norm).powf(q)).collect();
        best = best.max(side_integral(grid, &f, &kr, side, radius, n));
    }
    if !best.is_finite() {
        return Err(Error::NonIntegrable("trial integral overflowed".into()));
    }
    Ok(best)
}

/// Lower bound for the supremum of `int K |u|^{q-1} |h|` over unit-norm
/// `u`, `h`, with both running over the trial family.
#[allow(clippy::too_many_arguments)]
pub fn r_lower_bound(
    grid: &Arc<RadialGrid>,
    q: f64,
    radius: f64,
    side: Side,
    v: &Potential,
    k: &Potential,
    family: &BumpFamily,
    n: Dimension,
) -> Result<f64> {
    let kr = sampled(k, grid.nodes());
    let members = normalized_members(grid, radius, v, family, n)?;
    let mut best: f64 = 0.0;
    for u in &members {
        for h in &members {
            let f: Vec<f64> = u
                .values
                .iter()
                .zip(&h.values)
                .map(|(a, b)| (a.abs() / u.norm).powf(q - 1.0) * b.abs() / h.norm)
                .collect();
            best = best.max(side_integral(grid, &f, &kr, side, radius, n));
        }
    }
    if !best.is_finite() {
        return Err(Error::NonIntegrable("trial integral overflowed".into()));
    }
    Ok(best)
}
