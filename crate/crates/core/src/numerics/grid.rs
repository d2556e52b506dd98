use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exponent::Dimension;

/// Strictly increasing positive nodes, log-spaced unless built from a list.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    logs: Vec<f64>,
}

impl RadialGrid {
    pub const MIN_NODES: usize = 64;

    /// `count` log-spaced nodes on `[lo, hi]`.
    pub fn log(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::EmptyRange(format!("grid [{lo}, {hi}]")));
        }
        let (a, b) = (lo.ln(), hi.ln());
        let steps = count.saturating_sub(1).max(1) as f64;
        let nodes = (0..count).map(|i| (a + (b - a) * i as f64 / steps).exp()).collect();
        RadialGrid::from_nodes(nodes)
    }

    /// Log grid with the nearest node moved onto each of `breaks`, so that
    /// kinks of piecewise profiles sit on nodes.
    pub fn log_with_breaks(lo: f64, hi: f64, count: usize, breaks: &[f64]) -> Result<Self> {
        let mut g = RadialGrid::log(lo, hi, count)?;
        for &b in breaks {
            if b > lo && b < hi {
                let i = g.nodes.partition_point(|x| *x < b);
                let j = if i > 0 && (b - g.nodes[i - 1]) < (g.nodes[i] - b) {
                    i - 1
                } else {
                    i
                };
                g.nodes[j] = b;
            }
        }
        RadialGrid::from_nodes(g.nodes)
    }

    /// `[1e-6, 1e3]` with `2^12` nodes.
    pub fn standard() -> Self {
        RadialGrid::log(1e-6, 1e3, 1 << 12).expect("valid constants")
    }

    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < Self::MIN_NODES {
            return Err(Error::OutOfRange(format!(
                "{} nodes, need at least {}",
                nodes.len(),
                Self::MIN_NODES
            )));
        }
        if nodes[0] <= 0.0 || nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::OutOfRange(
                "nodes must be positive and strictly increasing".into(),
            ));
        }
        let logs = nodes.iter().map(|r| r.ln()).collect();
        Ok(RadialGrid { nodes, logs })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Grid with every cell halved.
    pub fn refined(&self) -> Self {
        let mut nodes = Vec::with_capacity(2 * self.len() - 1);
        for w in self.nodes.windows(2) {
            nodes.push(w[0]);
            nodes.push((w[0] * w[1]).sqrt());
        }
        nodes.push(*self.nodes.last().expect("nonempty"));
        RadialGrid::from_nodes(nodes).expect("refinement keeps order")
    }

    /// `int f(r) dr` over `[r_lo, r_hi]` intersected with the grid, trapezoid
    /// in `ln r`, with the integrand interpolated linearly in `ln r` at cuts.
    pub fn integrate(&self, f: &[f64], r_lo: f64, r_hi: f64) -> f64 {
        debug_assert_eq!(f.len(), self.len());
        let g = |i: usize| f[i] * self.nodes[i];
        let t_lo = if r_lo > 0.0 { r_lo.ln() } else { f64::NEG_INFINITY };
        let t_hi = if r_hi.is_finite() { r_hi.ln() } else { f64::INFINITY };
        let mut total = 0.0;
        for i in 0..self.len() - 1 {
            let (a, b) = (self.logs[i], self.logs[i + 1]);
            let (lo, hi) = (a.max(t_lo), b.min(t_hi));
            if hi <= lo {
                continue;
            }
            let (ga, gb) = (g(i), g(i + 1));
            if ga == 0.0 && gb == 0.0 {
                continue;
            }
            let at = |t: f64| ga + (gb - ga) * (t - a) / (b - a);
            total += 0.5 * (at(lo) + at(hi)) * (hi - lo);
        }
        total
    }

    /// Trapezoid weights `w_i` with `int f dr ~ sum w_i f_i` over the nodes
    /// with indices in `range`.
    pub fn weights(&self, range: std::ops::Range<usize>) -> Vec<f64> {
        let mut w = vec![0.0; self.len()];
        let idx: Vec<usize> = range.collect();
        for pair in idx.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            let half = 0.5 * (self.logs[j] - self.logs[i]);
            w[i] += half * self.nodes[i];
            w[j] += half * self.nodes[j];
        }
        w
    }

    /// Indices of the nodes in `[r_lo, r_hi]`.
    pub fn index_range(&self, r_lo: f64, r_hi: f64) -> std::ops::Range<usize> {
        let a = self.nodes.partition_point(|r| *r < r_lo);
        let b = self.nodes.partition_point(|r| *r <= r_hi);
        a..b.max(a)
    }
}

/// A radial profile sampled on a grid, with its derivative.
#[derive(Debug, Clone)]
pub struct RadialFunction {
    grid: Arc<RadialGrid>,
    values: Vec<f64>,
    derivative: Vec<f64>,
    exact_derivative: bool,
}

impl RadialFunction {
    /// Sample `f`; the derivative comes from centered differences in `ln r`.
    pub fn sample(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = grid.nodes().iter().map(|&r| f(r)).collect();
        RadialFunction::from_values(grid, values)
    }

    pub fn from_values(grid: Arc<RadialGrid>, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.len(), "one value per node");
        let derivative = finite_difference(&grid, &values);
        RadialFunction {
            grid,
            values,
            derivative,
            exact_derivative: false,
        }
    }

    /// Sample `f` together with an exact derivative `df`.
    pub fn with_derivative(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> Self {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        let derivative = grid.nodes().iter().map(|&r| df(r)).collect();
        RadialFunction {
            grid,
            values,
            derivative,
            exact_derivative: true,
        }
    }

    pub fn zero(grid: Arc<RadialGrid>) -> Self {
        let n = grid.len();
        RadialFunction {
            grid,
            values: vec![0.0; n],
            derivative: vec![0.0; n],
            exact_derivative: true,
        }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn derivative(&self) -> &[f64] {
        &self.derivative
    }

    /// Whether the derivative was supplied rather than differenced.
    pub fn has_exact_derivative(&self) -> bool {
        self.exact_derivative
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    /// Indices of the first and last nonzero values, if any.
    pub fn support(&self) -> Option<(usize, usize)> {
        let first = self.values.iter().position(|v| *v != 0.0)?;
        let last = self.values.iter().rposition(|v| *v != 0.0)?;
        Some((first, last))
    }

    pub fn scaled(&self, c: f64) -> Self {
        RadialFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
            derivative: self.derivative.iter().map(|v| v * c).collect(),
            exact_derivative: self.exact_derivative,
        }
    }
}

fn finite_difference(grid: &RadialGrid, v: &[f64]) -> Vec<f64> {
    let r = grid.nodes();
    let t: Vec<f64> = r.iter().map(|x| x.ln()).collect();
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                _ if i == n - 1 => (n - 2, n - 1),
                _ => (i - 1, i + 1),
            };
            (v[b] - v[a]) / (t[b] - t[a]) / r[i]
        })
        .collect()
}

/// `exp(-1/(1-(t-1)^2))` on `0 < t < 2`, zero elsewhere.
pub fn bump_profile(t: f64) -> f64 {
    let w = 1.0 - (t - 1.0) * (t - 1.0);
    if w <= 0.0 {
        0.0
    } else {
        (-1.0 / w).exp()
    }
}

pub fn bump_profile_derivative(t: f64) -> f64 {
    let w = 1.0 - (t - 1.0) * (t - 1.0);
    if w <= 0.0 {
        0.0
    } else {
        (-1.0 / w).exp() * (-2.0 * (t - 1.0)) / (w * w)
    }
}

/// How family scales are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleMode {
    /// Scales are used as given.
    Absolute,
    /// Scales multiply the radius under study.
    RelativeToRadius,
}

/// Profiles `u_s(r) = s^{-(N-2)/2} phi(r/s)` with `phi` the bump on `[0, 2]`.
/// Their gradient norms do not depend on `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpFamily {
    pub scales: Vec<f64>,
    pub mode: ScaleMode,
}

impl BumpFamily {
    pub fn absolute(scales: Vec<f64>) -> Self {
        BumpFamily {
            scales,
            mode: ScaleMode::Absolute,
        }
    }

    pub fn relative(scales: Vec<f64>) -> Self {
        BumpFamily {
            scales,
            mode: ScaleMode::RelativeToRadius,
        }
    }

    /// One member at absolute scale `s`, with the exact derivative.
    pub fn member(grid: &Arc<RadialGrid>, s: f64, n: Dimension) -> RadialFunction {
        let amp = s.powf(-(f64::from(n.get()) - 2.0) / 2.0);
        RadialFunction::with_derivative(
            grid.clone(),
            |r| amp * bump_profile(r / s),
            |r| amp * bump_profile_derivative(r / s) / s,
        )
    }

    /// Absolute scales for a study at `radius`.
    pub fn scales_at(&self, radius: f64) -> Vec<f64> {
        match self.mode {
            ScaleMode::Absolute => self.scales.clone(),
            ScaleMode::RelativeToRadius => self.scales.iter().map(|c| c * radius).collect(),
        }
    }

    pub fn members(&self, grid: &Arc<RadialGrid>, radius: f64, n: Dimension) -> Vec<RadialFunction> {
        self.scales_at(radius)
            .into_iter()
            .map(|s| BumpFamily::member(grid, s, n))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(RadialGrid::log(1.0, 0.5, 100).is_err());
        assert!(RadialGrid::log(1e-3, 1.0, 10).is_err());
        assert!(RadialGrid::from_nodes((1..=100).rev().map(f64::from).collect()).is_err());
        let g = RadialGrid::standard();
        assert_eq!(g.len(), 4096);
        assert!((g.nodes()[0] - 1e-6).abs() < 1e-18);
    }

    #[test]
    fn breaks_land_on_nodes() {
        let g = RadialGrid::log_with_breaks(1e-3, 10.0, 1001, &[1.0, 0.37]).unwrap();
        assert!(g.nodes().contains(&1.0));
        assert!(g.nodes().contains(&0.37));
    }

    #[test]
    fn integrates_powers() {
        let g = RadialGrid::log(1e-4, 10.0, 4000).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|r| r * r).collect();
        let exact = (8.0 - 1e-3) / 3.0;
        let got = g.integrate(&f, 0.1, 2.0);
        assert!((got - exact).abs() / exact < 1e-5, "{got} vs {exact}");
        assert_eq!(g.integrate(&f, 1.0, 1.0), 0.0);
        let w = g.weights(g.index_range(0.0, f64::INFINITY));
        let total: f64 = w.iter().zip(&f).map(|(w, f)| w * f).sum();
        assert!((total - g.integrate(&f, 0.0, f64::INFINITY)).abs() < 1e-9);
    }

    #[test]
    fn finite_differences_follow_slope() {
        let g = Arc::new(RadialGrid::log(1e-2, 10.0, 2000).unwrap());
        let u = RadialFunction::sample(g.clone(), |r| r.powi(3));
        for (r, d) in g.nodes().iter().zip(u.derivative()).skip(1).take(1990) {
            assert!((d - 3.0 * r * r).abs() <= 1e-4 * 3.0 * r * r);
        }
    }

    #[test]
    fn bump_derivative_matches_difference() {
        for t in [0.3, 0.9, 1.4, 1.8] {
            let h = 1e-6;
            let fd = (bump_profile(t + h) - bump_profile(t - h)) / (2.0 * h);
            assert!((fd - bump_profile_derivative(t)).abs() < 1e-7);
        }
        assert_eq!(bump_profile(2.5), 0.0);
    }
}
