//! Boundary polylines of a region for plotting.

use std::fmt::Write as _;

use serde::Serialize;

use super::{GammaCase, RegionSpec};
use crate::error::{Error, Result};
use crate::exponent::{alpha_thresholds, q_sub, q_subsub, Dimension};
use crate::scalar::Scalar;

/// Which part of the boundary a polyline traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeSide {
    /// The region lies above the curve.
    Lower,
    /// The region lies below the curve.
    Upper,
    /// The region lies to the right of the segment.
    Vertical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polyline {
    /// Name of the active constituent; coinciding constituents are joined by `=`.
    pub label: String,
    pub side: EdgeSide,
    /// `(alpha, q)` vertices in drawing order.
    pub points: Vec<(f64, f64)>,
}

/// Everything needed to draw one region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionBoundary {
    pub case: GammaCase,
    pub beta: f64,
    pub gamma: f64,
    pub n: u32,
    pub alpha_range: (f64, f64),
    /// Height at which unbounded edges are cut for drawing.
    pub q_cap: f64,
    /// `alpha_1`, `alpha_2`, `alpha_3` for reference.
    pub thresholds: [f64; 3],
    pub polylines: Vec<Polyline>,
}

struct Curves {
    beta: f64,
    gamma: f64,
    n: Dimension,
    case: GammaCase,
}

impl Curves {
    fn lower_names(&self) -> &'static [&'static str] {
        match self.case {
            GammaCase::GammaBelowN | GammaCase::GammaEqN => &["1", "2beta"],
            GammaCase::GammaBetween | GammaCase::GammaEq2Nm2 => &["1", "2beta", "q_*"],
            GammaCase::GammaAbove => &["1", "2beta", "q_*", "q_**"],
        }
    }

    fn upper_names(&self) -> &'static [&'static str] {
        match self.case {
            GammaCase::GammaBelowN => &["q_*", "q_**"],
            GammaCase::GammaEqN | GammaCase::GammaBetween => &["q_**"],
            GammaCase::GammaEq2Nm2 | GammaCase::GammaAbove => &[],
        }
    }

    fn eval(&self, name: &str, alpha: f64) -> f64 {
        match name {
            "1" => 1.0,
            "2beta" => 2.0 * self.beta,
            "q_*" => q_sub(&alpha, &self.beta, &self.gamma, self.n).expect("pole excluded by case"),
            "q_**" => q_subsub(&alpha, &self.beta, &self.gamma, self.n).expect("pole excluded by case"),
            _ => unreachable!("unknown constituent {name}"),
        }
    }

    fn envelope(&self, side: EdgeSide, alpha: f64) -> Option<(f64, String)> {
        let names = match side {
            EdgeSide::Lower => self.lower_names(),
            EdgeSide::Upper => self.upper_names(),
            EdgeSide::Vertical => return None,
        };
        let values: Vec<f64> = names.iter().map(|n| self.eval(n, alpha)).collect();
        let best = match side {
            EdgeSide::Lower => values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            _ => values.iter().cloned().fold(f64::INFINITY, f64::min),
        };
        if !best.is_finite() {
            return None;
        }
        let tol = 1e-9 * best.abs().max(1.0);
        let label = names
            .iter()
            .zip(&values)
            .filter(|(_, v)| (**v - best).abs() <= tol)
            .map(|(n, _)| *n)
            .collect::<Vec<_>>()
            .join("=");
        Some((best, label))
    }

    fn open_at(&self, alpha: f64) -> bool {
        let th = alpha_thresholds(&self.beta, &self.gamma, self.n);
        let domain = match self.case {
            GammaCase::GammaEqN => alpha > th.alpha2,
            GammaCase::GammaEq2Nm2 => alpha > th.alpha1,
            _ => true,
        };
        let lo = self.envelope(EdgeSide::Lower, alpha).map(|v| v.0);
        let hi = self.envelope(EdgeSide::Upper, alpha).map_or(f64::INFINITY, |v| v.0);
        domain && lo.is_some_and(|lo| lo < hi)
    }

    fn breakpoints(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut names: Vec<&str> = self.lower_names().to_vec();
        names.extend(self.upper_names());
        let affine = |name: &str| {
            let b = self.eval(name, 0.0);
            (self.eval(name, 1.0) - b, b)
        };
        let mut out = Vec::new();
        for (i, a) in names.iter().enumerate() {
            for b in &names[i + 1..] {
                let (sa, ia) = affine(a);
                let (sb, ib) = affine(b);
                if (sa - sb).abs() > 1e-15 {
                    out.push((ib - ia) / (sa - sb));
                }
            }
        }
        let th = alpha_thresholds(&self.beta, &self.gamma, self.n);
        out.extend([th.alpha1, th.alpha2, th.alpha3]);
        out.retain(|a| *a > lo && *a < hi);
        out
    }
}

/// Trace the region boundary over `alpha_range` with `samples` uniform
/// abscissae plus every corner inside the range.
pub fn boundary_export<T: Scalar>(spec: &RegionSpec<T>, alpha_range: (T, T), samples: usize) -> Result<RegionBoundary> {
    let (lo, hi) = (alpha_range.0.to_f64(), alpha_range.1.to_f64());
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::EmptyRange(format!("alpha range [{lo}, {hi}]")));
    }
    if samples < 2 {
        return Err(Error::EmptyRange(format!("{samples} samples")));
    }
    let curves = Curves {
        beta: spec.beta().to_f64(),
        gamma: spec.gamma().to_f64(),
        n: spec.dimension(),
        case: spec.case(),
    };

    let mut alphas: Vec<f64> = (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect();
    alphas.extend(curves.breakpoints(lo, hi));
    alphas.sort_by(f64::total_cmp);
    alphas.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs().max(1.0));

    let mut polylines = Vec::new();
    for side in [EdgeSide::Lower, EdgeSide::Upper] {
        if side == EdgeSide::Upper && curves.upper_names().is_empty() {
            continue;
        }
        let mut current: Option<Polyline> = None;
        for w in alphas.windows(2) {
            let (a0, a1) = (w[0], w[1]);
            let mid = 0.5 * (a0 + a1);
            if !curves.open_at(mid) {
                polylines.extend(current.take());
                continue;
            }
            let (_, label) = curves.envelope(side, mid).expect("open slice has a finite edge");
            if current.as_ref().map(|p| &p.label) != Some(&label) {
                polylines.extend(current.take());
                let start = curves.envelope(side, a0).expect("finite").0;
                current = Some(Polyline {
                    label,
                    side,
                    points: vec![(a0, start)],
                });
            }
            let end = curves.envelope(side, a1).expect("finite").0;
            current.as_mut().expect("started above").points.push((a1, end));
        }
        polylines.extend(current.take());
    }

    let mut q_cap = polylines
        .iter()
        .flat_map(|p| p.points.iter().map(|pt| pt.1))
        .fold(2.0f64, f64::max);
    q_cap = q_cap * 1.25 + 1.0;

    let th = alpha_thresholds(&curves.beta, &curves.gamma, curves.n);
    let edge = match curves.case {
        GammaCase::GammaEqN => Some(("alpha_2", th.alpha2)),
        GammaCase::GammaEq2Nm2 => Some(("alpha_1", th.alpha1)),
        _ => None,
    };
    if let Some((label, a)) = edge {
        if a > lo && a < hi {
            let bottom = curves.envelope(EdgeSide::Lower, a).expect("finite").0;
            let top = curves.envelope(EdgeSide::Upper, a).map_or(q_cap, |v| v.0);
            if bottom < top {
                polylines.push(Polyline {
                    label: label.into(),
                    side: EdgeSide::Vertical,
                    points: vec![(a, bottom), (a, top)],
                });
            }
        }
    }

    Ok(RegionBoundary {
        case: curves.case,
        beta: curves.beta,
        gamma: curves.gamma,
        n: curves.n.get(),
        alpha_range: (lo, hi),
        q_cap,
        thresholds: [th.alpha1, th.alpha2, th.alpha3],
        polylines,
    })
}

impl RegionBoundary {
    /// One CSV document per polyline, columns `alpha,q,label`.
    pub fn to_csv(&self) -> Vec<String> {
        self.polylines
            .iter()
            .map(|p| {
                let mut s = String::from("alpha,q,label\n");
                for (a, q) in &p.points {
                    let _ = writeln!(s, "{a},{q},{}", p.label);
                }
                s
            })
            .collect()
    }

    /// Static SVG 1.1 drawing of the boundary.
    pub fn to_svg(&self) -> String {
        const W: f64 = 640.0;
        const H: f64 = 480.0;
        const PAD: f64 = 48.0;
        let (a0, a1) = self.alpha_range;
        let q0 = 0.0f64.min(
            self.polylines
                .iter()
                .flat_map(|p| p.points.iter().map(|pt| pt.1))
                .fold(0.0, f64::min),
        );
        let q1 = self.q_cap;
        let x = |a: f64| PAD + (a - a0) / (a1 - a0) * (W - 2.0 * PAD);
        let y = |q: f64| H - PAD - (q.min(q1) - q0) / (q1 - q0) * (H - 2.0 * PAD);

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">
<rect width="{W}" height="{H}" fill="white"/>
<text x="{PAD}" y="24" font-family="sans-serif" font-size="14">beta = {}, gamma = {}, N = {} ({})</text>"#,
            self.beta,
            self.gamma,
            self.n,
            self.case.tag()
        );
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888"/>
<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#888"/>"##,
            PAD,
            H - PAD,
            W - PAD,
            H - PAD,
            PAD,
            PAD,
            PAD,
            H - PAD
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">alpha</text>
<text x="8" y="{}" font-family="sans-serif" font-size="12">q</text>"#,
            W - PAD,
            H - PAD + 20.0,
            PAD
        );
        for p in &self.polylines {
            let color = match p.side {
                EdgeSide::Lower => "#1f77b4",
                EdgeSide::Upper => "#d62728",
                EdgeSide::Vertical => "#2ca02c",
            };
            let pts: Vec<String> = p
                .points
                .iter()
                .map(|(a, q)| format!("{:.2},{:.2}", x(*a), y(*q)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                pts.join(" ")
            );
            let (la, lq) = p.points[p.points.len() / 2];
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#,
                x(la) + 4.0,
                y(lq) - 4.0,
                p.label
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
