//! Admissible exponent ranges from growth and decay data.
//!
//! Near the origin the range for `q1` is an open interval; at infinity the
//! range for `q2` is an open half-line. Growth data come as families of
//! `(alpha, beta)` pairs: for each `beta` in a range, either every `alpha`
//! works or `alpha` is bounded by an affine function of `beta` (from above at
//! the origin, from below at infinity). The engine optimizes over each family
//! exactly by splitting the `beta` range at every point where two of the
//! affine quantities involved cross.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::{
    alpha_thresholds, base_floor, decay_threshold, growth_threshold, q_star, q_sub, q_subsub, Dimension, GrowthPair,
};
use crate::interval::QInterval;
use crate::region::{slice_interval, RegionSpec};
use crate::scalar::{fmt_q, q, qi, serde_q, ExtReal, Q};

/// A range of `beta` values with independent open/closed ends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaRange {
    #[serde(with = "serde_q")]
    pub lo: Q,
    #[serde(with = "serde_q")]
    pub hi: Q,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

impl BetaRange {
    pub fn point(beta: Q) -> Self {
        BetaRange {
            lo: beta.clone(),
            hi: beta,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn closed(lo: Q, hi: Q) -> Self {
        BetaRange {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    pub fn contains(&self, b: &Q) -> bool {
        let above = if self.lo_open { *b > self.lo } else { *b >= self.lo };
        let below = if self.hi_open { *b < self.hi } else { *b <= self.hi };
        above && below
    }

    fn check_unit(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::InvalidSpec(format!("empty beta range {}", self.describe())));
        }
        if self.lo < qi(0) || self.hi > qi(1) {
            return Err(Error::InvalidSpec(format!(
                "beta range {} leaves [0, 1]",
                self.describe()
            )));
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        if self.lo == self.hi && !self.lo_open && !self.hi_open {
            return format!("{{{}}}", fmt_q(&self.lo));
        }
        format!(
            "{}{}, {}{}",
            if self.lo_open { "(" } else { "[" },
            fmt_q(&self.lo),
            fmt_q(&self.hi),
            if self.hi_open { ")" } else { "]" }
        )
    }
}

/// Admissible `(alpha, beta)` pairs over a range of `beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthFamily {
    /// `alpha` up to (origin) or down to (infinity) `slope * beta + intercept`.
    Bounded {
        betas: BetaRange,
        #[serde(with = "serde_q")]
        slope: Q,
        #[serde(with = "serde_q")]
        intercept: Q,
    },
    /// Every `alpha` is admissible.
    Unbounded { betas: BetaRange },
}

impl GrowthFamily {
    pub fn pair(p: &GrowthPair<Q>) -> Self {
        GrowthFamily::Bounded {
            betas: BetaRange::point(p.beta.clone()),
            slope: qi(0),
            intercept: p.alpha.clone(),
        }
    }

    pub fn unbounded_at(beta: Q) -> Self {
        GrowthFamily::Unbounded {
            betas: BetaRange::point(beta),
        }
    }

    pub fn betas(&self) -> &BetaRange {
        match self {
            GrowthFamily::Bounded { betas, .. } | GrowthFamily::Unbounded { betas } => betas,
        }
    }

    fn alpha_at(&self, beta: &Q) -> Option<Q> {
        match self {
            GrowthFamily::Bounded { slope, intercept, .. } => Some(slope.clone() * beta.clone() + intercept.clone()),
            GrowthFamily::Unbounded { .. } => None,
        }
    }

    /// Rewrite a single pair with `beta < 0` as `(alpha - beta gamma, 0)`.
    fn normalized(self, gamma: Option<&ExtReal<Q>>) -> Self {
        let GrowthFamily::Bounded {
            betas,
            slope,
            intercept,
        } = &self
        else {
            return self;
        };
        if betas.lo != betas.hi || betas.lo >= qi(0) {
            return self;
        }
        let beta = betas.lo.clone();
        let alpha = slope.clone() * beta.clone() + intercept.clone();
        match gamma {
            Some(ExtReal::Finite(g)) => GrowthFamily::Bounded {
                betas: BetaRange::point(qi(0)),
                slope: qi(0),
                intercept: alpha - beta * g.clone(),
            },
            Some(_) => GrowthFamily::unbounded_at(qi(0)),
            None => self,
        }
    }
}

/// Growth and decay data near the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OriginSpec {
    pub families: Vec<GrowthFamily>,
    /// Largest `gamma >= 2` with `r^gamma V` bounded below near the origin.
    #[serde(default)]
    pub gamma_cap: Option<ExtReal<Q>>,
}

/// Growth and decay data at infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfinitySpec {
    pub families: Vec<GrowthFamily>,
    /// Smallest `gamma <= 2` with `r^gamma V` bounded below at infinity.
    #[serde(default)]
    pub gamma_floor: Option<ExtReal<Q>>,
}

impl OriginSpec {
    pub fn new(pairs: &[GrowthPair<Q>], alpha_unbounded_for: &[Q], gamma_cap: Option<ExtReal<Q>>) -> Self {
        let mut families: Vec<GrowthFamily> = pairs.iter().map(GrowthFamily::pair).collect();
        families.extend(alpha_unbounded_for.iter().cloned().map(GrowthFamily::unbounded_at));
        OriginSpec { families, gamma_cap }
    }

    pub fn validate(&self) -> Result<()> {
        validate_families(&self.families)?;
        if let Some(c) = &self.gamma_cap {
            if *c < ExtReal::Finite(qi(2)) {
                return Err(Error::InvalidSpec(format!("gamma_cap {c} is below 2")));
            }
        }
        Ok(())
    }

    /// Replace single pairs with negative `beta` using the decay exponent.
    pub fn normalized(&self) -> Self {
        let gamma = self.gamma_cap.as_ref().filter(|c| **c > ExtReal::Finite(qi(2)));
        OriginSpec {
            families: self.families.iter().cloned().map(|f| f.normalized(gamma)).collect(),
            gamma_cap: self.gamma_cap.clone(),
        }
    }
}

impl InfinitySpec {
    pub fn new(pairs: &[GrowthPair<Q>], alpha_unbounded_for: &[Q], gamma_floor: Option<ExtReal<Q>>) -> Self {
        let mut families: Vec<GrowthFamily> = pairs.iter().map(GrowthFamily::pair).collect();
        families.extend(alpha_unbounded_for.iter().cloned().map(GrowthFamily::unbounded_at));
        InfinitySpec { families, gamma_floor }
    }

    pub fn validate(&self) -> Result<()> {
        validate_families(&self.families)?;
        if let Some(f) = &self.gamma_floor {
            if *f > ExtReal::Finite(qi(2)) {
                return Err(Error::InvalidSpec(format!("gamma_floor {f} exceeds 2")));
            }
        }
        Ok(())
    }

    pub fn normalized(&self) -> Self {
        InfinitySpec {
            families: self
                .families
                .iter()
                .cloned()
                .map(|f| f.normalized(self.gamma_floor.as_ref()))
                .collect(),
            gamma_floor: self.gamma_floor.clone(),
        }
    }
}

fn validate_families(families: &[GrowthFamily]) -> Result<()> {
    if families.is_empty() {
        return Err(Error::InvalidSpec("no growth data".into()));
    }
    families.iter().try_for_each(|f| f.betas().check_unit())
}

/// Which result produced the origin interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OriginTheorem {
    /// Growth bound only: `max{1, 2beta} < q1 < q*(alpha, beta)`.
    Growth,
    /// Growth bound plus `r^gamma V` bounded below, `gamma > 2`: region slice.
    GrowthAndDecay,
}

/// Which result produced the threshold at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InfinityTheorem {
    /// Growth bound only: `q2 > max{1, 2beta, q*}`.
    Growth,
    /// Growth bound plus `r^gamma V` bounded below, `gamma <= 2`.
    GrowthAndDecay,
}

/// Parameters behind a reported range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChosenParams {
    pub alpha: ExtReal<Q>,
    #[serde(with = "serde_q")]
    pub beta: Q,
    pub gamma: Option<ExtReal<Q>>,
    /// The range is a limit over admissible parameters rather than attained by one choice.
    pub limit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OriginProvenance {
    pub theorem: OriginTheorem,
    pub params: ChosenParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfinityProvenance {
    pub theorem: InfinityTheorem,
    pub params: ChosenParams,
}

/// Outcome for one pair of potentials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingVerdict {
    pub q1_interval: QInterval<Q>,
    pub q2_halfline: QInterval<Q>,
    pub single_q: QInterval<Q>,
    /// Compact embedding into the sum space for some `q1`, `q2`.
    pub sum_space: bool,
    /// Compact embedding into a single `L^q_K`.
    pub single_space: bool,
    pub origin: Option<OriginProvenance>,
    pub infinity: Option<InfinityProvenance>,
    #[serde(default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
struct Affine {
    slope: Q,
    icpt: Q,
}

impl Affine {
    fn of(f: impl Fn(&Q) -> Q) -> Affine {
        let f0 = f(&qi(0));
        Affine {
            slope: f(&qi(1)) - f0.clone(),
            icpt: f0,
        }
    }

    fn constant(c: Q) -> Affine {
        Affine { slope: qi(0), icpt: c }
    }
}

fn crossings(fs: &[Affine]) -> Vec<Q> {
    let mut out = Vec::new();
    for (i, a) in fs.iter().enumerate() {
        for b in &fs[i + 1..] {
            if a.slope != b.slope {
                out.push((b.icpt.clone() - a.icpt.clone()) / (a.slope.clone() - b.slope.clone()));
            }
        }
    }
    out
}

enum Cell {
    Point(Q),
    Open(Q, Q),
}

fn cells(range: &BetaRange, breaks: &[Q]) -> Vec<Cell> {
    let mut pts: Vec<Q> = vec![range.lo.clone(), range.hi.clone()];
    pts.extend(breaks.iter().filter(|b| **b > range.lo && **b < range.hi).cloned());
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if range.contains(p) {
            out.push(Cell::Point(p.clone()));
        }
        if let Some(next) = pts.get(i + 1) {
            out.push(Cell::Open(p.clone(), next.clone()));
        }
    }
    out
}

/// The decay exponent actually used, if any.
#[derive(Clone, Debug)]
enum Decay {
    None,
    Finite(Q),
    Limit,
}

fn origin_decay(cap: &Option<ExtReal<Q>>) -> Decay {
    match cap {
        Some(ExtReal::PosInf) => Decay::Limit,
        Some(ExtReal::Finite(g)) if *g > qi(2) => Decay::Finite(g.clone()),
        _ => Decay::None,
    }
}

fn infinity_decay(floor: &Option<ExtReal<Q>>) -> Decay {
    match floor {
        Some(ExtReal::NegInf) => Decay::Limit,
        Some(ExtReal::Finite(g)) => Decay::Finite(g.clone()),
        _ => Decay::None,
    }
}

fn gamma_of(decay: &Decay, limit: ExtReal<Q>) -> Option<ExtReal<Q>> {
    match decay {
        Decay::None => None,
        Decay::Finite(g) => Some(ExtReal::Finite(g.clone())),
        Decay::Limit => Some(limit),
    }
}

fn constituents(family: &GrowthFamily, decay: &Decay, n: Dimension) -> Vec<Affine> {
    let mut fs = vec![
        Affine::constant(qi(0)),
        Affine::constant(qi(1)),
        Affine::of(|b| qi(2) * b.clone()),
    ];
    if let GrowthFamily::Bounded { slope, intercept, .. } = family {
        let alpha = |b: &Q| slope.clone() * b.clone() + intercept.clone();
        fs.push(Affine::of(|b| q_star(&alpha(b), b, n)));
        if let Decay::Finite(g) = decay {
            if q_sub(&qi(0), &qi(0), g, n).is_ok() {
                fs.push(Affine::of(|b| q_sub(&alpha(b), b, g, n).expect("pole checked")));
            }
            if q_subsub(&qi(0), &qi(0), g, n).is_ok() {
                fs.push(Affine::of(|b| q_subsub(&alpha(b), b, g, n).expect("pole checked")));
            }
            fs.push(Affine::of(|b| alpha(b) - alpha_thresholds(b, g, n).alpha1));
            fs.push(Affine::of(|b| alpha(b) - alpha_thresholds(b, g, n).alpha2));
            fs.push(Affine::of(|b| alpha(b) - alpha_thresholds(b, g, n).alpha3));
        }
    }
    fs
}

fn origin_slice(family: &GrowthFamily, beta: &Q, decay: &Decay, n: Dimension) -> QInterval<Q> {
    let floor = base_floor(beta);
    let Some(alpha) = family.alpha_at(beta) else {
        return QInterval::above(floor);
    };
    match decay {
        Decay::None => {
            let out = QInterval::finite(floor, q_star(&alpha, beta, n));
            if out.is_empty() {
                QInterval::empty()
            } else {
                out
            }
        }
        Decay::Finite(g) => {
            let spec = RegionSpec::new(beta.clone(), g.clone(), n).expect("beta and gamma validated");
            slice_interval(&alpha, &spec)
        }
        Decay::Limit => QInterval::above(floor),
    }
}

fn extrapolate(v1: &ExtReal<Q>, v2: &ExtReal<Q>) -> (ExtReal<Q>, ExtReal<Q>) {
    match (v1, v2) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => (
            ExtReal::Finite(qi(2) * a.clone() - b.clone()),
            ExtReal::Finite(qi(2) * b.clone() - a.clone()),
        ),
        _ => (v1.clone(), v2.clone()),
    }
}

struct Piece {
    interval: QInterval<Q>,
    /// `beta` where the upper end is reached (or approached).
    beta_hi: Q,
    family: usize,
    attained: bool,
}

/// Union of the `q1` ranges over all admissible parameters near the origin.
pub fn origin_admissible(spec: &OriginSpec, n: Dimension) -> Result<(QInterval<Q>, OriginProvenance)> {
    spec.validate()?;
    let decay = origin_decay(&spec.gamma_cap);
    let theorem = match decay {
        Decay::None => OriginTheorem::Growth,
        _ => OriginTheorem::GrowthAndDecay,
    };

    let mut pieces = Vec::new();
    for (idx, family) in spec.families.iter().enumerate() {
        let breaks = crossings(&constituents(family, &decay, n));
        for cell in cells(family.betas(), &breaks) {
            match cell {
                Cell::Point(b) => {
                    let s = origin_slice(family, &b, &decay, n);
                    if !s.is_empty() {
                        pieces.push(Piece {
                            interval: s,
                            beta_hi: b,
                            family: idx,
                            attained: true,
                        });
                    }
                }
                Cell::Open(a, b) => {
                    let t1 = a.clone() + (b.clone() - a.clone()) / qi(3);
                    let t2 = a.clone() + (b.clone() - a.clone()) * q(2, 3);
                    let s1 = origin_slice(family, &t1, &decay, n);
                    let s2 = origin_slice(family, &t2, &decay, n);
                    if s1.is_empty() || s2.is_empty() {
                        for (t, s) in [(t1, s1), (t2, s2)] {
                            if !s.is_empty() {
                                pieces.push(Piece {
                                    interval: s,
                                    beta_hi: t,
                                    family: idx,
                                    attained: true,
                                });
                            }
                        }
                        continue;
                    }
                    let (lo_a, lo_b) = extrapolate(&s1.lo, &s2.lo);
                    let (hi_a, hi_b) = extrapolate(&s1.hi, &s2.hi);
                    let constant = s1 == s2;
                    let beta_hi = if hi_b >= hi_a { b } else { a };
                    pieces.push(Piece {
                        interval: QInterval::new(lo_a.min(lo_b), hi_a.max(hi_b)),
                        beta_hi,
                        family: idx,
                        attained: constant,
                    });
                }
            }
        }
    }
    if pieces.is_empty() {
        return Err(Error::EmptyAdmissible("origin"));
    }

    let components = merge(pieces.iter().map(|p| p.interval.clone()).collect());
    let union = components
        .into_iter()
        .max_by(|a, b| width(a).partial_cmp(&width(b)).expect("comparable widths"))
        .expect("nonempty");
    let best = pieces
        .iter()
        .filter(|p| p.interval.is_subset_of(&union))
        .max_by(|a, b| a.interval.hi.partial_cmp(&b.interval.hi).expect("ordered"))
        .expect("union built from pieces");
    let attained = pieces.iter().any(|p| p.attained && p.interval == union);
    let family = &spec.families[best.family];
    let params = ChosenParams {
        alpha: family.alpha_at(&best.beta_hi).map_or(ExtReal::PosInf, ExtReal::Finite),
        beta: best.beta_hi.clone(),
        gamma: gamma_of(&decay, ExtReal::PosInf),
        limit: !attained || matches!(decay, Decay::Limit),
    };
    Ok((union, OriginProvenance { theorem, params }))
}

fn width(i: &QInterval<Q>) -> ExtReal<Q> {
    match (&i.lo, &i.hi) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(b.clone() - a.clone()),
        _ => ExtReal::PosInf,
    }
}

/// Merge open intervals into connected components.
fn merge(mut parts: Vec<QInterval<Q>>) -> Vec<QInterval<Q>> {
    parts.retain(|p| !p.is_empty());
    parts.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("ordered"));
    let mut out: Vec<QInterval<Q>> = Vec::new();
    for p in parts {
        match out.last_mut() {
            Some(last) => match last.union(&p) {
                Some(u) => *last = u,
                None => out.push(p),
            },
            None => out.push(p),
        }
    }
    out
}

fn infinity_threshold(family: &GrowthFamily, beta: &Q, decay: &Decay, n: Dimension) -> Q {
    let Some(alpha) = family.alpha_at(beta) else {
        return base_floor(beta);
    };
    match decay {
        Decay::None => growth_threshold(&alpha, beta, n),
        Decay::Finite(g) => decay_threshold(&alpha, beta, g, n).expect("gamma_floor at most 2"),
        Decay::Limit => base_floor(beta),
    }
}

/// Smallest `q2` threshold over all admissible parameters at infinity.
pub fn infinity_admissible(spec: &InfinitySpec, n: Dimension) -> Result<(QInterval<Q>, InfinityProvenance)> {
    spec.validate()?;
    let decay = infinity_decay(&spec.gamma_floor);
    let theorem = match decay {
        Decay::None => InfinityTheorem::Growth,
        _ => InfinityTheorem::GrowthAndDecay,
    };

    // The threshold is a maximum of affine functions of beta, hence convex and
    // piecewise affine: its infimum sits at a break or at an end of the range.
    let mut best: Option<(Q, Q, usize, bool)> = None;
    for (idx, family) in spec.families.iter().enumerate() {
        let range = family.betas();
        let mut pts: Vec<Q> = crossings(&constituents(family, &decay, n))
            .into_iter()
            .filter(|b| *b > range.lo && *b < range.hi)
            .collect();
        pts.push(range.lo.clone());
        pts.push(range.hi.clone());
        for b in pts {
            let value = infinity_threshold(family, &b, &decay, n);
            let attained = range.contains(&b);
            let better = match &best {
                None => true,
                Some((v, _, _, att)) => value < *v || (value == *v && attained && !att),
            };
            if better {
                best = Some((value, b, idx, attained));
            }
        }
    }
    let (value, beta, idx, attained) = best.ok_or(Error::InvalidSpec("no growth data".into()))?;
    let params = ChosenParams {
        alpha: spec.families[idx]
            .alpha_at(&beta)
            .map_or(ExtReal::NegInf, ExtReal::Finite),
        beta,
        gamma: gamma_of(&decay, ExtReal::NegInf),
        limit: !attained || matches!(decay, Decay::Limit),
    };
    Ok((QInterval::above(value), InfinityProvenance { theorem, params }))
}

/// Verdict from the two one-sided ranges.
pub fn combine(origin: &QInterval<Q>, infinity: &QInterval<Q>) -> EmbeddingVerdict {
    let single_q = origin.intersect(infinity);
    let sum_space = !origin.is_empty() && !infinity.is_empty();
    EmbeddingVerdict {
        q1_interval: if origin.is_empty() {
            QInterval::empty()
        } else {
            origin.clone()
        },
        q2_halfline: infinity.clone(),
        single_space: !single_q.is_empty(),
        single_q,
        sum_space,
        origin: None,
        infinity: None,
        notes: Vec::new(),
    }
}

/// Best verdict over all admissible parameters on both sides.
pub fn best_verdict(origin: &OriginSpec, infinity: &InfinitySpec, n: Dimension) -> Result<EmbeddingVerdict> {
    let origin = origin.normalized();
    let infinity = infinity.normalized();
    let mut notes = Vec::new();
    let (q1, o_prov) = match origin_admissible(&origin, n) {
        Ok((i, p)) => (i, Some(p)),
        Err(Error::EmptyAdmissible(side)) => {
            notes.push(format!("no admissible parameters on the {side} side"));
            (QInterval::empty(), None)
        }
        Err(e) => return Err(e),
    };
    let (q2, i_prov) = infinity_admissible(&infinity, n)?;
    let mut v = combine(&q1, &q2);
    for (side, limit) in [
        ("origin", o_prov.as_ref().map(|p| p.params.limit)),
        ("infinity", Some(i_prov.params.limit)),
    ] {
        if limit == Some(true) {
            notes.push(format!("{side}: limit of admissible parameters"));
        }
    }
    v.origin = o_prov;
    v.infinity = Some(i_prov);
    v.notes = notes;
    Ok(v)
}
