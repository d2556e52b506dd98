//! Radial potentials from a closed symbolic family.
//!
//! Every member behaves near each end like `c r^p e^{e phi(r)}` with
//! `phi(r) = 1/r` at the origin and `phi(r) = r` at infinity, or vanishes
//! identically there. Boundedness of ratios of members is decided by comparing
//! these leading terms: exponential rate first, then the power.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::engine::{BetaRange, GrowthFamily, InfinitySpec, OriginSpec};
use crate::error::{Error, Result};
use crate::scalar::{q_to_f64, qi, serde_q, sign, ExtReal, Q};

/// End of the half-line `(0, +inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Origin,
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", content = "params")]
pub enum Potential {
    Zero,
    /// `coeff r^exponent`, `coeff > 0`.
    Power {
        #[serde(with = "serde_q")]
        coeff: Q,
        #[serde(with = "serde_q")]
        exponent: Q,
    },
    /// `e^{b/r}`.
    ExpInvR {
        #[serde(with = "serde_q")]
        b: Q,
    },
    /// `e^{a r}`.
    ExpR {
        #[serde(with = "serde_q")]
        a: Q,
    },
    /// `r^d e^{-b r}`, `b > 0`.
    PowerExp {
        #[serde(with = "serde_q")]
        d: Q,
        #[serde(with = "serde_q")]
        b: Q,
    },
    /// `inner` on `r <= support_radius` (origin side) or `r > support_radius`
    /// (infinity side), zero elsewhere.
    Truncated {
        inner: Box<Potential>,
        #[serde(with = "serde_q")]
        support_radius: Q,
        side: Side,
    },
    /// Sum of at most two non-sum members.
    Sum {
        terms: Vec<Potential>,
    },
}

/// Leading behaviour `r^power e^{rate phi(r)}` near one end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    pub power: Q,
    pub rate: Q,
}

impl Germ {
    fn new(power: Q, rate: Q) -> Self {
        Germ { power, rate }
    }

    /// Ordering by size near `side`: larger means dominant.
    fn dominance(&self, other: &Germ, side: Side) -> Ordering {
        self.rate.cmp(&other.rate).then_with(|| match side {
            Side::Origin => other.power.cmp(&self.power),
            Side::Infinity => self.power.cmp(&other.power),
        })
    }
}

impl Potential {
    pub fn power(coeff: Q, exponent: Q) -> Self {
        Potential::Power { coeff, exponent }
    }

    /// `r^exponent`.
    pub fn monomial(exponent: Q) -> Self {
        Potential::Power { coeff: qi(1), exponent }
    }

    pub fn truncated(inner: Potential, support_radius: Q, side: Side) -> Self {
        Potential::Truncated {
            inner: Box::new(inner),
            support_radius,
            side,
        }
    }

    pub fn sum(a: Potential, b: Potential) -> Self {
        Potential::Sum { terms: vec![a, b] }
    }

    /// Parameter checks; the family is closed under these constraints.
    pub fn validate(&self) -> Result<()> {
        match self {
            Potential::Zero | Potential::ExpInvR { .. } | Potential::ExpR { .. } => Ok(()),
            Potential::Power { coeff, .. } => {
                if *coeff <= qi(0) {
                    return Err(Error::InvalidSpec(format!(
                        "power coefficient {coeff} must be positive"
                    )));
                }
                Ok(())
            }
            Potential::PowerExp { b, .. } => {
                if *b <= qi(0) {
                    return Err(Error::InvalidSpec(format!("decay rate {b} must be positive")));
                }
                Ok(())
            }
            Potential::Truncated {
                inner, support_radius, ..
            } => {
                if *support_radius <= qi(0) {
                    return Err(Error::InvalidSpec(format!(
                        "support radius {support_radius} must be positive"
                    )));
                }
                if matches!(**inner, Potential::Sum { .. } | Potential::Truncated { .. }) {
                    return Err(Error::UnsupportedCombination("nested truncation or sum".into()));
                }
                inner.validate()
            }
            Potential::Sum { terms } => {
                if terms.is_empty() || terms.len() > 2 {
                    return Err(Error::UnsupportedCombination(format!(
                        "sums of {} terms are outside the family",
                        terms.len()
                    )));
                }
                if terms.iter().any(|t| matches!(t, Potential::Sum { .. })) {
                    return Err(Error::UnsupportedCombination("nested sums".into()));
                }
                terms.iter().try_for_each(Potential::validate)
            }
        }
    }

    /// Leading term near `side`, or `None` when the potential vanishes there.
    pub fn germ(&self, side: Side) -> Option<Germ> {
        match (self, side) {
            (Potential::Zero, _) => None,
            (Potential::Power { exponent, .. }, _) => Some(Germ::new(exponent.clone(), qi(0))),
            (Potential::ExpInvR { b }, Side::Origin) => Some(Germ::new(qi(0), b.clone())),
            (Potential::ExpInvR { .. }, Side::Infinity) => Some(Germ::new(qi(0), qi(0))),
            (Potential::ExpR { .. }, Side::Origin) => Some(Germ::new(qi(0), qi(0))),
            (Potential::ExpR { a }, Side::Infinity) => Some(Germ::new(qi(0), a.clone())),
            (Potential::PowerExp { d, .. }, Side::Origin) => Some(Germ::new(d.clone(), qi(0))),
            (Potential::PowerExp { d, b }, Side::Infinity) => Some(Germ::new(d.clone(), -b.clone())),
            (Potential::Truncated { inner, side: kept, .. }, _) => {
                if *kept == side {
                    inner.germ(side)
                } else {
                    None
                }
            }
            (Potential::Sum { terms }, _) => terms
                .iter()
                .filter_map(|t| t.germ(side))
                .max_by(|a, b| a.dominance(b, side)),
        }
    }

    /// Whether the potential is positive at every `r > 0`.
    pub fn is_positive_everywhere(&self) -> bool {
        match self {
            Potential::Zero | Potential::Truncated { .. } => false,
            Potential::Power { .. }
            | Potential::ExpInvR { .. }
            | Potential::ExpR { .. }
            | Potential::PowerExp { .. } => true,
            Potential::Sum { terms } => {
                if terms.iter().any(Potential::is_positive_everywhere) {
                    return true;
                }
                let reach = |want: Side| {
                    terms.iter().find_map(|t| match t {
                        Potential::Truncated {
                            inner,
                            support_radius,
                            side,
                        } if *side == want && inner.is_positive_everywhere() => Some(support_radius.clone()),
                        _ => None,
                    })
                };
                matches!((reach(Side::Origin), reach(Side::Infinity)), (Some(o), Some(i)) if i <= o)
            }
        }
    }

    /// Value at `r > 0`.
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            Potential::Zero => 0.0,
            Potential::Power { coeff, exponent } => q_to_f64(coeff) * r.powf(q_to_f64(exponent)),
            Potential::ExpInvR { b } => (q_to_f64(b) / r).exp(),
            Potential::ExpR { a } => (q_to_f64(a) * r).exp(),
            Potential::PowerExp { d, b } => r.powf(q_to_f64(d)) * (-q_to_f64(b) * r).exp(),
            Potential::Truncated {
                inner,
                support_radius,
                side,
            } => {
                let rr = q_to_f64(support_radius);
                let kept = match side {
                    Side::Origin => r <= rr,
                    Side::Infinity => r > rr,
                };
                if kept {
                    inner.eval(r)
                } else {
                    0.0
                }
            }
            Potential::Sum { terms } => terms.iter().map(|t| t.eval(r)).sum(),
        }
    }

    /// Natural logarithm of the value at `r > 0`; `-inf` where it vanishes.
    /// Stays finite where [`eval`](Self::eval) would overflow.
    pub fn log_eval(&self, r: f64) -> f64 {
        match self {
            Potential::Zero => f64::NEG_INFINITY,
            Potential::Power { coeff, exponent } => q_to_f64(coeff).ln() + q_to_f64(exponent) * r.ln(),
            Potential::ExpInvR { b } => q_to_f64(b) / r,
            Potential::ExpR { a } => q_to_f64(a) * r,
            Potential::PowerExp { d, b } => q_to_f64(d) * r.ln() - q_to_f64(b) * r,
            Potential::Truncated {
                inner,
                support_radius,
                side,
            } => {
                let rr = q_to_f64(support_radius);
                let kept = match side {
                    Side::Origin => r <= rr,
                    Side::Infinity => r > rr,
                };
                if kept {
                    inner.log_eval(r)
                } else {
                    f64::NEG_INFINITY
                }
            }
            Potential::Sum { terms } => {
                let logs: Vec<f64> = terms.iter().map(|t| t.log_eval(r)).collect();
                let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                if m == f64::NEG_INFINITY {
                    m
                } else {
                    m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
                }
            }
        }
    }
}

fn check_roles(v: &Potential, k: &Potential) -> Result<()> {
    v.validate()?;
    k.validate()?;
    if !k.is_positive_everywhere() {
        return Err(Error::UnsupportedCombination("K must be positive on (0, +inf)".into()));
    }
    Ok(())
}

/// Pairs `(alpha, beta)`, `beta` in `[0, 1]`, for which `K / (r^alpha V^beta)`
/// stays bounded near `side`, with `V^0 = 1`.
///
/// At the origin the admissible `alpha` form a down-set, at infinity an up-set;
/// each returned family records the extreme `alpha` as an affine function of
/// `beta`.
pub fn envelope(v: &Potential, k: &Potential, side: Side) -> Result<Vec<GrowthFamily>> {
    check_roles(v, k)?;
    let kg = k.germ(side).expect("K is positive");
    let mut out = Vec::new();
    let Some(vg) = v.germ(side) else {
        // Only beta = 0 survives where V vanishes.
        match sign(&kg.rate) {
            Ordering::Less => out.push(GrowthFamily::unbounded_at(qi(0))),
            Ordering::Equal => out.push(GrowthFamily::Bounded {
                betas: BetaRange::point(qi(0)),
                slope: qi(0),
                intercept: kg.power,
            }),
            Ordering::Greater => {}
        }
        return Ok(out);
    };

    // The ratio is r^{pK - alpha - beta pV} e^{(eK - beta eV) phi(r)}.
    let bounded = |betas: BetaRange| GrowthFamily::Bounded {
        betas,
        slope: -vg.power.clone(),
        intercept: kg.power.clone(),
    };
    let (zero, one) = (qi(0), qi(1));
    match sign(&vg.rate) {
        Ordering::Equal => match sign(&kg.rate) {
            Ordering::Less => out.push(GrowthFamily::Unbounded {
                betas: BetaRange::closed(zero, one),
            }),
            Ordering::Equal => out.push(bounded(BetaRange::closed(zero, one))),
            Ordering::Greater => {}
        },
        dir => {
            let pivot = kg.rate.clone() / vg.rate.clone();
            // Exponential decay of the ratio: beta above the pivot when V's rate is positive.
            let decaying = if dir == Ordering::Greater {
                BetaRange {
                    lo: pivot.clone().max(zero.clone()),
                    hi: one.clone(),
                    lo_open: pivot >= zero,
                    hi_open: false,
                }
            } else {
                BetaRange {
                    lo: zero.clone(),
                    hi: pivot.clone().min(one.clone()),
                    lo_open: false,
                    hi_open: pivot <= one,
                }
            };
            if !decaying.is_empty() {
                out.push(GrowthFamily::Unbounded { betas: decaying });
            }
            if pivot >= zero && pivot <= one {
                out.push(bounded(BetaRange::point(pivot)));
            }
        }
    }
    Ok(out)
}

pub fn envelope_origin(v: &Potential, k: &Potential) -> Result<Vec<GrowthFamily>> {
    envelope(v, k, Side::Origin)
}

pub fn envelope_infinity(v: &Potential, k: &Potential) -> Result<Vec<GrowthFamily>> {
    envelope(v, k, Side::Infinity)
}

/// Largest `gamma >= 2` with `r^gamma V` bounded below near the origin, and
/// smallest `gamma <= 2` with the same at infinity.
pub fn gamma_caps(v: &Potential) -> (Option<ExtReal<Q>>, Option<ExtReal<Q>>) {
    let origin = v.germ(Side::Origin).and_then(|g| match sign(&g.rate) {
        Ordering::Greater => Some(ExtReal::PosInf),
        Ordering::Less => None,
        Ordering::Equal => {
            let cap = -g.power;
            (cap >= qi(2)).then_some(ExtReal::Finite(cap))
        }
    });
    let infinity = v.germ(Side::Infinity).and_then(|g| match sign(&g.rate) {
        Ordering::Greater => Some(ExtReal::NegInf),
        Ordering::Less => None,
        Ordering::Equal => {
            let floor = -g.power;
            (floor <= qi(2)).then_some(ExtReal::Finite(floor))
        }
    });
    (origin, infinity)
}

/// Engine inputs for a pair of potentials.
pub fn side_specs(v: &Potential, k: &Potential) -> Result<(OriginSpec, InfinitySpec)> {
    let (cap, floor) = gamma_caps(v);
    let origin = OriginSpec {
        families: envelope_origin(v, k)?,
        gamma_cap: cap,
    };
    let infinity = InfinitySpec {
        families: envelope_infinity(v, k)?,
        gamma_floor: floor,
    };
    Ok((origin, infinity))
}
