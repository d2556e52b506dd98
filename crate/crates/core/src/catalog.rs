//! Worked examples with closed-form expected ranges.

use std::collections::BTreeMap;

use rand::Rng;

use crate::engine::{InfinitySpec, OriginSpec};
use crate::error::{Error, Result};
use crate::exponent::Dimension;
use crate::interval::QInterval;
use crate::potential::{side_specs, Potential, Side};
use crate::scalar::{fmt_q, parse_q, q, qi, Q};

/// A named free parameter.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: &'static str,
    pub range: &'static str,
}

/// Parameter values for one instantiation. `n` is always present.
#[derive(Debug, Clone, PartialEq)]
pub struct Bindings {
    pub n: Dimension,
    values: BTreeMap<String, Q>,
}

impl Bindings {
    pub fn get(&self, name: &str) -> Q {
        self.values
            .get(name)
            .cloned()
            .unwrap_or_else(|| panic!("unbound parameter {name}"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Q)> {
        self.values.iter()
    }

    fn nq(&self) -> Q {
        qi(i64::from(self.n.get()))
    }
}

/// Expected ranges for an instantiation.
#[derive(Debug, Clone, PartialEq)]
pub struct Expected {
    pub q1: QInterval<Q>,
    pub q2: QInterval<Q>,
    pub single_q: QInterval<Q>,
}

impl Expected {
    fn new(q1: QInterval<Q>, q2: QInterval<Q>) -> Self {
        let single_q = q1.intersect(&q2);
        Expected { q1, q2, single_q }
    }
}

/// Potentials and expectation for one instantiation.
#[derive(Debug, Clone)]
pub struct Instance {
    pub n: Dimension,
    pub v: Potential,
    pub k: Potential,
    pub expected: Expected,
}

type Builder = fn(&Bindings) -> Result<Instance>;
type Sampler = fn(&mut dyn rand::RngCore) -> Vec<(&'static str, Q)>;

pub struct ExampleCase {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamSpec],
    build: Builder,
    sampler: Sampler,
}

impl std::fmt::Debug for ExampleCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExampleCase")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl ExampleCase {
    /// Bind textual values over the defaults. The key `n` sets the dimension.
    pub fn bind(&self, values: &[(&str, &str)]) -> Result<Bindings> {
        let mut map = BTreeMap::new();
        let mut n = 3u32;
        for p in self.params {
            map.insert(p.name.to_string(), parse_q(p.default)?);
        }
        for (key, raw) in values {
            if *key == "n" || *key == "N" {
                n = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("dimension {raw:?}")))?;
                continue;
            }
            if !self.params.iter().any(|p| p.name == *key) {
                return Err(Error::InvalidSpec(format!("{} has no parameter {key:?}", self.name)));
            }
            map.insert(key.to_string(), parse_q(raw)?);
        }
        Ok(Bindings {
            n: Dimension::new(n)?,
            values: map,
        })
    }

    pub fn bind_exact(&self, n: Dimension, values: &[(&str, Q)]) -> Result<Bindings> {
        let mut b = self.bind(&[])?;
        b.n = n;
        for (key, v) in values {
            if !self.params.iter().any(|p| p.name == *key) {
                return Err(Error::InvalidSpec(format!("{} has no parameter {key:?}", self.name)));
            }
            b.values.insert(key.to_string(), v.clone());
        }
        Ok(b)
    }

    pub fn instance(&self, b: &Bindings) -> Result<Instance> {
        (self.build)(b)
    }

    /// Engine inputs derived from the potentials.
    pub fn specs(&self, b: &Bindings) -> Result<(OriginSpec, InfinitySpec)> {
        let inst = self.instance(b)?;
        side_specs(&inst.v, &inst.k)
    }

    /// Random parameters inside the stated ranges, with `n` in `3..=6`.
    pub fn sample(&self, rng: &mut dyn rand::RngCore) -> Result<Bindings> {
        let n = Dimension::new(rng.gen_range(3..=6))?;
        let mut b = self.bind(&[])?;
        b.n = n;
        for (key, v) in (self.sampler)(rng) {
            b.values.insert(key.to_string(), v);
        }
        // Some ranges depend on n; rescale those draws.
        if self.name == "EX_ST" {
            let nq = b.nq();
            let t = b.get("a");
            // a was drawn as a fraction t in (0, 1) of the open range.
            let a = -(qi(2) * (nq.clone() - qi(1))) + t * (nq.clone() - qi(2));
            let b0 = a.clone() + b.get("b0");
            b.values.insert("a".into(), a);
            b.values.insert("b0".into(), b0);
        }
        if self.name == "EX_BPR" || self.name == "EX_nnP1" {
            let shift = b.get("d");
            b.values.insert("d".into(), -(b.nq() + qi(2)) / qi(2) + shift);
        }
        Ok(b)
    }
}

fn rand_q(rng: &mut dyn rand::RngCore, lo: i64, hi: i64, den: i64) -> Q {
    q(rng.gen_range(lo * den..=hi * den), den)
}

fn require(cond: bool, what: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::OutOfRange(what.into()))
    }
}

fn q_star0(alpha: &Q, b: &Bindings) -> Q {
    qi(2) * (alpha.clone() + b.nq()) / (b.nq() - qi(2))
}

fn sww(b: &Bindings) -> Result<Instance> {
    let a = b.get("a");
    require(a <= qi(2), format!("a = {} must satisfy a <= 2", fmt_q(&a)))?;
    let n = b.nq();
    let v = Potential::monomial(-a.clone());
    let k = Potential::monomial(qi(1) - a.clone());
    let q1 = QInterval::finite(qi(1), qi(2) * (n.clone() - a.clone() + qi(1)) / (n.clone() - qi(2)));
    let q2 = QInterval::above(qi(2) * (qi(2) * n.clone() - a.clone()) / (qi(2) * n - a - qi(2)));
    Ok(Instance {
        n: b.n,
        v,
        k,
        expected: Expected::new(q1, q2),
    })
}

fn bpr(b: &Bindings) -> Result<Instance> {
    let d = b.get("d");
    require(
        d > -(b.nq() + qi(2)) / qi(2),
        format!("d = {} must exceed -(N+2)/2", fmt_q(&d)),
    )?;
    let crit = q_star0(&d, b);
    Ok(Instance {
        n: b.n,
        v: Potential::Zero,
        k: Potential::monomial(d),
        expected: Expected::new(QInterval::finite(qi(1), crit.clone()), QInterval::above(crit)),
    })
}

fn nnp1(b: &Bindings) -> Result<Instance> {
    let (a, bb, d, variant) = (b.get("a"), b.get("b"), b.get("d"), b.get("k"));
    require(a > qi(0) && bb > qi(0), "a and b must be positive")?;
    require(
        d > -(b.nq() + qi(2)) / qi(2),
        format!("d = {} must exceed -(N+2)/2", fmt_q(&d)),
    )?;
    let crit = q_star0(&d, b);
    let q1 = QInterval::finite(qi(1), crit.clone());
    let (k, q2) = if variant == qi(1) {
        (Potential::monomial(d), QInterval::above(crit))
    } else if variant == qi(2) {
        (Potential::PowerExp { d, b: bb }, QInterval::above(qi(1)))
    } else {
        return Err(Error::OutOfRange("k must be 1 or 2".into()));
    };
    Ok(Instance {
        n: b.n,
        v: Potential::ExpR { a: -a },
        k,
        expected: Expected::new(q1, q2),
    })
}

fn nnp2(b: &Bindings) -> Result<Instance> {
    let (bb, variant) = (b.get("b"), b.get("v"));
    require(
        bb > qi(0) && bb <= qi(1),
        format!("b = {} must lie in (0, 1]", fmt_q(&bb)),
    )?;
    let base = Potential::ExpInvR { b: qi(1) };
    let floor = qi(1).max(qi(2) * bb.clone());
    let q1 = QInterval::above(floor);
    let (v, q2) = if variant == qi(0) {
        (base, QInterval::above(qi(2)))
    } else if variant == qi(1) {
        (
            Potential::truncated(base, qi(1), Side::Origin),
            QInterval::above(b.n.critical_exponent()),
        )
    } else if variant == qi(2) {
        let tail = Potential::truncated(Potential::monomial(b.nq()), qi(1), Side::Infinity);
        (
            Potential::sum(Potential::truncated(base, qi(1), Side::Origin), tail),
            QInterval::above(qi(1)),
        )
    } else {
        return Err(Error::OutOfRange("v must be 0, 1 or 2".into()));
    };
    Ok(Instance {
        n: b.n,
        v,
        k: Potential::ExpInvR { b: bb },
        expected: Expected::new(q1, q2),
    })
}

fn st(b: &Bindings) -> Result<Instance> {
    let (a, b0, bb) = (b.get("a"), b.get("b0"), b.get("b"));
    let n = b.nq();
    require(
        a > -(qi(2) * (n.clone() - qi(1))) && a < -n.clone(),
        format!("a = {} must lie in (-2(N-1), -N)", fmt_q(&a)),
    )?;
    require(b0 > a, "b0 must exceed a")?;
    let v = Potential::monomial(a.clone());
    let k = Potential::sum(
        Potential::truncated(Potential::monomial(b0.clone()), qi(1), Side::Origin),
        Potential::truncated(Potential::monomial(bb.clone()), qi(1), Side::Infinity),
    );
    let two_nm2 = qi(2) * n.clone() - qi(2);
    let q1 = QInterval::finite(
        qi(1).max(qi(2) * (n.clone() + b0.clone()) / (n.clone() + a.clone())),
        qi(2) * (two_nm2.clone() + qi(2) * b0 - a.clone()) / (two_nm2 + a),
    );
    let q2 = QInterval::above(qi(1).max(q_star0(&bb, b)));
    Ok(Instance {
        n: b.n,
        v,
        k,
        expected: Expected::new(q1, q2),
    })
}

fn sample_sww(rng: &mut dyn rand::RngCore) -> Vec<(&'static str, Q)> {
    vec![("a", rand_q(rng, -6, 2, 8))]
}

fn sample_shifted_d(rng: &mut dyn rand::RngCore) -> Vec<(&'static str, Q)> {
    // Offset above -(N+2)/2; shifted in `sample`.
    vec![("d", q(rng.gen_range(1..=48), 8))]
}

fn sample_nnp1(rng: &mut dyn rand::RngCore) -> Vec<(&'static str, Q)> {
    let mut out = sample_shifted_d(rng);
    out.push(("k", qi(rng.gen_range(1..=2))));
    out.push(("a", q(rng.gen_range(1..=32), 8)));
    out.push(("b", q(rng.gen_range(1..=32), 8)));
    out
}

fn sample_nnp2(rng: &mut dyn rand::RngCore) -> Vec<(&'static str, Q)> {
    vec![("b", q(rng.gen_range(1..=16), 16)), ("v", qi(rng.gen_range(0..=2)))]
}

fn sample_st(rng: &mut dyn rand::RngCore) -> Vec<(&'static str, Q)> {
    vec![
        ("a", q(rng.gen_range(1..=15), 16)),
        ("b0", q(rng.gen_range(1..=48), 8)),
        ("b", rand_q(rng, -10, 4, 8)),
    ]
}

static CATALOG: [ExampleCase; 5] = [
    ExampleCase {
        name: "EX_SWW",
        summary: "V = r^-a, K = r^(1-a), a <= 2",
        params: &[ParamSpec {
            name: "a",
            default: "1",
            range: "a <= 2",
        }],
        build: sww,
        sampler: sample_sww,
    },
    ExampleCase {
        name: "EX_BPR",
        summary: "V = 0, K = r^d, d > -(N+2)/2",
        params: &[ParamSpec {
            name: "d",
            default: "1",
            range: "d > -(N+2)/2",
        }],
        build: bpr,
        sampler: sample_shifted_d,
    },
    ExampleCase {
        name: "EX_nnP1",
        summary: "V = e^(-a r), K = r^d (k = 1) or r^d e^(-b r) (k = 2)",
        params: &[
            ParamSpec {
                name: "k",
                default: "1",
                range: "1 or 2",
            },
            ParamSpec {
                name: "a",
                default: "1",
                range: "a > 0",
            },
            ParamSpec {
                name: "b",
                default: "1",
                range: "b > 0",
            },
            ParamSpec {
                name: "d",
                default: "1",
                range: "d > -(N+2)/2",
            },
        ],
        build: nnp1,
        sampler: sample_nnp1,
    },
    ExampleCase {
        name: "EX_nnP2",
        summary: "V = e^(1/r) (v = 0), truncated to r <= 1 (v = 1), or with an r^N tail (v = 2); K = e^(b/r)",
        params: &[
            ParamSpec {
                name: "v",
                default: "0",
                range: "0, 1 or 2",
            },
            ParamSpec {
                name: "b",
                default: "1/2",
                range: "0 < b <= 1",
            },
        ],
        build: nnp2,
        sampler: sample_nnp2,
    },
    ExampleCase {
        name: "EX_ST",
        summary: "V = r^a, K ~ r^b0 near 0 and r^b at infinity",
        params: &[
            ParamSpec {
                name: "a",
                default: "-7/2",
                range: "-2(N-1) < a < -N",
            },
            ParamSpec {
                name: "b0",
                default: "-3",
                range: "b0 > a",
            },
            ParamSpec {
                name: "b",
                default: "-5",
                range: "any",
            },
        ],
        build: st,
        sampler: sample_st,
    },
];

pub fn example_catalog() -> &'static [ExampleCase] {
    &CATALOG
}

pub fn find(name: &str) -> Option<&'static ExampleCase> {
    CATALOG.iter().find(|c| c.name.eq_ignore_ascii_case(name))
}

/// Range `max{1, 2(N+b0)/(N+a), 2(N+b)/(N-2)} < q < 2(2N-2+2b0-a)/(2N-2+a)`
/// for the power pair of `EX_ST` in a single space.
pub fn st_single_space(n: Dimension, a: &Q, b: &Q, b0: &Q) -> QInterval<Q> {
    let nq = qi(i64::from(n.get()));
    let two_nm2 = qi(2) * nq.clone() - qi(2);
    let lo = qi(1)
        .max(qi(2) * (nq.clone() + b0.clone()) / (nq.clone() + a.clone()))
        .max(qi(2) * (nq.clone() + b.clone()) / (nq - qi(2)));
    let hi = qi(2) * (two_nm2.clone() + qi(2) * b0.clone() - a.clone()) / (two_nm2 + a.clone());
    QInterval::finite(lo, hi)
}

/// The earlier sub-quadratic range for the same pair, when its endpoints are defined.
pub fn st_prior_range(n: Dimension, a: &Q, b: &Q, b0: &Q) -> Option<QInterval<Q>> {
    let nq = qi(i64::from(n.get()));
    let b1 = (a.clone() - qi(2) - qi(2) * nq.clone()) / qi(4);
    let b2 = (a.clone() - qi(2)) / qi(2);
    let b3 = -(nq.clone() + qi(2)) / qi(2);
    let two_nm2 = qi(2) * nq.clone() - qi(2);
    let lo = if *b >= b3 && *b < qi(-2) {
        qi(2) * (nq.clone() + b.clone()) / (nq.clone() - qi(2))
    } else if *b >= b1 && *b < b2 {
        qi(4) * (nq.clone() + b.clone()) / (two_nm2.clone() + a.clone())
    } else {
        return None;
    };
    let hi = if *b0 > b3 && *b0 <= qi(-2) {
        qi(2) * (nq.clone() + b0.clone()) / (nq - qi(2))
    } else if *b0 > b1 && *b0 <= b2 {
        qi(4) * (nq + b0.clone()) / (two_nm2 + a.clone())
    } else {
        return None;
    };
    Some(QInterval::finite(lo, hi))
}
