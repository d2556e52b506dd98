//! Input and output documents.
//!
//! Both are JSON objects with a `schema_version` field. Exact endpoints
//! travel as strings such as `"10/3"`, so documents round-trip losslessly.

use serde::{Deserialize, Serialize};

use crate::engine::{best_verdict, EmbeddingVerdict, InfinityProvenance, InfinitySpec, OriginProvenance, OriginSpec};
use crate::error::{Error, Result};
use crate::exponent::Dimension;
use crate::interval::QInterval;
use crate::potential::{side_specs, Potential};
use crate::scalar::Q;

pub const SCHEMA_VERSION: u32 = 1;

/// Explicit engine data replacing what would be derived from the potentials.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    #[serde(default)]
    pub origin: Option<OriginSpec>,
    #[serde(default)]
    pub infinity: Option<InfinitySpec>,
}

/// A problem: dimension, potentials and optional overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema_version: u32,
    pub dimension: Dimension,
    #[serde(default)]
    pub v: Option<Potential>,
    #[serde(default)]
    pub k: Option<Potential>,
    #[serde(default)]
    pub overrides: Option<Overrides>,
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: ProblemSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if spec.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                spec.schema_version
            )));
        }
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// Engine data for both sides; overrides win over the potentials.
    pub fn resolve(&self) -> Result<(OriginSpec, InfinitySpec)> {
        let ov = self.overrides.clone().unwrap_or_default();
        let derived = match (&self.v, &self.k) {
            (Some(v), Some(k)) if ov.origin.is_none() || ov.infinity.is_none() => Some(side_specs(v, k)?),
            (Some(_), None) | (None, Some(_)) if ov.origin.is_none() || ov.infinity.is_none() => {
                return Err(Error::InvalidSpec("v and k must be given together".into()))
            }
            _ => None,
        };
        let pick = |o: Option<OriginSpec>, side: &str| -> Result<OriginSpec> {
            o.or_else(|| derived.as_ref().map(|d| d.0.clone()))
                .ok_or_else(|| Error::InvalidSpec(format!("no potentials and no override for the {side}")))
        };
        let origin = pick(ov.origin, "origin")?;
        let infinity = match ov.infinity {
            Some(i) => i,
            None => derived
                .map(|d| d.1)
                .ok_or_else(|| Error::InvalidSpec("no potentials and no override at infinity".into()))?,
        };
        origin.validate()?;
        infinity.validate()?;
        Ok((origin, infinity))
    }

    pub fn verdict(&self) -> Result<EmbeddingVerdict> {
        let (o, i) = self.resolve()?;
        best_verdict(&o, &i, self.dimension)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingTarget {
    pub sum_space: bool,
    pub single_space: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChosenParamsDoc {
    pub origin: Option<OriginProvenance>,
    pub infinity: Option<InfinityProvenance>,
}

/// Serialized verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictDocument {
    pub schema_version: u32,
    pub dimension: Dimension,
    pub q1_interval: QInterval<Q>,
    pub q2_threshold: QInterval<Q>,
    pub single_q: QInterval<Q>,
    pub theorems_used: Vec<String>,
    pub chosen_params: ChosenParamsDoc,
    pub embedding_target: EmbeddingTarget,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerdictDocument {
    pub fn new(n: Dimension, v: &EmbeddingVerdict) -> Self {
        let mut theorems_used = Vec::new();
        if let Some(o) = &v.origin {
            theorems_used.push(format!("origin: {}", tag(&o.theorem)));
        }
        if let Some(i) = &v.infinity {
            theorems_used.push(format!("infinity: {}", tag(&i.theorem)));
        }
        VerdictDocument {
            schema_version: SCHEMA_VERSION,
            dimension: n,
            q1_interval: v.q1_interval.clone(),
            q2_threshold: v.q2_halfline.clone(),
            single_q: v.single_q.clone(),
            theorems_used,
            chosen_params: ChosenParamsDoc {
                origin: v.origin.clone(),
                infinity: v.infinity.clone(),
            },
            embedding_target: EmbeddingTarget {
                sum_space: v.sum_space,
                single_space: v.single_space,
            },
            notes: v.notes.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

fn tag<T: Serialize>(t: &T) -> String {
    serde_json::to_value(t)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}
