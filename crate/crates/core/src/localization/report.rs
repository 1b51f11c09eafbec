use serde::Serialize;

use crate::algebra::{CohPoint, EvalPoint};
use crate::formulas::RankVector;
use crate::rational::{self, Rational};

/// The exact specialization a comparison was made at, rationals as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PointRecord {
    /// Square roots of `t1..t3` and of the framing parameters.
    K { sqrt_t: Vec<String>, sqrt_w: Vec<String> },
    Coh { s: Vec<String>, v: Vec<String> },
    /// Bare weights, for identities not tied to a torus point.
    Weights { values: Vec<String> },
}

fn strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(rational::to_string).collect()
}

impl From<&EvalPoint> for PointRecord {
    fn from(p: &EvalPoint) -> Self {
        PointRecord::K {
            sqrt_t: (1..=3).map(|i| rational::to_string(&p.sqrt_t(i))).collect(),
            sqrt_w: strings(p.sqrt_w()),
        }
    }
}

impl From<&CohPoint> for PointRecord {
    fn from(p: &CohPoint) -> Self {
        PointRecord::Coh {
            s: (1..=3).map(|i| rational::to_string(&p.s(i))).collect(),
            v: strings(p.v()),
        }
    }
}

impl PointRecord {
    pub fn weights(xs: &[Rational]) -> Self {
        PointRecord::Weights { values: strings(xs) }
    }
}

/// One compared quantity. `witness` is filled only on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    pub item: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficient: Option<usize>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rvec: Option<RankVector>,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub points_tried: usize,
    pub points_used: usize,
    pub passed: bool,
    /// Informational reports record an observation; they never fail a run.
    pub informational: bool,
    pub points: Vec<PointRecord>,
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>, rvec: Option<RankVector>, order: usize, seed: Option<u64>) -> Self {
        CheckReport {
            check: check.into(),
            rvec,
            order,
            seed,
            points_tried: 0,
            points_used: 0,
            passed: true,
            informational: false,
            points: Vec::new(),
            comparisons: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Comparison) {
        self.passed &= c.passed;
        self.comparisons.push(c);
    }

    /// Whether the report should fail a run.
    pub fn is_failure(&self) -> bool {
        !self.passed && !self.informational
    }

    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.passed)
    }
}
