//! Deterministic random specialization points with pole rejection.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{CohPoint, EvalPoint};
use crate::error::{Error, Result};
use crate::formulas::RankVector;
use crate::rational::Rational;

pub const DEFAULT_BOUND: i64 = 97;
pub const DEFAULT_MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    K,
    Coh,
    Elliptic,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k" => Ok(Mode::K),
            "coh" => Ok(Mode::Coh),
            "elliptic" => Ok(Mode::Elliptic),
            _ => Err(Error::InvalidInput(format!("unknown mode `{s}`"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::K => "k",
            Mode::Coh => "coh",
            Mode::Elliptic => "elliptic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Eval(EvalPoint),
    Coh(CohPoint),
}

/// A seeded stream of specialization points.
///
/// Values are positive rationals `n/d` with `1 ≤ n, d ≤ bound`, pairwise
/// distinct within a point and never equal to 1. Points are drawn one after
/// another from a single ChaCha stream, so a seed fixes the whole sequence.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
    max_attempts: usize,
    tried: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: DEFAULT_BOUND,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            tried: 0,
        }
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        assert!(bound >= 2, "bound must allow a value other than 1");
        self.bound = bound;
        self
    }

    pub fn with_max_attempts(mut self, attempts: usize) -> Self {
        self.max_attempts = attempts.max(1);
        self
    }

    /// Number of points drawn so far, rejected ones included.
    pub fn tried(&self) -> usize {
        self.tried
    }

    fn value(&mut self) -> Rational {
        let n = self.rng.gen_range(1..=self.bound);
        let d = self.rng.gen_range(1..=self.bound);
        Rational::new(n.into(), d.into())
    }

    /// `k` distinct values, also distinct from `taken`.
    pub fn distinct_values(&mut self, k: usize, taken: &[Rational]) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(k);
        while out.len() < k {
            let x = self.value();
            if x != Rational::from_integer(1.into()) && !out.contains(&x) && !taken.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    /// Square roots `a1, a2, a3` and `b_1..b_rank`.
    pub fn eval_point(&mut self, rank: usize) -> EvalPoint {
        self.tried += 1;
        let v = self.distinct_values(3 + rank, &[]);
        EvalPoint::new([v[0].clone(), v[1].clone(), v[2].clone()], v[3..].to_vec())
            .expect("sampled values are positive")
    }

    /// Same `t`-values as `base`, fresh framing values.
    pub fn reframe(&mut self, base: &EvalPoint, rank: usize) -> EvalPoint {
        self.tried += 1;
        let taken: Vec<Rational> = (1..=3).map(|i| base.sqrt_t(i)).collect();
        base.with_w(self.distinct_values(rank, &taken))
            .expect("sampled values are positive")
    }

    /// `s1, s2, s3` and `v_1..v_rank`; `s4 = -s1 - s2 - s3`.
    pub fn coh_point(&mut self, rank: usize) -> CohPoint {
        self.tried += 1;
        let v = self.distinct_values(3 + rank, &[]);
        CohPoint::new([v[0].clone(), v[1].clone(), v[2].clone()], v[3..].to_vec())
    }

    /// Draws with `draw` until `check` succeeds. Points where `check` hits
    /// a pole are discarded; any other error is returned as is.
    pub fn accept<P, T, D, C>(&mut self, mut draw: D, mut check: C) -> Result<(P, T)>
    where
        D: FnMut(&mut Self) -> P,
        C: FnMut(&P) -> Result<T>,
    {
        for _ in 0..self.max_attempts {
            let p = draw(self);
            match check(&p) {
                Ok(t) => return Ok((p, t)),
                Err(Error::PoleAtPoint(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::SamplerExhausted {
            attempts: self.max_attempts,
        })
    }
}

/// The first point of the stream for `seed`, without pole checks.
pub fn sample_point(seed: u64, rvec: RankVector, mode: Mode) -> Point {
    let mut s = Sampler::new(seed);
    match mode {
        Mode::Coh => Point::Coh(s.coh_point(rvec.rank())),
        Mode::K | Mode::Elliptic => Point::Eval(s.eval_point(rvec.rank())),
    }
}
