use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Framing slots `(leg i, copy l)` for a rank vector, in lexicographic order.
///
/// Slot `k` of the registry is the `k`-th `w` exponent of every [`Monomial`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableRegistry {
    rvec: [usize; 4],
    slots: Vec<(usize, usize)>,
}

impl VariableRegistry {
    pub fn new(rvec: [usize; 4]) -> Self {
        let slots = (1..=4)
            .flat_map(|i| (1..=rvec[i - 1]).map(move |l| (i, l)))
            .collect();
        VariableRegistry { rvec, slots }
    }

    pub fn rvec(&self) -> [usize; 4] {
        self.rvec
    }

    /// Total rank `r = r1 + r2 + r3 + r4`.
    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    /// `(leg, copy)` pairs, both 1-based.
    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    /// Zero-based slot of `w_{leg,copy}`.
    pub fn slot(&self, leg: usize, copy: usize) -> Option<usize> {
        self.slots.iter().position(|&s| s == (leg, copy))
    }

    pub fn slots_of_leg(&self, leg: usize) -> impl Iterator<Item = usize> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter(move |(_, s)| s.0 == leg)
            .map(|(k, _)| k)
    }
}

/// An exact specialization of the square roots `a_i = t_i^(1/2)` and
/// `b_k = w_k^(1/2)`, with `a4 = 1/(a1 a2 a3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalPoint {
    sqrt_t: [Rational; 3],
    sqrt_w: Vec<Rational>,
}

impl EvalPoint {
    pub fn new(sqrt_t: [Rational; 3], sqrt_w: Vec<Rational>) -> Result<Self> {
        if sqrt_t.iter().chain(sqrt_w.iter()).any(|x| !rational::is_positive(x)) {
            return Err(Error::InvalidInput(
                "square-root bases must be positive rationals".into(),
            ));
        }
        Ok(EvalPoint { sqrt_t, sqrt_w })
    }

    /// `a_i` for `i` in `1..=4`.
    pub fn sqrt_t(&self, i: usize) -> Rational {
        match i {
            1..=3 => self.sqrt_t[i - 1].clone(),
            4 => (&self.sqrt_t[0] * &self.sqrt_t[1] * &self.sqrt_t[2]).recip(),
            _ => panic!("t index {i} out of range"),
        }
    }

    /// `t_i = a_i^2`.
    pub fn t(&self, i: usize) -> Rational {
        let a = self.sqrt_t(i);
        &a * &a
    }

    pub fn sqrt_w(&self) -> &[Rational] {
        &self.sqrt_w
    }

    /// Same `t`-specialization with different framing bases.
    pub fn with_w(&self, sqrt_w: Vec<Rational>) -> Result<Self> {
        Self::new(self.sqrt_t.clone(), sqrt_w)
    }

    /// The point with every base raised to the `n`-th power.
    pub fn powered(&self, n: u32) -> EvalPoint {
        let p = |x: &Rational| rational::pow(x, n as i64);
        EvalPoint {
            sqrt_t: [p(&self.sqrt_t[0]), p(&self.sqrt_t[1]), p(&self.sqrt_t[2])],
            sqrt_w: self.sqrt_w.iter().map(p).collect(),
        }
    }
}

/// An exact specialization of the cohomological parameters `s1..s4`, `v_k`,
/// with `s4 = -s1 - s2 - s3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohPoint {
    s: [Rational; 3],
    v: Vec<Rational>,
}

impl CohPoint {
    pub fn new(s: [Rational; 3], v: Vec<Rational>) -> Self {
        CohPoint { s, v }
    }

    pub fn s(&self, i: usize) -> Rational {
        match i {
            1..=3 => self.s[i - 1].clone(),
            4 => -(&self.s[0] + &self.s[1] + &self.s[2]),
            _ => panic!("s index {i} out of range"),
        }
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn with_v(&self, v: Vec<Rational>) -> Self {
        CohPoint { s: self.s.clone(), v }
    }
}

fn check_slots(m: &Monomial, have: usize) -> Result<()> {
    if m.doubled_w().len() > have {
        return Err(Error::InvalidInput(format!(
            "monomial {m} uses {} framing slots, point has {have}",
            m.doubled_w().len()
        )));
    }
    Ok(())
}

/// Value of `m` at `p`: `Π a_i^(doubled t_i) · Π b_k^(doubled w_k)`.
pub fn eval_monomial(m: &Monomial, p: &EvalPoint) -> Result<Rational> {
    let m = m.canonicalize();
    check_slots(&m, p.sqrt_w.len())?;
    let mut acc = Rational::one();
    for (i, &e) in m.doubled_t().iter().enumerate().take(3) {
        if e != 0 {
            acc *= rational::pow(&p.sqrt_t[i], e as i64);
        }
    }
    for (k, &e) in m.doubled_w().iter().enumerate() {
        if e != 0 {
            acc *= rational::pow(&p.sqrt_w[k], e as i64);
        }
    }
    Ok(acc)
}

/// The linear form `μ · s` of a weight, with `μ` the undoubled exponents.
pub fn weight_at(m: &Monomial, p: &CohPoint) -> Result<Rational> {
    let m = m.canonicalize();
    check_slots(&m, p.v.len())?;
    let mut acc = Rational::zero();
    for (i, &e) in m.doubled_t().iter().enumerate().take(3) {
        acc += &p.s[i] * Rational::from_integer(e.into());
    }
    for (k, &e) in m.doubled_w().iter().enumerate() {
        acc += &p.v[k] * Rational::from_integer(e.into());
    }
    Ok(acc / Rational::from_integer(2.into()))
}
