//! Closed-form generating functions evaluated at a specialization point.
//!
//! Every function returns the series `Z_r(q)` itself; where a formula is
//! naturally stated for `Z_r((-1)^r q)` the twist is undone here.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{bracket_eval, eval_monomial, Character, CohPoint, EvalPoint, Monomial};
use crate::error::{Error, Result};
use crate::partitions::other_legs;
use crate::rational::{self, Rational};
use crate::series::{bracket_power_series, inverse_bracket_pair, macmahon_power, plethystic_exp, QSeries};

/// The ranks `(r1, r2, r3, r4)` of the framing on the four hyperplanes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RankVector(pub [usize; 4]);

impl RankVector {
    pub fn array(&self) -> [usize; 4] {
        self.0
    }

    /// `r_i` for `i` in `1..=4`.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn rank(&self) -> usize {
        self.0.iter().sum()
    }

    /// `κ_r = Π t_i^{-r_i}`.
    pub fn kappa(&self) -> Monomial {
        Monomial::from_doubled(self.0.map(|r| -2 * r as i32), Vec::new())
    }
}

impl From<[usize; 4]> for RankVector {
    fn from(r: [usize; 4]) -> Self {
        RankVector(r)
    }
}

impl FromStr for RankVector {
    type Err = Error;

    /// Comma-separated, e.g. `1,1,0,0`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::InvalidInput(format!("rank vector `{s}` needs four entries")));
        }
        let mut r = [0; 4];
        for (slot, part) in r.iter_mut().zip(parts) {
            *slot = part
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad rank entry `{part}`")))?;
        }
        Ok(RankVector(r))
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a},{b},{c},{d}")
    }
}

fn sgn(x: i64) -> i32 {
    x.signum() as i32
}

fn sign_of_rank(r: usize) -> i8 {
    if r.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `t1t2 + t1t3 + t2t3 - t1 - t2 - t3 - t4`; its bracket is
/// `[t1t2][t1t3][t2t3] / ([t1][t2][t3][t4])`.
fn closed_numerator() -> Character {
    let t = Monomial::t;
    Character::from_terms([
        (t(1).mul(&t(2)), 1),
        (t(1).mul(&t(3)), 1),
        (t(2).mul(&t(3)), 1),
        (t(1), -1),
        (t(2), -1),
        (t(3), -1),
        (t(4), -1),
    ])
}

/// The rank-one numerator on leg `i`: pairwise products of the other three
/// `t`'s minus the three themselves.
fn leg_numerator(i: usize) -> Character {
    let [a, b, c] = other_legs(i).map(Monomial::t);
    Character::from_terms([
        (a.mul(&b), 1),
        (a.mul(&c), 1),
        (b.mul(&c), 1),
        (a, -1),
        (b, -1),
        (c, -1),
    ])
}

/// `Z_r(q)` from `Z_r((-1)^r q) = Exp(-G · [κ]/([κ^{1/2} q][κ^{1/2} q^{-1}]))`
/// with `G = [t1t2][t1t3][t2t3]/([t1][t2][t3][t4])`.
pub fn closed_z_k(rvec: RankVector, order: usize, p: &EvalPoint) -> Result<QSeries> {
    let kappa = rvec.kappa();
    if kappa.is_trivial() {
        return Ok(QSeries::one(order));
    }
    let sqrt_kappa = kappa.sqrt().expect("κ_r has integral exponents");
    let num = closed_numerator();
    let twisted = plethystic_exp(
        |n| {
            let pn = p.powered(n);
            let g = bracket_eval(&num, &pn)?;
            let s = eval_monomial(&sqrt_kappa, &pn)?;
            // -[κ]/(…) = Σ [κ^m] q^m
            Ok(bracket_power_series(&s, order).scale(&-g))
        },
        order,
    )?;
    Ok(twisted.substitute_q_scale(&Rational::one(), sign_of_rank(rvec.rank())))
}

/// The rank-one series `Z^(i)(q)`, from
/// `Z^(i)(-q) = Exp(F_i / ([κ_i^{1/2} q][κ_i^{1/2} q^{-1}]))`.
pub fn rank1_z(leg: usize, order: usize, p: &EvalPoint) -> Result<QSeries> {
    let num = leg_numerator(leg);
    let twisted = plethystic_exp(
        |n| {
            let pn = p.powered(n);
            let f = bracket_eval(&num, &pn)?;
            let s = pn.sqrt_t(leg).recip();
            Ok(inverse_bracket_pair(&s, order)?.scale(&f))
        },
        order,
    )?;
    Ok(twisted.substitute_q_scale(&Rational::one(), -1))
}

/// The monomial `κ_i^{(-r_i-1)/2 + l} Π_j κ_j^{r_j sgn(i-j)/2}` rescaling
/// `q` in the `(i, l)` factor.
pub fn factor_scale(rvec: RankVector, i: usize, l: usize) -> Monomial {
    let mut t = [0i32; 4];
    let ri = rvec.get(i) as i32;
    t[i - 1] -= -ri - 1 + 2 * l as i32;
    for j in 1..=4 {
        t[j - 1] -= rvec.get(j) as i32 * sgn(i as i64 - j as i64);
    }
    Monomial::from_doubled(t, Vec::new())
}

/// `Z_r(q) = Π_i Π_l Z^(i)((-1)^{r+1} q · scale_il)`.
pub fn factorized_z(rvec: RankVector, order: usize, p: &EvalPoint) -> Result<QSeries> {
    let sign = -sign_of_rank(rvec.rank());
    let mut out = QSeries::one(order);
    for i in 1..=4 {
        if rvec.get(i) == 0 {
            continue;
        }
        let base = rank1_z(i, order, p)?;
        for l in 1..=rvec.get(i) {
            let c = eval_monomial(&factor_scale(rvec, i, l), p)?;
            out = &out * &base.substitute_q_scale(&c, sign);
        }
    }
    Ok(out)
}

/// The exponent `(s1+s2)(s1+s3)(s2+s3)(r·s) / (s1 s2 s3 s4)`.
pub fn coh_exponent(rvec: RankVector, p: &CohPoint) -> Result<Rational> {
    let s = |i| p.s(i);
    let den = s(1) * s(2) * s(3) * s(4);
    if den.is_zero() {
        return Err(Error::PoleAtPoint("s1 s2 s3 s4 vanishes".into()));
    }
    let rs: Rational = (1..=4)
        .map(|i| s(i) * Rational::from_integer(rvec.get(i).into()))
        .sum();
    Ok((s(1) + s(2)) * (s(1) + s(3)) * (s(2) + s(3)) * rs / den)
}

/// `Z^coh_r(q) = M((-1)^r q)^{-E}` with `E` from [`coh_exponent`].
pub fn closed_z_coh(rvec: RankVector, order: usize, p: &CohPoint) -> Result<QSeries> {
    let e = coh_exponent(rvec, p)?;
    Ok(macmahon_power(&-e, order).substitute_q_scale(&Rational::one(), sign_of_rank(rvec.rank())))
}

/// Both sides of
/// `Σ_i [x_i]/([x_i^{1/2} q_i][x_i^{1/2} q_i^{-1}]) = [Πx]/([Πx^{1/2} q][Πx^{1/2} q^{-1}])`
/// with `q_i = q Π_j x_j^{sgn(i-j)/2}`, expanded to `order`.
///
/// Takes the square roots `y_i = x_i^{1/2}` so that every quantity stays
/// rational.
pub fn kappa_identity_sides(sqrt_xs: &[Rational], order: usize) -> Result<(QSeries, QSeries)> {
    if sqrt_xs.iter().any(|y| !rational::is_positive(y)) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    let mut lhs = QSeries::zero(order);
    for (i, y) in sqrt_xs.iter().enumerate() {
        let c: Rational = sqrt_xs
            .iter()
            .enumerate()
            .map(|(j, yj)| rational::pow(yj, sgn(i as i64 - j as i64) as i64))
            .product();
        lhs = &lhs + &bracket_power_series(y, order).substitute_q_scale(&c, 1);
    }
    let prod: Rational = sqrt_xs.iter().product();
    Ok((lhs, bracket_power_series(&prod, order)))
}

pub fn check_kappa_identity(sqrt_xs: &[Rational], order: usize) -> Result<bool> {
    let (lhs, rhs) = kappa_identity_sides(sqrt_xs, order)?;
    Ok(lhs == rhs)
}

/// The four terms `m_i Z^(i)_1` of the linear relation among first
/// coefficients of the rank-one series, with
/// `m_1 = t1^{-1/2}`, `m_2 = t1^{-1} t2^{-1/2}`, `m_3 = t1^{-1} t2^{-1} t3^{-1/2}`,
/// `m_4 = t1^{-1} t2^{-1} t3^{-1} t4^{-1/2}`.
pub fn rank1_relation_terms(p: &EvalPoint) -> Result<[Rational; 4]> {
    let mut out: [Rational; 4] = Default::default();
    for (i, slot) in out.iter_mut().enumerate() {
        let leg = i + 1;
        let mut t = [0i32; 4];
        for e in t.iter_mut().take(i) {
            *e = -2;
        }
        t[i] = -1;
        let m = eval_monomial(&Monomial::from_doubled(t, Vec::new()), p)?;
        let z1 = rank1_z(leg, 1, p)?.coeff(1).clone();
        *slot = m * z1;
    }
    Ok(out)
}

pub fn check_rank1_relation(p: &EvalPoint) -> Result<bool> {
    Ok(rank1_relation_terms(p)?.iter().sum::<Rational>().is_zero())
}
