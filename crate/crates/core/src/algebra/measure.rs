//! The localization measures `[·]`, `e(·)` and `θ[·]` on movable characters.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{eval_monomial, weight_at, Character, CohPoint, EvalPoint, Monomial};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::QSeries;

fn ensure_movable(v: &Character) -> Result<()> {
    let fixed = v.fixed_part();
    if fixed.is_zero() {
        Ok(())
    } else {
        Err(Error::TrivialWeight(fixed.to_string()))
    }
}

/// `[x] = x^(1/2) - x^(-1/2)` as `(numerator, positive denominator)`.
fn bracket_parts(m: &Monomial, p: &EvalPoint) -> Result<(BigInt, BigInt)> {
    let root = m
        .sqrt()
        .ok_or_else(|| Error::HalfIntegralWeight(m.to_string()))?;
    let s = eval_monomial(&root, p)?;
    let (a, b) = (s.numer(), s.denom());
    Ok((a * a - b * b, a * b))
}

/// `[x]` for a single weight at `p`. The trivial weight evaluates to zero.
pub fn bracket_monomial(m: &Monomial, p: &EvalPoint) -> Result<Rational> {
    let (n, d) = bracket_parts(m, p)?;
    Ok(Rational::new(n, d))
}

/// `[V] = Π [x]^k` over the terms `k·x` of a movable character.
pub fn bracket_eval(v: &Character, p: &EvalPoint) -> Result<Rational> {
    ensure_movable(v)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (m, k) in v.terms() {
        let (a, b) = bracket_parts(m, p)?;
        let e = k.unsigned_abs() as usize;
        if k > 0 {
            num *= num_traits::pow(a, e);
            den *= num_traits::pow(b, e);
        } else {
            if a.is_zero() {
                return Err(Error::PoleAtPoint(format!("[{m}] vanishes")));
            }
            num *= num_traits::pow(b, e);
            den *= num_traits::pow(a, e);
        }
    }
    Ok(Rational::new(num, den))
}

/// `e(V) = Π (μ·s)^k` over the terms `k·t^μ` of a movable character.
pub fn euler_eval(v: &Character, p: &CohPoint) -> Result<Rational> {
    ensure_movable(v)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (m, k) in v.terms() {
        let x = weight_at(m, p)?;
        let e = k.unsigned_abs() as usize;
        if k > 0 {
            num *= num_traits::pow(x.numer().clone(), e);
            den *= num_traits::pow(x.denom().clone(), e);
        } else {
            if x.is_zero() {
                return Err(Error::PoleAtPoint(format!("e({m}) vanishes")));
            }
            num *= num_traits::pow(x.denom().clone(), e);
            den *= num_traits::pow(x.numer().clone(), e);
        }
    }
    Ok(Rational::new(num, den))
}

/// `θ[V]` as a series in the elliptic parameter `p`, truncated at `p_order`.
///
/// Each weight contributes `-p^(1/12) [x] Π_{n≥1} (1 - x p^n)(1 - x^{-1} p^n)`.
/// The `p^(rank/12)` prefactor must be a nonnegative integer power of `p`.
/// The product is accumulated as its logarithm
/// `-Σ_N p^N Σ_{d | N} (x^d + x^{-d}) / d` and exponentiated once.
pub fn theta_eval(v: &Character, p: &EvalPoint, p_order: usize) -> Result<QSeries> {
    ensure_movable(v)?;
    let rank = v.rank();
    if rank % 12 != 0 {
        return Err(Error::FractionalPower { rank });
    }
    if rank < 0 {
        return Err(Error::NegativePower { rank });
    }
    let shift = (rank / 12) as usize;
    let constant = bracket_eval(v, p)? * rational::sign_pow(rank);

    let mut log = vec![Rational::zero(); p_order + 1];
    for (m, k) in v.terms() {
        let x = eval_monomial(m, p)?;
        let xinv = x.recip();
        let mult = Rational::from_integer(k.into());
        for d in 1..=p_order {
            let term = (rational::pow(&x, d as i64) + rational::pow(&xinv, d as i64))
                / Rational::from_integer(d.into());
            let term = term * &mult;
            for n in (d..=p_order).step_by(d) {
                log[n] -= &term;
            }
        }
    }
    let body = QSeries::new(log, p_order).exp()?;
    Ok(body.scale(&constant).shift(shift))
}

/// Direct product form of the elliptic factor for a single weight, for tests.
#[cfg(test)]
pub(crate) fn theta_product_oracle(v: &Character, p: &EvalPoint, p_order: usize) -> QSeries {
    let mut out = QSeries::one(p_order);
    for (m, k) in v.terms() {
        let x = eval_monomial(m, p).unwrap();
        let mut f = QSeries::one(p_order);
        for n in 1..=p_order {
            let mut a = QSeries::one(p_order);
            a.set_coeff(n, -x.clone());
            let mut b = QSeries::one(p_order);
            b.set_coeff(n, -x.recip());
            f = &(&f * &a) * &b;
        }
        out = &out * &f.powi(k).unwrap();
    }
    let rank = v.rank();
    let c = bracket_eval(v, p).unwrap() * rational::sign_pow(rank);
    out.scale(&c).shift((rank / 12) as usize)
}
