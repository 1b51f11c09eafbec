//! Truncated power series over exact rationals, the plethystic exponential
//! and the MacMahon function.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A power series `c_0 + c_1 x + … + c_N x^N` truncated at order `N`.
///
/// The variable is `q` for partition functions and `p` for elliptic
/// measures; the type does not care which.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    /// Series from integer coefficients, mostly for tests.
    pub fn from_ints(cs: &[i64], order: usize) -> Self {
        Self::new(cs.iter().map(|&c| rational::int(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: Rational) {
        if n < self.coeffs.len() {
            self.coeffs[n] = c;
        }
    }

    pub fn truncate(&self, order: usize) -> QSeries {
        Self::new(self.coeffs.clone(), order)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `x^k`, truncated.
    pub fn shift(&self, k: usize) -> QSeries {
        let n = self.order();
        let mut out = vec![Rational::zero(); k.min(n + 1)];
        out.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        QSeries::new(out, n)
    }

    /// The substitution `x ↦ x^k` (for `k ≥ 1`), truncated at the same order.
    pub fn substitute_power(&self, k: usize) -> QSeries {
        assert!(k >= 1);
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if j * k > n {
                break;
            }
            out[j * k] = c.clone();
        }
        QSeries { coeffs: out }
    }

    /// The substitution `x ↦ sign · c · x`: `c_n ↦ c_n (sign·c)^n`.
    pub fn substitute_q_scale(&self, c: &Rational, sign: i8) -> QSeries {
        let factor = if sign < 0 { -c.clone() } else { c.clone() };
        let mut pw = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x * &pw);
            pw *= &factor;
        }
        QSeries { coeffs: out }
    }

    fn binary_order(&self, other: &QSeries) -> usize {
        self.order().min(other.order())
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn invert(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::BadConstantTerm("inverse of a series with zero constant term".into()));
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(QSeries { coeffs: out })
    }

    /// `exp(f)` for `f` with zero constant term.
    pub fn exp(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadConstantTerm("exp needs a zero constant term".into()));
        }
        let n = self.order();
        // n g_n = Σ_{k=1}^n k f_k g_{n-k}
        let mut g: Vec<Rational> = Vec::with_capacity(n + 1);
        g.push(Rational::one());
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &g[m - k] * BigInt::from(k);
                }
            }
            g.push(acc / BigInt::from(m));
        }
        Ok(QSeries { coeffs: g })
    }

    /// `log(g)` for `g` with constant term 1.
    pub fn log(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm("log needs constant term 1".into()));
        }
        let n = self.order();
        // m f_m = m g_m - Σ_{k=1}^{m-1} k f_k g_{m-k}
        let mut f: Vec<Rational> = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * BigInt::from(m);
            for (k, fk) in f.iter().enumerate().take(m).skip(1) {
                if !fk.is_zero() {
                    acc -= fk * &self.coeffs[m - k] * BigInt::from(k);
                }
            }
            f[m] = acc / BigInt::from(m);
        }
        Ok(QSeries { coeffs: f })
    }

    /// `g^α` for rational `α` and constant term 1, as `exp(α log g)`.
    pub fn pow_rational(&self, alpha: &Rational) -> Result<QSeries> {
        self.log()?.scale(alpha).exp()
    }

    /// `g^k` for an integer `k` by repeated multiplication or inversion.
    pub fn powi(&self, k: i64) -> Result<QSeries> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut out = QSeries::one(self.order());
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.binary_order(rhs);
        QSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.binary_order(rhs);
        QSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.binary_order(rhs);
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})q"),
                _ => format!("({c})q^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0 + O(q^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(q^{})", parts.join(" + "), self.order() + 1)
        }
    }
}

/// A bigraded series `Σ c_{m,n} q^m p^n` truncated at `(N_q, N_p)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QPSeries {
    rows: Vec<QSeries>,
}

impl QPSeries {
    pub fn zero(q_order: usize, p_order: usize) -> Self {
        QPSeries {
            rows: vec![QSeries::zero(p_order); q_order + 1],
        }
    }

    pub fn q_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn p_order(&self) -> usize {
        self.rows[0].order()
    }

    pub fn coeff(&self, q_deg: usize, p_deg: usize) -> &Rational {
        self.rows[q_deg].coeff(p_deg)
    }

    /// The coefficient of `q^m` as a series in `p`.
    pub fn q_coeff(&self, m: usize) -> &QSeries {
        &self.rows[m]
    }

    /// Adds `s(p) · q^m`.
    pub fn add_to_q_coeff(&mut self, m: usize, s: &QSeries) {
        if m < self.rows.len() {
            self.rows[m] = &self.rows[m] + &s.truncate(self.p_order());
        }
    }

    /// The coefficient of `p^n` as a series in `q`.
    pub fn p_slice(&self, n: usize) -> QSeries {
        QSeries::new(self.rows.iter().map(|r| r.coeff(n).clone()).collect(), self.q_order())
    }

    pub fn truncate(&self, q_order: usize, p_order: usize) -> QPSeries {
        let mut rows: Vec<QSeries> = self.rows.iter().take(q_order + 1).map(|r| r.truncate(p_order)).collect();
        rows.resize(q_order + 1, QSeries::zero(p_order));
        QPSeries { rows }
    }
}

impl Add for &QPSeries {
    type Output = QPSeries;
    fn add(self, rhs: &QPSeries) -> QPSeries {
        let nq = self.q_order().min(rhs.q_order());
        QPSeries {
            rows: (0..=nq).map(|m| &self.rows[m] + &rhs.rows[m]).collect(),
        }
    }
}

impl Mul for &QPSeries {
    type Output = QPSeries;
    fn mul(self, rhs: &QPSeries) -> QPSeries {
        let nq = self.q_order().min(rhs.q_order());
        let np = self.p_order().min(rhs.p_order());
        let mut out = QPSeries::zero(nq, np);
        for i in 0..=nq {
            for j in 0..=nq - i {
                let prod = &self.rows[i] * &rhs.rows[j];
                out.rows[i + j] = &out.rows[i + j] + &prod;
            }
        }
        out
    }
}

/// The plethystic exponential `exp(Σ_{n≥1} f_n(q^n)/n)` truncated at `order`.
///
/// `f(n)` must return the inner series with every parameter already raised
/// to the `n`-th power, as a series in `q` (before the `q ↦ q^n`
/// substitution). It must vanish at `q = 0`.
pub fn plethystic_exp<F>(mut f: F, order: usize) -> Result<QSeries>
where
    F: FnMut(u32) -> Result<QSeries>,
{
    let mut acc = QSeries::zero(order);
    for n in 1..=order {
        let inner = f(n as u32)?.truncate(order);
        if !inner.coeff(0).is_zero() {
            return Err(Error::BadConstantTerm(
                "plethystic argument must vanish at q = 0".into(),
            ));
        }
        let term = inner
            .substitute_power(n)
            .scale(&Rational::new(BigInt::one(), BigInt::from(n)));
        acc = &acc + &term;
    }
    acc.exp()
}

/// `M(q) = Π_{n≥1} (1 - q^n)^{-n}` from the product formula.
pub fn macmahon(order: usize) -> QSeries {
    let mut out = QSeries::one(order);
    for n in 1..=order {
        // 1/(1 - q^n) = Σ_k q^{kn}
        let geo = QSeries::new(
            (0..=order).map(|j| if j % n == 0 { Rational::one() } else { Rational::zero() }).collect(),
            order,
        );
        for _ in 0..n {
            out = &out * &geo;
        }
    }
    out
}

/// `M(q)^α` as `exp(α log M)`.
pub fn macmahon_power(alpha: &Rational, order: usize) -> QSeries {
    macmahon(order)
        .pow_rational(alpha)
        .expect("MacMahon series has constant term 1")
}

/// Coefficients of `1/([k^(1/2) q][k^(1/2) q^{-1}]) = -Σ_{m≥1} ([k^m]/[k]) q^m`
/// given `s = k^(1/2)`.
pub fn inverse_bracket_pair(sqrt_kappa: &Rational, order: usize) -> Result<QSeries> {
    let b1 = sqrt_kappa - sqrt_kappa.recip();
    if b1.is_zero() {
        return Err(Error::PoleAtPoint("[kappa] vanishes".into()));
    }
    let s = bracket_power_series(sqrt_kappa, order);
    Ok(s.scale(&b1.recip()))
}

/// Coefficients of `[k]/([k^(1/2) q][k^(1/2) q^{-1}]) = -Σ_{m≥1} [k^m] q^m`
/// given `s = k^(1/2)`; here `[k^m] = s^m - s^{-m}`.
pub fn bracket_power_series(sqrt_kappa: &Rational, order: usize) -> QSeries {
    let inv = sqrt_kappa.recip();
    let mut coeffs = vec![Rational::zero(); order + 1];
    let (mut up, mut down) = (Rational::one(), Rational::one());
    for c in coeffs.iter_mut().skip(1) {
        up *= sqrt_kappa;
        down *= &inv;
        *c = &down - &up;
    }
    QSeries { coeffs }
}
