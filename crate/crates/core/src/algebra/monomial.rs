use std::fmt;

/// A Laurent monomial in the square roots of `t1..t4` and of the framing
/// parameters `w`.
///
/// Exponents are stored doubled: an entry `2μ` stands for `x^μ`, so
/// `t^(1/2)` is the entry `1`. The relation `t1 t2 t3 t4 = 1` is applied by
/// keeping the `t4` entry at zero, and trailing zero `w` entries are
/// trimmed, which makes the derived `Eq`/`Hash`/`Ord` act on classes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    t: [i32; 4],
    w: Vec<i32>,
}

impl Monomial {
    /// The trivial weight.
    pub fn one() -> Self {
        Self::default()
    }

    /// Canonical monomial from doubled exponents.
    pub fn from_doubled(t: [i32; 4], w: Vec<i32>) -> Self {
        Self::raw(t, w).canonicalize()
    }

    /// Monomial from doubled exponents without applying the torus relation.
    pub fn raw(t: [i32; 4], w: Vec<i32>) -> Self {
        Monomial { t, w }
    }

    /// `t_i^e` for `i` in `1..=4`.
    pub fn t_pow(i: usize, e: i32) -> Self {
        assert!((1..=4).contains(&i), "t index {i} out of range");
        let mut t = [0; 4];
        t[i - 1] = 2 * e;
        Self::from_doubled(t, Vec::new())
    }

    pub fn t(i: usize) -> Self {
        Self::t_pow(i, 1)
    }

    /// The Calabi-Yau weight of the i-th coordinate hyperplane, `t_i^{-1}`.
    pub fn kappa(i: usize) -> Self {
        Self::t_pow(i, -1)
    }

    /// `w_slot^e` for a zero-based framing slot.
    pub fn w_pow(slot: usize, e: i32) -> Self {
        let mut w = vec![0; slot + 1];
        w[slot] = 2 * e;
        Self::from_doubled([0; 4], w)
    }

    pub fn w(slot: usize) -> Self {
        Self::w_pow(slot, 1)
    }

    /// Doubled `t` exponents (entry 4 is zero for canonical monomials).
    pub fn doubled_t(&self) -> &[i32; 4] {
        &self.t
    }

    /// Doubled `w` exponents, trailing zeros trimmed.
    pub fn doubled_w(&self) -> &[i32] {
        &self.w
    }

    /// The unique representative with vanishing `t4` exponent.
    pub fn canonicalize(&self) -> Self {
        let shift = self.t[3];
        let t = [
            self.t[0] - shift,
            self.t[1] - shift,
            self.t[2] - shift,
            0,
        ];
        let mut w = self.w.clone();
        while w.last() == Some(&0) {
            w.pop();
        }
        Monomial { t, w }
    }

    pub fn is_canonical(&self) -> bool {
        self.t[3] == 0 && self.w.last() != Some(&0)
    }

    pub fn is_trivial(&self) -> bool {
        let c = self.canonicalize();
        c.t == [0; 4] && c.w.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut t = self.t;
        for (a, b) in t.iter_mut().zip(other.t) {
            *a += b;
        }
        let len = self.w.len().max(other.w.len());
        let w = (0..len)
            .map(|k| self.w.get(k).copied().unwrap_or(0) + other.w.get(k).copied().unwrap_or(0))
            .collect();
        Monomial { t, w }.canonicalize()
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// `self^k`; multiplies every exponent by `k`.
    pub fn pow(&self, k: i32) -> Monomial {
        Monomial {
            t: self.t.map(|e| e * k),
            w: self.w.iter().map(|e| e * k).collect(),
        }
        .canonicalize()
    }

    /// The square root `x^(1/2)` when every doubled exponent is even.
    pub fn sqrt(&self) -> Option<Monomial> {
        let c = self.canonicalize();
        if c.t.iter().chain(c.w.iter()).any(|e| e % 2 != 0) {
            return None;
        }
        Some(Monomial {
            t: c.t.map(|e| e / 2),
            w: c.w.iter().map(|e| e / 2).collect(),
        })
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, name: &str, doubled: i32, first: &mut bool) -> fmt::Result {
    if doubled == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    f.write_str(name)?;
    match (doubled % 2 == 0, doubled) {
        (true, 2) => Ok(()),
        (true, d) => write!(f, "^{}", d / 2),
        (false, d) => write!(f, "^({d}/2)"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.t.iter().enumerate() {
            write_factor(f, &format!("t{}", i + 1), e, &mut first)?;
        }
        for (k, &e) in self.w.iter().enumerate() {
            write_factor(f, &format!("w[{k}]"), e, &mut first)?;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
