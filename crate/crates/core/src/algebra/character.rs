use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Monomial;

/// A virtual torus representation: a finite integer combination of weights.
///
/// Zero multiplicities are never stored, so structural equality is equality
/// in the representation ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Character {
    terms: BTreeMap<Monomial, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, 1)
    }

    pub fn term(m: Monomial, mult: i64) -> Self {
        let mut c = Self::zero();
        c.add_term(m, mult);
        c
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(terms: I) -> Self {
        let mut c = Self::zero();
        for (m, k) in terms {
            c.add_term(m, k);
        }
        c
    }

    pub fn add_term(&mut self, m: Monomial, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.terms.entry(m.canonicalize()) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(mult);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> + '_ {
        self.terms.iter().map(|(m, k)| (m, *k))
    }

    pub fn multiplicity(&self, m: &Monomial) -> i64 {
        self.terms.get(&m.canonicalize()).copied().unwrap_or(0)
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Sum of multiplicities.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, k: i64) -> Character {
        if k == 0 {
            return Self::zero();
        }
        Character {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * k)).collect(),
        }
    }

    /// The involution `t^μ ↦ t^{-μ}`.
    pub fn dual(&self) -> Character {
        Character {
            terms: self.terms.iter().map(|(m, v)| (m.inv(), *v)).collect(),
        }
    }

    /// The Adams operation: every weight raised to the `n`-th power.
    pub fn adams(&self, n: i32) -> Character {
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.pow(n), *v)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Character {
        Character {
            terms: self.terms.iter().map(|(x, v)| (x.mul(m), *v)).collect(),
        }
    }

    /// Terms of trivial weight.
    pub fn fixed_part(&self) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.is_trivial())
                .map(|(m, v)| (m.clone(), *v))
                .collect(),
        }
    }

    pub fn movable_part(&self) -> Character {
        Character {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.is_trivial())
                .map(|(m, v)| (m.clone(), *v))
                .collect(),
        }
    }

    pub fn is_movable(&self) -> bool {
        self.multiplicity(&Monomial::one()) == 0
    }
}

impl Add for &Character {
    type Output = Character;
    fn add(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (m, k) in rhs.terms() {
            out.add_term(m.clone(), k);
        }
        out
    }
}

impl Sub for &Character {
    type Output = Character;
    fn sub(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (m, k) in rhs.terms() {
            out.add_term(m.clone(), -k);
        }
        out
    }
}

impl Neg for &Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl Mul for &Character {
    type Output = Character;
    fn mul(self, rhs: &Character) -> Character {
        let mut out = Character::zero();
        for (a, ka) in self.terms() {
            for (b, kb) in rhs.terms() {
                out.add_term(a.mul(b), ka * kb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Character {
            type Output = Character;
            fn $f(self, rhs: Character) -> Character {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Character> for Character {
            type Output = Character;
            fn $f(self, rhs: &Character) -> Character {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Character {
    type Output = Character;
    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl std::iter::Sum for Character {
    fn sum<I: Iterator<Item = Character>>(iter: I) -> Character {
        iter.fold(Character::zero(), |acc, c| acc + c)
    }
}

impl<'a> std::iter::Sum<&'a Character> for Character {
    fn sum<I: Iterator<Item = &'a Character>>(iter: I) -> Character {
        iter.fold(Character::zero(), |acc, c| acc + c)
    }
}

impl From<Monomial> for Character {
    fn from(m: Monomial) -> Self {
        Character::monomial(m)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, k)) in self.terms.iter().enumerate() {
            match (n, *k < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match k.abs() {
                1 => write!(f, "{m}")?,
                a => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}
