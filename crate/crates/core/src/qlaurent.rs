//! `Z[q^Q]`: finitely supported integer combinations of `q^r`, `r` rational.
//!
//! This contains `Z[q^±]` and every `Z[q^{±1/n}]`; membership in a particular
//! subring is checked on demand via [`QLaurent::max_denominator`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rat, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLaurent {
    terms: BTreeMap<Rat, BigInt>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, Rat::zero())
    }

    /// `q`.
    pub fn q() -> Self {
        Self::monomial(1, Rat::one())
    }

    pub fn monomial(coef: impl Into<BigInt>, exp: Rat) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, coef.into());
        out
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Rat::zero())
    }

    /// `q^r` for an integer `r`.
    pub fn q_pow(r: i64) -> Self {
        Self::monomial(1, Rat::from_integer(r))
    }

    pub fn from_terms<I: IntoIterator<Item = (Rat, BigInt)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: Rat, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Rat::zero()).is_one()
    }

    /// Terms in increasing order of exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &Rat) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Least common multiple of the exponent denominators (1 for the zero polynomial).
    pub fn max_denominator(&self) -> i64 {
        self.terms.keys().fold(1i64, |acc, e| acc.lcm(e.denom()))
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    /// Multiplies by `q^r`.
    pub fn shift(&self, r: Rat) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + r, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// `f(q) ↦ f(q^r)` for `r > 0`.
    pub fn rescale(&self, r: Rat) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::NonPositiveRescale);
        }
        Ok(Self {
            terms: self.terms.iter().map(|(e, c)| (e * r, c.clone())).collect(),
        })
    }

    /// Divides every coefficient by `k`, or `None` if some coefficient is not divisible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (quot, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return None;
            }
            terms.insert(*e, quot);
        }
        Some(Self { terms })
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl From<i64> for QLaurent {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&QLaurent> for QLaurent {
    fn sub_assign(&mut self, rhs: &QLaurent) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $m(self, rhs: QLaurent) -> QLaurent {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $m(self, rhs: &QLaurent) -> QLaurent {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -&self
    }
}

impl core::iter::Sum for QLaurent {
    fn sum<I: Iterator<Item = QLaurent>>(iter: I) -> Self {
        iter.fold(QLaurent::zero(), |acc, x| acc + x)
    }
}

fn fmt_exp(f: &mut fmt::Formatter<'_>, e: &Rat) -> fmt::Result {
    if e.is_one() {
        f.write_str("q")
    } else if e.is_integer() {
        write!(f, "q^{}", e.numer())
    } else {
        write!(f, "q^({}/{})", e.numer(), e.denom())
    }
}

/// Renders as e.g. `1 + 2q^(1/2) - q^-1`, highest exponent last.
impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                fmt_exp(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `(exponent, coefficient)` pairs, handy for serialization.
pub fn to_pairs(f: &QLaurent) -> Vec<(Rat, BigInt)> {
    f.terms().map(|(e, c)| (*e, c.clone())).collect()
}
