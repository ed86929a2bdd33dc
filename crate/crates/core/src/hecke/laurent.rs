//! Laurent polynomials in `v` with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Z[v, v^-1]`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c · v^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `v^e`.
    pub fn v(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `v ↦ v^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    /// Multiplies by `v^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&k, c)| (k + e, c.clone())).collect() }
    }

    /// The unique bar-invariant `q` with `self - q ∈ v^-1 Z[v^-1]`.
    pub fn bar_invariant_head(&self) -> Self {
        let mut out = Self::zero();
        for (&e, c) in self.terms.range(0..) {
            out.add_term(e, c.clone());
            if e > 0 {
                out.add_term(-e, c.clone());
            }
        }
        out
    }

    /// True if every exponent is strictly negative.
    pub fn is_strictly_negative(&self) -> bool {
        self.max_degree().is_none_or(|e| e < 0)
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            let unit = a.is_one();
            match e {
                0 => write!(f, "{a}")?,
                1 if unit => write!(f, "v")?,
                1 => write!(f, "{a}v")?,
                _ if unit => write!(f, "v^{e}")?,
                _ => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

/// A coefficient on the wire: a JSON integer, or a decimal string when it
/// does not fit in 64 bits.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireCoeff {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for WireCoeff {
    fn from(c: &BigInt) -> Self {
        c.to_i64().map_or_else(|| WireCoeff::Big(c.to_string()), WireCoeff::Small)
    }
}

/// Serialized as `{"-1": 1, "2": -3}`.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, WireCoeff> = self.terms.iter().map(|(e, c)| (e.to_string(), c.into())).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let map = BTreeMap::<String, WireCoeff>::deserialize(d)?;
        let mut terms = Vec::with_capacity(map.len());
        for (e, c) in map {
            let e = e.parse::<i64>().map_err(D::Error::custom)?;
            let c = match c {
                WireCoeff::Small(x) => BigInt::from(x),
                WireCoeff::Big(x) => x.parse().map_err(D::Error::custom)?,
            };
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}
