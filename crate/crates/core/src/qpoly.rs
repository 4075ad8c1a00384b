//! Exact Laurent polynomials in one variable `q` and balanced quantum
//! combinatorics.
//!
//! Quantum integers use the symmetric convention
//! `[k] = q^{k-1} + q^{k-3} + ... + q^{-(k-1)}`, so every quantum binomial
//! with nonnegative arguments is palindromic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

/// An integer Laurent polynomial, stored sparsely by exponent.
///
/// No stored coefficient is ever zero, so two polynomials are equal exactly
/// when their maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * q^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The bar involution `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// A single term `±q^c`, if that is what this polynomial is.
    pub fn as_unit_monomial(&self) -> Option<(i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        let c = c.to_i64()?;
        (c == 1 || c == -1).then_some((c, *e))
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.bar()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Specialize at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitute `q -> q^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Divide exactly by `q^k` scaled monomial, returning `None` if the
    /// quotient `self / other` is not a single monomial `±q^c`.
    pub fn monomial_ratio(&self, other: &Self) -> Option<(i64, i64)> {
        let (se, sc) = self.terms.iter().next()?;
        let (oe, oc) = other.terms.iter().next()?;
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let sign = if sc == oc {
            1
        } else if *sc == -oc {
            -1
        } else {
            return None;
        };
        let shift = se - oe;
        (*self == other.shift(shift).scale(&BigInt::from(sign))).then_some((sign, shift))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{abs}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            map.serialize_entry(&e.to_string(), &bigint_to_number(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an object mapping exponent strings to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((k, v)) = access.next_entry::<String, serde_json::Number>()? {
                    let e: i64 = k
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
                    let c: BigInt = v
                        .to_string()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("non-integer coefficient {v}")))?;
                    if p.terms.contains_key(&e) {
                        return Err(de::Error::custom(format!("duplicate exponent {e}")));
                    }
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

pub(crate) fn bigint_to_number(c: &BigInt) -> serde_json::Number {
    match c.to_i64() {
        Some(v) => serde_json::Number::from(v),
        // arbitrary_precision keeps the digits exactly
        None => c.to_string().parse().expect("decimal integer is a JSON number"),
    }
}

/// The balanced quantum integer `[k]`; `[-k] = -[k]`.
pub fn quantum_int(k: i64) -> LaurentPoly {
    let sign: i64 = if k < 0 { -1 } else { 1 };
    let k = k.abs();
    LaurentPoly::from_terms((0..k).map(|j| (k - 1 - 2 * j, sign)))
}

/// `[k]! = [1][2]...[k]`.
pub fn quantum_factorial(k: u64) -> LaurentPoly {
    (1..=k as i64).fold(LaurentPoly::one(), |acc, j| &acc * &quantum_int(j))
}

/// Balanced quantum binomial `[a choose b]`, with `b >= 0` and any integer
/// `a`. Negative `a` is handled by `[a choose b] = (-1)^b [-a+b-1 choose b]`.
pub fn quantum_binomial(a: i64, b: u64) -> LaurentPoly {
    if a < 0 {
        let p = quantum_binomial(-a + b as i64 - 1, b);
        return if b.is_multiple_of(2) { p } else { -p };
    }
    let (a, b) = (a as u64, b);
    if b > a {
        return LaurentPoly::zero();
    }
    let b = b.min(a - b);
    // Pascal recursion in the balanced normalization, which stays inside
    // Z[q, q^-1] without any division:
    // [a choose b] = q^{-b}[a-1 choose b] + q^{a-b}[a-1 choose b-1].
    let mut row = vec![LaurentPoly::one()];
    for r in 1..=a {
        let mut next = Vec::with_capacity(row.len() + 1);
        let width = (r.min(b) + 1) as usize;
        for j in 0..width {
            let j64 = j as i64;
            let mut entry = LaurentPoly::zero();
            if j < row.len() {
                entry += row[j].shift(-j64);
            }
            if j >= 1 && j - 1 < row.len() {
                entry += row[j - 1].shift(r as i64 - j64);
            }
            next.push(entry);
        }
        row = next;
    }
    row.swap_remove(b as usize)
}

/// Sum of coefficients, i.e. the specialization `q = 1`.
pub fn eval_at_one(p: &LaurentPoly) -> BigInt {
    p.eval_at_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_int(0), LaurentPoly::zero());
        assert_eq!(quantum_int(1), LaurentPoly::one());
        assert_eq!(quantum_int(2), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(quantum_int(-3), -quantum_int(3));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(quantum_binomial(7, 0), LaurentPoly::one());
        assert_eq!(quantum_binomial(-4, 0), LaurentPoly::one());
        assert_eq!(quantum_binomial(2, 1), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(
            quantum_binomial(4, 2),
            lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert_eq!(quantum_binomial(-1, 1), lp(&[(0, -1)]));
        assert_eq!(quantum_binomial(1, 3), LaurentPoly::zero());
    }

    #[test]
    fn binomial_matches_product_expansion() {
        // [4]![0]... computed by multiplying out [4][3] / [2][1]: check
        // [2][1] * result == [4][3].
        let lhs = &quantum_binomial(4, 2) * &(&quantum_int(2) * &quantum_int(1));
        let rhs = &quantum_int(4) * &quantum_int(3);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_at_one(&LaurentPoly::zero()), BigInt::from(0));
        assert_eq!(eval_at_one(&quantum_int(2)), BigInt::from(2));
        assert_eq!(eval_at_one(&quantum_binomial(4, 2)), BigInt::from(6));
    }

    #[test]
    fn large_binomial_does_not_overflow() {
        let p = quantum_binomial(80, 40);
        let classical: BigInt = "107507208733336176461620".parse().unwrap();
        assert_eq!(p.eval_at_one(), classical);
    }

    #[test]
    fn json_encoding() {
        let p = quantum_int(2);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"-1":1,"1":1}"#);
        let back: LaurentPoly = serde_json::from_str(r#"{"1":1,"-1":1}"#).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"x":1}"#).is_err());
        assert!(serde_json::from_str::<LaurentPoly>(r#"{"0":1.5}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(lp(&[(3, 1), (-3, -1)]).to_string(), "q^3 - q^-3");
        assert_eq!(lp(&[(1, 2), (0, -1)]).to_string(), "2q - 1");
    }

    #[test]
    fn monomial_ratio() {
        let p = quantum_int(3);
        assert_eq!(
            p.shift(5).scale(&BigInt::from(-1)).monomial_ratio(&p),
            Some((-1, 5))
        );
        assert_eq!(quantum_int(2).monomial_ratio(&quantum_int(3)), None);
    }
}
