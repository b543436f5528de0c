//! Laurent polynomials in `v = q^{1/2}` with exact rational coefficients.
//!
//! Every power `q^{k/2}` is stored as `v^k`, so the half-integral exponents
//! `q^{-r}` and `q^{<rho, lambda>}` are represented exactly. The printed form
//! lists terms by ascending exponent and writes exponents as powers of `q`,
//! e.g. `q^-3/2 - q^-1 + 2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::HalfInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QLaurentError {
    #[error("q-exponent {0} is not a half-integer")]
    NotHalfInteger(String),
    #[error("cannot parse `{input}` as a Laurent polynomial in q^(1/2): {reason}")]
    Parse { input: String, reason: String },
}

/// Element of `Q[v, v^-1]` with `v^2 = q`. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, BigRational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        QLaurent::v_monomial(0, c)
    }

    pub fn from_int(n: i64) -> Self {
        QLaurent::constant(BigRational::from_integer(n.into()))
    }

    /// `c * v^k`.
    pub fn v_monomial(k: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        QLaurent { terms }
    }

    /// The monomial `q^e` for a half-integer `e`.
    pub fn qmonomial(e: HalfInt) -> Self {
        QLaurent::v_monomial(e.twice(), BigRational::one())
    }

    /// `q^e` for an arbitrary rational `e`, rejecting exponents that are not half-integers.
    pub fn qmonomial_rational(e: &BigRational) -> Result<Self, QLaurentError> {
        HalfInt::from_rational(e)
            .map(QLaurent::qmonomial)
            .map_err(|_| QLaurentError::NotHalfInteger(e.to_string()))
    }

    /// Integer power of `q`.
    pub fn q_pow(k: i64) -> Self {
        QLaurent::v_monomial(2 * k, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent of v, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `v^k`.
    pub fn coeff_v(&self, k: i64) -> BigRational {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff_v(0)
    }

    /// `Some((k, c))` when this is the single term `c * v^k`.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QLaurent::zero();
        }
        QLaurent {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift_v(&self, k: i64) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QLaurent::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `q -> q^-1` (equivalently `v -> v^-1`).
    pub fn invert_q(&self) -> Self {
        QLaurent {
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Exact quotient by a nonzero monomial `c * v^k`; `None` for other divisors.
    pub fn div_monomial(&self, divisor: &QLaurent) -> Option<Self> {
        let (k, c) = divisor.as_monomial()?;
        Some(QLaurent {
            terms: self.terms.iter().map(|(e, x)| (e - k, x / c)).collect(),
        })
    }

    pub fn qadd(a: &QLaurent, b: &QLaurent) -> QLaurent {
        a + b
    }

    pub fn qmul(a: &QLaurent, b: &QLaurent) -> QLaurent {
        a * b
    }

    pub fn qneg(a: &QLaurent) -> QLaurent {
        -a
    }
}

impl From<i64> for QLaurent {
    fn from(n: i64) -> Self {
        QLaurent::from_int(n)
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QLaurent {
    type Output = QLaurent;
    fn add(mut self, rhs: QLaurent) -> QLaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&QLaurent> for QLaurent {
    fn add_assign(&mut self, rhs: &QLaurent) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&QLaurent> for QLaurent {
    fn sub_assign(&mut self, rhs: &QLaurent) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, -c.clone());
        }
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QLaurent {
    type Output = QLaurent;
    fn sub(mut self, rhs: QLaurent) -> QLaurent {
        self -= &rhs;
        self
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        -&self
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: QLaurent) -> QLaurent {
        &self * &rhs
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, k: i64) -> fmt::Result {
    match k {
        0 => Ok(()),
        2 => write!(f, "q"),
        _ => write!(f, "q^{}", HalfInt::from_twice(k)),
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if *k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write_exponent(f, *k)?;
            } else {
                write!(f, "{a}*")?;
                write_exponent(f, *k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: impl Into<String>) -> QLaurentError {
        QLaurentError::Parse {
            input: self.src.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt, QLaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected digits at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    /// `digits ['/' digits]`
    fn unsigned_rational(&mut self) -> Result<BigRational, QLaurentError> {
        let num = self.digits()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let den = self.digits()?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// `'q' ['^' ['-'] rational]`, returned as the exponent of v.
    fn monomial(&mut self) -> Result<i64, QLaurentError> {
        if self.peek() != Some('q') {
            return Err(self.err("expected `q`"));
        }
        self.pos += 1;
        if self.peek() != Some('^') {
            return Ok(2);
        }
        self.pos += 1;
        let negative = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut e = self.unsigned_rational()?;
        if negative {
            e = -e;
        }
        HalfInt::from_rational(&e)
            .map(|h| h.twice())
            .map_err(|_| self.err(format!("exponent {e} is not a half-integer")))
    }

    fn term(&mut self) -> Result<(i64, BigRational), QLaurentError> {
        match self.peek() {
            Some('q') => Ok((self.monomial()?, BigRational::one())),
            Some(c) if c.is_ascii_digit() => {
                let c = self.unsigned_rational()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    Ok((self.monomial()?, c))
                } else {
                    Ok((0, c))
                }
            }
            _ => Err(self.err(format!("unexpected input at position {}", self.pos))),
        }
    }
}

impl FromStr for QLaurent {
    type Err = QLaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s,
            chars: s.chars().collect(),
            pos: 0,
        };
        let mut out = QLaurent::zero();
        let mut first = true;
        loop {
            let sign = match p.peek() {
                None if first => return Err(p.err("empty input")),
                None => break,
                Some('+') => {
                    p.pos += 1;
                    1
                }
                Some('-') => {
                    p.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return Err(p.err(format!("expected `+` or `-`, found `{c}`"))),
            };
            let (k, c) = p.term()?;
            out.add_term(k, if sign < 0 { -c } else { c });
            first = false;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> QLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn qmonomial_examples() {
        assert!(QLaurent::qmonomial(HalfInt::ZERO).is_one());
        let m = QLaurent::qmonomial(HalfInt::from_twice(-1));
        assert_eq!(m.as_monomial().map(|(k, _)| k), Some(-1));
        assert_eq!(m.to_string(), "q^-1/2");
        assert_eq!(
            QLaurent::qmonomial(HalfInt::from_int(-1)).to_string(),
            "q^-1"
        );
    }

    #[test]
    fn qmonomial_rejects_thirds() {
        let third = BigRational::new(1.into(), 3.into());
        assert!(matches!(
            QLaurent::qmonomial_rational(&third),
            Err(QLaurentError::NotHalfInteger(_))
        ));
        let half = BigRational::new((-3).into(), 2.into());
        assert_eq!(
            QLaurent::qmonomial_rational(&half).unwrap().to_string(),
            "q^-3/2"
        );
    }

    #[test]
    fn ring_examples() {
        assert!(QLaurent::qadd(&q("q^-1"), &q("-q^-1")).is_zero());
        assert_eq!(QLaurent::qmul(&q("q^-1/2"), &q("q^-1/2")), q("q^-1"));
        assert_eq!(
            QLaurent::qmul(&q("1 - q^-1"), &q("1 + q^-1")),
            q("1 - q^-2")
        );
        assert_eq!(QLaurent::qneg(&q("q - 2")), q("2 - q"));
    }

    #[test]
    fn invert_q_examples() {
        assert_eq!(q("q + q^2").invert_q(), q("q^-1 + q^-2"));
        assert!(QLaurent::one().invert_q().is_one());
        assert_eq!(q("q^-1/2").invert_q(), q("q^1/2"));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(QLaurent::zero().to_string(), "0");
        assert_eq!(q("1 - q^-1").to_string(), "-q^-1 + 1");
        assert_eq!(q("q^-2 - q^-1").to_string(), "q^-2 - q^-1");
        assert_eq!(q("3/2*q^3/2 - 2*q + 5").to_string(), "5 - 2*q + 3/2*q^3/2");
        assert_eq!(q("-q").to_string(), "-q");
        assert_eq!(q("q^1").to_string(), "q");
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<QLaurent>().is_err());
        assert!("q^1/3".parse::<QLaurent>().is_err());
        assert!("2 q".parse::<QLaurent>().is_err());
        assert!("x".parse::<QLaurent>().is_err());
        assert!("1/0".parse::<QLaurent>().is_err());
    }

    fn arb_qlaurent() -> impl Strategy<Value = QLaurent> {
        prop::collection::vec((-6i64..6, -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            let mut out = QLaurent::zero();
            for (k, n, d) in ts {
                out.add_term(k, BigRational::new(n.into(), d.into()));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_qlaurent(), b in arb_qlaurent(), c in arb_qlaurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert!(!a.terms().any(|(_, c)| c.is_zero()));
        }

        #[test]
        fn invert_q_is_an_involution_and_a_ring_map(a in arb_qlaurent(), b in arb_qlaurent()) {
            prop_assert_eq!(a.invert_q().invert_q(), a.clone());
            prop_assert_eq!((&a * &b).invert_q(), &a.invert_q() * &b.invert_q());
        }

        #[test]
        fn display_parse_round_trip(a in arb_qlaurent()) {
            prop_assert_eq!(a.to_string().parse::<QLaurent>().unwrap(), a);
        }
    }
}
