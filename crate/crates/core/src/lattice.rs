//! Lattice vectors, half-integers and linear functionals on the coweight lattice.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("`{0}` is not a half-integer")]
    NotHalfInteger(String),
    #[error("cannot parse `{0}` as a lattice vector")]
    BadVector(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
}

/// A half-integer `twice / 2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    /// Accepts any rational whose double is an integer.
    pub fn from_rational(r: &BigRational) -> Result<Self, LatticeError> {
        let doubled = r * BigInt::from(2);
        if !doubled.is_integer() {
            return Err(LatticeError::NotHalfInteger(r.to_string()));
        }
        doubled
            .to_integer()
            .to_i64()
            .map(HalfInt::from_twice)
            .ok_or_else(|| LatticeError::NotHalfInteger(r.to_string()))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::NotHalfInteger(s.to_string());
        let t = s.trim();
        let r = match t.split_once('/') {
            Some((num, den)) => {
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                BigRational::new(num, den)
            }
            None => BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?),
        };
        HalfInt::from_rational(&r).map_err(|_| bad())
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_integer() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(n) => Ok(HalfInt::from_int(n)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// An element of the coweight lattice, in integer coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn dot(&self, coeffs: &[i64]) -> i64 {
        self.0.iter().zip(coeffs).map(|(a, b)| a * b).sum()
    }

    /// Sum of absolute values of the coordinates.
    pub fn l1_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect()
    }

    /// Comma separated coordinates, the form used in tables and on the command line.
    pub fn to_csv(&self) -> String {
        self.0
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticeVector {
    fn from(v: [i64; N]) -> Self {
        LatticeVector(v.to_vec())
    }
}

impl FromStr for LatticeVector {
    type Err = LatticeError;

    /// Parses `1,2,-3`, optionally wrapped in parentheses or brackets.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']'])
            .trim();
        if t.is_empty() {
            return Ok(LatticeVector(Vec::new()));
        }
        t.split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(LatticeVector)
            .map_err(|_| LatticeError::BadVector(s.to_string()))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        &self + &rhs
    }
}

impl AddAssign<&LatticeVector> for LatticeVector {
    fn add_assign(&mut self, rhs: &LatticeVector) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        &self - &rhs
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        -&self
    }
}

/// A vector with half-integer coordinates, e.g. the half-sum of positive coroots.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfVector {
    twice: Vec<i64>,
}

impl HalfVector {
    pub fn from_twice(twice: Vec<i64>) -> Self {
        HalfVector { twice }
    }

    pub fn twice(&self) -> &[i64] {
        &self.twice
    }

    pub fn coords(&self) -> Vec<HalfInt> {
        self.twice.iter().map(|&t| HalfInt::from_twice(t)).collect()
    }

    pub fn rank(&self) -> usize {
        self.twice.len()
    }

    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.twice
            .iter()
            .map(|t| (t % 2 == 0).then_some(t / 2))
            .collect::<Option<Vec<_>>>()
            .map(LatticeVector)
    }
}

impl fmt::Debug for HalfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A functional on the lattice with half-integer coefficients; pairs as
/// `<f, v> = sum_i coeff_i * v_i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearFunctional(Vec<HalfInt>);

impl LinearFunctional {
    pub fn new(coeffs: Vec<HalfInt>) -> Self {
        LinearFunctional(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        LinearFunctional(coeffs.iter().map(|&c| HalfInt::from_int(c)).collect())
    }

    pub fn from_twice(twice: &[i64]) -> Self {
        LinearFunctional(twice.iter().map(|&c| HalfInt::from_twice(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LinearFunctional(vec![HalfInt::ZERO; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[HalfInt] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_integer()).collect()
    }

    pub fn pair(&self, v: &LatticeVector) -> HalfInt {
        debug_assert_eq!(self.rank(), v.rank());
        HalfInt::from_twice(
            self.0
                .iter()
                .zip(v.coords())
                .map(|(c, x)| c.twice() * x)
                .sum(),
        )
    }

    /// Pairing with a half-integer vector; the result lies in `Z/4`, returned as a rational.
    pub fn pair_half(&self, v: &HalfVector) -> BigRational {
        let quad: i64 = self
            .0
            .iter()
            .zip(v.twice())
            .map(|(c, x)| c.twice() * x)
            .sum();
        BigRational::new(quad.into(), 4.into())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.twice() == 0)
    }
}

impl fmt::Debug for LinearFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

impl fmt::Display for LinearFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &LinearFunctional {
    type Output = LinearFunctional;
    fn add(self, rhs: &LinearFunctional) -> LinearFunctional {
        LinearFunctional(self.0.iter().zip(&rhs.0).map(|(a, b)| *a + *b).collect())
    }
}

impl Mul<&LinearFunctional> for i64 {
    type Output = LinearFunctional;
    fn mul(self, rhs: &LinearFunctional) -> LinearFunctional {
        LinearFunctional(
            rhs.0
                .iter()
                .map(|c| HalfInt::from_twice(self * c.twice()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_int_parsing_and_display() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert_eq!("7".parse::<HalfInt>().unwrap().to_string(), "7");
        assert_eq!(HalfInt::from_twice(-3).to_string(), "-3/2");
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn vector_parsing() {
        let v: LatticeVector = "(1, -2,3)".parse().unwrap();
        assert_eq!(v, LatticeVector::from([1, -2, 3]));
        assert_eq!(v.to_csv(), "1,-2,3");
        assert!("1,a".parse::<LatticeVector>().is_err());
    }

    #[test]
    fn functional_pairing() {
        let rho = LinearFunctional::from_twice(&[1, -1]);
        assert_eq!(
            rho.pair(&LatticeVector::from([1, 2])),
            HalfInt::from_twice(-1)
        );
        assert_eq!(
            rho.pair(&LatticeVector::from([1, -1])),
            HalfInt::from_int(1)
        );
    }
}
