//! Finitely supported sums `sum c_lambda e^lambda` over the lattice with
//! coefficients in [`QLaurent`], i.e. the group ring of the lattice.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::lattice::LatticeVector;
use crate::qlaurent::QLaurent;
use crate::root_weyl::{WeylElement, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivisionError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient {0} of the divisor is not a unit")]
    NonUnitLeading(String),
    #[error("not divisible: nonzero remainder with leading term at {0}")]
    Remainder(LatticeVector),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticePoly {
    rank: usize,
    terms: BTreeMap<LatticeVector, QLaurent>,
}

impl LatticePoly {
    pub fn zero(rank: usize) -> Self {
        LatticePoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        LatticePoly::monomial(LatticeVector::zero(rank), QLaurent::one())
    }

    /// `c e^key`.
    pub fn monomial(key: LatticeVector, c: QLaurent) -> Self {
        let mut p = LatticePoly::zero(key.rank());
        p.add_term(key, c);
        p
    }

    /// `1 - c e^v`.
    pub fn one_minus(c: &QLaurent, v: &LatticeVector) -> Self {
        let mut p = LatticePoly::one(v.rank());
        p.add_term(v.clone(), -c);
        p
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (LatticeVector, QLaurent)>,
    ) -> Self {
        let mut p = LatticePoly::zero(rank);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of their keys.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &QLaurent)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &LatticeVector) -> QLaurent {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> QLaurent {
        self.coefficient(&LatticeVector::zero(self.rank))
    }

    pub fn add_term(&mut self, key: LatticeVector, c: QLaurent) {
        debug_assert_eq!(key.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &LatticePoly, c: &QLaurent, shift: &LatticeVector) {
        for (k, x) in &other.terms {
            self.add_term(k + shift, x * c);
        }
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        let mut out = LatticePoly::zero(self.rank);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    /// Multiplies by `e^v`.
    pub fn shift(&self, v: &LatticeVector) -> Self {
        LatticePoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (k + v, c.clone())).collect(),
        }
    }

    /// Negates every exponent: `e^lambda -> e^-lambda`, coefficients unchanged.
    pub fn conjugate(&self) -> Self {
        LatticePoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// `(w f)(e^lambda) = sum c_lambda e^{w lambda}`.
    pub fn apply_weyl(&self, w: &WeylElement) -> Self {
        LatticePoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (w.apply(k), c.clone()))
                .collect(),
        }
    }

    pub fn is_invariant(&self, weyl: &WeylGroup) -> bool {
        weyl.iter().all(|w| &self.apply_weyl(w) == self)
    }

    pub fn leading(&self) -> Option<(&LatticeVector, &QLaurent)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor` in the Laurent group ring.
    ///
    /// Division runs in the lexicographic term order, which is compatible with
    /// addition on the lattice. If the quotient exists its support lies in the
    /// coordinate box `[min(self) - min(d), max(self) - max(d)]`; a candidate
    /// quotient term outside that box proves a nonzero remainder.
    pub fn div_exact(&self, divisor: &LatticePoly) -> Result<LatticePoly, DivisionError> {
        let (lead_key, lead_coeff) = divisor.leading().ok_or(DivisionError::DivisionByZero)?;
        if lead_coeff.as_monomial().is_none() {
            return Err(DivisionError::NonUnitLeading(lead_coeff.to_string()));
        }
        let mut quotient = LatticePoly::zero(self.rank);
        if self.is_zero() {
            return Ok(quotient);
        }
        let bbox = |p: &LatticePoly| -> (Vec<i64>, Vec<i64>) {
            let mut lo = vec![i64::MAX; p.rank];
            let mut hi = vec![i64::MIN; p.rank];
            for k in p.terms.keys() {
                for (i, &x) in k.coords().iter().enumerate() {
                    lo[i] = lo[i].min(x);
                    hi[i] = hi[i].max(x);
                }
            }
            (lo, hi)
        };
        let (flo, fhi) = bbox(self);
        let (dlo, dhi) = bbox(divisor);
        let mut rem = self.clone();
        while let Some((rk, rc)) = rem.leading() {
            let m = rk - lead_key;
            let inside = m
                .coords()
                .iter()
                .enumerate()
                .all(|(i, &x)| x >= flo[i] - dlo[i] && x <= fhi[i] - dhi[i]);
            if !inside {
                return Err(DivisionError::Remainder(rk.clone()));
            }
            let c = rc
                .div_monomial(lead_coeff)
                .expect("leading coefficient is a monomial");
            rem.add_scaled(divisor, &-&c, &m);
            quotient.add_term(m, c);
        }
        Ok(quotient)
    }
}

impl fmt::Display for LatticePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("[{c}] e^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LatticePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &LatticePoly {
    type Output = LatticePoly;
    fn add(self, rhs: &LatticePoly) -> LatticePoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LatticePoly {
    type Output = LatticePoly;
    fn sub(self, rhs: &LatticePoly) -> LatticePoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Neg for &LatticePoly {
    type Output = LatticePoly;
    fn neg(self) -> LatticePoly {
        LatticePoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LatticePoly {
    type Output = LatticePoly;
    fn mul(self, rhs: &LatticePoly) -> LatticePoly {
        let mut out = LatticePoly::zero(self.rank);
        for (k, c) in &self.terms {
            out.add_scaled(rhs, c, k);
        }
        out
    }
}

impl Mul for LatticePoly {
    type Output = LatticePoly;
    fn mul(self, rhs: LatticePoly) -> LatticePoly {
        &self * &rhs
    }
}
