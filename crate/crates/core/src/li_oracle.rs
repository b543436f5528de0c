//! Li's partition-function formula for the group case, as an independent
//! oracle for the inverse Satake transform of `L(rho)`.
//!
//! Partitions are counted by direct enumeration; nothing here expands series.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{HalfVector, LatticeVector, LinearFunctional};
use crate::linalg::{solve, Rat};
use crate::qlaurent::QLaurent;
use crate::rep_chars::WeightMultiset;
use crate::root_weyl::{RootDatum, WeylGroup};
use crate::spherical::{lfun_product, representation, SphericalDatum, SphericalError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiError {
    #[error("no functional det with <det, rho> = 1 vanishing on the coroots: {0}")]
    NoDeterminant(String),
    #[error("the multiset Psi does not lie in a strictly convex cone")]
    NotConvex,
    #[error(transparent)]
    Spherical(#[from] SphericalError),
}

/// `Psi`, `det`, `rho_B` and the Weyl group of `H`.
#[derive(Clone, Debug)]
pub struct LiDatum {
    psi: Vec<LatticeVector>,
    det: LinearFunctional,
    rho_b: HalfVector,
    weyl: WeylGroup,
    witness: Vec<i64>,
}

fn small_witness(rank: usize, psi: &[LatticeVector]) -> Option<Vec<i64>> {
    for radius in 1..=4i64 {
        let mut cur = vec![-radius; rank];
        let mut best: Option<(i64, Vec<i64>)> = None;
        loop {
            if psi.iter().all(|p| p.dot(&cur) >= 1) {
                let total: i64 = psi.iter().map(|p| p.dot(&cur)).sum();
                if best.as_ref().is_none_or(|(t, _)| total < *t) {
                    best = Some((total, cur.clone()));
                }
            }
            let mut i = 0;
            while i < rank && cur[i] == radius {
                cur[i] = -radius;
                i += 1;
            }
            if i == rank {
                break;
            }
            cur[i] += 1;
        }
        if let Some((_, w)) = best {
            return Some(w);
        }
    }
    None
}

impl LiDatum {
    /// `Psi` is the positive coroots of `h` together with the weights of `V_rho`.
    pub fn new(
        h: &RootDatum,
        weyl: WeylGroup,
        weights: &WeightMultiset,
        rho: &LatticeVector,
    ) -> Result<Self, LiError> {
        let mut psi: Vec<LatticeVector> = h.positive_coroots().to_vec();
        psi.extend(weights.expanded());
        let det = determinant(h, rho)?;
        LiDatum::from_parts(psi, det, h.rho_check(), weyl)
    }

    pub fn from_parts(
        psi: Vec<LatticeVector>,
        det: LinearFunctional,
        rho_b: HalfVector,
        weyl: WeylGroup,
    ) -> Result<Self, LiError> {
        let witness = small_witness(rho_b.rank(), &psi).ok_or(LiError::NotConvex)?;
        Ok(LiDatum {
            psi,
            det,
            rho_b,
            weyl,
            witness,
        })
    }

    /// The datum for a group preset and lowest weight `rho`.
    pub fn for_group(datum: &SphericalDatum, rho: &LatticeVector) -> Result<Self, LiError> {
        let weights = representation(datum, rho)?;
        LiDatum::new(datum.roots(), datum.weyl().clone(), &weights, rho)
    }

    pub fn psi(&self) -> &[LatticeVector] {
        &self.psi
    }

    pub fn det(&self) -> &LinearFunctional {
        &self.det
    }

    /// The same datum with the `index`-th element of `Psi` removed.
    pub fn without_part(&self, index: usize) -> LiDatum {
        let mut out = self.clone();
        out.psi.remove(index);
        out
    }

    fn shifts(&self) -> Vec<(LatticeVector, i64)> {
        self.weyl
            .iter()
            .map(|w| {
                let image = w.apply_half(&self.rho_b);
                let diff = self
                    .rho_b
                    .twice()
                    .iter()
                    .zip(image.twice())
                    .map(|(a, b)| (a - b) / 2)
                    .collect();
                (LatticeVector::new(diff), w.sign())
            })
            .collect()
    }
}

/// The functional with `<det, rho> = 1` vanishing on every positive coroot.
pub fn determinant(h: &RootDatum, rho: &LatticeVector) -> Result<LinearFunctional, LiError> {
    let rank = h.rank();
    let mut rows: Vec<&LatticeVector> = h.positive_coroots().iter().collect();
    rows.push(rho);
    let columns: Vec<Vec<Rat>> = (0..rank)
        .map(|j| {
            rows.iter()
                .map(|r| Rat::from_integer(r.coords()[j].into()))
                .collect()
        })
        .collect();
    let mut rhs = vec![Rat::zero(); rows.len()];
    *rhs.last_mut().expect("rho row") = Rat::from_integer(1.into());
    let f = solve(&columns, &rhs).ok_or_else(|| no_det(rho))?;
    let twice: Option<Vec<i64>> = f
        .iter()
        .map(|c| {
            let t = c * Rat::from_integer(2.into());
            t.is_integer().then(|| t.to_integer().to_i64()).flatten()
        })
        .collect();
    twice
        .map(|t| LinearFunctional::from_twice(&t))
        .ok_or_else(|| no_det(rho))
}

fn no_det(rho: &LatticeVector) -> LiError {
    LiError::NoDeterminant(format!("rho = {rho}"))
}

/// Counts of multisets of `Psi` by size, for every target reached in enumeration.
struct Partitions<'a> {
    psi: &'a [LatticeVector],
    witness: &'a [i64],
    memo: HashMap<(usize, LatticeVector), Vec<BigInt>>,
}

impl<'a> Partitions<'a> {
    /// Number of multisets of `psi[index..]` summing to `target`, by size.
    fn count(&mut self, index: usize, target: &LatticeVector) -> Vec<BigInt> {
        if index == self.psi.len() {
            return if target.is_zero() {
                vec![BigInt::from(1)]
            } else {
                Vec::new()
            };
        }
        let key = (index, target.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let part = &self.psi[index];
        let mut out: Vec<BigInt> = Vec::new();
        let mut remaining = target.clone();
        let mut used = 0usize;
        while remaining.dot(self.witness) >= 0 {
            let sub = self.count(index + 1, &remaining);
            for (size, c) in sub.into_iter().enumerate() {
                if out.len() <= size + used {
                    out.resize(size + used + 1, BigInt::zero());
                }
                out[size + used] += c;
            }
            remaining = &remaining - part;
            used += 1;
        }
        self.memo.insert(key, out.clone());
        out
    }
}

/// `P_Psi(mu; q)`: the sum of `q^|S|` over multisets `S` of `Psi` with `sum S = -mu`.
pub fn li_partition(d: &LiDatum, mu: &LatticeVector) -> QLaurent {
    let mut p = Partitions {
        psi: &d.psi,
        witness: &d.witness,
        memo: HashMap::new(),
    };
    size_polynomial(&p.count(0, &-mu), 2)
}

fn size_polynomial(counts: &[BigInt], v_per_part: i64) -> QLaurent {
    counts
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(QLaurent::zero(), |acc, (size, c)| {
            &acc + &QLaurent::v_monomial(
                v_per_part * size as i64,
                BigRational::from_integer(c.clone()),
            )
        })
}

/// `c_mu(q) = q^<det, mu> sum_w (-1)^l(w) P_Psi(rho_B - w rho_B - mu; q^-1)`,
/// zero when `<det, mu> < 0`.
pub fn li_coefficient(d: &LiDatum, mu: &LatticeVector) -> QLaurent {
    let mut p = Partitions {
        psi: &d.psi,
        witness: &d.witness,
        memo: HashMap::new(),
    };
    li_coefficient_with(d, &mut p, mu)
}

fn li_coefficient_with(d: &LiDatum, p: &mut Partitions<'_>, mu: &LatticeVector) -> QLaurent {
    let level = d.det.pair(mu);
    if level.twice() < 0 {
        return QLaurent::zero();
    }
    let mut total = QLaurent::zero();
    for (shift, sign) in d.shifts() {
        // partitions of mu - (rho_B - w rho_B), weighted by q^-|S|
        let counts = p.count(0, &(mu - &shift));
        let term = size_polynomial(&counts, -2);
        if sign > 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    &total * &QLaurent::qmonomial(level)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub mu: LatticeVector,
    pub li: QLaurent,
    pub series: QLaurent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiReport {
    pub checked: usize,
    pub bound: i64,
    pub mismatch: Option<Mismatch>,
}

impl LiReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for LiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(
                f,
                "status: pass\nchecked: {}\nbound: {}",
                self.checked, self.bound
            ),
            Some(m) => write!(
                f,
                "status: mismatch\nchecked: {}\nbound: {}\nmu: {}\nli: {}\nseries: {}",
                self.checked, self.bound, m.mu, m.li, m.series
            ),
        }
    }
}

/// Compares `c_mu` with the coefficients of `L(rho) * Asymp(Phi^0)` at every
/// `mu` of degree at most `bound` where either side can be nonzero.
pub fn li_equivalence_check(
    d: &LiDatum,
    datum: &SphericalDatum,
    rho: &LatticeVector,
    bound: i64,
) -> Result<LiReport, LiError> {
    let series = lfun_product(datum, rho, bound)?;
    let witness = series.spec().witness().to_vec();
    let degree = |v: &LatticeVector| v.dot(&witness);

    let mut candidates: BTreeSet<LatticeVector> = series.terms().map(|(k, _)| k.clone()).collect();
    for (shift, _) in d.shifts() {
        sums_up_to(&d.psi, &witness, shift, bound, &mut candidates);
    }
    candidates.retain(|mu| degree(mu) <= bound);

    let mut p = Partitions {
        psi: &d.psi,
        witness: &d.witness,
        memo: HashMap::new(),
    };
    let mut checked = 0;
    for mu in candidates {
        let li = li_coefficient_with(d, &mut p, &mu);
        let s = series.coefficient(&mu).expect("within bound");
        checked += 1;
        if li != s {
            return Ok(LiReport {
                checked,
                bound,
                mismatch: Some(Mismatch { mu, li, series: s }),
            });
        }
    }
    Ok(LiReport {
        checked,
        bound,
        mismatch: None,
    })
}

/// All `start + sum S` for multisets `S` of `parts` with degree at most `bound`.
/// Parts of nonpositive degree are skipped; they cannot occur for a valid datum.
fn sums_up_to(
    parts: &[LatticeVector],
    witness: &[i64],
    start: LatticeVector,
    bound: i64,
    out: &mut BTreeSet<LatticeVector>,
) {
    let mut frontier = vec![(start, 0usize)];
    let mut seen: BTreeSet<(LatticeVector, usize)> = BTreeSet::new();
    while let Some((v, from)) = frontier.pop() {
        if v.dot(witness) > bound || !seen.insert((v.clone(), from)) {
            continue;
        }
        out.insert(v.clone());
        for (i, part) in parts.iter().enumerate().skip(from) {
            if part.dot(witness) >= 1 {
                frontier.push((&v + part, i));
            }
        }
    }
}
