//! Characters of the dual group.
//!
//! The dual group of a [`RootDatum`] has the coroots as its roots and the
//! root functionals as its coroots, so its weights live in the same lattice.
//! Representations are named by their lowest weight.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::group_ring::LatticePoly;
use crate::lattice::LatticeVector;
use crate::linalg::{solve, Rat};
use crate::qlaurent::QLaurent;
use crate::root_weyl::{RootDatum, WeylGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("lowest weight {0} is not antidominant")]
    NotAntidominant(LatticeVector),
    #[error("lowest weight {0} has rank {1}, expected {2}")]
    Dimension(LatticeVector, usize, usize),
    #[error("highest and lowest weight of {0} differ by a non-integral coroot combination")]
    NotInRootLattice(LatticeVector),
}

/// Weights with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    weights: BTreeMap<LatticeVector, u64>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        WeightMultiset::default()
    }

    pub fn insert(&mut self, weight: LatticeVector, multiplicity: u64) {
        if multiplicity > 0 {
            *self.weights.entry(weight).or_insert(0) += multiplicity;
        }
    }

    pub fn multiplicity(&self, weight: &LatticeVector) -> u64 {
        self.weights.get(weight).copied().unwrap_or(0)
    }

    /// Distinct weights in lexicographic order with their multiplicities.
    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, u64)> {
        self.weights.iter().map(|(k, &m)| (k, m))
    }

    /// Every weight repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<LatticeVector> {
        self.weights
            .iter()
            .flat_map(|(k, &m)| std::iter::repeat_n(k.clone(), m as usize))
            .collect()
    }

    pub fn dimension(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `sum m_mu e^mu`.
    pub fn character(&self, rank: usize) -> LatticePoly {
        LatticePoly::from_terms(
            rank,
            self.weights
                .iter()
                .map(|(k, &m)| (k.clone(), QLaurent::from_int(m as i64))),
        )
    }

    pub fn is_weyl_invariant(&self, weyl: &WeylGroup) -> bool {
        weyl.iter().all(|w| {
            self.weights
                .iter()
                .all(|(k, &m)| self.multiplicity(&w.apply(k)) == m)
        })
    }
}

impl FromIterator<(LatticeVector, u64)> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = (LatticeVector, u64)>>(iter: I) -> Self {
        let mut out = WeightMultiset::new();
        for (k, m) in iter {
            out.insert(k, m);
        }
        out
    }
}

/// The integer Gram matrix `sum_w w^T w`, positive definite and Weyl invariant.
fn invariant_form(rank: usize, weyl: &WeylGroup) -> Vec<i64> {
    let mut g = vec![0; rank * rank];
    for w in weyl.iter() {
        let m = w.matrix();
        for i in 0..rank {
            for j in 0..rank {
                g[i * rank + j] += (0..rank)
                    .map(|k| m[k * rank + i] * m[k * rank + j])
                    .sum::<i64>();
            }
        }
    }
    g
}

fn form(g: &[i64], a: &LatticeVector, b: &LatticeVector) -> i64 {
    let n = a.rank();
    let (x, y) = (a.coords(), b.coords());
    (0..n)
        .map(|i| (0..n).map(|j| x[i] * g[i * n + j] * y[j]).sum::<i64>())
        .sum()
}

/// Weights of the irreducible dual-group module with the given lowest weight.
///
/// Multiplicities of dominant weights come from Freudenthal's recursion,
/// started at the highest weight and run through the box of dominant weights
/// lying between the highest and the lowest weight; the rest follow by
/// Weyl symmetry.
pub fn lowest_weight_rep(
    datum: &RootDatum,
    weyl: &WeylGroup,
    lowest: &LatticeVector,
) -> Result<WeightMultiset, RepError> {
    let rank = datum.rank();
    if lowest.rank() != rank {
        return Err(RepError::Dimension(lowest.clone(), lowest.rank(), rank));
    }
    if !datum.is_antidominant(lowest) {
        return Err(RepError::NotAntidominant(lowest.clone()));
    }
    let highest = datum.dominant_image(lowest);
    let simple: Vec<&LatticeVector> = datum.simple().iter().map(|s| s.coroot()).collect();
    let columns: Vec<Vec<Rat>> = simple.iter().map(|c| c.to_rational()).collect();
    let spread = solve(&columns, &(&highest - lowest).to_rational())
        .ok_or_else(|| RepError::NotInRootLattice(lowest.clone()))?;
    let mut counts = Vec::with_capacity(spread.len());
    for c in &spread {
        if !c.is_integer() || c < &BigRational::zero() {
            return Err(RepError::NotInRootLattice(lowest.clone()));
        }
        counts.push(c.to_integer().to_i64().expect("small coefficient"));
    }

    let g = invariant_form(rank, weyl);
    let two_rho: LatticeVector = datum
        .positive_coroots()
        .iter()
        .fold(LatticeVector::zero(rank), |acc, c| &acc + c);

    // dominant weights in the box, ordered by depth below the highest weight
    let mut candidates: Vec<(i64, LatticeVector)> = Vec::new();
    let mut n = vec![0i64; simple.len()];
    loop {
        let mut mu = highest.clone();
        for (k, c) in n.iter().zip(&simple) {
            mu = &mu - &c.scale(*k);
        }
        if datum.is_dominant(&mu) {
            candidates.push((n.iter().sum(), mu));
        }
        let mut i = 0;
        loop {
            if i == n.len() {
                break;
            }
            if n[i] < counts[i] {
                n[i] += 1;
                break;
            }
            n[i] = 0;
            i += 1;
        }
        if i == n.len() {
            break;
        }
    }
    candidates.sort();

    let mut dominant: BTreeMap<LatticeVector, i64> = BTreeMap::new();
    let lookup = |dominant: &BTreeMap<LatticeVector, i64>, v: &LatticeVector| -> i64 {
        dominant.get(&datum.dominant_image(v)).copied().unwrap_or(0)
    };
    for (depth, mu) in candidates {
        if depth == 0 {
            dominant.insert(mu, 1);
            continue;
        }
        let denom = form(&g, &(&highest - &mu), &(&(&highest + &mu) + &two_rho));
        if denom <= 0 {
            continue;
        }
        let mut numer = 0i64;
        for beta in datum.positive_coroots() {
            let mut k = 1;
            loop {
                let nu = &mu + &beta.scale(k);
                let m = lookup(&dominant, &nu);
                if m == 0 {
                    break;
                }
                numer += m * form(&g, &nu, beta);
                k += 1;
            }
        }
        let m = 2 * numer / denom;
        debug_assert_eq!(2 * numer % denom, 0, "Freudenthal quotient at {mu}");
        if m > 0 {
            dominant.insert(mu, m);
        }
    }

    let mut out = WeightMultiset::new();
    for (mu, m) in dominant {
        for nu in weyl.orbit(&mu) {
            out.insert(nu, m as u64);
        }
    }
    Ok(out)
}

/// `prod_{alpha > 0} <alpha, lambda + rho> / <alpha, rho>` for the highest weight `lambda`.
pub fn weyl_dimension(datum: &RootDatum, lowest: &LatticeVector) -> BigRational {
    let highest = datum.dominant_image(lowest);
    let rho = datum.rho_check();
    let mut dim = BigRational::one();
    for a in datum.positive_roots() {
        let r = a.pair_half(&rho);
        dim *= (a.pair(&highest).to_rational() + &r) / r;
    }
    dim
}

/// Free-function form of [`WeightMultiset::character`].
pub fn character(weights: &WeightMultiset, rank: usize) -> LatticePoly {
    weights.character(rank)
}

/// `sum_w (-1)^l(w) e^{rho_B - w rho_B}`.
pub fn weyl_denominator(datum: &RootDatum, weyl: &WeylGroup) -> LatticePoly {
    let rank = datum.rank();
    let rho = datum.rho_check();
    let mut out = LatticePoly::zero(rank);
    for w in weyl.iter() {
        let image = w.apply_half(&rho);
        let diff: Vec<i64> = rho
            .twice()
            .iter()
            .zip(image.twice())
            .map(|(a, b)| (a - b) / 2)
            .collect();
        out.add_term(LatticeVector::new(diff), QLaurent::from_int(w.sign()));
    }
    out
}

/// `prod_{gamma > 0} (1 - e^gamma)` expanded.
pub fn denominator_product(datum: &RootDatum) -> LatticePoly {
    datum
        .positive_coroots()
        .iter()
        .fold(LatticePoly::one(datum.rank()), |acc, g| {
            &acc * &LatticePoly::one_minus(&QLaurent::one(), g)
        })
}
