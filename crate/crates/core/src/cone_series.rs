//! Truncated formal series `sum c_lambda e^lambda` supported in a translate of
//! a strictly convex cone.
//!
//! Degrees are measured by an integer witness functional `xi` that is
//! strictly positive on every cone generator; a series "computed through
//! degree N" knows every coefficient at keys with `xi(lambda - base) <= N`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::lattice::{LatticeVector, LinearFunctional};
use crate::linalg::{fm_feasible, nonnegative_combination, Inequality, Rat};
use crate::qlaurent::QLaurent;
use crate::root_weyl::is_antidominant;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error(
        "cone generated by {0} is not strictly convex (it contains a line or a zero generator)"
    )]
    NotStrictlyConvex(String),
    #[error("incompatible cone specifications: {0}")]
    IncompatibleSpec(String),
    #[error("direction {direction} does not point into the cone (witness value {witness_value})")]
    DirectionNotInCone {
        direction: LatticeVector,
        witness_value: i64,
    },
    #[error("coefficient at {key} has degree {degree}, beyond the truncation bound {bound}")]
    OutOfBound {
        key: LatticeVector,
        degree: i64,
        bound: i64,
    },
    #[error("key {0} lies outside the translated cone")]
    OutsideCone(LatticeVector),
}

/// A strictly convex cone with a degree witness and a translation offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    generators: Vec<LatticeVector>,
    witness: Vec<i64>,
    base_point: LatticeVector,
}

impl ConeSpec {
    /// Cone through the origin with a computed witness.
    pub fn new(rank: usize, generators: Vec<LatticeVector>) -> Result<Self, SeriesError> {
        let witness = cone_witness(rank, &generators)?;
        Ok(ConeSpec {
            generators,
            witness: witness.integer_coeffs().expect("integral witness"),
            base_point: LatticeVector::zero(rank),
        })
    }

    /// Uses a caller supplied witness, checking that it is at least one on every generator.
    pub fn with_witness(
        generators: Vec<LatticeVector>,
        witness: Vec<i64>,
        base_point: LatticeVector,
    ) -> Result<Self, SeriesError> {
        if let Some(g) = generators.iter().find(|g| g.dot(&witness) < 1) {
            return Err(SeriesError::IncompatibleSpec(format!(
                "witness {:?} is not positive on generator {g}",
                witness
            )));
        }
        Ok(ConeSpec {
            generators,
            witness,
            base_point,
        })
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn witness(&self) -> &[i64] {
        &self.witness
    }

    pub fn witness_functional(&self) -> LinearFunctional {
        LinearFunctional::from_ints(&self.witness)
    }

    pub fn base_point(&self) -> &LatticeVector {
        &self.base_point
    }

    pub fn rank(&self) -> usize {
        self.base_point.rank()
    }

    /// `xi(v - base)`.
    pub fn degree(&self, v: &LatticeVector) -> i64 {
        (v - &self.base_point).dot(&self.witness)
    }

    /// `xi(v)` for a direction (no translation).
    pub fn direction_degree(&self, v: &LatticeVector) -> i64 {
        v.dot(&self.witness)
    }

    /// Is `v - base` a nonnegative rational combination of the generators?
    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.cone_contains(&(v - &self.base_point))
    }

    /// Membership of a direction in the untranslated cone.
    pub fn cone_contains(&self, d: &LatticeVector) -> bool {
        if d.is_zero() {
            return true;
        }
        if self.generators.is_empty() || self.direction_degree(d) <= 0 {
            return false;
        }
        let gens: Vec<Vec<Rat>> = self.generators.iter().map(|g| g.to_rational()).collect();
        nonnegative_combination(&gens, &d.to_rational()).is_some()
    }

    fn translated(&self, base_point: LatticeVector) -> ConeSpec {
        ConeSpec {
            generators: self.generators.clone(),
            witness: self.witness.clone(),
            base_point,
        }
    }
}

/// Integer functional strictly positive on every generator.
///
/// Feasibility is decided exactly by Fourier–Motzkin elimination. Among the
/// witnesses with small entries the one with the least total value on the
/// generators is returned, so degrees stay small and the choice is deterministic.
pub fn cone_witness(
    rank: usize,
    generators: &[LatticeVector],
) -> Result<LinearFunctional, SeriesError> {
    let describe = || {
        generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    if generators.is_empty() {
        return Ok(LinearFunctional::zero(rank));
    }
    if generators.iter().any(|g| g.is_zero()) {
        return Err(SeriesError::NotStrictlyConvex(describe()));
    }
    let ineqs: Vec<Inequality> = generators
        .iter()
        .map(|g| Inequality {
            coeffs: g
                .coords()
                .iter()
                .map(|&x| Rat::from_integer((-x).into()))
                .collect(),
            bound: -Rat::one(),
        })
        .collect();
    let Some(rational) = fm_feasible(&ineqs, rank) else {
        return Err(SeriesError::NotStrictlyConvex(describe()));
    };
    for radius in 1..=3i64 {
        if (2 * radius + 1)
            .checked_pow(rank as u32)
            .is_none_or(|n| n > 250_000)
        {
            break;
        }
        if let Some(best) = search_box(rank, generators, radius) {
            return Ok(LinearFunctional::from_ints(&best));
        }
    }
    // scale the rational solution to integers; values stay >= 1
    let lcm = rational
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<i64> = rational
        .iter()
        .map(|r| {
            (r * Rat::from_integer(lcm.clone()))
                .to_integer()
                .to_i64()
                .expect("witness fits in i64")
        })
        .collect();
    Ok(LinearFunctional::from_ints(&ints))
}

fn search_box(rank: usize, generators: &[LatticeVector], radius: i64) -> Option<Vec<i64>> {
    type Key = (i64, i64, usize, std::cmp::Reverse<Vec<i64>>);
    let mut best: Option<(Key, Vec<i64>)> = None;
    let mut cur = vec![-radius; rank];
    loop {
        let values: Vec<i64> = generators.iter().map(|g| g.dot(&cur)).collect();
        if values.iter().all(|&v| v >= 1) {
            let key = (
                values.iter().sum(),
                cur.iter().map(|x| x.abs()).sum(),
                cur.iter().filter(|x| **x < 0).count(),
                std::cmp::Reverse(cur.clone()),
            );
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, cur.clone()));
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == rank {
                return best.map(|(_, v)| v);
            }
            if cur[i] < radius {
                cur[i] += 1;
                break;
            }
            cur[i] = -radius;
            i += 1;
        }
    }
}

/// A truncated series with support in `base_point + cone`, exact through degree `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSeries {
    spec: ConeSpec,
    bound: i64,
    terms: BTreeMap<LatticeVector, QLaurent>,
}

type Buckets = Vec<HashMap<LatticeVector, QLaurent>>;

fn accumulate(map: &mut HashMap<LatticeVector, QLaurent>, key: LatticeVector, c: QLaurent) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl ConeSeries {
    /// The constant series `1` (at the origin, which must be the base point).
    pub fn one(spec: ConeSpec, bound: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(spec.base_point.clone(), QLaurent::one());
        ConeSeries {
            spec,
            bound: bound.max(0),
            terms,
        }
    }

    /// Builds a series from explicit terms. Keys beyond the bound are
    /// truncated away; keys outside the translated cone are rejected.
    pub fn from_terms(
        spec: ConeSpec,
        bound: i64,
        terms: impl IntoIterator<Item = (LatticeVector, QLaurent)>,
    ) -> Result<Self, SeriesError> {
        let mut map: HashMap<LatticeVector, QLaurent> = HashMap::new();
        for (k, c) in terms {
            let d = spec.degree(&k);
            if d > bound {
                continue;
            }
            if d < 0 || !spec.contains(&k) {
                return Err(SeriesError::OutsideCone(k));
            }
            accumulate(&mut map, k, c);
        }
        Ok(ConeSeries {
            spec,
            bound,
            terms: map.into_iter().collect(),
        })
    }

    pub fn spec(&self) -> &ConeSpec {
        &self.spec
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn degree(&self, key: &LatticeVector) -> i64 {
        self.spec.degree(key)
    }

    /// Stored terms in lexicographic key order.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &QLaurent)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `key`; zero where nothing is stored, an error beyond the bound.
    pub fn coefficient(&self, key: &LatticeVector) -> Result<QLaurent, SeriesError> {
        let degree = self.spec.degree(key);
        if degree > self.bound {
            return Err(SeriesError::OutOfBound {
                key: key.clone(),
                degree,
                bound: self.bound,
            });
        }
        Ok(self.terms.get(key).cloned().unwrap_or_default())
    }

    fn buckets(&self) -> Buckets {
        let mut b: Buckets = vec![HashMap::new(); self.bound as usize + 1];
        for (k, c) in &self.terms {
            b[self.spec.degree(k) as usize].insert(k.clone(), c.clone());
        }
        b
    }

    fn from_buckets(spec: ConeSpec, bound: i64, buckets: Buckets) -> Self {
        ConeSeries {
            spec,
            bound,
            terms: buckets.into_iter().flatten().collect(),
        }
    }

    /// Product of two series over the same witness. The result lives in the
    /// cone generated by both generator sets, translated by the sum of the
    /// base points, and is exact through the smaller of the two bounds.
    pub fn mul(&self, other: &ConeSeries) -> Result<ConeSeries, SeriesError> {
        if self.spec.witness != other.spec.witness {
            return Err(SeriesError::IncompatibleSpec(format!(
                "witnesses {:?} and {:?} differ",
                self.spec.witness, other.spec.witness
            )));
        }
        let mut generators = self.spec.generators.clone();
        for g in &other.spec.generators {
            if !generators.contains(g) {
                generators.push(g.clone());
            }
        }
        let spec = ConeSpec {
            generators,
            witness: self.spec.witness.clone(),
            base_point: &self.spec.base_point + &other.spec.base_point,
        };
        let bound = self.bound.min(other.bound);
        let a = self.buckets();
        let b = other.buckets();
        let mut out: Buckets = vec![HashMap::new(); bound as usize + 1];
        for da in 0..=bound as usize {
            for (ka, ca) in &a[da] {
                for db in 0..=(bound as usize - da) {
                    for (kb, cb) in &b[db] {
                        accumulate(&mut out[da + db], ka + kb, ca * cb);
                    }
                }
            }
        }
        Ok(ConeSeries::from_buckets(spec, bound, out))
    }

    /// Keeps exactly the terms at antidominant keys.
    pub fn restrict_antidominant(&self, positive_roots: &[LinearFunctional]) -> ConeSeries {
        ConeSeries {
            spec: self.spec.clone(),
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| is_antidominant(k, positive_roots))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops everything beyond a smaller bound.
    pub fn truncate(&self, bound: i64) -> ConeSeries {
        let bound = bound.min(self.bound);
        ConeSeries {
            spec: self.spec.clone(),
            bound,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| self.spec.degree(k) <= bound)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Equality of all coefficients up to the smaller of the two bounds.
    pub fn agrees_with(&self, other: &ConeSeries) -> bool {
        if self.spec.witness != other.spec.witness || self.spec.base_point != other.spec.base_point
        {
            return false;
        }
        let bound = self.bound.min(other.bound);
        self.truncate(bound).terms == other.truncate(bound).terms
    }

    /// One `coordinates<TAB>coefficient` row per stored term, lexicographically sorted.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("lambda\tcoefficient\n");
        for (k, c) in &self.terms {
            out.push_str(&format!("{}\t{}\n", k.to_csv(), c));
        }
        out
    }

    /// Multiplies in place by `(1 - c e^nu)`.
    fn times_linear(&mut self, c: &QLaurent, nu: &LatticeVector) {
        let mut map: HashMap<LatticeVector, QLaurent> =
            std::mem::take(&mut self.terms).into_iter().collect();
        let shifted: Vec<(LatticeVector, QLaurent)> = map
            .iter()
            .map(|(k, x)| (k + nu, -(x * c)))
            .filter(|(k, _)| self.spec.degree(k) <= self.bound)
            .collect();
        for (k, x) in shifted {
            accumulate(&mut map, k, x);
        }
        self.terms = map.into_iter().collect();
    }

    /// Multiplies in place by `(1 - c e^nu)^-1`, using `t[k] = s[k] + c t[k - nu]`
    /// in increasing degree.
    fn times_geometric(&mut self, c: &QLaurent, nu: &LatticeVector) {
        let step = self.spec.direction_degree(nu) as usize;
        debug_assert!(step >= 1);
        let mut t = self.buckets();
        for d in step..=self.bound as usize {
            let (lower, upper) = t.split_at_mut(d);
            let contributions: Vec<(LatticeVector, QLaurent)> = lower[d - step]
                .iter()
                .map(|(k, x)| (k + nu, x * c))
                .collect();
            for (k, x) in contributions {
                accumulate(&mut upper[0], k, x);
            }
        }
        self.terms = t.into_iter().flatten().collect();
    }
}

fn check_direction(spec: &ConeSpec, nu: &LatticeVector, strict: bool) -> Result<(), SeriesError> {
    let w = spec.direction_degree(nu);
    let ok = if strict { w >= 1 } else { w >= 0 } && spec.cone_contains(nu);
    if ok {
        Ok(())
    } else {
        Err(SeriesError::DirectionNotInCone {
            direction: nu.clone(),
            witness_value: w,
        })
    }
}

/// Expansion of `(1 - c e^nu)^-1 = sum_{i >= 0} c^i e^{i nu}` through degree `bound`.
pub fn geometric_inverse(
    c: &QLaurent,
    nu: &LatticeVector,
    spec: &ConeSpec,
    bound: i64,
) -> Result<ConeSeries, SeriesError> {
    check_direction(spec, nu, true)?;
    let spec = spec.translated(LatticeVector::zero(spec.rank()));
    let step = spec.direction_degree(nu);
    let mut terms = BTreeMap::new();
    let mut key = LatticeVector::zero(spec.rank());
    let mut power = QLaurent::one();
    let mut degree = 0;
    while degree <= bound && !power.is_zero() {
        terms.insert(key.clone(), power.clone());
        key += nu;
        power = &power * c;
        degree += step;
    }
    Ok(ConeSeries {
        spec,
        bound: bound.max(0),
        terms,
    })
}

/// `prod (1 - c e^nu) * prod (1 - c e^nu)^-1` over the two factor lists,
/// expanded in the cone of `spec` (taken through the origin) through degree `bound`.
pub fn expand_product(
    numerator: &[(QLaurent, LatticeVector)],
    denominator: &[(QLaurent, LatticeVector)],
    spec: &ConeSpec,
    bound: i64,
) -> Result<ConeSeries, SeriesError> {
    for (_, nu) in numerator {
        check_direction(spec, nu, false)?;
    }
    for (_, nu) in denominator {
        check_direction(spec, nu, true)?;
    }
    let spec = spec.translated(LatticeVector::zero(spec.rank()));
    let mut s = ConeSeries::one(spec, bound);
    for (c, nu) in numerator {
        s.times_linear(c, nu);
    }
    for (c, nu) in denominator {
        s.times_geometric(c, nu);
    }
    Ok(s)
}

/// Free-function form of [`ConeSeries::mul`].
pub fn series_mul(a: &ConeSeries, b: &ConeSeries) -> Result<ConeSeries, SeriesError> {
    a.mul(b)
}

/// Free-function form of [`ConeSeries::restrict_antidominant`].
pub fn restrict_antidominant(s: &ConeSeries, positive_roots: &[LinearFunctional]) -> ConeSeries {
    s.restrict_antidominant(positive_roots)
}

/// Free-function form of [`ConeSeries::coefficient`].
pub fn coefficient(s: &ConeSeries, key: &LatticeVector) -> Result<QLaurent, SeriesError> {
    s.coefficient(key)
}
