//! Property suites shared by the `verify` subcommand and the test suites.

use std::fmt;

use serde::Serialize;

use crate::cone_series::ConeSeries;
use crate::group_ring::LatticePoly;
use crate::lattice::LatticeVector;
use crate::li_oracle::{li_equivalence_check, LiDatum, LiError};
use crate::qlaurent::QLaurent;
use crate::rep_chars::{denominator_product, lowest_weight_rep, weyl_denominator};
use crate::spherical::{
    basic_asymptotics, macdonald_p, whittaker_datum, SphericalDatum, SphericalError,
    SymmetricPolynomial,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub datum: String,
    pub checked: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str, datum: &SphericalDatum) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            datum: datum.name().to_string(),
            checked: 0,
            failure: None,
        }
    }

    fn fail(mut self, msg: String) -> Self {
        self.checked += 1;
        self.failure = Some(msg);
        self
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite)?;
        writeln!(f, "datum: {}", self.datum)?;
        writeln!(f, "status: {}", if self.passed() { "pass" } else { "fail" })?;
        write!(f, "checked: {}", self.checked)?;
        if let Some(msg) = &self.failure {
            write!(f, "\nfailure: {msg}")?;
        }
        Ok(())
    }
}

/// Lattice points with `|x|_1 <= radius`, ordered by norm and then lexicographically.
pub fn lattice_ball(rank: usize, radius: i64) -> Vec<LatticeVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        let mut next = Vec::new();
        for v in &out {
            let used: i64 = v.iter().map(|x: &i64| x.abs()).sum();
            for x in -(radius - used)..=(radius - used) {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    let mut points: Vec<LatticeVector> = out.into_iter().map(LatticeVector::new).collect();
    points.sort_by_key(|v| (v.l1_norm(), v.clone()));
    points
}

/// Antidominant points of [`lattice_ball`].
pub fn antidominant_ball(datum: &SphericalDatum, radius: i64) -> Vec<LatticeVector> {
    lattice_ball(datum.rank(), radius)
        .into_iter()
        .filter(|v| datum.is_antidominant(v))
        .collect()
}

/// Alternating sum over the Weyl group equals the product over positive coroots.
pub fn verify_denominator(datum: &SphericalDatum) -> SuiteReport {
    let mut report = SuiteReport::new("denominator", datum);
    let lhs = weyl_denominator(datum.roots(), datum.weyl());
    let rhs = denominator_product(datum.roots());
    if lhs != rhs {
        return report.fail(format!("alternating sum {lhs} differs from product {rhs}"));
    }
    report.checked = 1;
    report
}

/// `P_lambda` of the Whittaker datum on the same roots is the character of lowest weight `lambda`.
pub fn verify_whittaker_schur(
    datum: &SphericalDatum,
    weights: &[LatticeVector],
) -> Result<SuiteReport, SphericalError> {
    let mut report = SuiteReport::new("whittaker-schur", datum);
    let w = whittaker_datum(datum.roots().clone(), "check")?;
    for lambda in weights {
        let p = macdonald_p(&w, lambda)?;
        let chi = lowest_weight_rep(w.roots(), w.weyl(), lambda)?.character(w.rank());
        if p.poly() != &chi {
            return Ok(report.fail(format!("at {lambda}: P = {p}, character = {chi}")));
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Precomputed `P_lambda` with the asymptotic series deep enough for every pairing among them.
pub struct PairingTable {
    pub polys: Vec<(LatticeVector, SymmetricPolynomial)>,
    basic: ConeSeries,
    weyl_order: i64,
}

impl PairingTable {
    pub fn new(datum: &SphericalDatum, lambdas: &[LatticeVector]) -> Result<Self, SphericalError> {
        let mut polys = Vec::with_capacity(lambdas.len());
        for l in lambdas {
            polys.push((l.clone(), macdonald_p(datum, l)?));
        }
        let spec = datum.cone_spec();
        let degrees = polys
            .iter()
            .flat_map(|(_, p)| p.poly().terms().map(|(k, _)| spec.degree(k)))
            .collect::<Vec<_>>();
        let needed = match (degrees.iter().min(), degrees.iter().max()) {
            (Some(lo), Some(hi)) => (hi - lo).max(0),
            _ => 0,
        };
        Ok(PairingTable {
            polys,
            basic: basic_asymptotics(datum, needed)?,
            weyl_order: datum.weyl().len() as i64,
        })
    }

    pub fn basic(&self) -> &ConeSeries {
        &self.basic
    }

    /// Same value as [`crate::spherical::pairing`], reusing the stored series.
    pub fn pair(&self, p: &LatticePoly, q: &LatticePoly) -> QLaurent {
        let spec = self.basic.spec();
        let mut total = QLaurent::zero();
        for (a, pa) in p.terms() {
            for (b, qb) in q.terms() {
                let d = b - a;
                if spec.degree(&d) < 0 {
                    continue;
                }
                let c = self.basic.coefficient(&d).expect("series deep enough");
                if !c.is_zero() {
                    total += &(&(pa * qb) * &c);
                }
            }
        }
        total.scale(&crate::linalg::rat(self.weyl_order))
    }
}

/// `P_lambda` exists for every antidominant `lambda` of norm at most `radius`,
/// and distinct ones pair to zero.
pub fn verify_orthogonality(
    datum: &SphericalDatum,
    radius: i64,
) -> Result<SuiteReport, SphericalError> {
    let mut report = SuiteReport::new("orthogonality", datum);
    let lambdas = antidominant_ball(datum, radius);
    let table = PairingTable::new(datum, &lambdas)?;
    report.checked += table.polys.len();
    for (i, (l, p)) in table.polys.iter().enumerate() {
        for (m, q) in &table.polys[i + 1..] {
            let v = table.pair(p.poly(), q.poly());
            if !v.is_zero() {
                return Ok(report.fail(format!("[P_{l}, P_{m}] = {v}")));
            }
            report.checked += 1;
        }
    }
    Ok(report)
}

/// `[P_lambda, P_0] = [P_0, P_0] * B_lambda` for every `lambda` of norm at most `radius`,
/// where `B` is the asymptotic expansion of the basic function.
pub fn verify_basic_pairing(
    datum: &SphericalDatum,
    radius: i64,
) -> Result<SuiteReport, SphericalError> {
    let mut report = SuiteReport::new("basic-pairing", datum);
    let lambdas = lattice_ball(datum.rank(), radius);
    let table = PairingTable::new(datum, &lambdas)?;
    let zero = LatticeVector::zero(datum.rank());
    let p0 = macdonald_p(datum, &zero)?;
    let norm = table.pair(p0.poly(), p0.poly());
    if norm.is_zero() {
        return Ok(report.fail("[P_0, P_0] vanishes".to_string()));
    }
    let spec = table.basic().spec().clone();
    for (l, p) in &table.polys {
        let lhs = table.pair(p.poly(), p0.poly());
        let b = if spec.degree(l) < 0 {
            QLaurent::zero()
        } else {
            table.basic().coefficient(l)?
        };
        let rhs = &norm * &b;
        if lhs != rhs {
            return Ok(report.fail(format!(
                "at {l}: [P_l, P_0] = {lhs} but [P_0, P_0] * B_l = {rhs}"
            )));
        }
        report.checked += 1;
    }
    Ok(report)
}

/// Li's formula against the product series for a group datum.
pub fn verify_li(
    datum: &SphericalDatum,
    rho: &LatticeVector,
    bound: i64,
) -> Result<SuiteReport, LiError> {
    let mut report = SuiteReport::new("li", datum);
    let li = LiDatum::for_group(datum, rho)?;
    let r = li_equivalence_check(&li, datum, rho, bound)?;
    report.checked = r.checked;
    if let Some(m) = r.mismatch {
        report.failure = Some(format!(
            "at {}: Li gives {}, the series gives {}",
            m.mu, m.li, m.series
        ));
    }
    Ok(report)
}
