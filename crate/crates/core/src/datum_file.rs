//! TOML datum files.
//!
//! ```toml
//! name = "group:gl2"
//! rank = 2
//! cone = [[1, -1]]
//! rho_px = ["1/2", "-1/2"]
//!
//! [[reflection]]
//! root = [1, -1]
//! coroot = [1, -1]
//!
//! [[theta]]
//! theta = [1, -1]
//! sigma = 1
//! r = 1
//! ```
//!
//! Reflections are the simple ones; the positive system is derived from them.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{HalfInt, LatticeVector, LinearFunctional};
use crate::root_weyl::{ReflectionDatum, RootDatum};
use crate::spherical::{SphericalDatum, SphericalError, ThetaTriple};

#[derive(Debug, Error)]
pub enum DatumFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed datum file: {0}")]
    Parse(String),
    #[error("datum file: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReflectionRecord {
    root: Vec<HalfInt>,
    coroot: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaRecord {
    theta: Vec<i64>,
    sigma: i8,
    r: HalfInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumRecord {
    name: String,
    rank: usize,
    #[serde(default)]
    cone: Vec<Vec<i64>>,
    rho_px: Vec<HalfInt>,
    #[serde(default)]
    reflection: Vec<ReflectionRecord>,
    #[serde(default)]
    theta: Vec<ThetaRecord>,
}

fn check_len(what: &str, len: usize, rank: usize) -> Result<(), DatumFileError> {
    if len != rank {
        return Err(DatumFileError::Invalid(format!(
            "{what} has {len} entries, rank is {rank}"
        )));
    }
    Ok(())
}

/// Parses a datum from TOML text and validates it.
pub fn parse_datum(text: &str) -> Result<SphericalDatum, DatumFileError> {
    let rec: DatumRecord =
        toml::from_str(text).map_err(|e| DatumFileError::Parse(e.to_string()))?;
    let rank = rec.rank;
    check_len("rho_P(X)", rec.rho_px.len(), rank)?;
    let mut simple = Vec::new();
    for r in &rec.reflection {
        check_len("reflection root", r.root.len(), rank)?;
        check_len("reflection coroot", r.coroot.len(), rank)?;
        let datum = ReflectionDatum::new(
            LinearFunctional::new(r.root.clone()),
            LatticeVector::new(r.coroot.clone()),
        )
        .map_err(|e| DatumFileError::Invalid(e.to_string()))?;
        simple.push(datum);
    }
    let roots =
        RootDatum::from_simple(rank, simple).map_err(|e| DatumFileError::Invalid(e.to_string()))?;
    let mut theta = Vec::new();
    for t in &rec.theta {
        check_len("Theta+ element", t.theta.len(), rank)?;
        theta.push(
            ThetaTriple::new(LatticeVector::new(t.theta.clone()), t.sigma, t.r).map_err(invalid)?,
        );
    }
    let mut cone = Vec::new();
    for g in &rec.cone {
        check_len("C_X generator", g.len(), rank)?;
        cone.push(LatticeVector::new(g.clone()));
    }
    SphericalDatum::new(
        rec.name,
        roots,
        theta,
        LinearFunctional::new(rec.rho_px),
        cone,
    )
    .map_err(invalid)
}

fn invalid(e: SphericalError) -> DatumFileError {
    DatumFileError::Invalid(e.to_string())
}

pub fn read_datum(path: &Path) -> Result<SphericalDatum, DatumFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| DatumFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_datum(&text)
}

/// Renders a datum so that [`parse_datum`] returns an equal datum.
pub fn render_datum(datum: &SphericalDatum) -> String {
    let rec = DatumRecord {
        name: datum.name().to_string(),
        rank: datum.rank(),
        cone: datum.cone().iter().map(|g| g.coords().to_vec()).collect(),
        rho_px: datum.rho_px().coeffs().to_vec(),
        reflection: datum
            .roots()
            .simple()
            .iter()
            .map(|s| ReflectionRecord {
                root: s.root().coeffs().to_vec(),
                coroot: s.coroot().coords().to_vec(),
            })
            .collect(),
        theta: datum
            .theta_plus()
            .iter()
            .map(|t| ThetaRecord {
                theta: t.theta.coords().to_vec(),
                sigma: t.sigma,
                r: t.r,
            })
            .collect(),
    };
    toml::to_string(&rec).expect("datum renders as TOML")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spherical::parse_preset;

    #[test]
    fn presets_round_trip() {
        for name in [
            "group:gl2",
            "group:gl3",
            "group:sp4",
            "group:sl2",
            "whittaker:gl3",
            "sp2n_gl2n:2",
            "sp2n_gl2n:3",
        ] {
            let d = parse_preset(name).unwrap();
            let text = render_datum(&d);
            let back = parse_datum(&text).unwrap();
            assert_eq!(back, d, "{name}\n{text}");
            assert_eq!(render_datum(&back), text);
        }
    }

    #[test]
    fn documented_example_parses() {
        let text = r#"
name = "group:gl2"
rank = 2
cone = [[1, -1]]
rho_px = ["1/2", "-1/2"]

[[reflection]]
root = [1, -1]
coroot = [1, -1]

[[theta]]
theta = [1, -1]
sigma = 1
r = 1
"#;
        assert_eq!(
            parse_datum(text).unwrap(),
            parse_preset("group:gl2").unwrap()
        );
    }

    #[test]
    fn diagnostics_name_the_broken_invariant() {
        let theta_outside = r#"
name = "bad"
rank = 2
cone = [[1, -1]]
rho_px = [0, 0]
[[reflection]]
root = [1, -1]
coroot = [1, -1]
[[theta]]
theta = [0, 1]
sigma = 1
r = 1
"#;
        let err = parse_datum(theta_outside).unwrap_err().to_string();
        assert!(err.contains("Theta+"), "{err}");
        let short_rho = "name = \"x\"\nrank = 2\nrho_px = [0]\n";
        assert!(parse_datum(short_rho)
            .unwrap_err()
            .to_string()
            .contains("rho_P(X)"));
        let bad_sigma = "name = \"x\"\nrank = 1\nrho_px = [0]\ncone = [[1]]\n[[theta]]\ntheta = [1]\nsigma = 2\nr = 1\n";
        assert!(parse_datum(bad_sigma)
            .unwrap_err()
            .to_string()
            .contains("sigma"));
        assert!(matches!(
            parse_datum("rank = ]"),
            Err(DatumFileError::Parse(_))
        ));
        let line = "name = \"x\"\nrank = 1\nrho_px = [0]\ncone = [[1], [-1]]\n";
        assert!(parse_datum(line).unwrap_err().to_string().contains("C_X"));
    }
}
