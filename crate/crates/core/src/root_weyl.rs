//! Root data on the coweight lattice, reflections and finite Weyl groups.
//!
//! Weyl group elements are stored as explicit integer matrices acting on
//! lattice coordinates (column vectors). Enumeration is breadth first from
//! the identity, so the layer index of an element is its length with respect
//! to the generating reflections.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::lattice::{HalfInt, HalfVector, LatticeVector, LinearFunctional};

/// Default bound on Weyl group size.
pub const DEFAULT_WEYL_CAP: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("Weyl group closure exceeded {cap} elements; the root datum is not of desk scale or not finite")]
    GroupTooLarge { cap: usize },
    #[error("invalid reflection: {0}")]
    BadReflection(String),
    #[error("root system generated by the simple reflections is infinite or too large")]
    InfiniteRootSystem,
    #[error("unknown root datum `{0}`")]
    UnknownRootDatum(String),
}

/// A reflection `s(v) = v - <root, v> coroot` with `<root, coroot> = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReflectionDatum {
    root: LinearFunctional,
    coroot: LatticeVector,
    root_int: Vec<i64>,
}

impl ReflectionDatum {
    pub fn new(root: LinearFunctional, coroot: LatticeVector) -> Result<Self, RootError> {
        if root.rank() != coroot.rank() {
            return Err(RootError::BadReflection(format!(
                "root {root} and coroot {coroot} have different ranks"
            )));
        }
        let root_int = root.integer_coeffs().ok_or_else(|| {
            RootError::BadReflection(format!("root {root} must have integer coefficients"))
        })?;
        if root.pair(&coroot) != HalfInt::from_int(2) {
            return Err(RootError::BadReflection(format!(
                "<{root}, {coroot}> = {} but must equal 2",
                root.pair(&coroot)
            )));
        }
        Ok(ReflectionDatum {
            root,
            coroot,
            root_int,
        })
    }

    pub fn root(&self) -> &LinearFunctional {
        &self.root
    }

    pub fn coroot(&self) -> &LatticeVector {
        &self.coroot
    }

    pub fn rank(&self) -> usize {
        self.coroot.rank()
    }

    pub fn reflect(&self, v: &LatticeVector) -> LatticeVector {
        let k = v.dot(&self.root_int);
        v - &self.coroot.scale(k)
    }

    /// The contragredient action on functionals: `f - <f, coroot> root`.
    pub fn reflect_functional(&self, f: &LinearFunctional) -> LinearFunctional {
        let k = f.pair(&self.coroot);
        // k is a half-integer; k * root has coefficients k.twice * root_i / 2
        LinearFunctional::from_twice(
            &f.coeffs()
                .iter()
                .zip(&self.root_int)
                .map(|(c, r)| c.twice() - k.twice() * r)
                .collect::<Vec<_>>(),
        )
    }

    fn matrix(&self) -> Vec<i64> {
        let n = self.rank();
        let mut m = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                m[i * n + j] = i64::from(i == j) - self.coroot.coords()[i] * self.root_int[j];
            }
        }
        m
    }
}

/// Free-function form of [`ReflectionDatum::reflect`].
pub fn reflect(r: &ReflectionDatum, v: &LatticeVector) -> LatticeVector {
    r.reflect(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    length: usize,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.length
    }

    /// `(-1)^length`.
    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == identity(self.rank)
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        let n = self.rank;
        let x = v.coords();
        LatticeVector::new(
            (0..n)
                .map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum())
                .collect(),
        )
    }

    /// Twice-coordinates of `w` applied to a half-integer vector.
    pub fn apply_half(&self, v: &HalfVector) -> HalfVector {
        let n = self.rank;
        let x = v.twice();
        HalfVector::from_twice(
            (0..n)
                .map(|i| (0..n).map(|j| self.matrix[i * n + j] * x[j]).sum())
                .collect(),
        )
    }
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// A finite Weyl group with lengths, in deterministic order: by length,
/// then lexicographically by matrix entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.elements.iter()
    }

    /// The orbit `{w v}` without repetitions, sorted.
    pub fn orbit(&self, v: &LatticeVector) -> BTreeSet<LatticeVector> {
        self.elements.iter().map(|w| w.apply(v)).collect()
    }
}

/// Breadth-first closure of the group generated by `generators` acting on a
/// lattice of the given rank.
pub fn enumerate_weyl(
    rank: usize,
    generators: &[ReflectionDatum],
    cap: usize,
) -> Result<WeylGroup, RootError> {
    if let Some(g) = generators.iter().find(|g| g.rank() != rank) {
        return Err(RootError::BadReflection(format!(
            "generator with coroot {} does not act on a rank {rank} lattice",
            g.coroot()
        )));
    }
    let gen_mats: Vec<Vec<i64>> = generators.iter().map(|g| g.matrix()).collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut elements = Vec::new();
    let mut layer = vec![identity(rank)];
    seen.insert(identity(rank));
    let mut length = 0;
    while !layer.is_empty() {
        layer.sort();
        let mut next = Vec::new();
        for m in &layer {
            for s in &gen_mats {
                let p = mat_mul(rank, s, m);
                if seen.insert(p.clone()) {
                    if seen.len() > cap {
                        return Err(RootError::GroupTooLarge { cap });
                    }
                    next.push(p);
                }
            }
        }
        elements.extend(layer.drain(..).map(|matrix| WeylElement {
            rank,
            matrix,
            length,
        }));
        layer = next;
        length += 1;
    }
    Ok(WeylGroup { rank, elements })
}

/// `<alpha, v> <= 0` for every listed positive root.
pub fn is_antidominant(v: &LatticeVector, positive_roots: &[LinearFunctional]) -> bool {
    positive_roots.iter().all(|a| a.pair(v).twice() <= 0)
}

/// `rho_B = 1/2 sum of the given coroots`.
pub fn half_sum_positive_coroots(rank: usize, coroots: &[LatticeVector]) -> HalfVector {
    let mut twice = vec![0; rank];
    for c in coroots {
        for (t, x) in twice.iter_mut().zip(c.coords()) {
            *t += x;
        }
    }
    HalfVector::from_twice(twice)
}

/// A based root datum on the coweight lattice: simple reflections together
/// with the derived positive coroots and their matching roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    simple: Vec<ReflectionDatum>,
    positive_coroots: Vec<LatticeVector>,
    positive_roots: Vec<LinearFunctional>,
}

impl RootDatum {
    /// Builds the positive system from simple reflections. Positive coroots
    /// are the orbit images of simple coroots with nonnegative coordinates in
    /// the simple coroot basis; roots are transported alongside.
    pub fn from_simple(rank: usize, simple: Vec<ReflectionDatum>) -> Result<Self, RootError> {
        if let Some(g) = simple.iter().find(|g| g.rank() != rank) {
            return Err(RootError::BadReflection(format!(
                "simple coroot {} does not live in a rank {rank} lattice",
                g.coroot()
            )));
        }
        let k = simple.len();
        let cartan: Vec<Vec<i64>> = simple
            .iter()
            .map(|si| {
                simple
                    .iter()
                    .map(|sj| {
                        si.root()
                            .pair(sj.coroot())
                            .to_integer()
                            .expect("integral root")
                    })
                    .collect()
            })
            .collect();
        // (coordinates in simple coroot basis) -> (coroot, root)
        let mut found: BTreeMap<Vec<i64>, (LatticeVector, LinearFunctional)> = BTreeMap::new();
        let mut queue: Vec<Vec<i64>> = Vec::new();
        for (i, s) in simple.iter().enumerate() {
            let mut c = vec![0; k];
            c[i] = 1;
            if found
                .insert(c.clone(), (s.coroot().clone(), s.root().clone()))
                .is_none()
            {
                queue.push(c);
            }
        }
        const ROOT_CAP: usize = 10_000;
        while let Some(c) = queue.pop() {
            let (coroot, root) = found[&c].clone();
            for (i, s) in simple.iter().enumerate() {
                // s_i(beta^) = beta^ - <alpha_i, beta^> alpha_i^
                let pairing: i64 = (0..k).map(|j| c[j] * cartan[i][j]).sum();
                let mut c2 = c.clone();
                c2[i] -= pairing;
                if c2.iter().any(|x| *x < 0) || found.contains_key(&c2) {
                    continue;
                }
                let image = (s.reflect(&coroot), s.reflect_functional(&root));
                found.insert(c2.clone(), image);
                if found.len() > ROOT_CAP {
                    return Err(RootError::InfiniteRootSystem);
                }
                queue.push(c2);
            }
        }
        // order by height, then by coordinates
        let mut entries: Vec<_> = found.into_iter().collect();
        entries.sort_by_key(|(c, _)| (c.iter().sum::<i64>(), c.clone()));
        let (positive_coroots, positive_roots) = entries.into_iter().map(|(_, p)| p).unzip();
        Ok(RootDatum {
            rank,
            simple,
            positive_coroots,
            positive_roots,
        })
    }

    /// Root datum of `GL_n` on `Z^n`: simple roots `e_i - e_{i+1}`, self-dual.
    pub fn gl(n: usize) -> Self {
        let simple = (0..n.saturating_sub(1))
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                ReflectionDatum::new(LinearFunctional::from_ints(&v), LatticeVector::new(v))
                    .expect("valid GL reflection")
            })
            .collect();
        RootDatum::from_simple(n, simple).expect("GL_n root datum")
    }

    /// `SL_2` on its coweight lattice `Z alpha^`: root `(2)`, coroot `(1)`.
    pub fn sl2() -> Self {
        let r = ReflectionDatum::new(LinearFunctional::from_ints(&[2]), LatticeVector::from([1]))
            .expect("valid SL2 reflection");
        RootDatum::from_simple(1, vec![r]).expect("SL2 root datum")
    }

    /// `Sp_4` (type C_2, dual B_2) on `Z^2`: simple roots `e1 - e2`, `2 e2`.
    pub fn sp4() -> Self {
        let a1 = ReflectionDatum::new(
            LinearFunctional::from_ints(&[1, -1]),
            LatticeVector::from([1, -1]),
        )
        .expect("valid reflection");
        let a2 = ReflectionDatum::new(
            LinearFunctional::from_ints(&[0, 2]),
            LatticeVector::from([0, 1]),
        )
        .expect("valid reflection");
        RootDatum::from_simple(2, vec![a1, a2]).expect("Sp4 root datum")
    }

    /// Parses names such as `gl3`, `sl2`, `sp4`.
    pub fn named(name: &str) -> Result<Self, RootError> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.as_str() {
            "sl2" => return Ok(RootDatum::sl2()),
            "sp4" | "c2" | "b2" => return Ok(RootDatum::sp4()),
            _ => {}
        }
        if let Some(n) = lower.strip_prefix("gl") {
            if let Ok(n) = n.parse::<usize>() {
                if (1..=8).contains(&n) {
                    return Ok(RootDatum::gl(n));
                }
            }
        }
        Err(RootError::UnknownRootDatum(name.to_string()))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simple(&self) -> &[ReflectionDatum] {
        &self.simple
    }

    pub fn positive_coroots(&self) -> &[LatticeVector] {
        &self.positive_coroots
    }

    pub fn positive_roots(&self) -> &[LinearFunctional] {
        &self.positive_roots
    }

    pub fn weyl_group(&self, cap: usize) -> Result<WeylGroup, RootError> {
        enumerate_weyl(self.rank, &self.simple, cap)
    }

    pub fn is_antidominant(&self, v: &LatticeVector) -> bool {
        is_antidominant(v, &self.positive_roots)
    }

    pub fn is_dominant(&self, v: &LatticeVector) -> bool {
        self.simple.iter().all(|s| s.root().pair(v).twice() >= 0)
    }

    /// The unique dominant element of the Weyl orbit of `v`.
    pub fn dominant_image(&self, v: &LatticeVector) -> LatticeVector {
        let mut cur = v.clone();
        while let Some(s) = self.simple.iter().find(|s| s.root().pair(&cur).twice() < 0) {
            cur = s.reflect(&cur);
        }
        cur
    }

    /// The unique antidominant element of the Weyl orbit of `v`.
    pub fn antidominant_image(&self, v: &LatticeVector) -> LatticeVector {
        let mut cur = v.clone();
        while let Some(s) = self.simple.iter().find(|s| s.root().pair(&cur).twice() > 0) {
            cur = s.reflect(&cur);
        }
        cur
    }

    /// `rho_B`, half the sum of the positive coroots.
    pub fn rho_check(&self) -> HalfVector {
        half_sum_positive_coroots(self.rank, &self.positive_coroots)
    }

    /// Half the sum of the positive roots, as a functional on the lattice.
    pub fn rho_roots(&self) -> LinearFunctional {
        let mut twice = vec![0; self.rank];
        for r in &self.positive_roots {
            for (t, c) in twice.iter_mut().zip(r.coeffs()) {
                *t += c.twice();
            }
        }
        // half of a sum of integral functionals
        LinearFunctional::from_twice(&twice.iter().map(|t| t / 2).collect::<Vec<_>>())
    }
}
