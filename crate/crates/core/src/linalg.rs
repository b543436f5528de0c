//! Small exact rational linear algebra: linear systems, and feasibility of
//! inequality systems by Fourier–Motzkin elimination. Sized for desk-scale
//! ranks (at most a handful of variables).

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
fn rref(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (src, dst) = if r < row {
                    let (a, b) = m.split_at_mut(row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[row], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank of a list of row vectors.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Solves `A x = b` where `A` is given by its columns. Returns one solution
/// (free variables set to zero) or `None` when inconsistent.
pub fn solve(columns: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = columns.len();
    let mut m: Vec<Vec<Rat>> = (0..b.len())
        .map(|i| {
            let mut row: Vec<Rat> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m, n + 1);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][n].clone();
    }
    Some(x)
}

/// Is `v` in the rational linear span of `gens`?
pub fn in_span(gens: &[Vec<Rat>], v: &[Rat]) -> bool {
    solve(gens, v).is_some()
}

/// One inequality `coeffs . y <= bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<Rat>,
    pub bound: Rat,
}

impl Inequality {
    /// Scales so that the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let s = lead.abs().recip();
            for c in self.coeffs.iter_mut() {
                *c *= &s;
            }
            self.bound *= &s;
        }
        self
    }
}

/// Finds a rational point satisfying every inequality, or `None` when the
/// system is infeasible.
pub fn fm_feasible(ineqs: &[Inequality], nvars: usize) -> Option<Vec<Rat>> {
    // stages[k] holds the system in which variables 0..k have been eliminated
    let mut stages: Vec<Vec<Inequality>> = vec![dedup(ineqs.to_vec())];
    for var in 0..nvars {
        let cur = stages.last().expect("nonempty");
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for ineq in cur {
            let c = &ineq.coeffs[var];
            if c.is_positive() {
                pos.push(ineq);
            } else if c.is_negative() {
                neg.push(ineq);
            } else {
                next.push(ineq.clone());
            }
        }
        for p in &pos {
            for n in &neg {
                let a = p.coeffs[var].clone();
                let b = -n.coeffs[var].clone();
                let coeffs: Vec<Rat> = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(x, y)| x * &b + y * &a)
                    .collect();
                let bound = &p.bound * &b + &n.bound * &a;
                next.push(Inequality { coeffs, bound });
            }
        }
        stages.push(dedup(next));
    }
    if stages
        .last()
        .expect("nonempty")
        .iter()
        .any(|i| i.bound.is_negative())
    {
        return None;
    }
    // back substitution: variable `var` is constrained by stages[var] once later ones are fixed
    let mut y = vec![Rat::zero(); nvars];
    for var in (0..nvars).rev() {
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        for ineq in &stages[var] {
            let c = &ineq.coeffs[var];
            if c.is_zero() {
                continue;
            }
            let rest: Rat = ineq
                .coeffs
                .iter()
                .zip(&y)
                .enumerate()
                .filter(|(j, _)| *j > var)
                .map(|(_, (a, b))| a * b)
                .sum();
            let limit = (&ineq.bound - rest) / c;
            if c.is_positive() {
                hi = Some(hi.map_or(limit.clone(), |h: Rat| h.min(limit)));
            } else {
                lo = Some(lo.map_or(limit.clone(), |l: Rat| l.max(limit)));
            }
        }
        y[var] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) if h.is_negative() => h,
            _ => Rat::zero(),
        };
    }
    debug_assert!(ineqs.iter().all(|i| {
        let lhs: Rat = i.coeffs.iter().zip(&y).map(|(a, b)| a * b).sum();
        lhs <= i.bound
    }));
    Some(y)
}

fn dedup(v: Vec<Inequality>) -> Vec<Inequality> {
    let mut v: Vec<Inequality> = v
        .into_iter()
        .map(Inequality::normalized)
        .filter(|i| !(i.coeffs.iter().all(|c| c.is_zero()) && !i.bound.is_negative()))
        .collect();
    v.sort();
    v.dedup();
    v
}

/// Finds `c >= 0` with `sum_j c_j gens_j = v`, if one exists.
pub fn nonnegative_combination(gens: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = gens.len();
    let n = v.len();
    // equalities as pairs of inequalities, plus -c_j <= 0
    let mut ineqs = Vec::with_capacity(2 * n + k);
    for i in 0..n {
        let row: Vec<Rat> = gens.iter().map(|g| g[i].clone()).collect();
        ineqs.push(Inequality {
            coeffs: row.clone(),
            bound: v[i].clone(),
        });
        ineqs.push(Inequality {
            coeffs: row.into_iter().map(|x| -x).collect(),
            bound: -v[i].clone(),
        });
    }
    for j in 0..k {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs[j] = -Rat::one();
        ineqs.push(Inequality {
            coeffs,
            bound: Rat::zero(),
        });
    }
    fm_feasible(&ineqs, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn solve_and_span() {
        let cols = vec![rv(&[1, -1, 0]), rv(&[0, 1, -1])];
        assert!(in_span(&cols, &rv(&[1, 0, -1])));
        assert!(!in_span(&cols, &rv(&[0, 0, 1])));
        let x = solve(&cols, &rv(&[2, 1, -3])).unwrap();
        assert_eq!(x, rv(&[2, 3]));
        assert_eq!(rank(&[rv(&[1, 2]), rv(&[2, 4])]), 1);
    }

    #[test]
    fn fm_detects_line() {
        // xi.(1,0) >= 1 and xi.(-1,0) >= 1 is infeasible
        let ineqs = vec![
            Inequality {
                coeffs: rv(&[-1, 0]),
                bound: rat(-1),
            },
            Inequality {
                coeffs: rv(&[1, 0]),
                bound: rat(-1),
            },
        ];
        assert!(fm_feasible(&ineqs, 2).is_none());
    }

    #[test]
    fn nonnegative_combinations() {
        let gens = vec![rv(&[1, -1]), rv(&[0, 1])];
        assert!(nonnegative_combination(&gens, &rv(&[1, 0])).is_some());
        assert!(nonnegative_combination(&gens, &rv(&[2, 5])).is_some());
        assert!(nonnegative_combination(&gens, &rv(&[-1, 0])).is_none());
        assert!(nonnegative_combination(&gens, &rv(&[0, -1])).is_none());
        let c = nonnegative_combination(&gens, &rv(&[3, -1])).unwrap();
        assert_eq!(c, rv(&[3, 2]));
    }
}
