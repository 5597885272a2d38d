use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::FiniteModule;
use crate::error::Result;
use crate::exact::fp::{check_prime, FpMat};

/// Number of `r`-dimensional subspaces of `F_p^n`.
pub fn gaussian_binomial(n: usize, r: usize, p: u64) -> u128 {
    if r > n {
        return 0;
    }
    let p = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..r {
        num *= p.pow((n - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// An invariant subspace over `F_p`, with statistics of the restricted module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpSubmodule {
    /// Reduced echelon basis (rows).
    pub basis: Vec<Vec<u64>>,
    pub min_generators: usize,
    pub cyclic: bool,
    /// Dimension of the space of linear forms `Σ c_i x_i` killing the submodule.
    pub ann_linear_dim: usize,
    /// Whether every product of two variables kills the submodule.
    pub killed_by_m2: bool,
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

struct Ctx {
    p: u64,
    m: usize,
    r: usize,
    actions: Vec<FpMat>,
}

impl Ctx {
    /// Restricted actions if the row space of `rows` (echelon, pivots given) is invariant.
    fn restricted(&self, rows: &[Vec<u64>], pivots: &[usize]) -> Option<Vec<Vec<u64>>> {
        let (p, m, r) = (self.p, self.m, self.r);
        let mut out = Vec::with_capacity(self.actions.len());
        for x in &self.actions {
            // y[k][j] = coordinate k of X · row_j
            let mut y = vec![0u64; r * r];
            for (j, v) in rows.iter().enumerate() {
                let mut w = x.mul_vec(v);
                for (k, &c) in pivots.iter().enumerate() {
                    let f = w[c];
                    if f != 0 {
                        y[k * r + j] = f;
                        for t in 0..m {
                            w[t] = (w[t] + (p - f) * rows[k][t]) % p;
                        }
                    }
                }
                if w.iter().any(|&e| e != 0) {
                    return None;
                }
            }
            out.push(y);
        }
        Some(out)
    }

    fn stats(&self, basis: Vec<Vec<u64>>, ys: &[Vec<u64>]) -> FpSubmodule {
        let (p, r) = (self.p, self.r);
        let n = ys.len();
        // images X_i N as columns of an r × (n r) matrix
        let mut img = FpMat::zeros(p, r, n * r);
        for (i, y) in ys.iter().enumerate() {
            for a in 0..r {
                for b in 0..r {
                    img.set(a, i * r + b, y[a * r + b]);
                }
            }
        }
        let min_generators = r - img.rank();
        let mut lin = FpMat::zeros(p, r * r, n);
        for (i, y) in ys.iter().enumerate() {
            for (k, &v) in y.iter().enumerate() {
                lin.set(k, i, v);
            }
        }
        let ann_linear_dim = n - lin.rank();
        let mut killed_by_m2 = true;
        'outer: for a in ys {
            for b in ys {
                for i in 0..r {
                    for j in 0..r {
                        let s = (0..r).fold(0u64, |acc, k| (acc + a[i * r + k] * b[k * r + j]) % p);
                        if s != 0 {
                            killed_by_m2 = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        FpSubmodule {
            basis,
            min_generators,
            cyclic: min_generators == 1,
            ann_linear_dim,
            killed_by_m2,
        }
    }
}

/// All `r`-dimensional submodules of `M ⊗ F_p`, enumerated through reduced
/// echelon representatives of every `r`-dimensional subspace.
pub fn submodules_of_degree(module: &FiniteModule, p: u64, r: usize) -> Result<Vec<FpSubmodule>> {
    check_prime(p)?;
    let m = module.dim();
    let actions = module
        .actions()
        .iter()
        .map(|x| FpMat::from_qmat(x, p))
        .collect::<Result<Vec<_>>>()?;
    let ctx = Ctx { p, m, r, actions };
    if r > m {
        return Ok(vec![]);
    }
    let pivot_sets = combinations(m, r);
    let per_set: Vec<Vec<FpSubmodule>> = pivot_sets
        .par_iter()
        .map(|pivots| {
            // free positions: (row k, column c) with c > pivot_k and c not a pivot
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|k| {
                    ((pivots[k] + 1)..m)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (k, c))
                })
                .collect();
            let total = (p as u128).pow(free.len() as u32);
            let mut found = Vec::new();
            let mut rows = vec![vec![0u64; m]; r];
            for (k, &c) in pivots.iter().enumerate() {
                rows[k][c] = 1;
            }
            let mut digits = vec![0u64; free.len()];
            for _ in 0..total {
                for (d, &(k, c)) in digits.iter().zip(&free) {
                    rows[k][c] = *d;
                }
                if let Some(ys) = ctx.restricted(&rows, pivots) {
                    found.push(ctx.stats(rows.clone(), &ys));
                }
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < p {
                        break;
                    }
                    *d = 0;
                }
            }
            found
        })
        .collect();
    Ok(per_set.into_iter().flatten().collect())
}

/// Counts of submodules over `F_p` keyed by `(degree, minGenerators, killed by m^2)`.
pub fn submodule_profile(
    module: &FiniteModule,
    p: u64,
) -> Result<BTreeMap<(usize, usize, bool), usize>> {
    let mut out = BTreeMap::new();
    for r in 1..module.dim() {
        for s in submodules_of_degree(module, p, r)? {
            *out.entry((r, s.min_generators, s.killed_by_m2))
                .or_insert(0) += 1;
        }
    }
    Ok(out)
}
