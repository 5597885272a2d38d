//! Torus families `diag(t^a) ⊗ diag(t^b) ⊗ diag(t^c)`, which scale the
//! coefficient at `(k, i, j)` by `t^(a_k + b_i + c_j)`.

use crate::exact::{q, QMat, TPoly, Q};
use crate::tensor::{Perm, Tensor3};

use super::family::{DegenerationFamily, TMat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusWeights {
    pub a: Vec<i32>,
    pub b: Vec<i32>,
    pub c: Vec<i32>,
}

fn diag(w: &[i32]) -> TMat {
    let n = w.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        TPoly::monomial(q(1), w[i])
                    } else {
                        TPoly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn torus_family(
    source: &str,
    target: &str,
    sigma: Perm,
    w: &TorusWeights,
) -> DegenerationFamily {
    DegenerationFamily {
        source: source.into(),
        target: target.into(),
        sigma,
        ga: diag(&w.a),
        gb: diag(&w.b),
        gc: diag(&w.c),
        note: Some("torus".into()),
    }
}

/// Integer weights keeping exactly the support of `target`, when `target` is
/// obtained from `source` by deleting terms. Searches small combinations of
/// an integer basis of the weights that fix every kept term.
pub fn find_torus_weights(source: &Tensor3, target: &Tensor3) -> Option<TorusWeights> {
    let m = source.m();
    if target.m() != m {
        return None;
    }
    let mut kept = Vec::new();
    let mut killed = Vec::new();
    for (a, b, c, v) in source.terms() {
        let w = target.get(a, b, c);
        if *w == v {
            kept.push((a, b, c));
        } else if *w == q(0) {
            killed.push((a, b, c));
        } else {
            return None;
        }
    }
    if target
        .terms()
        .iter()
        .any(|(a, b, c, _)| source.get(*a, *b, *c) == &q(0))
        || killed.is_empty()
    {
        return None;
    }
    let row = |&(a, b, c): &(usize, usize, usize)| -> Vec<Q> {
        let mut r = vec![q(0); 3 * m];
        r[a] += q(1);
        r[m + b] += q(1);
        r[2 * m + c] += q(1);
        r
    };
    let eqs = QMat::from_rows(kept.iter().map(row).collect());
    let kernel: Vec<Vec<i64>> = eqs
        .kernel()
        .into_iter()
        .map(|v| {
            let l = crate::exact::rational::denom_lcm(v.iter());
            let l = Q::from_integer(l);
            v.iter()
                .map(|x| num_traits::ToPrimitive::to_i64(&(x * &l).to_integer()).unwrap_or(0))
                .collect()
        })
        .collect();
    let kill_rows: Vec<Vec<Q>> = killed.iter().map(row).collect();
    let score = |w: &[i64]| -> bool {
        kill_rows.iter().all(|r| {
            let s: i64 = r
                .iter()
                .zip(w)
                .map(|(x, y)| num_traits::ToPrimitive::to_i64(x).unwrap() * y)
                .sum();
            s > 0
        })
    };
    let n = kernel.len();
    if n == 0 || n > 8 {
        return None;
    }
    let range = [0i64, 1, -1, 2, -2, 3, -3];
    let total = range.len().pow(n as u32);
    for idx in 1..total {
        let mut x = idx;
        let mut w = vec![0i64; 3 * m];
        for kv in &kernel {
            let cf = range[x % range.len()];
            x /= range.len();
            for (wi, ki) in w.iter_mut().zip(kv) {
                *wi += cf * ki;
            }
        }
        if score(&w) {
            let w: Vec<i32> = w.iter().map(|&x| x as i32).collect();
            return Some(TorusWeights {
                a: w[..m].to_vec(),
                b: w[m..2 * m].to_vec(),
                c: w[2 * m..].to_vec(),
            });
        }
    }
    None
}
