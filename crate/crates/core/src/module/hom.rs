use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{local_invariants, submodule_profile, support_decomposition, FiniteModule};
use crate::error::{Error, Result};
use crate::exact::{q, symbolic_det, QMat};

/// Basis of `Hom_S(m1, m2) = {Y : Y X_i = X'_i Y}`; `Y` is `dim m2 × dim m1`.
pub fn end_and_hom(m1: &FiniteModule, m2: &FiniteModule) -> Result<Vec<QMat>> {
    if m1.nvars() != m2.nvars() {
        return Err(Error::ShapeMismatch(format!(
            "{} vs {} variables",
            m1.nvars(),
            m2.nvars()
        )));
    }
    let (a, b) = (m1.dim(), m2.dim());
    let n = m1.nvars();
    let mut sys = QMat::zeros(n * a * b, a * b);
    for (i, (x1, x2)) in m1.actions().iter().zip(m2.actions()).enumerate() {
        for r in 0..b {
            for c in 0..a {
                let row = (i * b + r) * a + c;
                for k in 0..a {
                    let v = &x1[(k, c)];
                    if !v.is_zero() {
                        sys[(row, r * a + k)] += v;
                    }
                }
                for k in 0..b {
                    let v = &x2[(r, k)];
                    if !v.is_zero() {
                        sys[(row, k * a + c)] -= v;
                    }
                }
            }
        }
    }
    Ok(sys
        .kernel()
        .into_iter()
        .map(|v| QMat::from_flat(b, a, &v))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "answer", rename_all = "kebab-case")]
pub enum IsoResult {
    Yes {
        #[serde(skip)]
        witness: QMat,
    },
    No {
        reason: String,
    },
    /// Every sampled Hom element was singular; `bound` is the Schwartz–Zippel
    /// failure probability `(m / 101)^trials`.
    ProbablyNot {
        trials: usize,
        bound: f64,
    },
}

impl IsoResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoResult::Yes { .. })
    }
}

fn random_combination(basis: &[QMat], rng: &mut ChaCha8Rng) -> QMat {
    let (r, c) = (basis[0].rows(), basis[0].cols());
    let mut acc = QMat::zeros(r, c);
    for b in basis {
        let k: i64 = rng.gen_range(-50..=50);
        if k != 0 {
            acc = &acc + &b.scale(&q(k));
        }
    }
    acc
}

/// Strict isomorphism (same variables) tested on random Hom elements.
pub fn isomorphic_modules(
    m1: &FiniteModule,
    m2: &FiniteModule,
    trials: usize,
    seed: u64,
) -> IsoResult {
    if m1.dim() != m2.dim() || m1.nvars() != m2.nvars() {
        return IsoResult::No {
            reason: "different degree or number of variables".into(),
        };
    }
    let hom = match end_and_hom(m1, m2) {
        Ok(h) => h,
        Err(e) => {
            return IsoResult::No {
                reason: e.to_string(),
            }
        }
    };
    let end = end_and_hom(m1, m1).expect("same variable count");
    if hom.len() != end.len() {
        return IsoResult::No {
            reason: format!(
                "dim Hom(M, N) = {} but dim End(M) = {}",
                hom.len(),
                end.len()
            ),
        };
    }
    let end2 = end_and_hom(m2, m2).expect("same variable count");
    if end2.len() != end.len() {
        return IsoResult::No {
            reason: format!("dim End(M) = {} but dim End(N) = {}", end.len(), end2.len()),
        };
    }
    if m1.dim() == 0 {
        return IsoResult::Yes {
            witness: QMat::zeros(0, 0),
        };
    }
    if hom.is_empty() {
        return IsoResult::No {
            reason: "Hom(M, N) = 0".into(),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let y = random_combination(&hom, &mut rng);
        if !y.det().is_zero() {
            return IsoResult::Yes { witness: y };
        }
    }
    let m = m1.dim() as f64;
    IsoResult::ProbablyNot {
        trials,
        bound: (m / 101.0).powi(trials as i32),
    }
}

/// Decides whether Hom contains an invertible element by expanding the
/// determinant of a generic Hom element. `None` when the Hom space is too
/// large for the symbolic expansion.
pub fn hom_has_invertible_exact(m1: &FiniteModule, m2: &FiniteModule) -> Result<Option<bool>> {
    let hom = end_and_hom(m1, m2)?;
    if m1.dim() != m2.dim() {
        return Ok(Some(false));
    }
    if hom.is_empty() {
        return Ok(Some(m1.dim() == 0));
    }
    if hom.len() > 12 || m1.dim() > 5 {
        return Ok(None);
    }
    Ok(Some(!symbolic_det(&hom, hom.len())?.is_zero()))
}

/// Outcome of deciding whether `M` and `M^∨` are equivalent up to a change of variables.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "answer", rename_all = "kebab-case")]
pub enum SelfDuality {
    /// `M ≅ M^∨` with the same variables.
    Strict,
    /// `M ≅ M^∨` after substituting variables by the given signed permutation
    /// (`variables[i]` is the index of the variable replacing `x_{i+1}`, `signs[i]` its sign).
    Twisted {
        variables: Vec<usize>,
        signs: Vec<i64>,
    },
    NotSelfDual {
        reason: String,
    },
    Undecided,
}

impl SelfDuality {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            SelfDuality::Strict | SelfDuality::Twisted { .. } => Some(true),
            SelfDuality::NotSelfDual { .. } => Some(false),
            SelfDuality::Undecided => None,
        }
    }
}

fn signed_permutation(dual: &FiniteModule, perm: &[usize], signs: &[i64]) -> FiniteModule {
    let acts = perm
        .iter()
        .zip(signs)
        .map(|(&i, &s)| dual.action(i).scale(&q(s)))
        .collect();
    FiniteModule::new(dual.dim(), acts).expect("signed permutation of commuting matrices")
}

/// Witness search over signed variable permutations, then separating
/// invariants (local invariants of each support piece, then submodule
/// counts over F_5).
pub fn equivalent_to_dual(module: &FiniteModule, seed: u64) -> Result<SelfDuality> {
    let dual = module.dual();
    if isomorphic_modules(module, &dual, 8, seed).is_yes() {
        return Ok(SelfDuality::Strict);
    }
    let n = module.nvars();
    let sign_sets: Vec<Vec<i64>> = (0..1u32 << n)
        .map(|mask| {
            (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect();
    let perms = permutations(n);
    // cheap necessary condition first: the same End dimension is automatic,
    // so filter by rank profile of each substituted action
    let ranks = |x: &QMat| {
        (1..=module.dim() as u32)
            .map(|k| x.pow(k).rank())
            .collect::<Vec<_>>()
    };
    let own: Vec<Vec<usize>> = module.actions().iter().map(ranks).collect();
    let dual_ranks: Vec<Vec<usize>> = dual.actions().iter().map(ranks).collect();
    for perm in &perms {
        if perm
            .iter()
            .enumerate()
            .any(|(i, &j)| own[i] != dual_ranks[j])
        {
            continue;
        }
        for signs in &sign_sets {
            let cand = signed_permutation(&dual, perm, signs);
            if isomorphic_modules(module, &cand, 4, seed).is_yes() {
                return Ok(SelfDuality::Twisted {
                    variables: perm.clone(),
                    signs: signs.clone(),
                });
            }
        }
    }
    let pieces = |m: &FiniteModule| -> Result<Vec<_>> {
        let mut v = support_decomposition(m)?
            .pieces
            .iter()
            .map(|p| local_invariants(&p.local))
            .collect::<Result<Vec<_>>>()?;
        v.sort();
        Ok(v)
    };
    let (a, b) = (pieces(module)?, pieces(&dual)?);
    if a != b {
        return Ok(SelfDuality::NotSelfDual {
            reason: format!("local invariants differ: {a:?} vs {b:?}"),
        });
    }
    let prof = |m: &FiniteModule| -> Result<Vec<_>> {
        support_decomposition(m)?
            .pieces
            .iter()
            .map(|p| submodule_profile(&p.local, 5))
            .collect()
    };
    let (pa, pb) = (prof(module)?, prof(&dual)?);
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return Ok(SelfDuality::NotSelfDual {
            reason: "submodule counts over F_5 differ".into(),
        });
    }
    Ok(SelfDuality::Undecided)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| cur[j] > cur[i - 1])
            .expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}
