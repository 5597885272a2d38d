use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::FiniteModule;
use crate::error::{Error, Result};
use crate::exact::ring::det_expand;
use crate::exact::{QMat, Subspace, TPoly, Q};

/// Coefficients (constant term first) of `det(t I - X)`.
pub fn char_poly(x: &QMat) -> Vec<Q> {
    let n = x.rows();
    let rows: Vec<Vec<TPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = TPoly::constant(-x[(i, j)].clone());
                    if i == j {
                        TPoly::from_terms(0, vec![-x[(i, j)].clone(), Q::one()])
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let d = det_expand(&rows);
    (0..=n as i32).map(|e| d.coeff(e)).collect()
}

fn poly_string(c: &[Q]) -> String {
    TPoly::from_terms(0, c.to_vec()).to_string()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

fn eval(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
}

/// Divides by `(t - r)`; assumes `r` is a root.
fn deflate(c: &[Q], r: &Q) -> Vec<Q> {
    let n = c.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for i in (0..n).rev() {
        carry = &c[i + 1] + carry * r;
        out[i] = carry.clone();
    }
    out
}

/// Rational roots with multiplicity (sorted, repeated) and the leftover factor.
pub fn rational_roots(coeffs: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut c: Vec<Q> = coeffs.to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let mut roots = Vec::new();
    while c.len() > 1 && c[0].is_zero() {
        roots.push(Q::zero());
        c.remove(0);
    }
    loop {
        if c.len() <= 1 {
            break;
        }
        let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c
            .iter()
            .map(|x| (x * Q::from_integer(l.clone())).to_integer())
            .collect();
        let (a0, an) = (ints[0].clone(), ints[ints.len() - 1].clone());
        let mut found = None;
        'search: for p in divisors(&a0) {
            for q in divisors(&an) {
                for s in [1, -1] {
                    let cand = Q::new(&p * s, q.clone());
                    if eval(&c, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                c = deflate(&c, &r);
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, c)
}

#[derive(Clone, Debug)]
pub struct SupportPiece {
    pub point: Vec<Q>,
    /// Basis of the generalized eigenspace, as vectors of the ambient module.
    pub subspace: Subspace,
    pub local: FiniteModule,
}

impl SupportPiece {
    pub fn local_dim(&self) -> usize {
        self.local.dim()
    }
}

#[derive(Clone, Debug)]
pub struct SupportDecomposition {
    pub pieces: Vec<SupportPiece>,
}

impl SupportDecomposition {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.pieces.iter().map(|p| p.local_dim()).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

fn kernel_of_power(x: &QMat, lambda: &Q, within: &Subspace) -> Subspace {
    let n = x.rows();
    let shifted = x - &QMat::identity(n).scale(lambda);
    let k = Subspace::span(n, &shifted.pow(n as u32).kernel());
    k.intersect(within)
}

/// Matrix of `x` restricted to an invariant subspace, in its echelon basis.
pub fn restrict_to(x: &QMat, w: &Subspace) -> QMat {
    let basis = w.basis();
    let d = basis.len();
    let mut out = QMat::zeros(d, d);
    for (j, b) in basis.iter().enumerate() {
        let img = x.mul_vec(b);
        let coords = w.coordinates(&img).expect("subspace is invariant");
        for (i, c) in coords.into_iter().enumerate() {
            out[(i, j)] = c;
        }
    }
    out
}

/// Simultaneous generalized eigenspace decomposition.
pub fn support_decomposition(module: &FiniteModule) -> Result<SupportDecomposition> {
    let m = module.dim();
    let mut parts: Vec<(Vec<Q>, Subspace)> = vec![(vec![], module.whole())];
    for x in module.actions() {
        let cp = char_poly(x);
        let (roots, rest) = rational_roots(&cp);
        if rest.len() > 1 {
            return Err(Error::NotSplit(poly_string(&cp)));
        }
        let mut distinct = roots.clone();
        distinct.dedup();
        let mut next = Vec::new();
        for (pt, w) in parts {
            for l in &distinct {
                let sub = kernel_of_power(x, l, &w);
                if sub.dim() > 0 {
                    let mut p = pt.clone();
                    p.push(l.clone());
                    next.push((p, sub));
                }
            }
        }
        parts = next;
    }
    debug_assert_eq!(parts.iter().map(|(_, w)| w.dim()).sum::<usize>(), m);
    let mut pieces: Vec<SupportPiece> = parts
        .into_iter()
        .map(|(point, w)| {
            let acts = module
                .actions()
                .iter()
                .zip(&point)
                .map(|(x, l)| {
                    let r = restrict_to(x, &w);
                    let d = r.rows();
                    &r - &QMat::identity(d).scale(l)
                })
                .collect();
            let local = FiniteModule::new(w.dim(), acts)
                .expect("restriction of commuting matrices commutes");
            SupportPiece {
                point,
                subspace: w,
                local,
            }
        })
        .collect();
    pieces.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(SupportDecomposition { pieces })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalInvariants {
    pub dim: usize,
    pub min_generators: usize,
    pub socle_dim: usize,
    pub hilbert: Vec<usize>,
    pub cyclic: bool,
    pub cocyclic: bool,
}

/// Invariants of a module supported at the origin.
pub fn local_invariants(piece: &FiniteModule) -> Result<LocalInvariants> {
    let m = piece.dim();
    for (i, x) in piece.actions().iter().enumerate() {
        if !x.pow(m.max(1) as u32).is_zero() {
            return Err(Error::NotLocal(format!("x{} is not nilpotent", i + 1)));
        }
    }
    let mut hilbert = Vec::new();
    let mut cur = piece.whole();
    while cur.dim() > 0 {
        let next = piece.max_ideal_times(&cur);
        hilbert.push(cur.dim() - next.dim());
        cur = next;
    }
    let min_generators = hilbert.first().copied().unwrap_or(0);
    let mut socle = piece.whole();
    for x in piece.actions() {
        socle = socle.intersect(&Subspace::span(m, &x.kernel()));
    }
    let socle_dim = socle.dim();
    Ok(LocalInvariants {
        dim: m,
        min_generators,
        socle_dim,
        hilbert,
        cyclic: min_generators == 1,
        cocyclic: socle_dim == 1,
    })
}
