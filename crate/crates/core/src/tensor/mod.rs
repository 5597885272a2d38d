//! Tensors in `k^m ⊗ k^m ⊗ k^m`, matrix forms, flattenings, group actions,
//! E-spaces and stabilizers.

mod form;
mod perm;

pub use form::{LinearForm, MatrixForm};
pub use perm::Perm;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{fmt_q, parse_q};
use crate::exact::{symbolic_det, QMat, Subspace, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    A,
    B,
    C,
}

impl Dir {
    pub const ALL: [Dir; 3] = [Dir::A, Dir::B, Dir::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Dir {
        Dir::ALL[i]
    }

    pub fn parse(s: &str) -> Result<Dir> {
        match s.trim() {
            "A" | "a" => Ok(Dir::A),
            "B" | "b" => Ok(Dir::B),
            "C" | "c" => Ok(Dir::C),
            other => Err(Error::Parse(format!("unknown direction {other:?}"))),
        }
    }
}

/// Dense tensor `T[a][b][c]` with 0-based indices; the term `a_{i+1}⊗b_{j+1}⊗c_{k+1}`
/// has coefficient `get(i, j, k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor3 {
    m: usize,
    data: Vec<Q>,
}

impl Tensor3 {
    pub fn zeros(m: usize) -> Self {
        Tensor3 {
            m,
            data: vec![Q::zero(); m * m * m],
        }
    }

    /// `Σ a_i ⊗ b_i ⊗ c_i`.
    pub fn unit(m: usize) -> Self {
        let mut t = Self::zeros(m);
        for i in 0..m {
            t.set(i, i, i, Q::one());
        }
        t
    }

    pub fn from_terms(m: usize, terms: &[(usize, usize, usize, Q)]) -> Self {
        let mut t = Self::zeros(m);
        for (a, b, c, v) in terms {
            let cur = t.get(*a, *b, *c).clone();
            t.set(*a, *b, *c, cur + v);
        }
        t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.m + b) * self.m + c
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &Q {
        &self.data[self.idx(a, b, c)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, v: Q) {
        let i = self.idx(a, b, c);
        self.data[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Nonzero terms `(a, b, c, coeff)` in lexicographic index order.
    pub fn terms(&self) -> Vec<(usize, usize, usize, Q)> {
        let m = self.m;
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let v = self.get(a, b, c);
                    if !v.is_zero() {
                        out.push((a, b, c, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// `Σ T[i][j][k] a_{i+1} b_{j+1} c_{k+1}` in the usual 1-based notation.
    pub fn terms_string(&self) -> String {
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(a, b, c, v)| {
                let mono = format!("a{}b{}c{}", a + 1, b + 1, c + 1);
                if v.is_one() {
                    mono
                } else {
                    format!("{}*{}", fmt_q(&v), mono)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Slice `i` in direction A is the `(b, c)` matrix; B gives `(a, c)`; C gives `(a, b)`.
    pub fn slices(&self, dir: Dir) -> Vec<QMat> {
        let m = self.m;
        (0..m)
            .map(|s| {
                QMat::from_fn(m, m, |i, j| match dir {
                    Dir::A => self.get(s, i, j).clone(),
                    Dir::B => self.get(i, s, j).clone(),
                    Dir::C => self.get(i, j, s).clone(),
                })
            })
            .collect()
    }

    /// Inverse of [`Tensor3::slices`].
    pub fn from_slices(dir: Dir, slices: &[QMat]) -> Self {
        let m = slices.len();
        let mut t = Self::zeros(m);
        for (s, mat) in slices.iter().enumerate() {
            for i in 0..m {
                for j in 0..m {
                    let v = mat[(i, j)].clone();
                    match dir {
                        Dir::A => t.set(s, i, j, v),
                        Dir::B => t.set(i, s, j, v),
                        Dir::C => t.set(i, j, s, v),
                    }
                }
            }
        }
        t
    }

    /// The flattening `dir^∨ → (other two)`, one row per slice.
    pub fn flattening(&self, dir: Dir) -> QMat {
        let rows: Vec<Vec<Q>> = self.slices(dir).iter().map(|s| s.flatten()).collect();
        QMat::from_rows(rows)
    }

    /// `T_A(α) = Σ α_i · slice_i`.
    pub fn contract(&self, dir: Dir, alpha: &[Q]) -> QMat {
        let m = self.m;
        let sl = self.slices(dir);
        let mut out = QMat::zeros(m, m);
        for (a, s) in alpha.iter().zip(&sl) {
            if !a.is_zero() {
                out = &out + &s.scale(a);
            }
        }
        out
    }

    /// Applies `g` in the factor `dir`: `(g · T)[.., i', ..] = Σ_i g[i'][i] T[.., i, ..]`.
    pub fn act_one(&self, dir: Dir, g: &QMat) -> Tensor3 {
        let m = self.m;
        let mut out = Tensor3::zeros(m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let v = self.get(a, b, c);
                    if v.is_zero() {
                        continue;
                    }
                    for n in 0..m {
                        let gv = match dir {
                            Dir::A => &g[(n, a)],
                            Dir::B => &g[(n, b)],
                            Dir::C => &g[(n, c)],
                        };
                        if gv.is_zero() {
                            continue;
                        }
                        let (x, y, z) = match dir {
                            Dir::A => (n, b, c),
                            Dir::B => (a, n, c),
                            Dir::C => (a, b, n),
                        };
                        let i = out.idx(x, y, z);
                        out.data[i] += v * gv;
                    }
                }
            }
        }
        out
    }

    /// `(gA ⊗ gB ⊗ gC) · T` without invertibility checks.
    pub fn act(&self, g_a: &QMat, g_b: &QMat, g_c: &QMat) -> Tensor3 {
        self.act_one(Dir::A, g_a)
            .act_one(Dir::B, g_b)
            .act_one(Dir::C, g_c)
    }

    /// Reorders the factors: factor `k` of the result is factor `sigma.0[k]` of `self`.
    pub fn permute(&self, sigma: Perm) -> Tensor3 {
        let m = self.m;
        let mut out = Tensor3::zeros(m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let v = self.get(a, b, c);
                    if v.is_zero() {
                        continue;
                    }
                    let old = [a, b, c];
                    let new = [old[sigma.0[0]], old[sigma.0[1]], old[sigma.0[2]]];
                    out.set(new[0], new[1], new[2], v.clone());
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for Tensor3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tensor3(m={}; {})", self.m, self.terms_string())
    }
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    m: usize,
    coeffs: Vec<Vec<Vec<String>>>,
}

impl Tensor3 {
    pub fn to_json(&self) -> serde_json::Value {
        let m = self.m;
        let coeffs = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| (0..m).map(|c| fmt_q(self.get(a, b, c))).collect())
                    .collect()
            })
            .collect();
        serde_json::to_value(TensorJson { m, coeffs }).expect("tensor serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: TensorJson = serde_json::from_value(v.clone())?;
        let m = j.m;
        let ok = j.coeffs.len() == m
            && j.coeffs
                .iter()
                .all(|r| r.len() == m && r.iter().all(|c| c.len() == m));
        if !ok {
            return Err(Error::ShapeMismatch(format!(
                "tensor coefficients are not {m}x{m}x{m}"
            )));
        }
        let mut t = Tensor3::zeros(m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    t.set(a, b, c, parse_q(&j.coeffs[a][b][c])?);
                }
            }
        }
        Ok(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenericityPattern {
    pub concise: [bool; 3],
    pub one_generic: [bool; 3],
}

impl GenericityPattern {
    pub fn is_concise(&self) -> bool {
        self.concise.iter().all(|&b| b)
    }

    pub fn generic_count(&self) -> usize {
        self.one_generic.iter().filter(|&&b| b).count()
    }

    pub fn is_one_degenerate(&self) -> bool {
        self.generic_count() == 0
    }

    /// The pattern of `T.permute(sigma)`.
    pub fn permuted(&self, sigma: Perm) -> GenericityPattern {
        let p = |x: [bool; 3]| [x[sigma.0[0]], x[sigma.0[1]], x[sigma.0[2]]];
        GenericityPattern {
            concise: p(self.concise),
            one_generic: p(self.one_generic),
        }
    }
}

pub fn is_concise_in(t: &Tensor3, dir: Dir) -> bool {
    t.flattening(dir).rank() == t.m()
}

/// Whether some contraction in `dir` has full rank, decided by the symbolic
/// determinant (a proof, not a sample).
pub fn is_one_generic(t: &Tensor3, dir: Dir) -> Result<bool> {
    Ok(!symbolic_det(&t.slices(dir), t.m())?.is_zero())
}

pub fn genericity_pattern(t: &Tensor3) -> Result<GenericityPattern> {
    let mut g = GenericityPattern {
        concise: [false; 3],
        one_generic: [false; 3],
    };
    for d in Dir::ALL {
        g.concise[d.index()] = is_concise_in(t, d);
        g.one_generic[d.index()] = is_one_generic(t, d)?;
    }
    Ok(g)
}

/// `sigma((gA ⊗ gB ⊗ gC) · T)`; rejects singular group elements.
pub fn transform_tensor(
    t: &Tensor3,
    g_a: &QMat,
    g_b: &QMat,
    g_c: &QMat,
    sigma: Perm,
) -> Result<Tensor3> {
    for (name, g) in [("gA", g_a), ("gB", g_b), ("gC", g_c)] {
        if !g.is_square() || g.rows() != t.m() {
            return Err(Error::ShapeMismatch(format!(
                "{name} is {}x{}",
                g.rows(),
                g.cols()
            )));
        }
        if g.det().is_zero() {
            return Err(Error::Singular(format!("{name} is not invertible")));
        }
    }
    Ok(t.act(g_a, g_b, g_c).permute(sigma))
}

/// First functional α with `T_A(α)` of full rank: coordinate functionals,
/// then 0/1 vectors in binary-counter order, then small integer vectors.
pub fn choose_alpha(t: &Tensor3) -> Result<Vec<Q>> {
    let m = t.m();
    if !is_one_generic(t, Dir::A)? {
        return Err(Error::NoAlpha);
    }
    let works = |a: &[Q]| t.contract(Dir::A, a).rank() == m;
    for i in 0..m {
        let a: Vec<Q> = (0..m)
            .map(|j| if i == j { Q::one() } else { Q::zero() })
            .collect();
        if works(&a) {
            return Ok(a);
        }
    }
    for mask in 1u32..(1 << m) {
        let a: Vec<Q> = (0..m)
            .map(|j| {
                if mask >> j & 1 == 1 {
                    Q::one()
                } else {
                    Q::zero()
                }
            })
            .collect();
        if works(&a) {
            return Ok(a);
        }
    }
    // det(T_A(α)) is a nonzero form of degree m, so it cannot vanish on all of {0..m}^m
    let base = m as u64 + 1;
    for code in 0..base.pow(m as u32) {
        let mut c = code;
        let a: Vec<Q> = (0..m)
            .map(|_| {
                let d = c % base;
                c /= base;
                Q::from_integer((d as i64).into())
            })
            .collect();
        if works(&a) {
            return Ok(a);
        }
    }
    Err(Error::NoAlpha)
}

/// The space `T_A(A^∨) T_A(α)^{-1}` with the identity first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESpace {
    pub basis: Vec<QMat>,
    pub alpha: Vec<Q>,
}

pub fn e_space(t: &Tensor3, alpha: &[Q]) -> Result<ESpace> {
    let m = t.m();
    if alpha.len() != m {
        return Err(Error::ShapeMismatch(format!(
            "functional of length {} for m = {m}",
            alpha.len()
        )));
    }
    let inv = t
        .contract(Dir::A, alpha)
        .inverse()
        .ok_or_else(|| Error::Singular("T_A(alpha) is not invertible".into()))?;
    let raw: Vec<QMat> = t.slices(Dir::A).iter().map(|s| s * &inv).collect();
    let pivot = alpha
        .iter()
        .position(|a| !a.is_zero())
        .expect("alpha is nonzero");
    let mut basis = vec![QMat::identity(m)];
    basis.extend(
        raw.into_iter()
            .enumerate()
            .filter(|(i, _)| *i != pivot)
            .map(|(_, x)| x),
    );
    Ok(ESpace {
        basis,
        alpha: alpha.to_vec(),
    })
}

impl ESpace {
    pub fn span(&self) -> Subspace {
        let m = self.basis[0].rows();
        Subspace::span(
            m * m,
            &self.basis.iter().map(|b| b.flatten()).collect::<Vec<_>>(),
        )
    }
}

/// Whether a list of matrices pairwise commutes.
pub fn pairwise_commute(ms: &[QMat]) -> bool {
    (0..ms.len()).all(|i| (i + 1..ms.len()).all(|j| ms[i].commutes_with(&ms[j])))
}

/// Whether every product of two elements lies in the span of `ms`.
pub fn products_in_span(ms: &[QMat]) -> bool {
    let Some(first) = ms.first() else { return true };
    let n = first.rows() * first.cols();
    let span = Subspace::span(n, &ms.iter().map(|b| b.flatten()).collect::<Vec<_>>());
    ms.iter()
        .all(|x| ms.iter().all(|y| span.contains(&(x * y).flatten())))
}

/// `(commutes, endClosed)` for an E-space.
pub fn strassen_and_end_closed(e: &ESpace) -> (bool, bool) {
    (pairwise_commute(&e.basis), products_in_span(&e.basis))
}

/// Dimension of `{(X, Y, Z) : X·T + Y·T + Z·T = 0}`.
pub fn stabilizer_dimension(t: &Tensor3) -> usize {
    let m = t.m();
    let n = m * m;
    // unknown X[p][q] sits at column p*m + q, Y after n, Z after 2n
    let mut sys = QMat::zeros(m * m * m, 3 * n);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let row = (a * m + b) * m + c;
                for k in 0..m {
                    let v = t.get(k, b, c);
                    if !v.is_zero() {
                        sys[(row, a * m + k)] += v;
                    }
                    let v = t.get(a, k, c);
                    if !v.is_zero() {
                        sys[(row, n + b * m + k)] += v;
                    }
                    let v = t.get(a, b, k);
                    if !v.is_zero() {
                        sys[(row, 2 * n + c * m + k)] += v;
                    }
                }
            }
        }
    }
    3 * n - sys.rank()
}

#[cfg(test)]
mod tests;
