//! Finite modules over `S = k[x_1, .., x_n]` stored as commuting action
//! matrices acting on column vectors.

mod fingerprint;
mod graded;
mod hom;
mod submod;
mod sum;
mod support;

pub use fingerprint::{fingerprint, fingerprint_core, Fingerprint, PieceInvariants};
pub use graded::{initial_module, GradedModule};
pub use hom::{
    end_and_hom, equivalent_to_dual, hom_has_invertible_exact, isomorphic_modules, permutations,
    IsoResult, SelfDuality,
};
pub use submod::{gaussian_binomial, submodule_profile, submodules_of_degree, FpSubmodule};
pub use sum::{direct_sum, direct_sum_concise};
pub use support::{
    char_poly, local_invariants, rational_roots, restrict_to, support_decomposition,
    LocalInvariants, SupportDecomposition, SupportPiece,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{fmt_q, parse_q};
use crate::exact::{QMat, Subspace, Q};
use crate::tensor::{pairwise_commute, products_in_span, Dir, ESpace, Tensor3};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteModule {
    dim: usize,
    actions: Vec<QMat>,
}

impl FiniteModule {
    /// Validates shapes and commutativity.
    pub fn new(dim: usize, actions: Vec<QMat>) -> Result<Self> {
        for (i, x) in actions.iter().enumerate() {
            if x.rows() != dim || x.cols() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "action x{} is {}x{}, degree {dim}",
                    i + 1,
                    x.rows(),
                    x.cols()
                )));
            }
        }
        if !pairwise_commute(&actions) {
            return Err(Error::NotAModule("action matrices do not commute".into()));
        }
        Ok(FiniteModule { dim, actions })
    }

    pub fn from_i64(dim: usize, actions: &[&[&[i64]]]) -> Result<Self> {
        Self::new(dim, actions.iter().map(|a| QMat::from_i64(a)).collect())
    }

    /// Semisimple module with one point per row of `points`.
    pub fn diagonal(points: &[Vec<Q>]) -> Result<Self> {
        let m = points.len();
        let n = points.first().map_or(0, |p| p.len());
        let actions = (0..n)
            .map(|i| {
                QMat::from_fn(m, m, |r, c| {
                    if r == c {
                        points[r][i].clone()
                    } else {
                        Q::default()
                    }
                })
            })
            .collect();
        Self::new(m, actions)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self) -> &[QMat] {
        &self.actions
    }

    pub fn action(&self, i: usize) -> &QMat {
        &self.actions[i]
    }

    /// `[I, X_1, .., X_n]`.
    pub fn span_matrices(&self) -> Vec<QMat> {
        let mut v = vec![QMat::identity(self.dim)];
        v.extend(self.actions.iter().cloned());
        v
    }

    pub fn dual(&self) -> FiniteModule {
        FiniteModule {
            dim: self.dim,
            actions: self.actions.iter().map(|x| x.transpose()).collect(),
        }
    }

    /// `P X_i P^{-1}`.
    pub fn conjugate(&self, p: &QMat) -> Result<FiniteModule> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Singular("conjugating matrix".into()))?;
        Ok(FiniteModule {
            dim: self.dim,
            actions: self.actions.iter().map(|x| &(p * x) * &inv).collect(),
        })
    }

    /// The module over the subring generated by the chosen variables (0-based).
    pub fn restrict(&self, vars: &[usize]) -> FiniteModule {
        FiniteModule {
            dim: self.dim,
            actions: vars.iter().map(|&i| self.actions[i].clone()).collect(),
        }
    }

    /// New variables `y_j = Σ_i g[i][j] x_i`, i.e. the action of `y_j` is `Σ_i g[i][j] X_i`.
    pub fn change_variables(&self, g: &QMat) -> Result<FiniteModule> {
        if g.rows() != self.nvars() {
            return Err(Error::ShapeMismatch(
                "variable change has wrong size".into(),
            ));
        }
        let actions = (0..g.cols())
            .map(|j| {
                let mut acc = QMat::zeros(self.dim, self.dim);
                for i in 0..g.rows() {
                    if g[(i, j)] != Q::default() {
                        acc = &acc + &self.actions[i].scale(&g[(i, j)]);
                    }
                }
                acc
            })
            .collect();
        FiniteModule::new(self.dim, actions)
    }

    pub fn permute_variables(&self, perm: &[usize]) -> FiniteModule {
        FiniteModule {
            dim: self.dim,
            actions: perm.iter().map(|&i| self.actions[i].clone()).collect(),
        }
    }

    /// `x^e · v` for an exponent vector `e`.
    pub fn apply_monomial(&self, e: &[u16], v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (i, &k) in e.iter().enumerate() {
            for _ in 0..k {
                out = self.actions[i].mul_vec(&out);
            }
        }
        out
    }

    /// Span of `Σ_i X_i V` for a subspace `V`.
    pub fn max_ideal_times(&self, v: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for b in v.basis() {
            for x in &self.actions {
                vecs.push(x.mul_vec(&b));
            }
        }
        Subspace::span(self.dim, &vecs)
    }

    pub fn whole(&self) -> Subspace {
        Subspace::span(self.dim, &QMat::identity(self.dim).to_rows())
    }

    /// Submodule generated by the given vectors.
    pub fn generated_by(&self, gens: &[Vec<Q>]) -> Subspace {
        let mut cur = Subspace::span(self.dim, gens);
        loop {
            let next = cur.sum(&self.max_ideal_times(&cur));
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_submodule(&self, v: &Subspace) -> bool {
        v.basis()
            .iter()
            .all(|b| self.actions.iter().all(|x| v.contains(&x.mul_vec(b))))
    }
}

impl std::fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteModule(dim={}", self.dim)?;
        for (i, x) in self.actions.iter().enumerate() {
            write!(f, ", x{}={:?}", i + 1, x)?;
        }
        write!(f, ")")
    }
}

/// The module on `C` given by an E-space: `x_i` acts by `basis[i]`.
pub fn from_espace(e: &ESpace) -> Result<FiniteModule> {
    let m = e.basis.first().map_or(0, |b| b.rows());
    FiniteModule::new(m, e.basis[1..].to_vec())
}

/// `(concise, endClosed)`.
pub fn module_flags(module: &FiniteModule) -> (bool, bool) {
    let span = module.span_matrices();
    let independent = Subspace::span(
        module.dim * module.dim,
        &span.iter().map(|x| x.flatten()).collect::<Vec<_>>(),
    )
    .dim()
        == span.len();
    let concise = independent && module.nvars() + 1 == module.dim;
    (concise, products_in_span(&span))
}

/// `μ_M` with A-slices `I, X_1, .., X_n`.
pub fn multiplication_tensor(module: &FiniteModule) -> Result<Tensor3> {
    if !module_flags(module).0 {
        return Err(Error::DimensionMismatch(format!(
            "module of degree {} with {} variables is not concise",
            module.dim,
            module.nvars()
        )));
    }
    Ok(Tensor3::from_slices(Dir::A, &module.span_matrices()))
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    m: usize,
    vars: usize,
    actions: Vec<Vec<Vec<String>>>,
}

impl FiniteModule {
    pub fn to_json(&self) -> serde_json::Value {
        let actions = self
            .actions
            .iter()
            .map(|x| {
                x.to_rows()
                    .iter()
                    .map(|r| r.iter().map(fmt_q).collect())
                    .collect()
            })
            .collect();
        serde_json::to_value(ModuleJson {
            m: self.dim,
            vars: self.nvars(),
            actions,
        })
        .expect("module serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: ModuleJson = serde_json::from_value(v.clone())?;
        if j.actions.len() != j.vars {
            return Err(Error::ShapeMismatch(format!(
                "{} actions for {} variables",
                j.actions.len(),
                j.vars
            )));
        }
        let mut actions = Vec::new();
        for a in &j.actions {
            if a.len() != j.m || a.iter().any(|r| r.len() != j.m) {
                return Err(Error::ShapeMismatch(format!("action is not {0}x{0}", j.m)));
            }
            let rows = a
                .iter()
                .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            actions.push(QMat::from_rows(rows));
        }
        FiniteModule::new(j.m, actions)
    }
}

#[cfg(test)]
mod tests;
