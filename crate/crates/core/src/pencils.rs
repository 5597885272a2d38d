//! Lines of 2×2 matrices and pencils of 2×3 matrices up to `GL × GL`, the
//! trace-pairing complement, and the small modules built from them.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rational::{fmt_q, parse_q};
use crate::exact::{QMat, Subspace, Q};
use crate::module::FiniteModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PencilShape {
    Line2x2,
    Pencil2x3,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    shape: PencilShape,
    basis: Vec<QMat>,
}

impl Pencil {
    pub fn new(shape: PencilShape, basis: Vec<QMat>) -> Result<Self> {
        let (count, rows, cols) = match shape {
            PencilShape::Line2x2 => (1, 2, 2),
            PencilShape::Pencil2x3 => (2, 2, 3),
        };
        if basis.len() != count || basis.iter().any(|w| w.rows() != rows || w.cols() != cols) {
            return Err(Error::InvalidPencil(format!(
                "{shape:?} needs {count} matrices of size {rows}x{cols}"
            )));
        }
        let span = Subspace::span(
            rows * cols,
            &basis.iter().map(|w| w.flatten()).collect::<Vec<_>>(),
        );
        if span.dim() != count {
            return Err(Error::InvalidPencil("basis is linearly dependent".into()));
        }
        Ok(Pencil { shape, basis })
    }

    pub fn shape(&self) -> PencilShape {
        self.shape
    }

    pub fn basis(&self) -> &[QMat] {
        &self.basis
    }

    /// `w ↦ g w h^{-1}` on every basis element.
    pub fn conjugate(&self, g: &QMat, h: &QMat) -> Result<Pencil> {
        let hi = h
            .inverse()
            .ok_or_else(|| Error::Singular("column change".into()))?;
        if g.det().is_zero() {
            return Err(Error::Singular("row change".into()));
        }
        Pencil::new(
            self.shape,
            self.basis.iter().map(|w| &(g * w) * &hi).collect(),
        )
    }

    /// Replaces the basis by `(p w1 + q w2, r w1 + s w2)`.
    pub fn rebase(&self, p: &Q, q: &Q, r: &Q, s: &Q) -> Result<Pencil> {
        if self.shape != PencilShape::Pencil2x3 {
            return Ok(self.clone());
        }
        let (w1, w2) = (&self.basis[0], &self.basis[1]);
        Pencil::new(
            self.shape,
            vec![&w1.scale(p) + &w2.scale(q), &w1.scale(r) + &w2.scale(s)],
        )
    }

    /// `{"shape": "line2x2" | "pencil2x3", "basis": [matrix of rational strings]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let shape = match self.shape {
            PencilShape::Line2x2 => "line2x2",
            PencilShape::Pencil2x3 => "pencil2x3",
        };
        let basis: Vec<Vec<Vec<String>>> = self
            .basis
            .iter()
            .map(|w| {
                w.to_rows()
                    .iter()
                    .map(|r| r.iter().map(fmt_q).collect())
                    .collect()
            })
            .collect();
        serde_json::json!({ "shape": shape, "basis": basis })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let shape = match v.get("shape").and_then(|s| s.as_str()) {
            Some("line2x2") => PencilShape::Line2x2,
            Some("pencil2x3") => PencilShape::Pencil2x3,
            other => return Err(Error::Parse(format!("unknown pencil shape {other:?}"))),
        };
        let basis: Vec<Vec<Vec<String>>> =
            serde_json::from_value(v.get("basis").cloned().unwrap_or_default())?;
        let mats = basis
            .iter()
            .map(|w| {
                let rows = w
                    .iter()
                    .map(|r| r.iter().map(|x| parse_q(x)).collect::<Result<Vec<Q>>>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(QMat::from_rows(rows))
            })
            .collect::<Result<Vec<_>>>()?;
        Pencil::new(shape, mats)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PencilLabel {
    Rank1Line,
    Rank2Line,
    W10,
    W11,
    W12,
    W13,
    W14,
    W15,
}

impl PencilLabel {
    pub const PENCILS: [PencilLabel; 6] = [
        PencilLabel::W10,
        PencilLabel::W11,
        PencilLabel::W12,
        PencilLabel::W13,
        PencilLabel::W14,
        PencilLabel::W15,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilInvariants {
    pub generic_rank: usize,
    /// Degree of the gcd of the maximal minors; absent when they all vanish.
    pub gcd_degree: Option<usize>,
    /// Whether that gcd is a square, when it has degree two.
    pub double_root: Option<bool>,
    pub common_kernel_dim: usize,
    pub image_span_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilClass {
    pub label: PencilLabel,
    pub invariants: PencilInvariants,
}

/// Basis of `{Y : tr(X Yᵀ) = 0 for X in space}`, each reshaped to `b × c`.
pub fn trace_complement(space: &[QMat], b: usize, c: usize) -> Vec<QMat> {
    let rows: Vec<Vec<Q>> = space.iter().map(|x| x.flatten()).collect();
    if rows.is_empty() {
        return (0..b * c).map(|k| QMat::unit(b, c, k / c, k % c)).collect();
    }
    QMat::from_rows(rows)
        .kernel()
        .iter()
        .map(|v| QMat::from_flat(b, c, v))
        .collect()
}

/// Binary quadratic `[aa, ab, bb]` coefficients of a 2×2 minor of `a·w1 + b·w2`.
fn minor_form(w1: &QMat, w2: &QMat, i: usize, j: usize) -> [Q; 3] {
    let lin = |r: usize, k: usize| (w1[(r, k)].clone(), w2[(r, k)].clone());
    let (p, q) = lin(0, i);
    let (r, s) = lin(1, j);
    let (t, u) = lin(0, j);
    let (v, w) = lin(1, i);
    [
        &p * &r - &t * &v,
        &p * &s + &q * &r - &t * &w - &u * &v,
        &q * &s - &u * &w,
    ]
}

/// Univariate polynomials, constant term first.
fn trim(mut f: Vec<Q>) -> Vec<Q> {
    while f.last().is_some_and(|x| x.is_zero()) {
        f.pop();
    }
    f
}

fn poly_rem(f: &[Q], g: &[Q]) -> Vec<Q> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg && !r.is_empty() {
        let lead = r.last().unwrap() / g.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (k, c) in g.iter().enumerate() {
            r[shift + k] -= &lead * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn poly_gcd(mut f: Vec<Q>, mut g: Vec<Q>) -> Vec<Q> {
    f = trim(f);
    g = trim(g);
    while !g.is_empty() {
        let r = poly_rem(&f, &g);
        f = g;
        g = r;
    }
    f
}

/// Degree of the gcd of nonzero binary quadratics: the affine gcd in `t = a/b`
/// plus the common multiplicity of the point `b = 0`.
fn forms_gcd_degree(forms: &[[Q; 3]]) -> usize {
    let mut g: Vec<Q> = Vec::new();
    let mut at_infinity = 2;
    for f in forms {
        let affine = trim(vec![f[2].clone(), f[1].clone(), f[0].clone()]);
        at_infinity = at_infinity.min(2 + 1 - affine.len());
        g = if g.is_empty() {
            affine
        } else {
            poly_gcd(g, affine)
        };
    }
    (g.len() - 1) + at_infinity
}

fn image_and_kernel(basis: &[QMat]) -> (usize, usize) {
    let b = basis[0].rows();
    let c = basis[0].cols();
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .flat_map(|w| (0..c).map(move |j| w.col(j)))
        .collect();
    let image = Subspace::span(b, &cols).dim();
    let stacked = QMat::vstack(basis);
    let kernel = c - stacked.rank();
    (image, kernel)
}

pub fn classify_pencil(p: &Pencil) -> PencilClass {
    let (image_span_dim, common_kernel_dim) = image_and_kernel(&p.basis);
    if p.shape == PencilShape::Line2x2 {
        let rank = p.basis[0].rank();
        let label = if rank == 1 {
            PencilLabel::Rank1Line
        } else {
            PencilLabel::Rank2Line
        };
        let invariants = PencilInvariants {
            generic_rank: rank,
            gcd_degree: None,
            double_root: None,
            common_kernel_dim,
            image_span_dim,
        };
        return PencilClass { label, invariants };
    }
    let (w1, w2) = (&p.basis[0], &p.basis[1]);
    let forms: Vec<[Q; 3]> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| minor_form(w1, w2, i, j))
        .filter(|f| f.iter().any(|x| !x.is_zero()))
        .collect();
    if forms.is_empty() {
        let label = if image_span_dim == 1 {
            PencilLabel::W15
        } else {
            PencilLabel::W10
        };
        let invariants = PencilInvariants {
            generic_rank: 1,
            gcd_degree: None,
            double_root: None,
            common_kernel_dim,
            image_span_dim,
        };
        return PencilClass { label, invariants };
    }
    let deg = forms_gcd_degree(&forms);
    let (label, double_root) = match deg {
        0 => (PencilLabel::W11, None),
        1 => (PencilLabel::W12, None),
        _ => {
            // all nonzero minors are proportional to the gcd
            let f = &forms[0];
            let disc = &f[1] * &f[1] - Q::from_integer(4.into()) * &f[0] * &f[2];
            if disc.is_zero() {
                (PencilLabel::W14, Some(true))
            } else {
                (PencilLabel::W13, Some(false))
            }
        }
    };
    let invariants = PencilInvariants {
        generic_rank: 2,
        gcd_degree: Some(deg),
        double_root,
        common_kernel_dim,
        image_span_dim,
    };
    PencilClass { label, invariants }
}

fn mat(rows: &[&[i64]]) -> QMat {
    QMat::from_i64(rows)
}

/// Normal forms of the eight classes.
pub fn canonical_pencil(label: PencilLabel) -> Pencil {
    use PencilLabel::*;
    let (shape, basis) = match label {
        Rank1Line => (PencilShape::Line2x2, vec![mat(&[&[0, 0], &[0, 1]])]),
        Rank2Line => (PencilShape::Line2x2, vec![mat(&[&[1, 0], &[0, 1]])]),
        W10 => (
            PencilShape::Pencil2x3,
            vec![
                mat(&[&[0, 0, 1], &[0, 0, 0]]),
                mat(&[&[0, 0, 0], &[0, 0, 1]]),
            ],
        ),
        W11 => (
            PencilShape::Pencil2x3,
            vec![
                mat(&[&[0, 1, 0], &[0, 0, 1]]),
                mat(&[&[1, 0, 0], &[0, 1, 0]]),
            ],
        ),
        W12 => (
            PencilShape::Pencil2x3,
            vec![
                mat(&[&[1, 0, 0], &[0, 0, 1]]),
                mat(&[&[0, 1, 0], &[0, 0, 0]]),
            ],
        ),
        W13 => (
            PencilShape::Pencil2x3,
            vec![
                mat(&[&[0, 1, 0], &[0, 0, 1]]),
                mat(&[&[0, 0, 0], &[0, 0, 1]]),
            ],
        ),
        W14 => (
            PencilShape::Pencil2x3,
            vec![
                mat(&[&[0, 1, 0], &[0, 0, 1]]),
                mat(&[&[0, 0, 1], &[0, 0, 0]]),
            ],
        ),
        W15 => (
            PencilShape::Pencil2x3,
            vec![
                mat(&[&[0, 0, 0], &[0, 0, 1]]),
                mat(&[&[0, 0, 0], &[0, 1, 0]]),
            ],
        ),
    };
    Pencil::new(shape, basis).expect("normal forms are valid")
}

/// Degree `b + c` module with `e_1..e_c` mapped into the socle `e_{c+1}..`
/// by the given `b × c` blocks.
pub fn block_module(blocks: &[QMat]) -> Result<FiniteModule> {
    let (b, c) = blocks.first().map_or((0, 0), |x| (x.rows(), x.cols()));
    let d = b + c;
    let actions = blocks
        .iter()
        .map(|w| {
            let mut x = QMat::zeros(d, d);
            for i in 0..b {
                for j in 0..c {
                    x[(c + i, j)] = w[(i, j)].clone();
                }
            }
            x
        })
        .collect();
    FiniteModule::new(d, actions)
}

/// Module whose blocks span the trace complement of the pencil. Only pencils
/// giving `(0 : m) = m·M` of dimension two are accepted; `W10` has a socle
/// element outside `m·M` and is rejected.
pub fn pencil_module(p: &Pencil) -> Result<FiniteModule> {
    let (b, c) = (p.basis[0].rows(), p.basis[0].cols());
    let module = block_module(&trace_complement(&p.basis, b, c))?;
    let d = module.dim();
    let mm = module.max_ideal_times(&module.whole());
    let socle = Subspace::span(d, &QMat::vstack(module.actions()).kernel());
    if !(socle.equals(&mm) && mm.dim() == b) {
        return Err(Error::SocleCondition(format!(
            "socle has dimension {} and m·M has dimension {}",
            socle.dim(),
            mm.dim()
        )));
    }
    Ok(module)
}

/// `M_11 .. M_15`.
pub fn m_module(k: usize) -> Result<FiniteModule> {
    let label = match k {
        11 => PencilLabel::W11,
        12 => PencilLabel::W12,
        13 => PencilLabel::W13,
        14 => PencilLabel::W14,
        15 => PencilLabel::W15,
        _ => return Err(Error::UnknownEntry(format!("M{k}"))),
    };
    pencil_module(&canonical_pencil(label))
}

/// `N_7` (complement of a rank-2 line) and `N_8` (of a rank-1 line).
pub fn n_module(k: usize) -> Result<FiniteModule> {
    let label = match k {
        7 => PencilLabel::Rank2Line,
        8 => PencilLabel::Rank1Line,
        _ => return Err(Error::UnknownEntry(format!("N{k}"))),
    };
    block_module(&trace_complement(canonical_pencil(label).basis(), 2, 2))
}

/// A random invertible integer matrix with entries in `[-range, range]`.
pub fn random_invertible(n: usize, range: i64, rng: &mut impl rand::Rng) -> QMat {
    loop {
        let g = QMat::from_fn(n, n, |_, _| {
            Q::from_integer(rng.gen_range(-range..=range).into())
        });
        if !g.det().is_zero() {
            return g;
        }
    }
}

/// Sign helper for display of binary forms.
pub fn form_string(f: &[Q; 3]) -> String {
    let mut parts = Vec::new();
    for (c, mono) in f.iter().zip(["a^2", "ab", "b^2"]) {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let abs = c.abs();
        let coef = if abs.is_one() {
            String::new()
        } else {
            crate::exact::rational::fmt_q(&abs)
        };
        parts.push(format!("{sign} {coef}{mono}"));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
}

/// The three maximal minors of `a·w1 + b·w2`.
pub fn pencil_minors(p: &Pencil) -> Vec<[Q; 3]> {
    if p.shape != PencilShape::Pencil2x3 {
        return vec![];
    }
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| minor_form(&p.basis[0], &p.basis[1], i, j))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::module::{fingerprint_core, local_invariants, module_flags};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complement_of_identity() {
        let perp = trace_complement(&[QMat::identity(2)], 2, 2);
        assert_eq!(perp.len(), 3);
        let span = Subspace::span(4, &perp.iter().map(|x| x.flatten()).collect::<Vec<_>>());
        assert!(span.contains(&QMat::unit(2, 2, 0, 1).flatten()));
        assert!(span.contains(&QMat::unit(2, 2, 1, 0).flatten()));
        assert!(!span.contains(&QMat::identity(2).flatten()));
    }

    #[test]
    fn complement_of_everything_is_zero() {
        let all: Vec<QMat> = (0..6).map(|k| QMat::unit(2, 3, k / 3, k % 3)).collect();
        assert!(trace_complement(&all, 2, 3).is_empty());
    }

    #[test]
    fn complement_is_an_involution() {
        for label in PencilLabel::PENCILS {
            let w = canonical_pencil(label);
            let perp = trace_complement(w.basis(), 2, 3);
            assert_eq!(perp.len(), 4);
            let back = trace_complement(&perp, 2, 3);
            let a = Subspace::span(6, &back.iter().map(|x| x.flatten()).collect::<Vec<_>>());
            let b = Subspace::span(
                6,
                &w.basis().iter().map(|x| x.flatten()).collect::<Vec<_>>(),
            );
            assert!(a.equals(&b));
        }
    }

    #[test]
    fn canonical_labels() {
        for label in PencilLabel::PENCILS
            .into_iter()
            .chain([PencilLabel::Rank1Line, PencilLabel::Rank2Line])
        {
            assert_eq!(classify_pencil(&canonical_pencil(label)).label, label);
        }
        let minors = pencil_minors(&canonical_pencil(PencilLabel::W14));
        assert_eq!(
            minors.iter().map(form_string).collect::<Vec<_>>(),
            vec!["0", "0", "a^2"]
        );
    }

    #[test]
    fn invalid_pencils() {
        let w = mat(&[&[1, 0, 0], &[0, 1, 0]]);
        assert!(Pencil::new(PencilShape::Pencil2x3, vec![w.clone(), w.scale(&q(2))]).is_err());
        assert!(Pencil::new(PencilShape::Line2x2, vec![QMat::zeros(2, 2)]).is_err());
        assert!(Pencil::new(PencilShape::Pencil2x3, vec![w]).is_err());
    }

    #[test]
    fn stable_under_conjugation_and_rebasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for label in PencilLabel::PENCILS {
            let p = canonical_pencil(label);
            for _ in 0..50 {
                let g = random_invertible(2, 3, &mut rng);
                let h = random_invertible(3, 3, &mut rng);
                let c = p.conjugate(&g, &h).unwrap();
                let r = random_invertible(2, 3, &mut rng);
                let c = c
                    .rebase(&r[(0, 0)], &r[(0, 1)], &r[(1, 0)], &r[(1, 1)])
                    .unwrap();
                assert_eq!(classify_pencil(&c).label, label);
            }
        }
    }

    #[test]
    fn five_modules_and_a_rejection() {
        let mut prints = Vec::new();
        for k in 11..=15 {
            let m = m_module(k).unwrap();
            assert_eq!(module_flags(&m), (true, true), "M{k}");
            let li = local_invariants(&m).unwrap();
            assert_eq!((li.min_generators, li.socle_dim), (3, 2), "M{k}");
            prints.push(fingerprint_core(&m).unwrap());
        }
        for i in 0..prints.len() {
            for j in i + 1..prints.len() {
                assert_ne!(prints[i], prints[j], "M{} vs M{}", 11 + i, 11 + j);
            }
        }
        assert!(matches!(
            pencil_module(&canonical_pencil(PencilLabel::W10)),
            Err(Error::SocleCondition(_))
        ));
    }

    #[test]
    fn n_modules() {
        for k in [7, 8] {
            let n = n_module(k).unwrap();
            assert_eq!(n.dim(), 4);
            assert_eq!(module_flags(&n), (true, true));
        }
    }
}
