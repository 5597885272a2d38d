//! One-parameter degeneration families and their exact verification.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::exact::rational::fmt_q;
use crate::exact::ring::{det_expand, CommRing};
use crate::exact::{TPoly, Q};
use crate::tensor::{Perm, Tensor3};

/// Square matrix over `Q[t, t^-1]`, row-major.
pub type TMat = Vec<Vec<TPoly>>;

pub fn tmat_identity(m: usize) -> TMat {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if i == j { TPoly::one() } else { TPoly::zero() })
                .collect()
        })
        .collect()
}

pub fn tmat_mul(a: &TMat, b: &TMat) -> TMat {
    let n = a.len();
    let k = b.len();
    let c = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|i| {
            (0..c)
                .map(|j| (0..k).fold(TPoly::zero(), |acc, l| acc.add(&a[i][l].mul(&b[l][j]))))
                .collect()
        })
        .collect()
}

pub fn tmat_transpose(a: &TMat) -> TMat {
    let n = a.len();
    let c = a.first().map_or(0, |r| r.len());
    (0..c)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn tmat_det(a: &TMat) -> TPoly {
    det_expand(a)
}

/// Inverse when the determinant is a monomial `c t^e`, through the adjugate.
pub fn tmat_inverse(a: &TMat) -> Result<TMat> {
    let n = a.len();
    let det = tmat_det(a);
    let terms: Vec<(i32, Q)> = det.terms().map(|(e, c)| (e, c.clone())).collect();
    if terms.len() != 1 {
        return Err(Error::Singular(format!(
            "determinant {det} is not a unit of Q[t, 1/t]"
        )));
    }
    let (e, c) = &terms[0];
    let inv_det = TPoly::monomial(c.recip(), -e);
    let mut out = vec![vec![TPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // cofactor of (j, i)
            let minor: TMat = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&s| s != i)
                        .map(|s| a[r][s].clone())
                        .collect()
                })
                .collect();
            let mut cof = det_expand(&minor);
            if (i + j) % 2 == 1 {
                cof = cof.neg();
            }
            out[i][j] = cof.mul(&inv_det);
        }
    }
    Ok(out)
}

pub fn tmat_from_q(m: &crate::exact::QMat) -> TMat {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| TPoly::constant(m[(i, j)].clone()))
                .collect()
        })
        .collect()
}

/// `T_t = (gA(t) ⊗ gB(t) ⊗ gC(t)) · sigma(T_source)`, with limit `T_target` at `t = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationFamily {
    pub source: String,
    pub target: String,
    pub sigma: Perm,
    pub ga: TMat,
    pub gb: TMat,
    pub gc: TMat,
    pub note: Option<String>,
}

fn tmat_to_json(a: &TMat) -> serde_json::Value {
    serde_json::Value::Array(
        a.iter()
            .map(|r| serde_json::Value::Array(r.iter().map(|p| p.to_string().into()).collect()))
            .collect(),
    )
}

fn tmat_from_json(v: &serde_json::Value, what: &str) -> Result<TMat> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} is not a list of rows")))?;
    let out =
        rows.iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::Parse(format!("{what} has a row that is not a list")))?
                    .iter()
                    .map(|s| {
                        TPoly::parse(s.as_str().ok_or_else(|| {
                            Error::Parse(format!("{what} has a non-string entry"))
                        })?)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<TMat>>()?;
    let n = out.len();
    if out.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch(format!("{what} is not square")));
    }
    Ok(out)
}

impl DegenerationFamily {
    pub fn identity(name: &str, m: usize) -> Self {
        DegenerationFamily {
            source: name.into(),
            target: name.into(),
            sigma: Perm::ID,
            ga: tmat_identity(m),
            gb: tmat_identity(m),
            gc: tmat_identity(m),
            note: Some("identity".into()),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "source": self.source,
            "target": self.target,
            "sigma": self.sigma.to_string(),
            "gA": tmat_to_json(&self.ga),
            "gB": tmat_to_json(&self.gb),
            "gC": tmat_to_json(&self.gc),
        });
        if let Some(n) = &self.note {
            v["note"] = n.clone().into();
        }
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Parse(format!("family is missing {k:?}")))
        };
        let name = |k: &str| -> Result<String> {
            Ok(field(k)?
                .as_str()
                .ok_or_else(|| Error::Parse(format!("{k} is not a string")))?
                .to_string())
        };
        let sigma = match v.get("sigma") {
            Some(s) => Perm::parse(
                s.as_str()
                    .ok_or_else(|| Error::Parse("sigma is not a string".into()))?,
            )?,
            None => Perm::ID,
        };
        Ok(DegenerationFamily {
            source: name("source")?,
            target: name("target")?,
            sigma,
            ga: tmat_from_json(field("gA")?, "gA")?,
            gb: tmat_from_json(field("gB")?, "gB")?,
            gc: tmat_from_json(field("gC")?, "gC")?,
            note: v.get("note").and_then(|n| n.as_str()).map(String::from),
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&serde_json::from_str(&text)?)
    }

    /// The same family in the parameter `c t`.
    pub fn reparametrize(&self, c: &Q) -> Self {
        let r = |a: &TMat| {
            a.iter()
                .map(|row| row.iter().map(|p| p.rescale(c)).collect())
                .collect()
        };
        DegenerationFamily {
            ga: r(&self.ga),
            gb: r(&self.gb),
            gc: r(&self.gc),
            ..self.clone()
        }
    }

    /// Primes dividing a denominator of some matrix entry.
    pub fn denominator_primes(&self) -> Vec<u64> {
        let mut primes = std::collections::BTreeSet::new();
        for g in [&self.ga, &self.gb, &self.gc] {
            for row in g {
                for p in row {
                    for (_, c) in p.terms() {
                        let mut d: u64 = num_traits::ToPrimitive::to_u64(c.denom()).unwrap_or(0);
                        let mut f = 2;
                        while d > 1 && f * f <= d {
                            while d % f == 0 {
                                primes.insert(f);
                                d /= f;
                            }
                            f += 1;
                        }
                        if d > 1 {
                            primes.insert(d);
                        }
                    }
                }
            }
        }
        primes.into_iter().collect()
    }
}

/// Which of the three checks failed, with the offending position.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum FamilyFailure {
    /// `det g(t)` vanishes identically.
    Determinant {
        matrix: String,
    },
    /// A coefficient of `T_t` has a pole at `t = 0`.
    Valuation {
        index: [usize; 3],
        coefficient: String,
    },
    /// `T_0` differs from the target.
    Limit {
        index: [usize; 3],
        limit: String,
        target: String,
    },
    Shape {
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyReport {
    pub source: String,
    pub target: String,
    pub pass: bool,
    pub failure: Option<FamilyFailure>,
}

/// Coefficients of `(gA ⊗ gB ⊗ gC) · T`, each a Laurent polynomial in `t`.
pub fn act_family(t: &Tensor3, ga: &TMat, gb: &TMat, gc: &TMat) -> Vec<Vec<Vec<TPoly>>> {
    let m = t.m();
    let mut cur: Vec<Vec<Vec<TPoly>>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    (0..m)
                        .map(|c| TPoly::constant(t.get(a, b, c).clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    // factor A
    let mut next = vec![vec![vec![TPoly::zero(); m]; m]; m];
    for a2 in 0..m {
        for a in 0..m {
            if ga[a2][a].is_zero() {
                continue;
            }
            for b in 0..m {
                for c in 0..m {
                    if !cur[a][b][c].is_zero() {
                        next[a2][b][c] = next[a2][b][c].add(&ga[a2][a].mul(&cur[a][b][c]));
                    }
                }
            }
        }
    }
    cur = next;
    let mut next = vec![vec![vec![TPoly::zero(); m]; m]; m];
    for b2 in 0..m {
        for b in 0..m {
            if gb[b2][b].is_zero() {
                continue;
            }
            for a in 0..m {
                for c in 0..m {
                    if !cur[a][b][c].is_zero() {
                        next[a][b2][c] = next[a][b2][c].add(&gb[b2][b].mul(&cur[a][b][c]));
                    }
                }
            }
        }
    }
    cur = next;
    let mut next = vec![vec![vec![TPoly::zero(); m]; m]; m];
    for c2 in 0..m {
        for c in 0..m {
            if gc[c2][c].is_zero() {
                continue;
            }
            for a in 0..m {
                for b in 0..m {
                    if !cur[a][b][c].is_zero() {
                        next[a][b][c2] = next[a][b][c2].add(&gc[c2][c].mul(&cur[a][b][c]));
                    }
                }
            }
        }
    }
    next
}

/// The three checks, in order, against explicit source and target tensors.
pub fn verify_family_tensors(
    f: &DegenerationFamily,
    source: &Tensor3,
    target: &Tensor3,
) -> FamilyReport {
    let report = |failure: Option<FamilyFailure>| FamilyReport {
        source: f.source.clone(),
        target: f.target.clone(),
        pass: failure.is_none(),
        failure,
    };
    let m = source.m();
    for (name, g) in [("gA", &f.ga), ("gB", &f.gb), ("gC", &f.gc)] {
        if g.len() != m || g.iter().any(|r| r.len() != m) || target.m() != m {
            return report(Some(FamilyFailure::Shape {
                detail: format!("{name} does not match m = {m}"),
            }));
        }
    }
    for (name, g) in [("gA", &f.ga), ("gB", &f.gb), ("gC", &f.gc)] {
        if tmat_det(g).is_zero() {
            return report(Some(FamilyFailure::Determinant {
                matrix: name.into(),
            }));
        }
    }
    let tt = act_family(&source.permute(f.sigma), &f.ga, &f.gb, &f.gc);
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                if tt[a][b][c].valuation().is_some_and(|v| v < 0) {
                    return report(Some(FamilyFailure::Valuation {
                        index: [a, b, c],
                        coefficient: tt[a][b][c].to_string(),
                    }));
                }
            }
        }
    }
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let lim = tt[a][b][c]
                    .at_zero()
                    .unwrap_or_else(crate::exact::rational::zero);
                if &lim != target.get(a, b, c) {
                    return report(Some(FamilyFailure::Limit {
                        index: [a, b, c],
                        limit: fmt_q(&lim),
                        target: fmt_q(target.get(a, b, c)),
                    }));
                }
            }
        }
    }
    report(None)
}

/// Verifies a family whose endpoints are catalog entries.
pub fn verify_family(f: &DegenerationFamily, cat: &Catalog) -> Result<FamilyReport> {
    let s = cat.get(&f.source)?;
    let t = cat.get(&f.target)?;
    Ok(verify_family_tensors(f, &s.tensor, &t.tensor))
}

/// Family files (`*.json`) of a directory, sorted by file name.
pub fn family_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    Ok(out)
}
