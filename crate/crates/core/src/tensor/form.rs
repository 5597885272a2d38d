use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{Dir, Tensor3};
use crate::error::{Error, Result};
use crate::exact::rational::{fmt_q, parse_q};
use crate::exact::{QMat, Q};

/// Homogeneous linear form `Σ c_k x_k` in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(pub Vec<Q>);

impl LinearForm {
    pub fn zero(n: usize) -> Self {
        LinearForm(vec![Q::zero(); n])
    }

    /// Parses sums such as `"x0+x4"`, `"-x1"`, `"1/2*x3 - x2"` or `"0"`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut out = vec![Q::zero(); n];
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" || compact.is_empty() {
            return Ok(LinearForm(out));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-Q::one(), rest),
                None => (Q::one(), term.strip_prefix('+').unwrap_or(&term)),
            };
            let bad = || Error::Parse(format!("bad linear form {s:?}"));
            let xpos = body.find('x').ok_or_else(bad)?;
            let coeff = match body[..xpos].trim_end_matches('*') {
                "" => Q::one(),
                c => parse_q(c)?,
            };
            let k: usize = body[xpos + 1..].parse().map_err(|_| bad())?;
            if k >= n {
                return Err(Error::Parse(format!("variable x{k} out of range in {s:?}")));
            }
            out[k] += sign * coeff;
        }
        Ok(LinearForm(out))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let body = if a.is_one() {
                format!("x{k}")
            } else {
                format!("{}*x{k}", fmt_q(&a))
            };
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An `m × m` grid of linear forms in `x_0..x_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixForm {
    pub m: usize,
    pub entries: Vec<Vec<LinearForm>>,
}

impl MatrixForm {
    /// Rows given as strings of linear forms; short rows are padded with zeros.
    pub fn parse_rows(m: usize, rows: &[&[&str]]) -> Result<Self> {
        if rows.len() != m {
            return Err(Error::ShapeMismatch(format!(
                "{} rows for m = {m}",
                rows.len()
            )));
        }
        let mut entries = Vec::with_capacity(m);
        for r in rows {
            if r.len() > m {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} for m = {m}",
                    r.len()
                )));
            }
            let mut row: Vec<LinearForm> = r
                .iter()
                .map(|s| LinearForm::parse(s, m))
                .collect::<Result<_>>()?;
            row.resize(m, LinearForm::zero(m));
            entries.push(row);
        }
        Ok(MatrixForm { m, entries })
    }

    /// The coefficient of `x_k` in entry `(i, j)` becomes `T[k][i][j]`.
    pub fn to_tensor(&self) -> Tensor3 {
        let m = self.m;
        let mut t = Tensor3::zeros(m);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, f) in row.iter().enumerate() {
                for (k, c) in f.0.iter().enumerate() {
                    if !c.is_zero() {
                        t.set(k, i, j, c.clone());
                    }
                }
            }
        }
        t
    }

    pub fn from_tensor(t: &Tensor3) -> Self {
        let m = t.m();
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| LinearForm((0..m).map(|k| t.get(k, i, j).clone()).collect()))
                    .collect()
            })
            .collect();
        MatrixForm { m, entries }
    }

    /// Coefficient matrix of `x_k`, i.e. the A-slice `k`.
    pub fn coefficient(&self, k: usize) -> QMat {
        self.to_tensor().slices(Dir::A)[k].clone()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Vec<BTreeMap<String, String>>> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|f| {
                        f.0.iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (format!("x{k}"), fmt_q(c)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        serde_json::json!({ "m": self.m, "entries": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct J {
            m: usize,
            entries: Vec<Vec<BTreeMap<String, String>>>,
        }
        let j: J = serde_json::from_value(v.clone())?;
        let m = j.m;
        if j.entries.len() != m || j.entries.iter().any(|r| r.len() != m) {
            return Err(Error::ShapeMismatch(format!("matrix form is not {m}x{m}")));
        }
        let mut entries = Vec::new();
        for row in j.entries {
            let mut out = Vec::new();
            for cell in row {
                let mut f = LinearForm::zero(m);
                for (var, c) in cell {
                    let k: usize = var
                        .strip_prefix('x')
                        .and_then(|s| s.parse().ok())
                        .filter(|&k| k < m)
                        .ok_or_else(|| Error::Parse(format!("bad variable {var:?}")))?;
                    f.0[k] = parse_q(&c)?;
                }
                out.push(f);
            }
            entries.push(out);
        }
        Ok(MatrixForm { m, entries })
    }
}

impl std::fmt::Display for MatrixForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cells: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for r in cells {
            let line: Vec<String> = r.iter().map(|s| format!("{s:>w$}")).collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}
