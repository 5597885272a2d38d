//! Exact scalars and matrices over the rationals, prime fields and Laurent
//! polynomials in one parameter `t`.

pub mod fp;
pub mod mpoly;
pub mod qmat;
pub mod rational;
pub mod ring;
pub mod tpoly;

pub use fp::{Fp, FpMat};
pub use mpoly::{symbolic_det, MPoly, Monomial};
pub use qmat::{QMat, Subspace};
pub use rational::{q, qf, Q};
pub use tpoly::TPoly;

use crate::error::{Error, Result};

/// Which field an exact value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Rational,
    Prime(u64),
    Laurent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(Q),
    Prime(Fp),
    Laurent(TPoly),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime(x) => Field::Prime(x.p),
            Scalar::Laurent(_) => Field::Laurent,
        }
    }

    pub fn add(&self, o: &Scalar) -> Result<Scalar> {
        use ring::CommRing;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.p == b.p => Scalar::Prime(Fp {
                value: (a.value + b.value) % a.p,
                p: a.p,
            }),
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::Laurent(CommRing::add(a, b)),
            _ => return Err(mismatch(self.field(), o.field())),
        })
    }

    pub fn mul(&self, o: &Scalar) -> Result<Scalar> {
        use ring::CommRing;
        Ok(match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.p == b.p => Scalar::Prime(Fp {
                value: a.value * b.value % a.p,
                p: a.p,
            }),
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::Laurent(CommRing::mul(a, b)),
            _ => return Err(mismatch(self.field(), o.field())),
        })
    }
}

fn mismatch(a: Field, b: Field) -> Error {
    Error::FieldMismatch(format!("{a:?} vs {b:?}"))
}

/// A matrix tagged with its field. Laurent matrices are stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactMatrix {
    Rational(QMat),
    Prime(FpMat),
    Laurent {
        rows: usize,
        cols: usize,
        data: Vec<TPoly>,
    },
}

impl ExactMatrix {
    pub fn field(&self) -> Field {
        match self {
            ExactMatrix::Rational(_) => Field::Rational,
            ExactMatrix::Prime(m) => Field::Prime(m.p()),
            ExactMatrix::Laurent { .. } => Field::Laurent,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            ExactMatrix::Rational(m) => (m.rows(), m.cols()),
            ExactMatrix::Prime(m) => (m.rows(), m.cols()),
            ExactMatrix::Laurent { rows, cols, .. } => (*rows, *cols),
        }
    }

    pub fn mul(&self, o: &ExactMatrix) -> Result<ExactMatrix> {
        match (self, o) {
            (ExactMatrix::Rational(a), ExactMatrix::Rational(b)) => {
                if a.cols() != b.rows() {
                    return Err(Error::ShapeMismatch(format!(
                        "{}x{} * {}x{}",
                        a.rows(),
                        a.cols(),
                        b.rows(),
                        b.cols()
                    )));
                }
                Ok(ExactMatrix::Rational(a * b))
            }
            (ExactMatrix::Prime(a), ExactMatrix::Prime(b)) => Ok(ExactMatrix::Prime(a.mul(b)?)),
            _ => Err(mismatch(self.field(), o.field())),
        }
    }
}

/// Rank and canonical kernel basis (one vector per free column of the RREF).
pub fn rank_and_kernel(m: &ExactMatrix) -> Result<(usize, Vec<Vec<Scalar>>)> {
    match m {
        ExactMatrix::Rational(a) => {
            let (r, k) = a.rank_and_kernel();
            Ok((
                r,
                k.into_iter()
                    .map(|v| v.into_iter().map(Scalar::Rational).collect())
                    .collect(),
            ))
        }
        ExactMatrix::Prime(a) => {
            let p = a.p();
            let (r, k) = a.rank_and_kernel();
            Ok((
                r,
                k.into_iter()
                    .map(|v| {
                        v.into_iter()
                            .map(|x| Scalar::Prime(Fp { value: x, p }))
                            .collect()
                    })
                    .collect(),
            ))
        }
        ExactMatrix::Laurent { .. } => Err(Error::FieldMismatch(
            "elimination needs a field, not a Laurent ring".into(),
        )),
    }
}

/// One exact solution of `a x = b`, or `None` when inconsistent.
pub fn solve_linear(a: &ExactMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    match a {
        ExactMatrix::Rational(m) => {
            let rhs = b
                .iter()
                .map(|s| match s {
                    Scalar::Rational(x) => Ok(x.clone()),
                    other => Err(mismatch(Field::Rational, other.field())),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(m.solve(&rhs)?
                .map(|v| v.into_iter().map(Scalar::Rational).collect()))
        }
        ExactMatrix::Prime(m) => {
            let p = m.p();
            if b.len() != m.rows() {
                return Err(Error::ShapeMismatch(format!(
                    "rhs length {} for {} rows",
                    b.len(),
                    m.rows()
                )));
            }
            let mut aug = FpMat::zeros(p, m.rows(), m.cols() + 1);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    aug.set(i, j, m.get(i, j));
                }
                match &b[i] {
                    Scalar::Prime(x) if x.p == p => aug.set(i, m.cols(), x.value),
                    other => return Err(mismatch(Field::Prime(p), other.field())),
                }
            }
            let piv = aug.rref_in_place();
            if piv.last() == Some(&m.cols()) {
                return Ok(None);
            }
            let mut x = vec![0u64; m.cols()];
            for (r, &c) in piv.iter().enumerate() {
                x[c] = aug.get(r, m.cols());
            }
            Ok(Some(
                x.into_iter()
                    .map(|v| Scalar::Prime(Fp { value: v, p }))
                    .collect(),
            ))
        }
        ExactMatrix::Laurent { .. } => Err(Error::FieldMismatch(
            "cannot solve over a Laurent ring".into(),
        )),
    }
}

/// Entrywise reduction of a rational matrix modulo `p`.
pub fn reduce_mod_p(m: &QMat, p: u64) -> Result<FpMat> {
    FpMat::from_qmat(m, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_fields_rejected() {
        let a = ExactMatrix::Rational(QMat::identity(2));
        let b = ExactMatrix::Prime(FpMat::identity(5, 2));
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch(_))));
        let x = Scalar::Rational(q(1));
        let y = Scalar::Prime(Fp::new(1, 7));
        assert!(x.add(&y).is_err());
    }

    #[test]
    fn solve_over_fp() {
        let a = ExactMatrix::Prime(FpMat::from_rows(7, &[vec![2, 0], vec![0, 3]]));
        let b = vec![Scalar::Prime(Fp::new(1, 7)), Scalar::Prime(Fp::new(1, 7))];
        let x = solve_linear(&a, &b).unwrap().unwrap();
        assert_eq!(
            x,
            vec![Scalar::Prime(Fp::new(4, 7)), Scalar::Prime(Fp::new(5, 7))]
        );
    }

    #[test]
    fn solve_inconsistent() {
        let a = ExactMatrix::Rational(QMat::from_i64(&[&[1, 1], &[1, 1]]));
        let b = vec![Scalar::Rational(q(1)), Scalar::Rational(q(2))];
        assert_eq!(solve_linear(&a, &b).unwrap(), None);
    }

    #[test]
    fn kernel_wrapper() {
        let a = ExactMatrix::Rational(QMat::from_i64(&[&[1, 2], &[2, 4]]));
        let (r, k) = rank_and_kernel(&a).unwrap();
        assert_eq!(r, 1);
        assert_eq!(
            k,
            vec![vec![Scalar::Rational(q(-2)), Scalar::Rational(q(1))]]
        );
    }
}
