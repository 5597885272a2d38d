//! Sparse multivariate polynomials over the rationals, kept as a sorted map
//! from monomials (graded lexicographic order) to nonzero coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::qmat::QMat;
use super::rational::{fmt_q, Q};
use super::ring::{det_expand, CommRing};
use crate::error::{Error, Result};

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// `sum_i coeffs[i] * x_i`
    pub fn linear(coeffs: &[Q]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    v *= x.pow(e as i32);
                }
            }
            acc += v;
        }
        acc
    }

    pub fn eval_mod(&self, point: &[u64], p: u64) -> Result<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut v = super::fp::reduce_q(c, p)?;
            for (x, &e) in point.iter().zip(&m.0) {
                v = v * super::fp::pow_mod(*x, e as u64, p) % p;
            }
            acc = (acc + v) % p;
        }
        Ok(acc)
    }
}

impl CommRing for MPoly {
    fn zero() -> Self {
        // only used as an additive seed inside determinant expansion; the
        // variable count is fixed up on the first addition
        MPoly {
            nvars: 0,
            terms: BTreeMap::new(),
        }
    }

    fn one() -> Self {
        MPoly {
            nvars: 0,
            terms: BTreeMap::from([(Monomial(vec![]), Q::one())]),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        if self.terms.is_empty() {
            return o.clone();
        }
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        if out.terms.is_empty() {
            out.nvars = o.nvars;
        }
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    fn mul(&self, o: &Self) -> Self {
        let nvars = self.nvars.max(o.nvars);
        let mut acc: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(Q::zero);
                *e += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MPoly { nvars, terms: acc }
    }
}

impl fmt::Display for MPoly {
    /// Leading (largest) term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, a) = (c.is_negative(), c.abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{e}")
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Largest matrix size accepted by [`symbolic_det`].
pub const SYMBOLIC_DET_MAX: usize = 5;

/// Determinant of `sum_{i < n} x_i * slices[i]`, expanded and collected.
pub fn symbolic_det(slices: &[QMat], nvars: usize) -> Result<MPoly> {
    let m = slices.first().map_or(0, |s| s.rows());
    if m > SYMBOLIC_DET_MAX {
        return Err(Error::SizeLimit(format!(
            "symbolic determinant of size {m} > {SYMBOLIC_DET_MAX}"
        )));
    }
    if slices.len() < nvars {
        return Err(Error::ShapeMismatch(format!(
            "{} slices for {nvars} variables",
            slices.len()
        )));
    }
    if slices.iter().any(|s| s.rows() != m || s.cols() != m) {
        return Err(Error::ShapeMismatch(
            "slices must be square and equal-sized".into(),
        ));
    }
    let entries: Vec<Vec<MPoly>> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    let coeffs: Vec<Q> = (0..nvars).map(|i| slices[i][(r, c)].clone()).collect();
                    MPoly::linear(&coeffs)
                })
                .collect()
        })
        .collect();
    let mut d = det_expand(&entries);
    d.nvars = nvars;
    if m == 0 {
        d = MPoly::constant(nvars, Q::one());
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::q;

    #[test]
    fn one_by_one_slices() {
        let s = vec![QMat::from_i64(&[&[2]]), QMat::from_i64(&[&[3]])];
        let d = symbolic_det(&s, 2).unwrap();
        assert_eq!(d, MPoly::linear(&[q(2), q(3)]));
        assert_eq!(d.to_string(), "2*x0 + 3*x1");
    }

    #[test]
    fn nilpotent_span_has_zero_determinant() {
        let s = vec![
            QMat::zeros(3, 3),
            QMat::unit(3, 3, 1, 0),
            QMat::unit(3, 3, 2, 1),
        ];
        assert!(symbolic_det(&s, 3).unwrap().is_zero());
    }

    #[test]
    fn size_limit() {
        let s = vec![QMat::identity(6)];
        assert!(matches!(symbolic_det(&s, 1), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![2, 0]);
        let b = Monomial(vec![0, 3]);
        let c = Monomial(vec![1, 1]);
        assert!(b > a);
        assert!(a > c);
    }

    #[test]
    fn two_by_two_generic() {
        // [[x0, x1], [x1, x0]] -> x0^2 - x1^2
        let s = vec![QMat::identity(2), QMat::from_i64(&[&[0, 1], &[1, 0]])];
        let d = symbolic_det(&s, 2).unwrap();
        assert_eq!(d.to_string(), "x0^2 - x1^2");
        assert_eq!(d.eval(&[q(3), q(1)]), q(8));
    }
}
