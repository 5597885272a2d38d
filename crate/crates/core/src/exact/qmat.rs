//! Dense matrices over the rationals.
//!
//! Row reduction is fraction-free: each row is scaled to integer entries and
//! Bareiss elimination produces an integer echelon form, which is then
//! normalised to the reduced echelon form. Pivots are always the first
//! nonzero entry in column order, so kernels come out in the same basis on
//! every run.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{denom_lcm, fmt_q, q, Q};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    /// Matrix with a single 1 at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(i, j)] = Q::one();
        m
    }

    pub fn column(v: &[Q]) -> Self {
        QMat {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Columns given as vectors.
    pub fn from_columns(cols: &[Vec<Q>], rows: usize) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Q] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &Q) -> Self {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..self.cols {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !v[j].is_zero() {
                        s += a * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::identity(self.rows);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn commutes_with(&self, other: &QMat) -> bool {
        &(self * other) == &(other * self)
    }

    pub fn hstack(parts: &[QMat]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows);
        assert!(parts.iter().all(|p| p.rows == rows));
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    m[(i, off + j)] = p[(i, j)].clone();
                }
            }
            off += p.cols;
        }
        m
    }

    pub fn vstack(parts: &[QMat]) -> Self {
        let cols = parts.first().map_or(0, |p| p.cols);
        assert!(parts.iter().all(|p| p.cols == cols));
        QMat {
            rows: parts.iter().map(|p| p.rows).sum(),
            cols,
            data: parts.iter().flat_map(|p| p.data.iter().cloned()).collect(),
        }
    }

    pub fn block_diag(parts: &[QMat]) -> Self {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            for i in 0..p.rows {
                for j in 0..p.cols {
                    m[(r0 + i, c0 + j)] = p[(i, j)].clone();
                }
            }
            r0 += p.rows;
            c0 += p.cols;
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    /// Entries flattened row by row, as a single vector.
    pub fn flatten(&self) -> Vec<Q> {
        self.data.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, v: &[Q]) -> Self {
        assert_eq!(v.len(), rows * cols);
        QMat {
            rows,
            cols,
            data: v.to_vec(),
        }
    }

    /// Integer echelon form by Bareiss elimination, with the pivot columns
    /// and the sign of the row permutation.
    fn bareiss(&self) -> (Vec<Vec<BigInt>>, Vec<usize>, bool) {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = denom_lcm(row);
                row.iter()
                    .map(|x| (x * Q::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        let mut odd = false;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                odd = !odd;
            }
            let piv = a[r][c].clone();
            for i in r + 1..self.rows {
                let f = a[i][c].clone();
                for j in c..self.cols {
                    let v = &piv * &a[i][j] - &f * &a[r][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        (a, pivots, odd)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let (a, pivots, _) = self.bareiss();
        let mut out = QMat::zeros(pivots.len(), self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            let p = Q::from_integer(a[r][c].clone());
            for j in 0..self.cols {
                if !a[r][j].is_zero() {
                    out[(r, j)] = Q::from_integer(a[r][j].clone()) / &p;
                }
            }
        }
        for r in (0..pivots.len()).rev() {
            let c = pivots[r];
            for r2 in 0..r {
                let f = out[(r2, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = &out[(r, j)] * &f;
                    if !v.is_zero() {
                        out[(r2, j)] -= v;
                    }
                }
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Rank and the canonical kernel basis read off the reduced echelon form:
    /// one vector per free column, with a 1 in that column.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<Q>>) {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(i);
        }
        let mut kernel = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -r[(i, f)].clone();
            }
            kernel.push(v);
        }
        (pivots.len(), kernel)
    }

    pub fn kernel(&self) -> Vec<Vec<Q>> {
        self.rank_and_kernel().1
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Q]) -> Result<Option<Vec<Q>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} system with right-hand side of length {}",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let aug = QMat::hstack(&[self.clone(), QMat::column(b)]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Q::one();
        }
        let (a, pivots, odd) = self.bareiss();
        if pivots.len() < n {
            return Q::zero();
        }
        let mut scale = BigInt::one();
        for i in 0..n {
            scale *= denom_lcm(&self.data[i * n..(i + 1) * n]);
        }
        let d = Q::new(a[n - 1][n - 1].clone(), scale);
        if odd {
            -d
        } else {
            d
        }
    }

    pub fn inverse(&self) -> Option<QMat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = QMat::hstack(&[self.clone(), QMat::identity(n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(QMat::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    pub fn max_abs(&self) -> Q {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, o: &QMat) -> QMat {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = QMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &QMat {
    type Output = QMat;
    fn add(self, o: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMat {
    type Output = QMat;
    fn sub(self, o: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMat {
    type Output = QMat;
    fn neg(self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(fmt_q).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(fmt_q).collect())
            .collect();
        let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for r in cells {
            let line: Vec<String> = r.iter().map(|s| format!("{s:>w$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A subspace of `Q^n` kept in reduced echelon form for membership tests.
#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    basis: QMat,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(n: usize, vectors: &[Vec<Q>]) -> Self {
        if vectors.is_empty() {
            return Subspace {
                n,
                basis: QMat::zeros(0, n),
                pivots: vec![],
            };
        }
        let m = QMat::from_rows(vectors.to_vec());
        let (basis, pivots) = m.rref();
        Subspace { n, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Vec<Vec<Q>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing the pivot coordinates.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            let f = v[c].clone();
            for j in 0..self.n {
                let b = &self.basis[(i, j)];
                if !b.is_zero() {
                    v[j] -= b * &f;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the echelon basis, if it lies in the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis();
        vs.extend(other.basis());
        Subspace::span(self.n, &vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = sum a_i u_i = sum b_j w_j
        let (u, w) = (self.basis(), other.basis());
        if u.is_empty() || w.is_empty() {
            return Subspace::span(self.n, &[]);
        }
        let mut cols: Vec<Vec<Q>> = u.clone();
        cols.extend(w.iter().map(|x| x.iter().map(|y| -y).collect()));
        let m = QMat::from_columns(&cols, self.n);
        let vecs: Vec<Vec<Q>> = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut x = vec![Q::zero(); self.n];
                for (i, ui) in u.iter().enumerate() {
                    if !k[i].is_zero() {
                        for t in 0..self.n {
                            x[t] += &k[i] * &ui[t];
                        }
                    }
                }
                x
            })
            .collect();
        Subspace::span(self.n, &vecs)
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.n == other.n && self.pivots == other.pivots && self.basis == other.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qf;

    #[test]
    fn identity_has_full_rank_and_no_kernel() {
        let (r, k) = QMat::identity(5).rank_and_kernel();
        assert_eq!(r, 5);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let (r, k) = QMat::zeros(3, 4).rank_and_kernel();
        assert_eq!(r, 0);
        let expected: Vec<Vec<Q>> = (0..4)
            .map(|i| (0..4).map(|j| q((i == j) as i64)).collect())
            .collect();
        assert_eq!(k, expected);
    }

    #[test]
    fn rank_one_kernel() {
        let m = QMat::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, k) = m.rank_and_kernel();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(3), q(-1)];
        assert_eq!(QMat::identity(2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(
            QMat::from_i64(&[&[1, 1], &[1, 1]])
                .solve(&[q(1), q(2)])
                .unwrap(),
            None
        );
        let d = QMat::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            d.solve(&[q(1), q(1)]).unwrap(),
            Some(vec![qf(1, 2), qf(1, 3)])
        );
        assert!(d.solve(&[q(1)]).is_err());
    }

    #[test]
    fn det_and_inverse_agree() {
        let m = QMat::from_rows(vec![
            vec![qf(1, 2), q(3), q(0)],
            vec![q(-1), qf(2, 3), q(4)],
            vec![q(5), q(0), qf(-7, 5)],
        ]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        // cofactor expansion by hand
        let d = &m[(0, 0)] * (&m[(1, 1)] * &m[(2, 2)] - &m[(1, 2)] * &m[(2, 1)])
            - &m[(0, 1)] * (&m[(1, 0)] * &m[(2, 2)] - &m[(1, 2)] * &m[(2, 0)])
            + &m[(0, 2)] * (&m[(1, 0)] * &m[(2, 1)] - &m[(1, 1)] * &m[(2, 0)]);
        assert_eq!(m.det(), d);
        let swapped = QMat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(swapped.det(), q(-1));
    }

    #[test]
    fn subspace_intersection() {
        let a = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::span(3, &[vec![q(0), q(1), q(1)], vec![q(0), q(0), q(1)]]);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[q(0), q(5), q(0)]));
    }
}
