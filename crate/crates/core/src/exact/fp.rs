//! Prime fields `F_p` with `5 <= p < 2^31` and dense matrices over them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::qmat::QMat;
use super::rational::Q;
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if p < 5 || p >= 1 << 31 || !is_prime(p) {
        return Err(Error::FieldMismatch(format!(
            "{p} is not a supported prime (need 5 <= p < 2^31)"
        )));
    }
    Ok(())
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

/// `num * den^{-1} mod p`.
pub fn reduce_q(x: &Q, p: u64) -> Result<u64> {
    let d = bigint_mod(x.denom(), p);
    if d == 0 {
        return Err(Error::BadPrime { p });
    }
    Ok(bigint_mod(x.numer(), p) * inv_mod(d, p) % p)
}

/// An element of `F_p` carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(value: i64, p: u64) -> Self {
        Fp {
            value: value.rem_euclid(p as i64) as u64,
            p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMat {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|x| x.iter().map(|v| v % p)).collect();
        FpMat {
            p,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_qmat(m: &QMat, p: u64) -> Result<Self> {
        let mut out = Self::zeros(p, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, reduce_q(&m[(i, j)], p)?);
            }
        }
        Ok(out)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, o: &FpMat) -> Result<FpMat> {
        if self.p != o.p {
            return Err(Error::FieldMismatch(format!(
                "F_{} times F_{}",
                self.p, o.p
            )));
        }
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch("matrix product".into()));
        }
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = (out.data[idx] + a * o.get(k, j)) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                let mut s = 0u64;
                for j in 0..self.cols {
                    s = (s + self.get(i, j) * v[j]) % p;
                }
                s
            })
            .collect()
    }

    /// Reduced echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in c..self.cols {
                let v = self.get(r, j) * inv % p;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = (self.get(i, j) + (p - f) * self.get(r, j)) % p;
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<u64>>) {
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut kernel = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (p - r.get(i, f)) % p;
            }
            kernel.push(v);
        }
        (pivots.len(), kernel)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Rank of a small square matrix given as a flat row-major buffer, without
/// allocation. Used in the hot loop of rank-locus point counts.
pub fn rank_small(buf: &mut [u64], n: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..n {
        let Some(piv) = (rank..n).find(|&i| buf[i * n + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..n {
                buf.swap(piv * n + j, rank * n + j);
            }
        }
        let inv = inv_mod(buf[rank * n + c], p);
        for i in rank + 1..n {
            let f = buf[i * n + c];
            if f == 0 {
                continue;
            }
            let f = f * inv % p;
            for j in c..n {
                buf[i * n + j] = (buf[i * n + j] + (p - f) * buf[rank * n + j]) % p;
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

pub fn is_zero_mod(x: &Q, p: u64) -> bool {
    !x.denom().is_zero() && bigint_mod(x.numer(), p) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{q, qf};

    #[test]
    fn half_mod_five_is_three() {
        assert_eq!(reduce_q(&qf(1, 2), 5).unwrap(), 3);
        assert_eq!(reduce_q(&qf(-1, 3), 7).unwrap(), 2);
    }

    #[test]
    fn fifth_mod_five_is_bad_prime() {
        assert_eq!(reduce_q(&qf(1, 5), 5), Err(Error::BadPrime { p: 5 }));
    }

    #[test]
    fn integer_matrix_mod_seven() {
        let m = QMat::from_i64(&[&[8, -1], &[14, 3]]);
        let r = FpMat::from_qmat(&m, 7).unwrap();
        assert_eq!(r.row(0), vec![1, 6]);
        assert_eq!(r.row(1), vec![0, 3]);
    }

    #[test]
    fn kernel_mod_p() {
        let m = FpMat::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        let (r, k) = m.rank_and_kernel();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![3, 1]]);
        let mut buf = vec![1, 2, 2, 4];
        assert_eq!(rank_small(&mut buf, 2, 5), 1);
    }

    #[test]
    fn rank_can_drop_mod_p() {
        let m = QMat::from_i64(&[&[1, 0], &[0, 7]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(FpMat::from_qmat(&m, 7).unwrap().rank(), 1);
        assert!(is_zero_mod(&q(14), 7));
    }

    #[test]
    fn primes() {
        assert!(check_prime(5).is_ok());
        assert!(check_prime(3).is_err());
        assert!(check_prime(9).is_err());
    }
}
