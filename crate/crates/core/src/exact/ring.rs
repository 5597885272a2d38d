//! Determinants over commutative rings by cofactor expansion with the minors
//! memoised on column subsets (`2^n` minors instead of `n!` products).

pub trait CommRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

/// Determinant of an `n x n` matrix given row by row. Used only for `n <= 5`
/// in this crate, where the table of minors has at most 32 entries.
pub fn det_expand<R: CommRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n <= 16, "cofactor expansion is exponential");
    if n == 0 {
        return R::one();
    }
    // minor[S] = det of rows 0..|S| restricted to columns S.
    let full = 1usize << n;
    let mut minor: Vec<Option<R>> = vec![None; full];
    for c in 0..n {
        minor[1 << c] = Some(m[0][c].clone());
    }
    for s in 1..full {
        let k = (s as u32).count_ones() as usize;
        if k < 2 {
            continue;
        }
        let row = k - 1;
        let mut acc = R::zero();
        // Laplace along the last row, columns of S in increasing order.
        let mut pos = 0;
        for c in 0..n {
            if s & (1 << c) == 0 {
                continue;
            }
            let sign_neg = (k - 1 - pos) % 2 == 1;
            pos += 1;
            let entry = &m[row][c];
            if entry.is_zero() {
                continue;
            }
            let sub = minor[s & !(1 << c)].as_ref().expect("smaller minors first");
            if sub.is_zero() {
                continue;
            }
            let term = entry.mul(sub);
            acc = if sign_neg {
                acc.sub(&term)
            } else {
                acc.add(&term)
            };
        }
        minor[s] = Some(acc);
    }
    minor[full - 1].take().unwrap()
}
