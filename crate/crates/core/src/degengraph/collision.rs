//! Families that collide eigenvalues: split algebras whose slices are
//! polynomials in a shift on each block, merged into fewer, larger blocks.

use crate::error::{Error, Result};
use crate::exact::ring::CommRing;
use crate::exact::{q, QMat, TPoly, Q};
use crate::tensor::{Dir, Perm, Tensor3};

use super::family::{tmat_inverse, tmat_mul, tmat_transpose, DegenerationFamily, TMat};

/// Index sets of the blocks of the A-slices, ordered by first index.
pub fn slice_blocks(t: &Tensor3) -> Vec<Vec<usize>> {
    let m = t.m();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for s in t.slices(Dir::A) {
        for i in 0..m {
            for j in 0..m {
                if i != j && s[(i, j)] != q(0) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        match blocks.iter_mut().find(|b| b[0] == r) {
            Some(b) => b.push(i),
            None => blocks.push(vec![i]),
        }
    }
    blocks
}

/// Coefficients `a_l` with `s|_block = sum_l a_l J^l`, `J` the lower shift.
fn toeplitz_coeffs(s: &QMat, block: &[usize]) -> Option<Vec<Q>> {
    let d = block.len();
    let a: Vec<Q> = (0..d).map(|l| s[(block[l], block[0])].clone()).collect();
    for (r, &i) in block.iter().enumerate() {
        for (c, &j) in block.iter().enumerate() {
            let want = if r >= c { a[r - c].clone() } else { q(0) };
            if s[(i, j)] != want {
                return None;
            }
        }
    }
    Some(a)
}

/// Per slice, per block, the shift polynomial of the slice on that block.
fn block_polys(t: &Tensor3, blocks: &[Vec<usize>], who: &str) -> Result<Vec<Vec<Vec<Q>>>> {
    t.slices(Dir::A)
        .iter()
        .enumerate()
        .map(|(k, s)| {
            blocks
                .iter()
                .map(|b| {
                    toeplitz_coeffs(s, b).ok_or_else(|| {
                        Error::UnsupportedMerge(format!(
                            "{who}: slice x{k} is not a shift polynomial on block {b:?}"
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

fn binom(n: usize, k: usize) -> Q {
    let mut r = q(1);
    for i in 0..k {
        r = r * q((n - i) as i64) / q((i + 1) as i64);
    }
    r
}

/// `p^{(l)}(lambda) / l!` for `p = sum a_n x^n`.
fn taylor_coeff(a: &[Q], l: usize, lambda: &TPoly) -> TPoly {
    let mut acc = TPoly::zero();
    let mut pow = TPoly::one();
    for n in l..a.len() {
        acc = acc.add(&pow.scale(&(binom(n, l) * &a[n])));
        pow = pow.mul(lambda);
    }
    acc
}

fn tmat_vec(a: &TMat, v: &[TPoly]) -> Vec<TPoly> {
    a.iter()
        .map(|r| {
            r.iter()
                .zip(v)
                .fold(TPoly::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

/// Builds the collision family `source -> target`. `merge[b]` lists the
/// source blocks that collide into target block `b`, in order; source block
/// `i` within a merge gets eigenvalue `i * t`.
pub fn collision_family(
    source_name: &str,
    source: &Tensor3,
    target_name: &str,
    target: &Tensor3,
    merge: &[Vec<usize>],
) -> Result<DegenerationFamily> {
    let m = source.m();
    if target.m() != m {
        return Err(Error::ShapeMismatch(
            "source and target sizes differ".into(),
        ));
    }
    let sblocks = slice_blocks(source);
    let tblocks = slice_blocks(target);
    let mut used: Vec<usize> = merge.iter().flatten().copied().collect();
    used.sort_unstable();
    if merge.len() != tblocks.len() || used != (0..sblocks.len()).collect::<Vec<_>>() {
        return Err(Error::UnsupportedMerge(format!(
            "merge {merge:?} does not match {} source and {} target blocks",
            sblocks.len(),
            tblocks.len()
        )));
    }
    for (b, group) in merge.iter().enumerate() {
        let size: usize = group.iter().map(|&i| sblocks[i].len()).sum();
        if size != tblocks[b].len() {
            return Err(Error::UnsupportedMerge(format!(
                "target block {b} has size {} but merge gives {size}",
                tblocks[b].len()
            )));
        }
    }
    let sp = block_polys(source, &sblocks, source_name)?;
    let tp = block_polys(target, &tblocks, target_name)?;

    // source algebra basis (block i, power l) -> flat index
    let mut basis: Vec<(usize, usize)> = Vec::new();
    for (i, b) in sblocks.iter().enumerate() {
        for l in 0..b.len() {
            basis.push((i, l));
        }
    }
    let col_of = |i: usize, l: usize| basis.iter().position(|&x| x == (i, l)).unwrap();

    // Phi[k][(i,l)]: source slice k in the algebra basis.
    let phi = QMat::from_fn(m, m, |k, c| {
        let (i, l) = basis[c];
        sp[k][i][l].clone()
    });
    let phi_inv = phi
        .inverse()
        .ok_or_else(|| Error::UnsupportedMerge(format!("{source_name} is not concise")))?;

    let mut g: TMat = vec![vec![TPoly::zero(); m]; m];
    let mut cmat: TMat = vec![vec![TPoly::zero(); m]; m];
    for (b, group) in merge.iter().enumerate() {
        let tb = &tblocks[b];
        let d = tb.len();
        let lambdas: Vec<TPoly> = (0..group.len())
            .map(|i| TPoly::monomial(q(i as i64), 1))
            .collect();
        let mut x: TMat = vec![vec![TPoly::zero(); d]; d];
        let mut pos = 0;
        for (gi, &si) in group.iter().enumerate() {
            for _ in 0..sblocks[si].len() {
                x[pos][pos] = lambdas[gi].clone();
                pos += 1;
            }
        }
        for r in 1..d {
            x[r][r - 1] = TPoly::one();
        }
        let shifted = |lam: &TPoly| -> TMat {
            let mut y = x.clone();
            for r in 0..d {
                y[r][r] = y[r][r].sub(lam);
            }
            y
        };
        for (gi, &si) in group.iter().enumerate() {
            let mut v: Vec<TPoly> = (0..d)
                .map(|r| if r == 0 { TPoly::one() } else { TPoly::zero() })
                .collect();
            for (gj, &sj) in group.iter().enumerate() {
                if gj != gi {
                    let y = shifted(&lambdas[gj]);
                    for _ in 0..sblocks[sj].len() {
                        v = tmat_vec(&y, &v);
                    }
                }
            }
            let y = shifted(&lambdas[gi]);
            for l in 0..sblocks[si].len() {
                let col = sblocks[si][l];
                for r in 0..d {
                    g[tb[r]][col] = v[r].clone();
                }
                v = tmat_vec(&y, &v);
            }
            for j in 0..m {
                for l in 0..sblocks[si].len() {
                    cmat[j][col_of(si, l)] = taylor_coeff(&tp[j][b], l, &lambdas[gi]);
                }
            }
        }
    }
    let phi_inv_t: TMat = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| TPoly::constant(phi_inv[(i, j)].clone()))
                .collect()
        })
        .collect();
    let ga = tmat_mul(&cmat, &phi_inv_t);
    let gc = tmat_transpose(&tmat_inverse(&g)?);
    Ok(DegenerationFamily {
        source: source_name.into(),
        target: target_name.into(),
        sigma: Perm::ID,
        ga,
        gb: g,
        gc,
        note: Some(format!("collision, merge {merge:?}")),
    })
}
