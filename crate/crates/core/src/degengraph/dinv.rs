//! Dimension of the locus of slice combinations of rank at most `r`,
//! estimated from exact point counts over several prime fields.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::fp::{rank_small, reduce_q};
use crate::tensor::{Dir, Tensor3};

pub const DINV_PRIMES: [u64; 5] = [5, 7, 11, 13, 17];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DInvariantReport {
    pub direction: Dir,
    pub r: usize,
    /// `(p, N_p)` for the good primes.
    pub counts: Vec<(u64, u64)>,
    pub skipped_primes: Vec<u64>,
    pub dimension: usize,
    pub slope: f64,
    pub residual: f64,
}

/// `hist[k]` = number of projective points `[α]` with `rank(Σ α_i S_i) = k`.
fn rank_histogram(t: &Tensor3, dir: Dir, p: u64) -> Result<Vec<u64>> {
    let m = t.m();
    let slices: Vec<Vec<u64>> = t
        .slices(dir)
        .iter()
        .map(|s| {
            s.data()
                .iter()
                .map(|x| reduce_q(x, p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // projective representatives: first nonzero coordinate is 1
    let lead: Vec<usize> = (0..m).collect();
    let hists: Vec<Vec<u64>> = lead
        .par_iter()
        .map(|&l| {
            let mut hist = vec![0u64; m + 1];
            let rest = m - l - 1;
            let total = p.pow(rest as u32);
            let mut buf = vec![0u64; m * m];
            let mut alpha = vec![0u64; m];
            alpha[l] = 1;
            for idx in 0..total {
                let mut x = idx;
                for a in alpha.iter_mut().skip(l + 1) {
                    *a = x % p;
                    x /= p;
                }
                buf.iter_mut().for_each(|b| *b = 0);
                for (i, &a) in alpha.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (b, &s) in buf.iter_mut().zip(&slices[i]) {
                        *b = (*b + a * s) % p;
                    }
                }
                hist[rank_small(&mut buf, m, p)] += 1;
            }
            hist
        })
        .collect();
    let mut out = vec![0u64; m + 1];
    for h in hists {
        for (o, v) in out.iter_mut().zip(h) {
            *o += v;
        }
    }
    Ok(out)
}

type CacheKey = (Vec<(usize, usize, usize, String)>, usize, u64);

fn cache() -> &'static Mutex<HashMap<CacheKey, Vec<u64>>> {
    static C: std::sync::OnceLock<Mutex<HashMap<CacheKey, Vec<u64>>>> = std::sync::OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_histogram(t: &Tensor3, dir: Dir, p: u64) -> Result<Vec<u64>> {
    let key: CacheKey = (
        t.terms()
            .into_iter()
            .map(|(a, b, c, v)| (a, b, c, v.to_string()))
            .collect(),
        dir.index(),
        p,
    );
    if let Some(h) = cache().lock().unwrap().get(&key) {
        return Ok(h.clone());
    }
    let h = rank_histogram(t, dir, p)?;
    cache().lock().unwrap().insert(key, h.clone());
    Ok(h)
}

/// Affine counts `N_p = #{α ∈ F_p^m : rank(Σ α_i S_i) <= r}` for every `r`,
/// keyed by prime; primes dividing a denominator are skipped.
pub fn rank_counts(t: &Tensor3, dir: Dir) -> (Vec<(u64, Vec<u64>)>, Vec<u64>) {
    let mut good = Vec::new();
    let mut bad = Vec::new();
    for p in DINV_PRIMES {
        match cached_histogram(t, dir, p) {
            Ok(h) => {
                let mut cum = Vec::with_capacity(h.len());
                let mut acc = 0u64;
                for v in &h {
                    acc += v;
                    cum.push(1 + (p - 1) * acc);
                }
                good.push((p, cum));
            }
            Err(_) => bad.push(p),
        }
    }
    (good, bad)
}

fn fit(counts: &[(u64, u64)]) -> (f64, f64) {
    let xs: Vec<f64> = counts.iter().map(|(p, _)| (*p as f64).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|(_, n)| (*n as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, (slope - slope.round()).abs())
}

/// Fitted affine dimension of the rank-`<= r` locus in direction `dir`.
pub fn d_invariant(t: &Tensor3, dir: Dir, r: usize) -> Result<DInvariantReport> {
    if r > t.m() {
        return Err(Error::DimensionMismatch(format!(
            "rank bound {r} exceeds m = {}",
            t.m()
        )));
    }
    let (good, bad) = rank_counts(t, dir);
    if good.len() < 3 {
        return Err(Error::BadPrime { p: bad[0] });
    }
    let counts: Vec<(u64, u64)> = good.iter().map(|(p, c)| (*p, c[r])).collect();
    let (slope, residual) = fit(&counts);
    if residual >= 0.2 {
        return Err(Error::UnstableFit { residual });
    }
    Ok(DInvariantReport {
        direction: dir,
        r,
        counts,
        skipped_primes: bad,
        dimension: slope.round().max(0.0) as usize,
        slope,
        residual,
    })
}

/// `[d_A, d_B, d_C]` at rank bound `r`.
pub fn d_invariants(t: &Tensor3, r: usize) -> Result<[usize; 3]> {
    let mut out = [0; 3];
    for d in Dir::ALL {
        out[d.index()] = d_invariant(t, d, r)?.dimension;
    }
    Ok(out)
}
