use std::collections::HashMap;

use num_traits::Zero;

use super::FiniteModule;
use crate::error::{Error, Result};
use crate::exact::{QMat, Subspace, Q};

/// Associated graded module `S^{⊕r} / in(K)` with its Hilbert function.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub module: FiniteModule,
    pub hilbert: Vec<usize>,
    /// Degree of each basis vector of `module`.
    pub degrees: Vec<usize>,
}

/// Exponent vectors of total degree `d` in `n` variables, `x_1` largest first.
fn monomials(n: usize, d: usize) -> Vec<Vec<u16>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - a) {
            rest.insert(0, a as u16);
            out.push(rest);
        }
    }
    out
}

/// Computes `in(K)` degree by degree for the kernel `K` of
/// `S^{⊕r} → M, e_j ↦ generators[j]`, and returns `gr(M)`.
pub fn initial_module(generators: &[Vec<Q>], module: &FiniteModule) -> Result<GradedModule> {
    let (m, n, r) = (module.dim(), module.nvars(), generators.len());
    for (i, x) in module.actions().iter().enumerate() {
        if !x.pow(m.max(1) as u32).is_zero() {
            return Err(Error::NotLocal(format!("x{} is not nilpotent", i + 1)));
        }
    }
    if generators.iter().any(|g| g.len() != m) {
        return Err(Error::ShapeMismatch(
            "generator length differs from module degree".into(),
        ));
    }
    // D = least power with m^D M = 0
    let mut big_d = 0;
    let mut cur = module.whole();
    while cur.dim() > 0 {
        cur = module.max_ideal_times(&cur);
        big_d += 1;
    }
    let by_degree: Vec<Vec<Vec<u16>>> = (0..=big_d).map(|d| monomials(n, d)).collect();
    // coordinates of F_{<= d}: (degree, monomial index, generator)
    let mut images: Vec<Vec<Vec<Q>>> = Vec::new(); // images[d][k*r + j]
    for mons in &by_degree {
        let mut v = Vec::new();
        for e in mons {
            for g in generators {
                v.push(module.apply_monomial(e, g));
            }
        }
        images.push(v);
    }
    let all: Vec<Vec<Q>> = images.iter().flatten().cloned().collect();
    if Subspace::span(m, &all).dim() != m {
        return Err(Error::NotSurjective);
    }
    // in(K)_d for d < D; for d >= D it is everything
    let mut initial: Vec<Subspace> = Vec::new();
    for d in 0..big_d {
        let cols: Vec<Vec<Q>> = images[..=d].iter().flatten().cloned().collect();
        let offset: usize = images[..d].iter().map(|v| v.len()).sum();
        let width = images[d].len();
        let phi = QMat::from_columns(&cols, m);
        let tops: Vec<Vec<Q>> = phi
            .kernel()
            .into_iter()
            .map(|k| k[offset..offset + width].to_vec())
            .collect();
        initial.push(Subspace::span(width, &tops));
    }
    // standard (non-pivot) coordinates give a basis of gr_d
    let mut std_coords: Vec<Vec<usize>> = Vec::new();
    for (d, ink) in initial.iter().enumerate() {
        let width = images[d].len();
        std_coords.push((0..width).filter(|c| !ink.pivots().contains(c)).collect());
    }
    let hilbert: Vec<usize> = std_coords.iter().map(|s| s.len()).collect();
    let total: usize = hilbert.iter().sum();
    let mut offsets = vec![0usize; big_d + 1];
    for d in 0..big_d {
        offsets[d + 1] = offsets[d] + hilbert[d];
    }
    let index: Vec<HashMap<Vec<u16>, usize>> = by_degree
        .iter()
        .map(|mons| {
            mons.iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i))
                .collect()
        })
        .collect();
    let mut actions = vec![QMat::zeros(total, total); n];
    for (i, act) in actions.iter_mut().enumerate() {
        for d in 0..big_d.saturating_sub(1) {
            let width_next = images[d + 1].len();
            for (col, &c) in std_coords[d].iter().enumerate() {
                let (k, j) = (c / r, c % r);
                let mut e = by_degree[d][k].clone();
                e[i] += 1;
                let mut v = vec![Q::zero(); width_next];
                v[index[d + 1][&e] * r + j] = Q::from_integer(1.into());
                let red = initial[d + 1].reduce(&v);
                for (row, &s) in std_coords[d + 1].iter().enumerate() {
                    if !red[s].is_zero() {
                        act[(offsets[d + 1] + row, offsets[d] + col)] = red[s].clone();
                    }
                }
            }
        }
    }
    let degrees = (0..big_d)
        .flat_map(|d| std::iter::repeat(d).take(hilbert[d]))
        .collect();
    let mut hilbert = hilbert;
    while hilbert.last() == Some(&0) {
        hilbert.pop();
    }
    Ok(GradedModule {
        module: FiniteModule::new(total, actions)?,
        hilbert,
        degrees,
    })
}
