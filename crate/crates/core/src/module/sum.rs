use super::{module_flags, FiniteModule};
use crate::error::{Error, Result};
use crate::exact::{QMat, Q};

/// Block-diagonal sum with each piece keeping its own variables and
/// additional variables acting by zero on the other pieces.
pub fn direct_sum(pieces: &[FiniteModule]) -> Result<FiniteModule> {
    let n = pieces.iter().map(|p| p.nvars()).max().unwrap_or(0);
    let actions = (0..n)
        .map(|i| {
            let blocks: Vec<QMat> = pieces
                .iter()
                .map(|p| {
                    if i < p.nvars() {
                        p.action(i).clone()
                    } else {
                        QMat::zeros(p.dim(), p.dim())
                    }
                })
                .collect();
            QMat::block_diag(&blocks)
        })
        .collect();
    FiniteModule::new(pieces.iter().map(|p| p.dim()).sum(), actions)
}

/// Concise module from local pieces supported at the origin. The first piece
/// takes the lowest variables; every later piece takes its own nilpotent
/// variables next and then one variable acting as the identity on it, so it
/// sits at the corresponding coordinate point. Returns the module and the
/// support point of each piece.
pub fn direct_sum_concise(pieces: &[FiniteModule]) -> Result<(FiniteModule, Vec<Vec<Q>>)> {
    let m: usize = pieces.iter().map(|p| p.dim()).sum();
    if pieces.is_empty() {
        return Err(Error::NotConcise("no pieces".into()));
    }
    for (k, p) in pieces.iter().enumerate() {
        if !module_flags(p).0 {
            return Err(Error::NotConcise(format!(
                "piece {} (degree {}, {} variables) is not concise on its own",
                k + 1,
                p.dim(),
                p.nvars()
            )));
        }
        if p.actions().iter().any(|x| !x.pow(p.dim() as u32).is_zero()) {
            return Err(Error::NotLocal(format!(
                "piece {} is not supported at the origin",
                k + 1
            )));
        }
    }
    let n = m - 1;
    let mut actions: Vec<QMat> = Vec::with_capacity(n);
    let mut points = vec![vec![Q::default(); n]; pieces.len()];
    let mut offsets = vec![0usize];
    for p in pieces {
        offsets.push(offsets.last().unwrap() + p.dim());
    }
    let embed = |k: usize, x: &QMat| {
        let mut out = QMat::zeros(m, m);
        for i in 0..x.rows() {
            for j in 0..x.cols() {
                out[(offsets[k] + i, offsets[k] + j)] = x[(i, j)].clone();
            }
        }
        out
    };
    for (k, p) in pieces.iter().enumerate() {
        for x in p.actions() {
            actions.push(embed(k, x));
        }
        if k > 0 {
            points[k][actions.len()] = Q::from_integer(1.into());
            actions.push(embed(k, &QMat::identity(p.dim())));
        }
    }
    if actions.len() != n {
        return Err(Error::NotConcise(format!(
            "{} variables for degree {m}",
            actions.len()
        )));
    }
    let module = FiniteModule::new(m, actions)?;
    if !module_flags(&module).0 {
        return Err(Error::NotConcise("block sum is not concise".into()));
    }
    Ok((module, points))
}
