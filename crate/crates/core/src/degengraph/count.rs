//! Orbit counting: classes up to permutation of the factors, up to
//! isomorphism, and the induced count of matrix subspaces.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{entry_invariants, Catalog, CatalogEntry};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub m: usize,
    pub up_to_permutation: usize,
    pub up_to_isomorphism: usize,
    pub subspaces: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassContribution {
    pub name: String,
    pub generic_directions: usize,
    pub self_dual: Option<bool>,
    pub isomorphism_classes: usize,
    pub subspaces: usize,
}

fn contribution(e: &CatalogEntry) -> Result<ClassContribution> {
    let inv = entry_invariants(e, true)?;
    let g = inv.one_generic.iter().filter(|&&b| b).count();
    let mismatch = |what: &str, stored: String, got: String| {
        Error::Inconsistent(format!(
            "{}: stored {what} {stored}, recomputed {got}",
            e.name
        ))
    };
    if g != e.expect.generic_directions {
        return Err(mismatch(
            "generic directions",
            e.expect.generic_directions.to_string(),
            g.to_string(),
        ));
    }
    let self_dual = if g > 0 {
        let sd = inv
            .self_dual
            .ok_or_else(|| Error::Inconsistent(format!("{}: self-duality undecided", e.name)))?;
        if let Some(stored) = e.expect.self_dual {
            if stored != sd {
                return Err(mismatch("self-duality", stored.to_string(), sd.to_string()));
            }
        }
        Some(sd)
    } else {
        None
    };
    let isomorphism_classes = match (g, self_dual) {
        (3, _) => 1,
        (2, _) => 3,
        (1, Some(true)) => 3,
        (1, _) => 6,
        _ => e.expect.permutation_classes.ok_or_else(|| {
            Error::Inconsistent(format!("{}: no permutation class count", e.name))
        })?,
    };
    let subspaces = match self_dual {
        Some(true) => 1,
        Some(false) => 2,
        None => 0,
    };
    Ok(ClassContribution {
        name: e.name.clone(),
        generic_directions: g,
        self_dual,
        isomorphism_classes,
        subspaces,
    })
}

/// Per-class contributions at `m`, in catalog order.
pub fn class_contributions(cat: &Catalog, m: usize) -> Result<Vec<ClassContribution>> {
    let names = cat.mbr_names(m);
    names
        .par_iter()
        .map(|n| contribution(cat.get(n)?))
        .collect()
}

pub fn count_classes(cat: &Catalog, m: usize) -> Result<ClassCount> {
    let parts = class_contributions(cat, m)?;
    Ok(ClassCount {
        m,
        up_to_permutation: parts.len(),
        up_to_isomorphism: parts.iter().map(|c| c.isomorphism_classes).sum(),
        subspaces: parts.iter().map(|c| c.subspaces).sum(),
    })
}
