use serde::Serialize;

use super::{
    end_and_hom, equivalent_to_dual, local_invariants, module_flags, multiplication_tensor,
    support_decomposition,
};
use super::{FiniteModule, LocalInvariants};
use crate::error::Result;
use crate::tensor::{genericity_pattern, stabilizer_dimension, GenericityPattern};

pub type PieceInvariants = LocalInvariants;

/// Invariants of a concise module; unequal fingerprints certify non-equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub m: usize,
    pub genericity: GenericityPattern,
    pub stabilizer_dim: usize,
    pub support_size: usize,
    pub degrees: Vec<usize>,
    pub pieces: Vec<PieceInvariants>,
    pub end_dim: usize,
    pub end_closed: bool,
    /// `None` when self-duality was not requested or could not be decided.
    pub self_dual: Option<bool>,
}

impl Fingerprint {
    /// The fingerprint with the self-duality entry dropped.
    pub fn core(&self) -> Fingerprint {
        Fingerprint {
            self_dual: None,
            ..self.clone()
        }
    }
}

/// Fingerprint without the (comparatively expensive) self-duality decision.
pub fn fingerprint_core(module: &FiniteModule) -> Result<Fingerprint> {
    let t = multiplication_tensor(module)?;
    let sd = support_decomposition(module)?;
    let mut pieces = sd
        .pieces
        .iter()
        .map(|p| local_invariants(&p.local))
        .collect::<Result<Vec<_>>>()?;
    pieces.sort();
    Ok(Fingerprint {
        m: module.dim(),
        genericity: genericity_pattern(&t)?,
        stabilizer_dim: stabilizer_dimension(&t),
        support_size: sd.pieces.len(),
        degrees: sd.degrees(),
        pieces,
        end_dim: end_and_hom(module, module)?.len(),
        end_closed: module_flags(module).1,
        self_dual: None,
    })
}

/// Full fingerprint, including the self-duality decision (seed 0).
pub fn fingerprint(module: &FiniteModule) -> Result<Fingerprint> {
    let mut f = fingerprint_core(module)?;
    f.self_dual = equivalent_to_dual(module, 0)?.as_bool();
    Ok(f)
}
