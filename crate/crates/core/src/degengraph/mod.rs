//! Degeneration families, their verification, obstruction certificates and
//! the Hasse diagram of minimal degenerations.

pub mod family;

pub use family::{
    verify_family, verify_family_tensors, DegenerationFamily, FamilyFailure, FamilyReport,
};
pub mod certify;
pub mod collision;
pub mod count;
pub mod diagram;
pub mod dinv;
pub mod torus;

pub use certify::{certify_as, certify_non_edge, NonEdgeCertificate, ObstructionKind};
pub use count::{count_classes, ClassCount};
pub use diagram::{check_diagram, to_dot, DiagramReport};

#[cfg(test)]
mod tests;
