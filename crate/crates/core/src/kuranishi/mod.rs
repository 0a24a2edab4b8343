//! Schouten brackets, the Kuranishi recursion, obstruction polynomials and
//! the deformed complex structures they define.

mod bracket;
mod deform;
mod series;

pub use bracket::{schouten, schouten_with_coform, schouten_with_coframe};
pub use deform::{
    classify_deformation, classify_structure, deform_structure, graded_center,
    infinitesimal_abelian_locus, structure_from_phi, AbelianLocus, DeformationClass,
    DeformedStructure, GradedCenter,
};
pub use series::{
    kuranishi_series, kuranishi_series_along, mc_residual, obstructions, DeformationSeries,
    McResidual, ObstructionSet,
};

/// Truncation order used when none is given.
pub const DEFAULT_ORDER: u32 = 6;
