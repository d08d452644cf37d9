//! Classical BV calculus.

mod bracket;
mod differential;
mod gauge;
mod model;
mod symmetry;

pub use bracket::{antibracket, laplacian};
pub(crate) use differential::split_with;
pub use differential::{
    bv_differential, ce_differential, check_cme, extended_action, koszul, koszul_tate, split_differential, CmeReport,
};
pub use gauge::{alpha_psi, expand_by_ta, gauge_fix, gauge_fixed_extended_action, TaExpansion};
pub use model::{LieStructure, Model, NonminimalPair, SymmetryGenerator};
pub use symmetry::{is_symmetry, SymmetryReport, Triviality};
