//! Gauge fixing by the canonical transformation generated by a gauge fermion,
//! and the expansion of the transformed action by total antifield number.

use std::collections::BTreeMap;

use super::bracket::antibracket;
use super::differential::extended_action;
use super::model::{check_gauge_fermion, Model};
use crate::error::BvError;
use crate::graded::{Poly, Scalar};

/// `α_ψ(X) = Σ_n (1/n!) ad_ψ^n X` with `ad_ψ X = {ψ, X}`.
///
/// Each bracket with the antifield-free `ψ` removes one antifield, so the
/// series stops after at most `#ta(X)` steps.
pub fn alpha_psi(psi: &Poly, x: &Poly) -> Result<Poly, BvError> {
    check_gauge_fermion(psi)?;
    let mut out = x.clone();
    let mut term = x.clone();
    let mut n = 1i64;
    loop {
        term = antibracket(psi, &term);
        if term.is_zero() {
            return Ok(out);
        }
        term = term.scale(&Scalar::ratio(1, n));
        out = &out + &term;
        n += 1;
    }
}

/// Applies the model's gauge fermion; the identity when none is declared.
pub fn gauge_fix(model: &Model, x: &Poly) -> Result<Poly, BvError> {
    match &model.gauge_fermion {
        Some(psi) => alpha_psi(psi, x),
        None => Ok(x.clone()),
    }
}

/// The gauge-fixed action `α_ψ(S^ext)`.
pub fn gauge_fixed_extended_action(model: &Model) -> Result<Poly, BvError> {
    gauge_fix(model, &extended_action(model))
}

/// Pieces of a gauge-fixed action split by total antifield number.
#[derive(Clone, Debug)]
pub struct TaExpansion {
    /// The part without antifields.
    pub gauge_fixed_action: Poly,
    /// `γ^g g` for every field-type generator `g` that has an antifield.
    pub brst_table: BTreeMap<usize, Poly>,
}

/// Expands `s̃ = {·, S̃}` by `#ta`. On a field-type generator only the
/// `#ta = 1` part of `S̃` contributes at `#ta = 0`; that image is the gauge
/// fixed BRST transformation.
pub fn expand_by_ta(model: &Model, transformed: &Poly) -> TaExpansion {
    let alg = &model.algebra;
    let gauge_fixed_action = transformed.filter_grading(|g| g.total_antifield == 0);
    let brst_table = alg
        .pairs()
        .into_iter()
        .map(|(field, _)| {
            let image = antibracket(&Poly::var(alg, field), transformed);
            (field, image.filter_grading(|g| g.total_antifield == 0))
        })
        .collect();
    TaExpansion { gauge_fixed_action, brst_table }
}
