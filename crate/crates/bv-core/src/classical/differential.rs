//! Koszul, Chevalley–Eilenberg and full BV differentials, the extended action
//! and the classical master equation.

use super::bracket::antibracket;
use super::model::Model;
use crate::graded::{Poly, Scalar};

/// `S^ext = S + Σ C^a ρ_a^i φ‡_i + ½ f^c_{ab} C^a C^b C‡_c − i Σ B C̄‡`.
///
/// The sign of the nonminimal term is fixed by `s C̄ = iB`.
pub fn extended_action(model: &Model) -> Poly {
    let alg = &model.algebra;
    let mut ext = model.action.clone();
    for sym in &model.symmetries {
        let ghost = Poly::var(alg, sym.ghost);
        for (&field, rho) in &sym.rho {
            let anti = Poly::var(alg, alg.partner(field).expect("validated"));
            ext = &ext + &(&(&ghost * rho) * &anti);
        }
    }
    let n = model.symmetries.len();
    let half = Scalar::ratio(1, 2);
    for c in 0..n {
        let ghost_anti = Poly::var(alg, alg.partner(model.symmetries[c].ghost).expect("validated"));
        for a in 0..n {
            for b in 0..n {
                let f = model.structure.get(c, a, b);
                if f.is_zero() {
                    continue;
                }
                let term = &(&Poly::var(alg, model.symmetries[a].ghost) * &Poly::var(alg, model.symmetries[b].ghost))
                    * &ghost_anti;
                ext.add_assign_scaled(&term, &(f * &half));
            }
        }
    }
    for pair in &model.nonminimal {
        let cbar_anti = Poly::var(alg, alg.partner(pair.antighost).expect("validated"));
        let term = &Poly::var(alg, pair.multiplier) * &cbar_anti;
        ext.add_assign_scaled(&term, &-Scalar::i());
    }
    ext
}

/// Koszul map `δ_S X = {X, S}` with the unextended action.
pub fn koszul(model: &Model, x: &Poly) -> Poly {
    antibracket(x, &model.action)
}

/// BV differential `s X = {X, S^ext}`.
pub fn bv_differential(model: &Model, x: &Poly) -> Poly {
    antibracket(x, &extended_action(model))
}

/// Splits `s X` into `(δX, γX)`: the part lowering the antifield number by
/// one and the part preserving it. Each antifield-homogeneous component of
/// `X` is treated separately, so the split is exact on inhomogeneous input.
pub fn split_differential(model: &Model, x: &Poly) -> (Poly, Poly) {
    split_with(&extended_action(model), x)
}

pub(crate) fn split_with(ext: &Poly, x: &Poly) -> (Poly, Poly) {
    let alg = x.algebra();
    let mut delta = Poly::zero(alg);
    let mut gamma = Poly::zero(alg);
    let mut levels: Vec<i64> = x.gradings().iter().map(|g| g.antifield).collect();
    levels.dedup();
    for af in levels {
        let part = x.filter_grading(|g| g.antifield == af);
        let image = antibracket(&part, ext);
        delta = &delta + &image.filter_grading(|g| g.antifield == af - 1);
        gamma = &gamma + &image.filter_grading(|g| g.antifield == af);
    }
    (delta, gamma)
}

/// Chevalley–Eilenberg differential `γ`: the antifield-number preserving part
/// of `s`. On fields and ghosts it is `γφ^i = C^a ρ_a^i`,
/// `γC^c = −½ f^c_{ab} C^a C^b`, extended as a graded derivation.
pub fn ce_differential(model: &Model, x: &Poly) -> Poly {
    split_differential(model, x).1
}

/// Koszul–Tate part `δ` of `s` (on antifield-free input of the minimal
/// sector this vanishes; on `φ‡` it is the equation of motion).
pub fn koszul_tate(model: &Model, x: &Poly) -> Poly {
    split_differential(model, x).0
}

/// Result of the classical master equation check.
#[derive(Clone, Debug)]
pub struct CmeReport {
    pub holds: bool,
    pub residual: Poly,
}

/// `{S^ext, S^ext} = 0`, exactly.
pub fn check_cme(model: &Model) -> CmeReport {
    let ext = extended_action(model);
    let residual = antibracket(&ext, &ext);
    CmeReport { holds: residual.is_zero(), residual }
}
