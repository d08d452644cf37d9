//! Antibrackets built on the deformed products, the quantum Koszul operator,
//! the quantum master equation and the quantum BV operator.

use super::LatticeAlgebra;
use crate::classical::{antibracket, laplacian};
use crate::error::LatticeError;
use crate::graded::{Poly, Scalar};

/// The three expressions that coincide for a quadratic action and a regular
/// functional.
#[derive(Clone, Debug, PartialEq)]
pub struct TKoszulReport {
    /// `{X,S}_𝒯`.
    pub t_bracket: Poly,
    /// `δ_S X + iħΔX`.
    pub koszul: Poly,
    /// `{X,S}_⋆ + iħΔX`.
    pub star_form: Poly,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QmeReport {
    /// `½{S+V,S+V}_𝒯 − iħΔ(S+V)` vanishes.
    pub holds: bool,
    /// `{e_𝒯^{iV/ħ}, S}_⋆` vanishes.
    pub holds_exp: bool,
    pub residual: Poly,
    pub exp_residual: Poly,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QbvReport {
    /// `{X,S+V}_𝒯 − iħΔX`.
    pub explicit: Poly,
    /// `e_𝒯^{−iV/ħ} ·_𝒯 {e_𝒯^{iV/ħ} ·_𝒯 X, S}_⋆`.
    pub exponential: Poly,
    pub qme_holds: bool,
    pub agree: bool,
    /// Set when the master equation fails; `explicit` is then the value to use.
    pub warning: bool,
}

impl LatticeAlgebra {
    /// `−Σ_p (∂_pX ⊙ ∂_{p‡}Y + (−1)^{|X|} ∂_{p‡}X ⊙ ∂_pY)` for a product `⊙`.
    fn bracket_with(&self, x: &Poly, y: &Poly, prod: impl Fn(&Poly, &Poly) -> Poly) -> Poly {
        let mut out = Poly::zero(&self.alg);
        let (even, odd) = x.parity_split();
        for (part, odd_x) in [(even, false), (odd, true)] {
            if part.is_zero() {
                continue;
            }
            for p in 0..self.sites() {
                let a = self.antifield_index(p);
                let first = prod(&part.derivative(p), &y.derivative(a));
                let second = prod(&part.derivative(a), &y.derivative(p));
                out = &out - &first;
                out = if odd_x { &out + &second } else { &out - &second };
            }
        }
        out
    }

    /// Antibracket with the time-ordered product, `{X,Y}_𝒯`.
    pub fn t_bracket(&self, x: &Poly, y: &Poly) -> Poly {
        self.bracket_with(x, y, |a, b| self.tprod(a, b))
    }

    /// Antibracket with the ⋆-product, `{X,Y}_⋆`.
    pub fn star_bracket(&self, x: &Poly, y: &Poly) -> Poly {
        self.bracket_with(x, y, |a, b| self.star(a, b))
    }

    /// `iħΔX`.
    fn i_hbar_laplacian(&self, x: &Poly) -> Poly {
        laplacian(x).shift(1, 0).scale(&Scalar::i())
    }

    /// The quantum Koszul operator `{X,S}_𝒯` together with the two closed
    /// forms it must equal when `S` is quadratic and `X` regular.
    pub fn tkoszul(&self, action: &Poly, x: &Poly) -> Result<TKoszulReport, LatticeError> {
        let quadratic = action.terms().all(|(t, _)| {
            t.hbar == 0 && t.lambda == 0 && t.mono.degree() == 2 && t.mono.factors().all(|(g, _)| g < self.sites())
        });
        if !quadratic {
            return Err(LatticeError::NotQuadratic);
        }
        let t_bracket = self.t_bracket(x, action);
        let koszul = &antibracket(x, action) + &self.i_hbar_laplacian(x);
        let star_form = &self.star_bracket(x, action) + &self.i_hbar_laplacian(x);
        let agree = self.report(&t_bracket) == self.report(&koszul) && self.report(&koszul) == self.report(&star_form);
        Ok(TKoszulReport {
            t_bracket: self.report(&t_bracket),
            koszul: self.report(&koszul),
            star_form: self.report(&star_form),
            agree,
        })
    }

    /// Checks the quantum master equation of `S + V` in its bracket form and
    /// in its S-matrix form.
    pub fn check_qme(&self, action: &Poly, v: &Poly) -> Result<QmeReport, LatticeError> {
        let total = action + v;
        let half = self.t_bracket(&total, &total).scale(&Scalar::ratio(1, 2));
        let residual = self.report(&(&half - &self.i_hbar_laplacian(&total)));
        let e = self.exp_t(v, false)?;
        let exp_residual = self.report(&self.star_bracket(&e, action));
        let holds = residual.is_zero();
        let holds_exp = exp_residual.is_zero();
        Ok(QmeReport { holds, holds_exp, residual, exp_residual, agree: holds == holds_exp })
    }

    /// Working-precision `ŝX = {X,S+V}_𝒯 − iħΔX`.
    pub(crate) fn s_hat(&self, action: &Poly, v: &Poly, x: &Poly) -> Poly {
        &self.t_bracket(x, &(action + v)) - &self.i_hbar_laplacian(x)
    }

    /// The quantum BV operator in explicit and exponential form.
    pub fn quantum_bv(&self, action: &Poly, v: &Poly, x: &Poly) -> Result<QbvReport, LatticeError> {
        let qme_holds = self.check_qme(action, v)?.holds;
        let explicit = self.report(&self.s_hat(action, v, x));
        let e = self.exp_t(v, false)?;
        let e_inv = self.exp_t(v, true)?;
        let inner = self.star_bracket(&self.tprod(&e, x), action);
        let exponential = self.report(&self.tprod(&e_inv, &inner));
        let agree = explicit == exponential;
        Ok(QbvReport { explicit, exponential, qme_holds, agree, warning: !qme_holds })
    }

    /// `ŝ(ŝX)`, projected.
    pub fn s_hat_squared(&self, action: &Poly, v: &Poly, x: &Poly) -> Poly {
        let once = self.s_hat(action, v, x);
        self.report(&self.s_hat(action, v, &once))
    }
}
