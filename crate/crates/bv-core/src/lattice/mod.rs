//! Free scalar field theory on a finite 1+1 lattice and its perturbative
//! deformation quantization.
//!
//! Site variables `phi[t,x]` are the field generators; `phi‡[t,x]` are their
//! antifields and a single global odd generator `c` (ghost number 1, no
//! antifield) is available as a constant ghost parameter. Partial
//! derivatives are with respect to site variables, so every functional
//! derivative sum carries its cell volume implicitly:
//! `Σ_p ∂F/∂φ_p K(p,q) ∂G/∂φ_q = ⟨F⁽¹⁾, K∗G⁽¹⁾⟩` with `F⁽¹⁾ = ∂F/∂φ / (a_t a_x)`.
//!
//! # Working precision
//!
//! `e^{iV/ħ}` has terms `λ^k ħ^{-k}`, so intermediate results are Laurent in
//! `ħ`. All operations here run in an algebra truncated at
//! [`Truncation::widened`] of the requested box `(K_ħ, K_λ)`. Every term that
//! occurs has `a + b ≥ 0` for `ħ^a λ^b`, and a product term at `(a, b)` only
//! uses input terms with `a_i + b_i ≤ a + b`. Hence results are exact on the
//! triangle `a + b ≤ K_ħ + K_λ, b ≤ K_λ`, which contains the requested box,
//! and chained operations stay exact there. [`LatticeAlgebra::report`]
//! projects onto the requested box; identities must be compared after it.

mod bv;
mod grid;
mod moller;
mod products;
mod propagator;

use std::sync::Arc;

use num_traits::Zero;

pub use bv::{QbvReport, QmeReport, TKoszulReport};
pub use grid::{Lattice, Rat};
pub use propagator::{green_retarded, propagators, PropagatorKind, PropagatorMatrix, Propagators};

use crate::error::LatticeError;
use crate::graded::{Algebra, Generator, Poly, Scalar, Site, Truncation};

/// A lattice together with its polynomial algebra and propagators.
#[derive(Clone, Debug)]
pub struct LatticeAlgebra {
    lattice: Lattice,
    props: Propagators,
    operator: Vec<Vec<Rat>>,
    alg: Arc<Algebra>,
    truncation: Truncation,
    causal: Vec<Vec<Scalar>>,
    dirac: Vec<Vec<Scalar>>,
}

impl LatticeAlgebra {
    pub fn new(lattice: Lattice, truncation: Truncation) -> Result<Self, LatticeError> {
        let n = lattice.sites();
        let mut gens: Vec<Generator> =
            (0..n).map(|p| Generator::field("phi", 0).at(lattice.site(p))).collect();
        gens.push(Generator::field("c", 1));
        let anti: Vec<Generator> = gens[..n].iter().map(Generator::antifield).collect();
        gens.extend(anti);
        let alg = Algebra::new(gens, truncation.widened())?;
        let props = propagators(&lattice);
        let to_scalar =
            |m: &PropagatorMatrix| m.entries.iter().map(|r| r.iter().cloned().map(Scalar::from).collect()).collect();
        let causal = to_scalar(&props.causal);
        let dirac = to_scalar(&props.dirac);
        let operator = lattice.operator();
        Ok(Self { lattice, props, operator, alg, truncation, causal, dirac })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn propagators(&self) -> &Propagators {
        &self.props
    }

    /// The requested truncation box.
    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    /// Projection of a working-precision result onto the requested box.
    pub fn report(&self, x: &Poly) -> Poly {
        x.project(self.truncation)
    }

    pub fn sites(&self) -> usize {
        self.lattice.sites()
    }

    /// Generator index of the field at site `p` (equal to `p`).
    pub fn field_index(&self, p: usize) -> usize {
        p
    }

    /// Generator index of the antifield at site `p`.
    pub fn antifield_index(&self, p: usize) -> usize {
        self.sites() + 1 + p
    }

    /// Index of the global ghost parameter `c`.
    pub fn ghost_index(&self) -> usize {
        self.sites()
    }

    /// Site of a field generator index, if it is one.
    pub(crate) fn site_of_field(&self, g: usize) -> Option<usize> {
        (g < self.sites()).then_some(g)
    }

    pub fn field(&self, t: usize, x: usize) -> Poly {
        Poly::var(&self.alg, self.lattice.index(t, x))
    }

    pub fn antifield(&self, t: usize, x: usize) -> Poly {
        Poly::var(&self.alg, self.antifield_index(self.lattice.index(t, x)))
    }

    pub fn ghost(&self) -> Poly {
        Poly::var(&self.alg, self.ghost_index())
    }

    fn check_shape(&self, f: &[Rat]) -> Result<(), LatticeError> {
        if f.len() == self.sites() {
            Ok(())
        } else {
            Err(LatticeError::ShapeMismatch { expected: self.sites(), got: f.len() })
        }
    }

    /// `Φ(f) = Σ_p a_t a_x f(p) φ_p`.
    pub fn smeared(&self, f: &[Rat]) -> Result<Poly, LatticeError> {
        self.check_shape(f)?;
        let v = self.lattice.volume();
        let mut out = Poly::zero(&self.alg);
        for (p, fp) in f.iter().enumerate() {
            if !fp.is_zero() {
                out.add_assign_scaled(&Poly::var(&self.alg, p), &Scalar::from(fp * &v));
            }
        }
        Ok(out)
    }

    /// `⟨f, g⟩ = Σ_p a_t a_x f(p) g(p)`.
    pub fn pairing(&self, f: &[Rat], g: &[Rat]) -> Result<Rat, LatticeError> {
        self.check_shape(f)?;
        self.check_shape(g)?;
        let v = self.lattice.volume();
        Ok(f.iter().zip(g).map(|(a, b)| a * b).sum::<Rat>() * v)
    }

    /// `⟨f, K∗g⟩` for one of the propagators.
    pub fn propagator_pairing(&self, kind: PropagatorKind, f: &[Rat], g: &[Rat]) -> Result<Rat, LatticeError> {
        self.check_shape(g)?;
        self.pairing(f, &self.props.get(kind).apply(g))
    }

    /// `(Pφ)_p` as a linear functional.
    pub fn operator_on_field(&self, p: usize) -> Poly {
        let mut out = Poly::zero(&self.alg);
        for (q, w) in self.operator[p].iter().enumerate() {
            if !w.is_zero() {
                out.add_assign_scaled(&Poly::var(&self.alg, q), &Scalar::from(w.clone()));
            }
        }
        out
    }

    /// `S = ½ a_t a_x Σ_{p,q} φ_p P(p,q) φ_q`, so that `∂S/∂φ_p = a_t a_x (Pφ)_p`.
    pub fn free_action(&self) -> Poly {
        let half_v = Scalar::from(self.lattice.volume() / Rat::from_integer(2.into()));
        let mut out = Poly::zero(&self.alg);
        for p in 0..self.sites() {
            out = &out + &(&Poly::var(&self.alg, p) * &self.operator_on_field(p)).scale(&half_v);
        }
        out
    }

    /// `λ · g/4! · a_t a_x Σ_p φ_p⁴`.
    pub fn quartic(&self, coupling: &Scalar) -> Poly {
        let w = &Scalar::from(self.lattice.volume()) * &(coupling * &Scalar::ratio(1, 24));
        let mut out = Poly::zero(&self.alg);
        for p in 0..self.sites() {
            out.add_assign_scaled(&Poly::var(&self.alg, p).pow(4), &w);
        }
        out.shift(0, 1)
    }

    /// The vector field `θ = a_t a_x [(Pφ)_b φ‡_a − (Pφ)_a φ‡_b]`: the flow of
    /// the antisymmetric matrix `e_a e_bᵀ − e_b e_aᵀ` composed with `P`. It is
    /// an exact symmetry of the free action with vanishing divergence.
    pub fn theta(&self, a: usize, b: usize) -> Poly {
        let v = Scalar::from(self.lattice.volume());
        let anti = |p| Poly::var(&self.alg, self.antifield_index(p));
        let t = &(&self.operator_on_field(b) * &anti(a)) - &(&self.operator_on_field(a) * &anti(b));
        t.scale(&v)
    }

    /// `λ c θ`: the even ghost-number-zero coupling of the symmetry `θ`
    /// through the constant ghost `c`.
    pub fn ghost_theta(&self, a: usize, b: usize) -> Poly {
        (&self.ghost() * &self.theta(a, b)).shift(0, 1)
    }

    /// A functional is regular when its antifields sit on interior time
    /// slices `1..=Nt−2`, where `Δ^R` and `Δ^A` invert `P` from both sides.
    pub fn is_regular(&self, x: &Poly) -> bool {
        let n = self.sites();
        x.support().into_iter().filter(|&g| g > n).all(|g| {
            let t = self.lattice.site(g - n - 1).t;
            t >= 1 && t + 2 <= self.lattice.nt
        })
    }

    /// Sites on the interior time slices.
    pub fn interior_sites(&self) -> Vec<usize> {
        (0..self.sites()).filter(|&p| {
            let Site { t, .. } = self.lattice.site(p);
            t >= 1 && t + 2 <= self.lattice.nt
        }).collect()
    }

    /// Sites whose field or antifield occurs in `x`.
    pub fn support(&self, x: &Poly) -> Vec<usize> {
        let n = self.sites();
        let mut s: Vec<usize> = x
            .support()
            .into_iter()
            .filter_map(|g| if g < n { Some(g) } else if g > n { Some(g - n - 1) } else { None })
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat() -> LatticeAlgebra {
        LatticeAlgebra::new(Lattice::unit(4, 3, 1).unwrap(), Truncation::default()).unwrap()
    }

    #[test]
    fn generator_layout() {
        let l = lat();
        assert_eq!(l.algebra().len(), 2 * 12 + 1);
        assert_eq!(l.field(1, 2).to_string(), "phi[1,2]");
        assert_eq!(l.antifield(1, 2).to_string(), "phi‡[1,2]");
        assert_eq!(l.ghost().to_string(), "c");
        assert_eq!(l.algebra().truncation(), Truncation::new(4, 2));
    }

    #[test]
    fn free_action_gradient() {
        let l = lat();
        let s = l.free_action();
        for p in 0..l.sites() {
            assert_eq!(s.derivative(p), l.operator_on_field(p));
        }
    }

    #[test]
    fn smeared_shape() {
        let l = lat();
        assert!(matches!(l.smeared(&[Rat::zero()]), Err(LatticeError::ShapeMismatch { .. })));
    }

    #[test]
    fn regularity() {
        let l = lat();
        assert!(l.is_regular(&l.antifield(1, 0)));
        assert!(l.is_regular(&l.field(0, 0)));
        assert!(!l.is_regular(&l.antifield(0, 0)));
        assert!(!l.is_regular(&l.antifield(3, 0)));
        assert_eq!(l.interior_sites().len(), 6);
    }
}
