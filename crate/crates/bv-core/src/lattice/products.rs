//! Peierls bracket, ⋆-product, time ordering and the objects built from
//! them: S-matrix, Bogoliubov formula, intertwining map and interacting ⋆.
//!
//! Both deformations are exponentials of constant bidifferential operators
//! in the field variables. Applied to a pair of monomials they expand into a
//! sum over partial matchings between field factors (Wick's theorem), each
//! matched pair `(p, q)` contributing `c · K(p, q) · ħ`; antifields and the
//! ghost parameter are spectators.

use super::LatticeAlgebra;
use crate::error::LatticeError;
use crate::graded::{Monomial, Poly, Scalar, Term};

/// Which kernel a contraction uses.
#[derive(Clone, Copy)]
pub(crate) enum Kernel {
    Causal,
    Dirac,
}

impl LatticeAlgebra {
    fn kernel(&self, k: Kernel) -> &[Vec<Scalar>] {
        match k {
            Kernel::Causal => &self.causal,
            Kernel::Dirac => &self.dirac,
        }
    }

    /// Field factors of a monomial as a list of sites, one entry per power.
    fn instances(&self, m: &Monomial) -> Vec<usize> {
        m.factors()
            .filter_map(|(g, e)| self.site_of_field(g).map(|p| std::iter::repeat(p).take(e as usize)))
            .flatten()
            .collect()
    }

    /// `m` with the listed field sites removed once each.
    fn remove(&self, m: &Monomial, removed: &[usize]) -> Monomial {
        Monomial::from_sorted(m.factors().map(|(g, e)| {
            let k = removed.iter().filter(|&&p| p == g && self.site_of_field(g).is_some()).count() as u32;
            (g, e - k)
        }))
    }

    /// `m ∘ exp(c ħ Σ K(p,q) ∂_p ⊗ ∂_q)(x ⊗ y)`.
    pub(crate) fn cross_contract(&self, x: &Poly, y: &Poly, kernel: Kernel, c: &Scalar) -> Poly {
        assert!(x.same_algebra(y) && x.algebra() == self.algebra(), "lattice functionals from another algebra");
        let kmat = self.kernel(kernel);
        let trunc = self.alg.truncation();
        let mut out = Poly::zero(&self.alg);
        for (t1, c1) in x.terms() {
            let inst1 = self.instances(&t1.mono);
            for (t2, c2) in y.terms() {
                let lambda = t1.lambda + t2.lambda;
                let budget = trunc.hbar - t1.hbar - t2.hbar;
                if lambda > trunc.lambda || budget < 0 {
                    continue;
                }
                let inst2 = self.instances(&t2.mono);
                let mut state = Matching {
                    used2: vec![false; inst2.len()],
                    removed1: Vec::new(),
                    removed2: Vec::new(),
                };
                let base = c1 * c2;
                let mut emit = |removed1: &[usize], removed2: &[usize], weight: &Scalar| {
                    let m1 = self.remove(&t1.mono, removed1);
                    let m2 = self.remove(&t2.mono, removed2);
                    if let Some((neg, m)) = m1.mul(&m2, &self.alg) {
                        let k = removed1.len() as i32;
                        let coef = &base * weight;
                        let coef = if neg { -&coef } else { coef };
                        out.add_term(Term { mono: m, hbar: t1.hbar + t2.hbar + k, lambda }, &coef);
                    }
                };
                cross_matchings(&inst1, &inst2, 0, budget as usize, kmat, c, Scalar::one(), &mut state, &mut emit);
            }
        }
        out
    }

    /// `exp(c ħ · ½ Σ K(p,q) ∂_p ∂_q) x` for a symmetric kernel.
    pub(crate) fn self_contract(&self, x: &Poly, kernel: Kernel, c: &Scalar) -> Poly {
        assert!(x.algebra() == self.algebra(), "lattice functional from another algebra");
        let kmat = self.kernel(kernel);
        let trunc = self.alg.truncation();
        let mut out = Poly::zero(&self.alg);
        for (t, coef) in x.terms() {
            let budget = trunc.hbar - t.hbar;
            if budget < 0 {
                continue;
            }
            let inst = self.instances(&t.mono);
            let mut used = vec![false; inst.len()];
            let mut removed = Vec::new();
            let mut emit = |removed: &[usize], weight: &Scalar| {
                let m = self.remove(&t.mono, removed);
                let k = (removed.len() / 2) as i32;
                out.add_term(Term { mono: m, hbar: t.hbar + k, lambda: t.lambda }, &(coef * weight));
            };
            self_matchings(&inst, 0, budget as usize, kmat, c, Scalar::one(), &mut used, &mut removed, &mut emit);
        }
        out
    }

    /// Peierls bracket `{F,G} = Σ_{p,q} ∂_pF Δ(p,q) ∂_qG = ⟨F⁽¹⁾, Δ∗G⁽¹⁾⟩`.
    ///
    /// With this orientation `{Φ(f), Φ(g)} = ⟨f, Δg⟩` and
    /// `F⋆G − G⋆F = iħ{F,G} + O(ħ²)`.
    pub fn peierls(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero(&self.alg);
        let n = self.sites();
        let df: Vec<(usize, Poly)> =
            f.support().into_iter().filter(|&p| p < n).map(|p| (p, f.derivative(p))).collect();
        let dg: Vec<(usize, Poly)> =
            g.support().into_iter().filter(|&q| q < n).map(|q| (q, g.derivative(q))).collect();
        for (p, a) in &df {
            for (q, b) in &dg {
                let k = &self.causal[*p][*q];
                if !k.is_zero() {
                    out.add_assign_scaled(&(a * b), k);
                }
            }
        }
        out
    }

    /// `F⋆G = m∘exp(iħ Γ_Δ)(F⊗G)`, `Γ_Δ = ½ Σ Δ(p,q) ∂_p ⊗ ∂_q`.
    pub fn star(&self, f: &Poly, g: &Poly) -> Poly {
        self.cross_contract(f, g, Kernel::Causal, &(&Scalar::i() * &Scalar::ratio(1, 2)))
    }

    /// `𝒯F = exp(iħ Γ_{Δ_D}) F`, `Γ_{Δ_D} = ½ Σ Δ_D(p,q) ∂_p ∂_q`.
    pub fn time_order(&self, f: &Poly) -> Poly {
        self.self_contract(f, Kernel::Dirac, &Scalar::i())
    }

    /// `𝒯⁻¹F = exp(−iħ Γ_{Δ_D}) F`.
    pub fn time_order_inverse(&self, f: &Poly) -> Poly {
        self.self_contract(f, Kernel::Dirac, &-Scalar::i())
    }

    /// `F ·_𝒯 G = 𝒯(𝒯⁻¹F · 𝒯⁻¹G) = m∘exp(iħ Σ Δ_D(p,q) ∂_p ⊗ ∂_q)(F⊗G)`.
    pub fn tprod(&self, f: &Poly, g: &Poly) -> Poly {
        self.cross_contract(f, g, Kernel::Dirac, &Scalar::i())
    }

    /// `e_𝒯^{±iV/ħ} = Σ_n (±i/ħ)^n / n! · V^{·𝒯 n}`; needs a `λ` factor in `V`.
    pub fn exp_t(&self, v: &Poly, negative: bool) -> Result<Poly, LatticeError> {
        if v.is_zero() {
            return Ok(Poly::one(&self.alg));
        }
        if v.min_lambda() == Some(0) {
            return Err(LatticeError::NoCouplingFactor);
        }
        let step = if negative { -Scalar::i() } else { Scalar::i() };
        let v = v.shift(-1, 0).scale(&step);
        Ok(self.tprod_series(&v, None))
    }

    /// `Σ_{n ≤ order} W^{·𝒯 n} / n!`, until the terms vanish when unbounded.
    fn tprod_series(&self, w: &Poly, order: Option<u32>) -> Poly {
        let mut out = Poly::one(&self.alg);
        let mut term = Poly::one(&self.alg);
        let mut n = 1u32;
        while order.map_or(true, |o| n <= o) {
            term = self.tprod(&term, w).scale(&Scalar::ratio(1, n as i64));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
            n += 1;
        }
        out
    }

    /// `𝒮(V) = Σ_n V^{·𝒯 n} / n!`, summed to `order` or, without an order,
    /// until the `λ` truncation stops it (which needs a `λ` factor).
    pub fn smatrix(&self, v: &Poly, order: Option<u32>) -> Result<Poly, LatticeError> {
        if order.is_none() && !v.is_zero() && v.min_lambda() == Some(0) {
            return Err(LatticeError::NoCouplingFactor);
        }
        Ok(self.tprod_series(v, order))
    }

    /// `A^{⋆−1}` by the Neumann series. The constant term of `A` must be a
    /// nonzero number and every other term must carry `ħ` or `λ`.
    pub fn star_inverse(&self, a: &Poly) -> Result<Poly, LatticeError> {
        let lead_term = Term::plain(Monomial::one());
        let lead = a.coefficient_of(&lead_term);
        let inv = lead.inv().ok_or(LatticeError::NotInvertible)?;
        let mut rest = a.clone();
        rest.add_term(lead_term, &-&lead);
        if rest.terms().any(|(t, _)| t.lambda == 0 && t.hbar <= 0) {
            return Err(LatticeError::NotInvertible);
        }
        let step = rest.scale(&-&inv);
        let mut out = Poly::one(&self.alg);
        let mut power = Poly::one(&self.alg);
        loop {
            power = self.star(&power, &step);
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out.scale(&inv))
    }

    /// Relative S-matrix `𝒮_V(F) = 𝒮(V)^{⋆−1} ⋆ 𝒮(V+F)`.
    pub fn bogoliubov(&self, v: &Poly, f: &Poly, order: Option<u32>) -> Result<Poly, LatticeError> {
        let sv = self.smatrix(v, order)?;
        let svf = self.smatrix(&(v + f), order)?;
        Ok(self.star(&self.star_inverse(&sv)?, &svf))
    }

    /// `R_V(F) = (e_𝒯^{iV/ħ})^{⋆−1} ⋆ (e_𝒯^{iV/ħ} ·_𝒯 F)`.
    pub fn retarded_map(&self, v: &Poly, f: &Poly) -> Result<Poly, LatticeError> {
        let e = self.exp_t(v, false)?;
        Ok(self.star(&self.star_inverse(&e)?, &self.tprod(&e, f)))
    }

    /// `R_V⁻¹(F) = e_𝒯^{−iV/ħ} ·_𝒯 (e_𝒯^{iV/ħ} ⋆ F)`.
    pub fn retarded_map_inverse(&self, v: &Poly, f: &Poly) -> Result<Poly, LatticeError> {
        let e = self.exp_t(v, false)?;
        let e_inv = self.exp_t(v, true)?;
        Ok(self.tprod(&e_inv, &self.star(&e, f)))
    }

    /// `F ⋆_V G = R_V⁻¹(R_V(F) ⋆ R_V(G))`.
    pub fn interacting_star(&self, v: &Poly, f: &Poly, g: &Poly) -> Result<Poly, LatticeError> {
        let prod = self.star(&self.retarded_map(v, f)?, &self.retarded_map(v, g)?);
        self.retarded_map_inverse(v, &prod)
    }
}

struct Matching {
    used2: Vec<bool>,
    removed1: Vec<usize>,
    removed2: Vec<usize>,
}

#[allow(clippy::too_many_arguments)]
fn cross_matchings(
    inst1: &[usize],
    inst2: &[usize],
    i: usize,
    budget: usize,
    kmat: &[Vec<Scalar>],
    c: &Scalar,
    weight: Scalar,
    st: &mut Matching,
    emit: &mut impl FnMut(&[usize], &[usize], &Scalar),
) {
    if i == inst1.len() || budget == 0 {
        emit(&st.removed1, &st.removed2, &weight);
        return;
    }
    cross_matchings(inst1, inst2, i + 1, budget, kmat, c, weight.clone(), st, emit);
    let p = inst1[i];
    for j in 0..inst2.len() {
        if st.used2[j] {
            continue;
        }
        let k = &kmat[p][inst2[j]];
        if k.is_zero() {
            continue;
        }
        st.used2[j] = true;
        st.removed1.push(p);
        st.removed2.push(inst2[j]);
        cross_matchings(inst1, inst2, i + 1, budget - 1, kmat, c, &weight * &(c * k), st, emit);
        st.removed2.pop();
        st.removed1.pop();
        st.used2[j] = false;
    }
}

#[allow(clippy::too_many_arguments)]
fn self_matchings(
    inst: &[usize],
    i: usize,
    budget: usize,
    kmat: &[Vec<Scalar>],
    c: &Scalar,
    weight: Scalar,
    used: &mut Vec<bool>,
    removed: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize], &Scalar),
) {
    let next = (i..inst.len()).find(|&k| !used[k]);
    let Some(i) = next.filter(|_| budget > 0) else {
        emit(removed, &weight);
        return;
    };
    used[i] = true;
    self_matchings(inst, i + 1, budget, kmat, c, weight.clone(), used, removed, emit);
    for j in i + 1..inst.len() {
        if used[j] {
            continue;
        }
        let k = &kmat[inst[i]][inst[j]];
        if k.is_zero() {
            continue;
        }
        used[j] = true;
        removed.push(inst[i]);
        removed.push(inst[j]);
        self_matchings(inst, i + 1, budget - 1, kmat, c, &weight * &(c * k), used, removed, emit);
        removed.pop();
        removed.pop();
        used[j] = false;
    }
    used[i] = false;
}
