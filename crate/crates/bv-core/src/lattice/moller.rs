//! Classical retarded Møller map `r_V(G) = Σ_k λ^k/k! R_k(V₁^{⊗k}, G)`.
//!
//! `R_1(F, G) = −Σ_{x,y} ∂_xF Δ^R(y,x) ∂_yG`: a perturbation at `x` only
//! affects `G` at points `y` in its causal future. Higher orders follow the
//! recursion
//!
//! `R_n(F^{⊗n}, G) = −Σ_{l<n} C(n−1, l) R_l(F^{⊗l}, W_{n−1−l}(G))`,
//! `W_k(G) = Σ ∂_xF Δ^{A(k)}(x,y) ∂_yG`,
//! `Δ^{A(k)} = (−1)^k k! Δ^A (F⁽²⁾ Δ^A)^k`.

use super::LatticeAlgebra;
use crate::error::LatticeError;
use crate::graded::{Poly, Scalar};

type PolyMatrix = Vec<Vec<Poly>>;

impl LatticeAlgebra {
    fn advanced(&self) -> Vec<Vec<Scalar>> {
        self.props.advanced.entries.iter().map(|r| r.iter().cloned().map(Scalar::from).collect()).collect()
    }

    /// `Δ^{A(k)}` for the Hessian of `f`, as a matrix of functionals.
    fn advanced_derivative(&self, f: &Poly, k: u32) -> PolyMatrix {
        let n = self.sites();
        let adv = self.advanced();
        let hess: PolyMatrix =
            (0..n).map(|x| (0..n).map(|y| f.derivative(x).derivative(y)).collect()).collect();
        let mut m: PolyMatrix =
            adv.iter().map(|r| r.iter().map(|c| Poly::constant(&self.alg, c.clone())).collect()).collect();
        let mut factorial = 1i64;
        for step in 1..=k {
            factorial *= step as i64;
            // m ← m · H · Δ^A
            let mh: PolyMatrix = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|z| (0..n).fold(Poly::zero(&self.alg), |acc, w| &acc + &(&m[x][w] * &hess[w][z])))
                        .collect()
                })
                .collect();
            m = (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let mut acc = Poly::zero(&self.alg);
                            for z in 0..n {
                                if !adv[z][y].is_zero() {
                                    acc.add_assign_scaled(&mh[x][z], &adv[z][y]);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
        }
        let sign = if k % 2 == 0 { factorial } else { -factorial };
        let c = Scalar::from_int(sign);
        m.iter().map(|r| r.iter().map(|p| p.scale(&c)).collect()).collect()
    }

    /// `Σ_{x,y} ∂_xF K(x,y) ∂_yG` for a matrix of functionals `K`.
    fn contract(&self, f: &Poly, k: &PolyMatrix, g: &Poly) -> Poly {
        let n = self.sites();
        let df: Vec<Poly> = (0..n).map(|x| f.derivative(x)).collect();
        let dg: Vec<Poly> = (0..n).map(|y| g.derivative(y)).collect();
        let mut out = Poly::zero(&self.alg);
        for x in (0..n).filter(|&x| !df[x].is_zero()) {
            for y in (0..n).filter(|&y| !dg[y].is_zero() && !k[x][y].is_zero()) {
                out = &out + &(&(&df[x] * &k[x][y]) * &dg[y]);
            }
        }
        out
    }

    /// `R_n(F^{⊗n}, G)`.
    fn retarded_product(&self, f: &Poly, n: u32, g: &Poly, kernels: &[PolyMatrix]) -> Poly {
        if n == 0 {
            return g.clone();
        }
        let mut out = Poly::zero(&self.alg);
        let mut binom = 1i64;
        for l in 0..n {
            let w = self.contract(f, &kernels[(n - 1 - l) as usize], g);
            let term = self.retarded_product(f, l, &w, kernels);
            out.add_assign_scaled(&term, &Scalar::from_int(-binom));
            binom = binom * (n - 1 - l) as i64 / (l + 1) as i64;
        }
        out
    }

    /// Classical Møller map `r_V(G)` to order `λ^order`. `V` must be
    /// homogeneous of degree one in `λ`.
    pub fn classical_moller(&self, v: &Poly, g: &Poly, order: u32) -> Result<Poly, LatticeError> {
        let max = self.truncation.lambda;
        if order > max {
            return Err(LatticeError::OrderTooHigh { order, max });
        }
        if v.terms().any(|(t, _)| t.lambda != 1 || t.hbar != 0) {
            return Err(LatticeError::NoCouplingFactor);
        }
        let v1 = v.series_coefficient(0, 1)?;
        let kernels: Vec<PolyMatrix> = (0..order).map(|k| self.advanced_derivative(&v1, k)).collect();
        let mut out = g.clone();
        let mut factorial = 1i64;
        for k in 1..=order {
            factorial *= k as i64;
            let rk = self.retarded_product(&v1, k, g, &kernels);
            out.add_assign_scaled(&rk.shift(0, k), &Scalar::ratio(1, factorial));
        }
        Ok(self.report(&out))
    }
}
