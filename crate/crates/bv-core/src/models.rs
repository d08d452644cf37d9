//! Built-in model library.
//!
//! Models are generated programmatically so that the ghost and antifield
//! bookkeeping is automatic: every field, ghost and nonminimal generator gets
//! its antifield, declared after all field-type generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::classical::{LieStructure, Model, NonminimalPair, SymmetryGenerator};
use crate::error::BvError;
use crate::graded::{Algebra, Generator, Poly, Scalar, Truncation};

/// Field-type generators of a finite-dimensional model.
#[derive(Clone, Debug, Default)]
pub struct Content {
    /// Even fields of ghost number 0.
    pub fields: Vec<String>,
    /// Ghosts of ghost number 1, one per symmetry generator.
    pub ghosts: Vec<String>,
    /// `(antighost, multiplier)` names.
    pub nonminimal: Vec<(String, String)>,
}

impl Content {
    /// The algebra: fields, ghosts, antighosts and multipliers in order,
    /// followed by their antifields in the same order.
    pub fn algebra(&self, truncation: Truncation) -> Result<Arc<Algebra>, BvError> {
        let mut gens: Vec<Generator> = self.fields.iter().map(|n| Generator::field(n.as_str(), 0)).collect();
        gens.extend(self.ghosts.iter().map(|n| Generator::field(n.as_str(), 1)));
        for (cbar, b) in &self.nonminimal {
            gens.push(Generator::field(cbar.as_str(), -1));
            gens.push(Generator::field(b.as_str(), 0));
        }
        let anti: Vec<_> = gens.iter().map(Generator::antifield).collect();
        gens.extend(anti);
        Ok(Algebra::new(gens, truncation)?)
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn nonminimal_pairs(alg: &Algebra, content: &Content) -> Result<Vec<NonminimalPair>, BvError> {
    content
        .nonminimal
        .iter()
        .map(|(c, b)| Ok(NonminimalPair { antighost: alg.lookup(c)?, multiplier: alg.lookup(b)? }))
        .collect()
}

/// Concentric circles in the plane: `S = z Π_{k=1}^N (x² + y² − k²)` with the
/// rotation symmetry `x ↦ y, y ↦ −x` and one abelian ghost `c`.
pub fn toy_circles(n: u32) -> Result<Model, BvError> {
    let content = Content { fields: vec!["x".into(), "y".into(), "z".into()], ghosts: vec!["c".into()], ..Default::default() };
    let alg = content.algebra(Truncation::default())?;
    let v = |id: &str| Poly::gen(&alg, id);
    let (x, y, z) = (v("x")?, v("y")?, v("z")?);
    let r2 = &(&x * &x) + &(&y * &y);
    let mut action = z;
    for k in 1..=n as i64 {
        action = &action * &(&r2 - &Poly::from_int(&alg, k * k));
    }
    let rho = BTreeMap::from([(alg.lookup("x")?, y.clone()), (alg.lookup("y")?, -&x)]);
    let sym = SymmetryGenerator { name: "rotation".into(), ghost: alg.lookup("c")?, rho };
    Model::new(format!("toy_circles(N={n})"), action, vec![sym], None, vec![], None)
}

/// Adjoint action `ρ_a^i = f^i_{aj} φ^j`, i.e. `γφ = [C, φ]` in components.
fn adjoint_rho(alg: &Arc<Algebra>, field_ids: &[String], a: usize) -> Result<BTreeMap<usize, Poly>, BvError> {
    let eps = LieStructure::su2();
    let mut rho = BTreeMap::new();
    for (i, fi) in field_ids.iter().enumerate() {
        let mut comp = Poly::zero(alg);
        for (j, fj) in field_ids.iter().enumerate() {
            // f^i_{aj}
            let e = eps.get(i, a, j);
            if !e.is_zero() {
                comp.add_assign_scaled(&Poly::gen(alg, fj)?, e);
            }
        }
        if !comp.is_zero() {
            rho.insert(alg.lookup(fi)?, comp);
        }
    }
    Ok(rho)
}

/// `su(2)` gauge symmetry with zero action: ghosts only, or with three
/// adjoint scalars `phi1..phi3`. With `gauge_fixing`, adds nonminimal pairs
/// `(Cbar_a, B_a)` and, for the adjoint variant, `ψ = Σ_a Cbar_a φ^a`.
pub fn lie_gauge(adjoint: bool, gauge_fixing: bool) -> Result<Model, BvError> {
    let fields = if adjoint { names("phi", 3) } else { vec![] };
    let nonminimal = if gauge_fixing {
        (1..=3).map(|k| (format!("Cbar{k}"), format!("B{k}"))).collect()
    } else {
        vec![]
    };
    let content = Content { fields: fields.clone(), ghosts: names("C", 3), nonminimal };
    let alg = content.algebra(Truncation::default())?;
    let mut syms = Vec::new();
    for a in 0..3 {
        let rho = if adjoint { adjoint_rho(&alg, &fields, a)? } else { BTreeMap::new() };
        syms.push(SymmetryGenerator { name: format!("xi{}", a + 1), ghost: alg.lookup(&format!("C{}", a + 1))?, rho });
    }
    let psi = if gauge_fixing && adjoint {
        let mut psi = Poly::zero(&alg);
        for k in 1..=3 {
            psi = &psi + &(&Poly::gen(&alg, &format!("Cbar{k}"))? * &Poly::gen(&alg, &format!("phi{k}"))?);
        }
        Some(psi)
    } else {
        None
    };
    let label = match (adjoint, gauge_fixing) {
        (false, false) => "lie_gauge(su2)",
        (true, false) => "lie_gauge(su2, adjoint)",
        (false, true) => "lie_gauge(su2, gauge_fixed)",
        (true, true) => "lie_gauge(su2, adjoint, gauge_fixed)",
    };
    let pairs = nonminimal_pairs(&alg, &content)?;
    Model::new(label, Poly::zero(&alg), syms, Some(LieStructure::su2()), pairs, psi)
}

/// Shorthand for [`lie_gauge`] without gauge fixing.
pub fn lie_gauge_su2(adjoint: bool) -> Result<Model, BvError> {
    lie_gauge(adjoint, false)
}

/// Yang–Mills matrix model: `d+1` `su(2)`-valued coordinates `A_μ` with
/// `S = −¼ Σ_{μ,ν} tr([A_μ,A_ν]²)` and `δA_μ = [C, A_μ]`.
///
/// With anti-Hermitian generators, `tr(T_a T_b) = −½δ_{ab}`, the action in
/// components is `⅛ Σ_{μ,ν,c} (ε_{abc} A_μ^a A_ν^b)²`. Coordinates are named
/// `A{μ}_{a}`. With `gauge_fixing`, adds `(Cbar_a, B_a)` and the axial-type
/// fermion `ψ = Σ_a Cbar_a A0_a`.
pub fn ym_matrix(d: u32, gauge_fixing: bool) -> Result<Model, BvError> {
    let mut fields = Vec::new();
    for mu in 0..=d {
        fields.extend((1..=3).map(|a| format!("A{mu}_{a}")));
    }
    let nonminimal = if gauge_fixing {
        (1..=3).map(|k| (format!("Cbar{k}"), format!("B{k}"))).collect()
    } else {
        vec![]
    };
    let content = Content { fields, ghosts: names("C", 3), nonminimal };
    let alg = content.algebra(Truncation::default())?;
    let eps = LieStructure::su2();
    let coord = |mu: u32| -> Result<Vec<String>, BvError> { Ok((1..=3).map(|a| format!("A{mu}_{a}")).collect()) };
    let mut action = Poly::zero(&alg);
    for mu in 0..=d {
        for nu in 0..=d {
            let (am, an) = (coord(mu)?, coord(nu)?);
            for c in 0..3 {
                let mut comm = Poly::zero(&alg);
                for a in 0..3 {
                    for b in 0..3 {
                        let e = eps.get(c, a, b);
                        if !e.is_zero() {
                            let t = &Poly::gen(&alg, &am[a])? * &Poly::gen(&alg, &an[b])?;
                            comm.add_assign_scaled(&t, e);
                        }
                    }
                }
                action.add_assign_scaled(&(&comm * &comm), &Scalar::ratio(1, 8));
            }
        }
    }
    let mut syms = Vec::new();
    for a in 0..3 {
        let mut rho = BTreeMap::new();
        for mu in 0..=d {
            rho.extend(adjoint_rho(&alg, &coord(mu)?, a)?);
        }
        syms.push(SymmetryGenerator { name: format!("xi{}", a + 1), ghost: alg.lookup(&format!("C{}", a + 1))?, rho });
    }
    let psi = if gauge_fixing {
        let mut psi = Poly::zero(&alg);
        for k in 1..=3 {
            psi = &psi + &(&Poly::gen(&alg, &format!("Cbar{k}"))? * &Poly::gen(&alg, &format!("A0_{k}"))?);
        }
        Some(psi)
    } else {
        None
    };
    let pairs = nonminimal_pairs(&alg, &content)?;
    let label = if gauge_fixing { format!("ym_matrix(d={d}, su2, gauge_fixed)") } else { format!("ym_matrix(d={d}, su2)") };
    Model::new(label, action, syms, Some(LieStructure::su2()), pairs, psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_action() {
        let m = toy_circles(1).unwrap();
        assert_eq!(m.action.to_string(), "-z + x^2*z + y^2*z");
        assert_eq!(m.algebra.len(), 8);
    }

    #[test]
    fn ym_zero_dimensional_action_vanishes() {
        // A single matrix coordinate commutes with itself.
        assert!(ym_matrix(0, false).unwrap().action.is_zero());
        assert!(!ym_matrix(1, false).unwrap().action.is_zero());
    }
}
