//! Symmetries of the action as vector fields `X = Σ X_i φ‡_i`, and their
//! classification into trivial (vanishing on shell) and nontrivial ones.

use std::collections::BTreeMap;

use super::bracket::antibracket;
use super::model::Model;
use crate::cohomology::{Echelon, SparseVec};
use crate::error::BvError;
use crate::graded::{Monomial, Poly, Scalar, Term};

/// Outcome of the on-shell vanishing test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Triviality {
    /// Every coefficient lies in the equation-of-motion ideal.
    Trivial,
    /// Some coefficient is nonzero at a point where all equations of motion
    /// vanish, so no degree bound can make it trivial.
    Nontrivial,
    /// Neither certificate was found with multipliers of degree at most the
    /// given bound.
    Unknown(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub symmetry: bool,
    /// `{X, S}`, zero exactly for symmetries.
    pub variation: Poly,
    pub triviality: Triviality,
}

impl SymmetryReport {
    pub fn trivial(&self) -> bool {
        self.triviality == Triviality::Trivial
    }
}

/// Largest number of integer points probed for a nontriviality witness.
const WITNESS_BUDGET: usize = 20_000;

/// Decides whether the vector field `x` is a symmetry, `{X,S} = 0`, and
/// whether it is trivial. Ideal membership is tested with multipliers of
/// degree at most `degree`; nontriviality is certified by an integer point
/// with coordinates in `−2..=2` lying on shell where `X` does not vanish.
pub fn is_symmetry(model: &Model, x: &Poly, degree: u32) -> Result<SymmetryReport, BvError> {
    let alg = &model.algebra;
    let fields = model.physical_fields();
    let vector_field = x.gradings().iter().all(|g| g.total_antifield == 1 && g.antifield == 1 && g.ghost == -1)
        && x.is_classical();
    if !vector_field {
        return Err(BvError::NotVectorField(x.to_string()));
    }
    let coefficients: Vec<Poly> = fields
        .iter()
        .map(|&f| x.derivative(alg.partner(f).expect("physical fields have antifields")))
        .collect();
    // Rebuilding X from its coefficients rules out antifields of ghosts.
    let covered = fields.iter().zip(&coefficients).fold(Poly::zero(alg), |acc, (&f, c)| {
        &acc + &(c * &Poly::var(alg, alg.partner(f).expect("checked above")))
    });
    if covered != *x {
        return Err(BvError::NotVectorField(x.to_string()));
    }
    let variation = antibracket(x, &model.action);
    let eoms: Vec<Poly> = fields.iter().map(|&f| model.action.derivative(f)).collect();

    let triviality = if in_ideal(&coefficients, &eoms, &fields, degree) {
        Triviality::Trivial
    } else if has_witness(&coefficients, &eoms, &fields) {
        Triviality::Nontrivial
    } else {
        Triviality::Unknown(degree)
    };
    Ok(SymmetryReport { symmetry: variation.is_zero(), variation, triviality })
}

/// All monomials in `vars` of degree at most `max`.
fn monomials_upto(vars: &[usize], max: u32) -> Vec<Monomial> {
    fn go(vars: &[usize], budget: u32, acc: &mut Vec<(usize, u32)>, out: &mut Vec<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            out.push(Monomial::from_sorted(acc.iter().copied()));
            return;
        };
        for e in 0..=budget {
            if e > 0 {
                acc.push((v, e));
            }
            go(rest, budget - e, acc, out);
            if e > 0 {
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(vars, max, &mut Vec::new(), &mut out);
    out
}

fn in_ideal(coefficients: &[Poly], eoms: &[Poly], vars: &[usize], degree: u32) -> bool {
    if coefficients.iter().all(Poly::is_zero) {
        return true;
    }
    let Some(alg) = coefficients.first().map(|c| c.algebra().clone()) else { return true };
    let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
    let mut coords = |p: &Poly| -> SparseVec {
        let mut v = SparseVec::new();
        for (t, c) in p.terms() {
            let next = index.len();
            v.insert(*index.entry(t.mono.clone()).or_insert(next), c.clone());
        }
        v
    };
    let mut span = Echelon::default();
    for m in monomials_upto(vars, degree) {
        let mono = Poly::monomial(&alg, Term::plain(m), Scalar::one());
        for e in eoms {
            span.insert(coords(&(&mono * e)));
        }
    }
    coefficients.iter().all(|c| span.contains(&coords(c)))
}

fn has_witness(coefficients: &[Poly], eoms: &[Poly], vars: &[usize]) -> bool {
    let points = 5usize.checked_pow(vars.len() as u32).unwrap_or(usize::MAX).min(WITNESS_BUDGET);
    (0..points).any(|mut code| {
        let subst: BTreeMap<usize, Poly> = vars
            .iter()
            .map(|&v| {
                let value = (code % 5) as i64 - 2;
                code /= 5;
                (v, Poly::from_int(eoms[0].algebra(), value))
            })
            .collect();
        eoms.iter().all(|e| e.substitute(&subst).is_zero())
            && coefficients.iter().any(|c| !c.substitute(&subst).is_zero())
    })
}
