//! Gauge systems: action, closed symmetry algebra, nonminimal sector and gauge
//! fermion over one algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::BvError;
use crate::graded::{Algebra, Poly, Scalar};

/// One generator ξ_a of the symmetry algebra, realized as the vector field
/// `Σ_i ρ_a^i(φ) ∂/∂φ^i` and paired with the ghost `C^a`.
#[derive(Clone, Debug)]
pub struct SymmetryGenerator {
    pub name: String,
    /// Index of the ghost generator.
    pub ghost: usize,
    /// Components `ρ_a^i`, keyed by field index.
    pub rho: BTreeMap<usize, Poly>,
}

/// Constant structure coefficients `f^c_{ab}`, stored as `f[c][a][b]`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LieStructure {
    f: Vec<Vec<Vec<Scalar>>>,
}

impl LieStructure {
    /// The abelian structure on `n` generators.
    pub fn abelian(n: usize) -> Self {
        Self { f: vec![vec![vec![Scalar::zero(); n]; n]; n] }
    }

    /// Validates antisymmetry in the lower indices. Jacobi is not assumed.
    pub fn new(f: Vec<Vec<Vec<Scalar>>>) -> Result<Self, BvError> {
        let n = f.len();
        for (c, fc) in f.iter().enumerate() {
            if fc.len() != n || fc.iter().any(|row| row.len() != n) {
                return Err(BvError::StructureShape { expected: n, got: fc.len() });
            }
            for a in 0..n {
                for b in 0..n {
                    if fc[a][b] != -&fc[b][a] {
                        return Err(BvError::StructureNotAntisymmetric { c, a, b });
                    }
                }
            }
        }
        Ok(Self { f })
    }

    /// `su(2)` with `f^c_{ab} = ε_{abc}`.
    pub fn su2() -> Self {
        let mut f = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            f[c][a][b] = Scalar::one();
            f[c][b][a] = Scalar::from_int(-1);
        }
        Self { f }
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    pub fn get(&self, c: usize, a: usize, b: usize) -> &Scalar {
        &self.f[c][a][b]
    }

    /// Overwrites one coefficient and its antisymmetric partner.
    pub fn set(&mut self, c: usize, a: usize, b: usize, v: Scalar) {
        self.f[c][b][a] = -&v;
        self.f[c][a][b] = v;
    }

    pub fn is_abelian(&self) -> bool {
        self.f.iter().flatten().flatten().all(Scalar::is_zero)
    }
}

/// A trivial pair of the nonminimal sector: antighost `C̄` (#gh −1) and
/// Nakanishi–Lautrup multiplier `B` (#gh 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonminimalPair {
    pub antighost: usize,
    pub multiplier: usize,
}

/// A complete finite-dimensional gauge system.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub action: Poly,
    pub symmetries: Vec<SymmetryGenerator>,
    pub structure: LieStructure,
    pub nonminimal: Vec<NonminimalPair>,
    pub gauge_fermion: Option<Poly>,
}

impl Model {
    /// Validates every grading constraint. `structure` may be `None` for an
    /// abelian algebra.
    pub fn new(
        name: impl Into<String>,
        action: Poly,
        symmetries: Vec<SymmetryGenerator>,
        structure: Option<LieStructure>,
        nonminimal: Vec<NonminimalPair>,
        gauge_fermion: Option<Poly>,
    ) -> Result<Self, BvError> {
        let name = name.into();
        let algebra = action.algebra().clone();
        let alg = &algebra;
        let action_ok = action.is_classical()
            && action.is_real()
            && action.gradings().iter().all(|g| g.ghost == 0 && g.total_antifield == 0 && !g.odd);
        if !action_ok {
            return Err(BvError::BadAction);
        }
        let need_pair = |symmetry: &str, idx: usize| -> Result<(), BvError> {
            match alg.partner(idx) {
                Some(_) => Ok(()),
                None => Err(BvError::MissingGenerator {
                    symmetry: symmetry.to_string(),
                    missing: format!("{}‡", alg.generator(idx).id()),
                }),
            }
        };
        for s in &symmetries {
            let ghost = alg.generator(s.ghost);
            if ghost.ghost != 1 || ghost.is_antifield() {
                return Err(BvError::MissingGenerator { symmetry: s.name.clone(), missing: "ghost of #gh 1".into() });
            }
            need_pair(&s.name, s.ghost)?;
            for (&field, comp) in &s.rho {
                need_pair(&s.name, field)?;
                let clean = comp.support().iter().all(|&g| {
                    let gen = alg.generator(g);
                    !gen.is_antifield() && gen.ghost == 0
                });
                if !clean || !comp.is_classical() {
                    return Err(BvError::FieldDependentStructure {
                        field: alg.generator(field).id(),
                        component: comp.to_string(),
                    });
                }
            }
        }
        let structure = structure.unwrap_or_else(|| LieStructure::abelian(symmetries.len()));
        if structure.dim() != symmetries.len() {
            return Err(BvError::StructureShape { expected: symmetries.len(), got: structure.dim() });
        }
        for p in &nonminimal {
            let (cbar, b) = (alg.generator(p.antighost), alg.generator(p.multiplier));
            if cbar.ghost != -1 || b.ghost != 0 {
                return Err(BvError::MissingGenerator {
                    symmetry: "nonminimal".into(),
                    missing: format!("antighost of #gh -1 and multiplier of #gh 0, got {} and {}", cbar.id(), b.id()),
                });
            }
            need_pair("nonminimal", p.antighost)?;
            need_pair("nonminimal", p.multiplier)?;
        }
        if let Some(psi) = &gauge_fermion {
            check_gauge_fermion(psi)?;
        }
        Ok(Self { name, algebra, action, symmetries, structure, nonminimal, gauge_fermion })
    }

    /// Field-type generators of ghost number 0 that have antifields: the
    /// variables the equations of motion are taken with respect to.
    pub fn physical_fields(&self) -> Vec<usize> {
        let alg = &self.algebra;
        (0..alg.len())
            .filter(|&i| !alg.is_antifield(i) && alg.generator(i).ghost == 0 && alg.partner(i).is_some())
            .filter(|&i| !self.nonminimal.iter().any(|p| p.multiplier == i))
            .collect()
    }
}

pub(crate) fn check_gauge_fermion(psi: &Poly) -> Result<(), BvError> {
    let ok = psi.gradings().iter().all(|g| g.ghost == -1 && g.total_antifield == 0);
    if ok {
        Ok(())
    } else {
        Err(BvError::BadGaugeFermion(psi.to_string()))
    }
}
