//! Degree-truncated cohomology of the differentials of [`crate::classical`].
//!
//! For a differential `d` the reported dimension at ghost number `g` and
//! degree bound `D` is
//!
//! ```text
//! dim ker(d on V_{g,≤D}) − dim( d(V_{g−1,≤D+shift}) ∩ V_{g,≤D} )
//! ```
//!
//! where `shift` is the largest degree increase `d` produces on a generator.
//! The intersection is computed as `rank(M) − rank(P_{>D} M)` with `M` the
//! matrix of `d` on the larger domain and `P_{>D}` the projection onto
//! monomials of degree above `D`. This is a truncation of the true
//! cohomology that stabilizes as `D` grows.

mod linalg;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use linalg::{axpy, Echelon, SparseMatrix, SparseVec};

use crate::classical::{extended_action, Model};
use crate::classical::{antibracket, split_with};
use crate::error::CohomologyError;
use crate::graded::{Algebra, Grading, Monomial, Poly, Scalar, Term};

/// Restricts a basis to a sector of fixed gradings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BasisFilter {
    pub pure_ghost: Option<i64>,
}

impl BasisFilter {
    fn accepts(&self, g: &Grading) -> bool {
        self.pure_ghost.map_or(true, |pg| g.pure_ghost == pg)
    }
}

/// All monomials of one ghost number and degree at most `max_degree`.
#[derive(Clone, Debug)]
pub struct TruncatedBasis {
    pub ghost_number: i64,
    pub max_degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl TruncatedBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a classical polynomial, or the first offending term.
    pub fn coordinates(&self, p: &Poly) -> Result<SparseVec, Term> {
        let mut v = SparseVec::new();
        for (t, c) in p.terms() {
            if t.hbar != 0 || t.lambda != 0 {
                return Err(t.clone());
            }
            let k = self.position(&t.mono).ok_or_else(|| t.clone())?;
            v.insert(k, c.clone());
        }
        Ok(v)
    }

    /// The polynomial with the given coordinates.
    pub fn polynomial(&self, alg: &Arc<Algebra>, v: &SparseVec) -> Poly {
        let mut p = Poly::zero(alg);
        for (k, c) in v {
            p.add_term(Term::plain(self.monomials[*k].clone()), c);
        }
        p
    }
}

/// Enumerates the basis in monomial order.
pub fn monomial_basis(alg: &Algebra, ghost_number: i64, max_degree: u32) -> TruncatedBasis {
    filtered_basis(alg, ghost_number, max_degree, BasisFilter::default())
}

/// Like [`monomial_basis`], restricted to a grading sector.
pub fn filtered_basis(alg: &Algebra, ghost_number: i64, max_degree: u32, filter: BasisFilter) -> TruncatedBasis {
    let n = alg.len();
    // Extreme ghost numbers reachable with the generators from `k` on.
    let mut max_gh = vec![0i64; n + 1];
    let mut min_gh = vec![0i64; n + 1];
    for k in (0..n).rev() {
        let gh = alg.generator(k).ghost as i64;
        max_gh[k] = max_gh[k + 1].max(gh);
        min_gh[k] = min_gh[k + 1].min(gh);
    }
    let mut out = Vec::new();
    let mut factors = Vec::new();
    enumerate(alg, 0, max_degree, ghost_number, &max_gh, &min_gh, &mut factors, &mut out);
    let mut monomials: Vec<Monomial> =
        out.into_iter().filter(|m| filter.accepts(&Grading::of(m, alg))).collect();
    monomials.sort();
    let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    TruncatedBasis { ghost_number, max_degree, monomials, index }
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    alg: &Algebra,
    k: usize,
    budget: u32,
    need_gh: i64,
    max_gh: &[i64],
    min_gh: &[i64],
    factors: &mut Vec<(usize, u32)>,
    out: &mut Vec<Monomial>,
) {
    if need_gh > budget as i64 * max_gh[k] || need_gh < budget as i64 * min_gh[k] {
        return;
    }
    if k == alg.len() {
        if need_gh == 0 {
            out.push(Monomial::from_sorted(factors.iter().copied()));
        }
        return;
    }
    let gh = alg.generator(k).ghost as i64;
    let max_e = if alg.is_odd(k) { budget.min(1) } else { budget };
    for e in 0..=max_e {
        if e > 0 {
            factors.push((k, e));
        }
        enumerate(alg, k + 1, budget - e, need_gh - gh * e as i64, max_gh, min_gh, factors, out);
        if e > 0 {
            factors.pop();
        }
    }
}

/// Matrix of `op` from `domain` to `codomain`. Fails if an image term is
/// not a codomain monomial.
pub fn operator_matrix(
    alg: &Arc<Algebra>,
    op: impl Fn(&Poly) -> Poly,
    domain: &TruncatedBasis,
    codomain: &TruncatedBasis,
) -> Result<SparseMatrix, CohomologyError> {
    let mut columns = Vec::with_capacity(domain.len());
    for m in &domain.monomials {
        let image = op(&Poly::monomial(alg, Term::plain(m.clone()), Scalar::one()));
        let col = codomain.coordinates(&image).map_err(|term| CohomologyError::CodomainTooSmall {
            source_monomial: Poly::monomial(alg, Term::plain(m.clone()), Scalar::one()).to_string(),
            term: Poly::monomial(alg, term, Scalar::one()).to_string(),
        })?;
        columns.push(col);
    }
    Ok(SparseMatrix::new(codomain.len(), columns))
}

/// Which differential to take cohomology of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Differential {
    /// Full BV differential `s = δ + γ`.
    S,
    /// Koszul–Tate part `δ`.
    Delta,
    /// Chevalley–Eilenberg part `γ`.
    Gamma,
}

impl Differential {
    pub fn name(&self) -> &'static str {
        match self {
            Differential::S => "s",
            Differential::Delta => "delta",
            Differential::Gamma => "gamma",
        }
    }
}

impl std::str::FromStr for Differential {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s" => Ok(Differential::S),
            "delta" => Ok(Differential::Delta),
            "gamma" => Ok(Differential::Gamma),
            other => Err(format!("unknown differential `{other}` (expected s, delta or gamma)")),
        }
    }
}

/// Dimensions of one truncated cohomology cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub differential: Differential,
    pub ghost_number: i64,
    pub max_degree: u32,
    pub shift: u32,
    pub dim_space: usize,
    pub dim_kernel: usize,
    pub dim_image: usize,
    pub dim_cohomology: usize,
    pub representative_cocycles: Vec<Poly>,
}

impl CohomologyReport {
    /// Field names and rendered values in their fixed serialization order.
    pub fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("differential", self.differential.name().to_string()),
            ("ghost_number", self.ghost_number.to_string()),
            ("max_degree", self.max_degree.to_string()),
            ("shift", self.shift.to_string()),
            ("dim_space", self.dim_space.to_string()),
            ("dim_kernel", self.dim_kernel.to_string()),
            ("dim_image", self.dim_image.to_string()),
            ("dim_cohomology", self.dim_cohomology.to_string()),
        ]
    }
}

impl fmt::Display for CohomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.fields() {
            writeln!(f, "{k}: {v}")?;
        }
        for (i, r) in self.representative_cocycles.iter().enumerate() {
            writeln!(f, "representative[{i}]: {r}")?;
        }
        Ok(())
    }
}

/// The chosen differential as a closure over a precomputed extended action.
fn differential_op(model: &Model, which: Differential) -> impl Fn(&Poly) -> Poly {
    let ext = extended_action(model);
    move |x: &Poly| match which {
        Differential::S => antibracket(x, &ext),
        Differential::Delta => split_with(&ext, x).0,
        Differential::Gamma => split_with(&ext, x).1,
    }
}

/// Largest degree increase the differential produces on a generator.
pub fn degree_shift(alg: &Arc<Algebra>, op: &impl Fn(&Poly) -> Poly) -> u32 {
    (0..alg.len())
        .map(|g| op(&Poly::var(alg, g)).max_degree().saturating_sub(1))
        .max()
        .unwrap_or(0)
}

/// Truncated cohomology of `which` at ghost number `ghost_number`.
pub fn cohomology_dim(
    model: &Model,
    which: Differential,
    ghost_number: i64,
    max_degree: u32,
    filter: BasisFilter,
) -> Result<CohomologyReport, CohomologyError> {
    let alg = &model.algebra;
    let op = differential_op(model, which);
    let shift = degree_shift(alg, &op);
    let wide = max_degree + shift;

    let space = filtered_basis(alg, ghost_number, max_degree, filter);
    let space_target = filtered_basis(alg, ghost_number + 1, max_degree + shift, filter);
    let kernel_matrix = operator_matrix(alg, &op, &space, &space_target)?;

    let source = filtered_basis(alg, ghost_number - 1, wide, filter);
    let image_space = filtered_basis(alg, ghost_number, wide + shift, filter);
    let image_matrix = operator_matrix(alg, &op, &source, &image_space)?;

    // d² = 0 on everything the computation touches.
    for (m, col) in source.monomials.iter().zip(&image_matrix.columns) {
        let image = image_space.polynomial(alg, col);
        if !op(&image).is_zero() {
            return Err(CohomologyError::NotNilpotent(
                Poly::monomial(alg, Term::plain(m.clone()), Scalar::one()).to_string(),
            ));
        }
    }

    let kernel = kernel_matrix.kernel();
    let high = image_matrix.restrict_rows(|r| image_space.monomials[r].degree() > max_degree);
    // Image ∩ V_{≤D}: images of combinations annihilated by the high part.
    let mut image_low = Echelon::default();
    for c in high.kernel() {
        let v = image_matrix.apply(&c);
        let v: SparseVec = v
            .into_iter()
            .map(|(r, x)| (space.position(&image_space.monomials[r]).expect("low-degree monomial"), x))
            .collect();
        image_low.insert(v);
    }
    let dim_image = image_low.rank();
    let mut representatives = Vec::new();
    for k in &kernel {
        if image_low.insert(k.clone()) {
            representatives.push(space.polynomial(alg, k));
        }
    }
    Ok(CohomologyReport {
        differential: which,
        ghost_number,
        max_degree,
        shift,
        dim_space: space.len(),
        dim_kernel: kernel.len(),
        dim_image,
        dim_cohomology: kernel.len() - dim_image,
        representative_cocycles: representatives,
    })
}
