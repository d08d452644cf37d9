//! Sparse graded polynomials with truncated series coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::algebra::{Algebra, Generator};
use super::monomial::Monomial;
use super::scalar::Scalar;
use super::series::{Series, Truncation};
use crate::error::AlgebraError;

/// Key of a flattened term `c · ħ^hbar · λ^lambda · mono`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub mono: Monomial,
    pub hbar: i32,
    pub lambda: u32,
}

impl Term {
    pub fn plain(mono: Monomial) -> Self {
        Self { mono, hbar: 0, lambda: 0 }
    }
}

/// Element of the graded algebra. Zero coefficients are never stored, so
/// equality is term-map equality.
#[derive(Clone)]
pub struct Poly {
    alg: Arc<Algebra>,
    terms: BTreeMap<Term, Scalar>,
}

/// Gradings of one homogeneous component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grading {
    pub ghost: i64,
    pub antifield: i64,
    pub total_antifield: i64,
    pub pure_ghost: i64,
    pub odd: bool,
    pub degree: u32,
}

impl Grading {
    pub fn of(mono: &Monomial, alg: &Algebra) -> Self {
        Self {
            ghost: mono.grading(alg, |g| g.ghost as i64),
            antifield: mono.grading(alg, |g| g.antifield_number as i64),
            total_antifield: mono.grading(alg, |g| g.is_antifield() as i64),
            pure_ghost: mono.grading(alg, |g| g.pure_ghost as i64),
            odd: mono.is_odd(alg),
            degree: mono.degree(),
        }
    }
}

impl Poly {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self { alg: alg.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(alg: &Arc<Algebra>, c: Scalar) -> Self {
        Self::monomial(alg, Term::plain(Monomial::one()), c)
    }

    pub fn one(alg: &Arc<Algebra>) -> Self {
        Self::constant(alg, Scalar::one())
    }

    pub fn from_int(alg: &Arc<Algebra>, n: i64) -> Self {
        Self::constant(alg, Scalar::from_int(n))
    }

    /// A single term; dropped if it lies outside the truncation.
    pub fn monomial(alg: &Arc<Algebra>, term: Term, c: Scalar) -> Self {
        let mut p = Self::zero(alg);
        p.add_term(term, &c);
        p
    }

    /// The generator with index `idx`.
    pub fn var(alg: &Arc<Algebra>, idx: usize) -> Self {
        Self::monomial(alg, Term::plain(Monomial::var(idx)), Scalar::one())
    }

    /// The generator with the given id.
    pub fn gen(alg: &Arc<Algebra>, id: &str) -> Result<Self, AlgebraError> {
        Ok(Self::var(alg, alg.lookup(id)?))
    }

    /// `ħ^hbar λ^lambda`.
    pub fn formal(alg: &Arc<Algebra>, hbar: i32, lambda: u32) -> Self {
        Self::monomial(alg, Term { mono: Monomial::one(), hbar, lambda }, Scalar::one())
    }

    pub fn hbar(alg: &Arc<Algebra>) -> Self {
        Self::formal(alg, 1, 0)
    }

    pub fn lambda(alg: &Arc<Algebra>) -> Self {
        Self::formal(alg, 0, 1)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn truncation(&self) -> Truncation {
        self.alg.truncation()
    }

    pub fn same_algebra(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) || *self.alg == *other.alg
    }

    fn assert_same(&self, other: &Poly) {
        assert!(self.same_algebra(other), "{}", AlgebraError::MixedAlgebras);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Term, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient_of(&self, term: &Term) -> Scalar {
        self.terms.get(term).cloned().unwrap_or_default()
    }

    /// All `(ħ, λ)` coefficients of one monomial.
    pub fn series_of(&self, mono: &Monomial) -> Series {
        let mut s = Series::new();
        for (t, c) in self.terms.iter().filter(|(t, _)| &t.mono == mono) {
            s.add_term(t.hbar, t.lambda, c);
        }
        s
    }

    /// Adds `c · term`, respecting truncation and pruning zeros.
    pub fn add_term(&mut self, term: Term, c: &Scalar) {
        if c.is_zero() || !self.alg.truncation().keeps(term.hbar, term.lambda) {
            return;
        }
        match self.terms.entry(term) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, c: &Scalar) {
        self.assert_same(other);
        if c.is_zero() {
            return;
        }
        for (t, v) in &other.terms {
            self.add_term(t.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(&self.alg);
        out.add_assign_scaled(self, c);
        out
    }

    /// Multiplication by `ħ^hbar λ^lambda`.
    pub fn shift(&self, hbar: i32, lambda: u32) -> Poly {
        let mut out = Poly::zero(&self.alg);
        for (t, v) in &self.terms {
            let term = Term { mono: t.mono.clone(), hbar: t.hbar + hbar, lambda: t.lambda + lambda };
            out.add_term(term, v);
        }
        out
    }

    /// Graded product, checking that both factors live in the same algebra.
    pub fn try_mul(&self, rhs: &Poly) -> Result<Poly, AlgebraError> {
        if !self.same_algebra(rhs) {
            return Err(AlgebraError::MixedAlgebras);
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &Poly) -> Poly {
        let trunc = self.alg.truncation();
        let mut out = Poly::zero(&self.alg);
        for (ta, ca) in &self.terms {
            for (tb, cb) in &rhs.terms {
                let (hbar, lambda) = (ta.hbar + tb.hbar, ta.lambda + tb.lambda);
                if !trunc.keeps(hbar, lambda) {
                    continue;
                }
                let Some((negative, mono)) = ta.mono.mul(&tb.mono, &self.alg) else { continue };
                let mut c = ca * cb;
                if negative {
                    c = -c;
                }
                out.add_term(Term { mono, hbar, lambda }, &c);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(&self.alg);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Left derivative with respect to generator `idx`.
    pub fn derivative(&self, idx: usize) -> Poly {
        let mut out = Poly::zero(&self.alg);
        for (t, c) in &self.terms {
            let Some((negative, mult, mono)) = t.mono.derivative(idx, &self.alg) else { continue };
            let mut v = c.scale(&num_rational::BigRational::from_integer(mult.into()));
            if negative {
                v = -v;
            }
            out.add_term(Term { mono, hbar: t.hbar, lambda: t.lambda }, &v);
        }
        out
    }

    /// Left derivative with respect to the generator with the given id.
    pub fn derivative_by(&self, id: &str) -> Result<Poly, AlgebraError> {
        Ok(self.derivative(self.alg.lookup(id)?))
    }

    /// Keeps the terms satisfying `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&Term) -> bool) -> Poly {
        Poly {
            alg: self.alg.clone(),
            terms: self.terms.iter().filter(|(t, _)| pred(t)).map(|(t, c)| (t.clone(), c.clone())).collect(),
        }
    }

    /// Keeps the terms whose monomial gradings satisfy `pred`.
    pub fn filter_grading(&self, mut pred: impl FnMut(&Grading) -> bool) -> Poly {
        let alg = self.alg.clone();
        self.filter(|t| pred(&Grading::of(&t.mono, &alg)))
    }

    /// Splits into `(even part, odd part)`.
    pub fn parity_split(&self) -> (Poly, Poly) {
        let alg = self.alg.clone();
        (self.filter(|t| !t.mono.is_odd(&alg)), self.filter(|t| t.mono.is_odd(&alg)))
    }

    /// Parity if homogeneous, `None` for zero or mixed parity.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.keys().map(|t| t.mono.is_odd(&self.alg));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Distinct gradings present, one entry per homogeneous component.
    pub fn gradings(&self) -> Vec<Grading> {
        let mut g: Vec<_> = self.terms.keys().map(|t| Grading::of(&t.mono, &self.alg)).collect();
        g.sort();
        g.dedup();
        g
    }

    /// Ghost number if homogeneous.
    pub fn ghost_number(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|t| t.mono.grading(&self.alg, |g| g.ghost as i64));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    /// Exact coefficient polynomial of `ħ^hbar λ^lambda`.
    pub fn series_coefficient(&self, hbar: i32, lambda: u32) -> Result<Poly, AlgebraError> {
        let tr = self.truncation();
        if !tr.keeps(hbar, lambda) {
            return Err(AlgebraError::BeyondTruncation { hbar, lambda, max_hbar: tr.hbar, max_lambda: tr.lambda });
        }
        let mut out = Poly::zero(&self.alg);
        for (t, c) in self.terms.iter().filter(|(t, _)| t.hbar == hbar && t.lambda == lambda) {
            out.add_term(Term::plain(t.mono.clone()), c);
        }
        Ok(out)
    }

    /// Drops the terms outside `trunc` (which should not exceed the
    /// algebra's own truncation).
    pub fn project(&self, trunc: Truncation) -> Poly {
        self.filter(|t| trunc.keeps(t.hbar, t.lambda))
    }

    /// True when no term carries `ħ` or `λ`.
    pub fn is_classical(&self) -> bool {
        self.terms.keys().all(|t| t.hbar == 0 && t.lambda == 0)
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    /// Indices of generators occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flat_map(|t| t.mono.factors().map(|(g, _)| g)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Lowest `λ` power present (`None` for zero).
    pub fn min_lambda(&self) -> Option<u32> {
        self.terms.keys().map(|t| t.lambda).min()
    }

    /// Re-expresses this polynomial in another algebra that declares every
    /// generator used here under the same id.
    pub fn transfer(&self, target: &Arc<Algebra>) -> Result<Poly, AlgebraError> {
        let map: Vec<Option<usize>> =
            self.alg.generators().iter().map(|g| target.find(&g.id())).collect();
        let mut out = Poly::zero(target);
        for (t, c) in &self.terms {
            let mut p = Poly::monomial(target, Term { mono: Monomial::one(), hbar: t.hbar, lambda: t.lambda }, c.clone());
            for (g, e) in t.mono.factors() {
                let idx = map[g].ok_or_else(|| AlgebraError::UnknownGenerator(self.alg.generator(g).id()))?;
                p = &p * &Poly::var(target, idx).pow(e);
            }
            out = &out + &p;
        }
        Ok(out)
    }

    /// Substitutes polynomials for even generators (a graded algebra map
    /// fixing every generator not listed).
    pub fn substitute(&self, subst: &BTreeMap<usize, Poly>) -> Poly {
        let mut out = Poly::zero(&self.alg);
        for (t, c) in &self.terms {
            let mut p = Poly::monomial(&self.alg, Term { mono: Monomial::one(), hbar: t.hbar, lambda: t.lambda }, c.clone());
            for (g, e) in t.mono.factors() {
                let factor = match subst.get(&g) {
                    Some(s) => s.pow(e),
                    None => Poly::monomial(&self.alg, Term::plain(Monomial::from_sorted([(g, e)])), Scalar::one()),
                };
                p = &p * &factor;
            }
            out = &out + &p;
        }
        out
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        self.alg.generator(idx)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    /// Canonical rendering: terms in `(degree, monomial, ħ, λ)` order,
    /// `h` and `l` for the formal parameters, unit coefficients elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            if t.hbar == 1 {
                factors.push("h".to_string());
            } else if t.hbar != 0 {
                factors.push(format!("h^{}", t.hbar));
            }
            if t.lambda == 1 {
                factors.push("l".to_string());
            } else if t.lambda != 0 {
                factors.push(format!("l^{}", t.lambda));
            }
            for (g, e) in t.mono.factors() {
                let id = self.alg.generator(g).id();
                factors.push(if e == 1 { id } else { format!("{id}^{e}") });
            }
            let negative = c.is_negative_like();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    /// Panics on mixed algebras; use [`Poly::try_mul`] for a checked product.
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same(rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { alg: self.alg.clone(), terms: self.terms.iter().map(|(t, c)| (t.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;

    fn alg(trunc: Truncation) -> Arc<Algebra> {
        let mut gens = vec![Generator::field("x", 0), Generator::field("y", 0), Generator::field("z", 0)];
        let anti: Vec<_> = gens.iter().map(Generator::antifield).collect();
        gens.extend(anti);
        gens.push(Generator::field("C1", 1));
        gens.push(Generator::field("C2", 1));
        Algebra::new(gens, trunc).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = alg(Truncation::default());
        let (x, y) = (Poly::gen(&a, "x").unwrap(), Poly::gen(&a, "y").unwrap());
        assert_eq!(((&x + &y) * (&x - &y)).to_string(), "x^2 - y^2");
    }

    #[test]
    fn ghost_products() {
        let a = alg(Truncation::default());
        let (c1, c2) = (Poly::gen(&a, "C1").unwrap(), Poly::gen(&a, "C2").unwrap());
        assert_eq!((&c2 * &c1).to_string(), "-C1*C2");
        assert!((&c1 * &c1).is_zero());
    }

    #[test]
    fn derivatives() {
        let a = alg(Truncation::default());
        let x = Poly::gen(&a, "x").unwrap();
        let z = Poly::gen(&a, "z").unwrap();
        let (c1, c2) = (Poly::gen(&a, "C1").unwrap(), Poly::gen(&a, "C2").unwrap());
        assert_eq!((&x * &x * &z).derivative_by("x").unwrap().to_string(), "2*x*z");
        let cc = &c1 * &c2;
        assert_eq!(cc.derivative_by("C1").unwrap(), c2);
        assert_eq!(cc.derivative_by("C2").unwrap(), -&c1);
    }

    #[test]
    fn gradings() {
        let a = alg(Truncation::default());
        let p = Poly::gen(&a, "x").unwrap() * Poly::gen(&a, "y‡").unwrap();
        let g = p.gradings()[0];
        assert_eq!((g.ghost, g.antifield, g.odd), (-1, 1, true));
        let g = (Poly::gen(&a, "C1").unwrap() * Poly::gen(&a, "C2").unwrap()).gradings()[0];
        assert_eq!((g.ghost, g.antifield, g.odd), (2, 0, false));
        let g = Poly::one(&a).gradings()[0];
        assert_eq!((g.ghost, g.antifield, g.total_antifield, g.pure_ghost, g.degree), (0, 0, 0, 0, 0));
    }

    #[test]
    fn series_coefficients() {
        let a = alg(Truncation::new(1, 2));
        let (x, y) = (Poly::gen(&a, "x").unwrap(), Poly::gen(&a, "y").unwrap());
        let p = &x + &(Poly::hbar(&a) * &y).scale(&Scalar::i());
        assert_eq!(p.series_coefficient(0, 0).unwrap(), x);
        assert!(p.series_coefficient(2, 0).is_err());
        let q = Poly::lambda(&a) * &y;
        assert_eq!(q.series_coefficient(0, 1).unwrap(), y);
    }

    #[test]
    fn truncation_drops_high_orders() {
        let a = alg(Truncation::new(1, 1));
        let h = Poly::hbar(&a);
        assert!((&h * &h).is_zero());
        assert_eq!((&h * &Poly::formal(&a, -1, 1)).to_string(), "l");
    }

    #[test]
    fn printing_with_formal_parameters() {
        let a = alg(Truncation::default());
        let x = Poly::gen(&a, "x").unwrap();
        let p = &(&x * &x) + &Poly::hbar(&a).scale(&Scalar::ratio(1, 2)).scale(&Scalar::i());
        assert_eq!(p.to_string(), "1/2*i*h + x^2");
        let q = Poly::lambda(&a).scale(&Scalar::ratio(-3, 6)) * &x;
        assert_eq!(q.to_string(), "-1/2*l*x");
    }

    #[test]
    fn mixed_algebras_error() {
        let a = alg(Truncation::default());
        let b = Algebra::new(vec![Generator::field("w", 0)], Truncation::default()).unwrap();
        assert_eq!(Poly::one(&a).try_mul(&Poly::one(&b)), Err(AlgebraError::MixedAlgebras));
    }
}
