//! Turns a parsed model file into a validated model or lattice setup.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use bv_core::classical::{LieStructure, Model, NonminimalPair, SymmetryGenerator};
use bv_core::graded::{Algebra, Poly, Scalar, Truncation};
use bv_core::lattice::{Lattice, LatticeAlgebra};
use bv_core::models::{self, Content};

use crate::dsl::{self, Binding, Expr, GenKind, ModelFile, Pos, Use};
use crate::error::CliError;

/// Identifiers with a fixed meaning inside expressions.
const RESERVED: [&str; 6] = ["i", "h", "l", "sum", "prod", "use"];

/// Free scalar field on a lattice with an optional interaction.
#[derive(Clone, Debug)]
pub struct LatticeSetup {
    pub algebra: LatticeAlgebra,
    pub interaction: Option<Poly>,
}

#[derive(Clone, Debug)]
pub enum Setup {
    Finite(Model),
    Lattice(Box<LatticeSetup>),
}

/// A loaded model file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub file: ModelFile,
    pub setup: Setup,
    pub params: HashMap<String, BigRational>,
    /// First 16 hex digits of the SHA-256 of the canonical model text.
    pub hash: String,
}

impl Loaded {
    /// Evaluates a command-line expression in this model's algebra.
    pub fn expression(&self, src: &str) -> Result<Poly, CliError> {
        let e = dsl::parse_expr(src)?;
        let alg = match &self.setup {
            Setup::Finite(m) => &m.algebra,
            Setup::Lattice(l) => l.algebra.algebra(),
        };
        Env::new(&self.params).poly(&e, alg, false)
    }
}

/// Parses and validates model text.
pub fn load(src: &str, truncation: Truncation) -> Result<Loaded, CliError> {
    let file = dsl::parse(src)?;
    build(file, truncation)
}

pub fn model_hash(file: &ModelFile) -> String {
    let digest = Sha256::digest(file.to_string().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn build(file: ModelFile, truncation: Truncation) -> Result<Loaded, CliError> {
    let mut params = HashMap::new();
    for b in &file.params {
        check_name(&b.name, b.pos)?;
        let v = Env::new(&params).constant(&b.value)?;
        params.insert(b.name.clone(), v);
    }
    let env = Env::new(&params);

    let mut finite: Option<Model> = None;
    let mut lattice: Option<Lattice> = None;
    let mut interaction_uses: Vec<&Use> = Vec::new();
    for u in &file.uses {
        match u.name.as_str() {
            "toy_circles" | "lie_gauge" | "ym_matrix" => {
                if finite.is_some() || lattice.is_some() {
                    return Err(CliError::invalid(u.pos, "only one model may be loaded with `use`"));
                }
                finite = Some(builtin_model(u, &env)?);
            }
            "free_scalar" => {
                if finite.is_some() || lattice.is_some() {
                    return Err(CliError::invalid(u.pos, "only one model may be loaded with `use`"));
                }
                lattice = Some(free_scalar(u, &env)?);
            }
            "phi4" | "ghost_theta" | "theta" => interaction_uses.push(u),
            other => return Err(CliError::invalid(u.pos, format!("unknown built-in `{other}`"))),
        }
    }

    let explicit_finite = !file.generators.is_empty()
        || !file.action.is_empty()
        || !file.symmetries.is_empty()
        || !file.structure.is_empty()
        || !file.nonminimal.is_empty()
        || !file.gauge_fermion.is_empty();
    if explicit_finite {
        if let Some(u) = file.uses.first().filter(|_| finite.is_some() || lattice.is_some()) {
            return Err(CliError::invalid(u.pos, "a built-in model cannot be combined with model sections"));
        }
        finite = Some(explicit_model(&file, &env, truncation)?);
    }
    if !file.lattice.is_empty() {
        if lattice.is_some() || finite.is_some() {
            return Err(CliError::invalid(file.lattice[0].pos, "[lattice] conflicts with another model definition"));
        }
        lattice = Some(lattice_section(&file.lattice, &env)?);
    }

    let setup = match (finite, lattice) {
        (Some(m), None) => {
            if let Some(u) = interaction_uses.first() {
                return Err(CliError::invalid(u.pos, "interactions need a lattice model"));
            }
            if let Some(b) = file.interaction.first() {
                return Err(CliError::invalid(b.pos, "interactions need a lattice model"));
            }
            Setup::Finite(m)
        }
        (None, Some(lat)) => {
            let algebra = LatticeAlgebra::new(lat, truncation)?;
            let mut v: Option<Poly> = None;
            let mut add = |p: Poly| v = Some(match v.take() { Some(acc) => &acc + &p, None => p });
            for u in interaction_uses {
                add(lattice_builtin(u, &env, &algebra)?);
            }
            for b in &file.interaction {
                add(env.poly(&b.value, algebra.algebra(), false)?);
            }
            Setup::Lattice(Box::new(LatticeSetup { algebra, interaction: v }))
        }
        (None, None) => return Err(CliError::Usage("the model file defines no model".into())),
        (Some(_), Some(_)) => unreachable!("conflicts are rejected above"),
    };
    let hash = model_hash(&file);
    Ok(Loaded { file, setup, params, hash })
}

fn check_name(name: &str, pos: Pos) -> Result<(), CliError> {
    if RESERVED.contains(&name) {
        Err(CliError::invalid(pos, format!("`{name}` is reserved")))
    } else {
        Ok(())
    }
}

/// Positional or keyed arguments of a `use` line.
struct Args<'a> {
    u: &'a Use,
    env: &'a Env<'a>,
}

impl<'a> Args<'a> {
    fn flags(&self) -> Vec<String> {
        self.u
            .args
            .iter()
            .filter(|a| a.key.is_none())
            .filter_map(|a| match &a.value {
                Expr::Ident { name, indices, .. } if indices.is_empty() && self.env.lookup(name).is_none() => {
                    Some(name.clone())
                }
                _ => None,
            })
            .collect()
    }

    fn numbers(&self) -> Vec<&'a Expr> {
        self.u
            .args
            .iter()
            .filter(|a| {
                a.key.is_none()
                    && !matches!(&a.value, Expr::Ident { name, indices, .. }
                        if indices.is_empty() && self.env.lookup(name).is_none())
            })
            .map(|a| &a.value)
            .collect()
    }

    /// Value of the argument called `key`, or of the `index`-th positional
    /// numeric argument.
    fn value(&self, key: &str, index: usize) -> Result<Option<BigRational>, CliError> {
        if let Some(a) = self.u.args.iter().find(|a| a.key.as_deref() == Some(key)) {
            return self.env.constant(&a.value).map(Some);
        }
        self.numbers().get(index).map(|e| self.env.constant(e)).transpose()
    }

    fn required(&self, key: &str, index: usize) -> Result<BigRational, CliError> {
        self.value(key, index)?
            .ok_or_else(|| CliError::invalid(self.u.pos, format!("`{}` needs argument `{key}`", self.u.name)))
    }

    fn count(&self, key: &str, index: usize) -> Result<usize, CliError> {
        let v = self.required(key, index)?;
        to_count(&v).ok_or_else(|| CliError::invalid(self.u.pos, format!("`{key}` must be a nonnegative integer")))
    }

    fn check_flags(&self, allowed: &[&str]) -> Result<Vec<String>, CliError> {
        let flags = self.flags();
        if let Some(bad) = flags.iter().find(|f| !allowed.contains(&f.as_str())) {
            return Err(CliError::invalid(self.u.pos, format!("unknown option `{bad}` for `{}`", self.u.name)));
        }
        Ok(flags)
    }
}

fn to_count(v: &BigRational) -> Option<usize> {
    v.is_integer().then(|| v.to_integer().to_usize()).flatten()
}

fn builtin_model(u: &Use, env: &Env) -> Result<Model, CliError> {
    let args = Args { u, env };
    let model = match u.name.as_str() {
        "toy_circles" => {
            args.check_flags(&[])?;
            let n = args.count("N", 0)?;
            if n == 0 {
                return Err(CliError::invalid(u.pos, "`N` must be at least 1"));
            }
            models::toy_circles(n as u32)?
        }
        "lie_gauge" => {
            let flags = args.check_flags(&["su2", "adjoint", "gauge_fixed"])?;
            if !flags.iter().any(|f| f == "su2") {
                return Err(CliError::invalid(u.pos, "only `su2` is available"));
            }
            models::lie_gauge(flags.iter().any(|f| f == "adjoint"), flags.iter().any(|f| f == "gauge_fixed"))?
        }
        "ym_matrix" => {
            let flags = args.check_flags(&["su2", "gauge_fixed"])?;
            let d = args.value("d", 0)?.map_or(Some(0), |v| to_count(&v));
            let d = d.ok_or_else(|| CliError::invalid(u.pos, "`d` must be a nonnegative integer"))?;
            models::ym_matrix(d as u32, flags.iter().any(|f| f == "gauge_fixed"))?
        }
        _ => unreachable!("dispatched by name"),
    };
    Ok(model)
}

fn free_scalar(u: &Use, env: &Env) -> Result<Lattice, CliError> {
    let args = Args { u, env };
    args.check_flags(&[])?;
    let nt = args.count("Nt", 0)?;
    let nx = args.count("Nx", 1)?;
    let one = BigRational::from_integer(1.into());
    let a_t = args.value("a_t", 2)?.unwrap_or_else(|| one.clone());
    let a_x = args.value("a_x", 3)?.unwrap_or(one);
    let m2 = args.value("m2", 4)?.unwrap_or_else(BigRational::zero);
    Ok(Lattice::new(nt, nx, a_t, a_x, m2)?)
}

fn lattice_section(items: &[Binding], env: &Env) -> Result<Lattice, CliError> {
    let mut values: BTreeMap<&str, BigRational> = BTreeMap::new();
    for b in items {
        if !["Nt", "Nx", "a_t", "a_x", "m2"].contains(&b.name.as_str()) {
            return Err(CliError::invalid(b.pos, format!("unknown lattice parameter `{}`", b.name)));
        }
        values.insert(b.name.as_str(), env.constant(&b.value)?);
    }
    let pos = items[0].pos;
    let count = |k: &str| {
        values
            .get(k)
            .and_then(to_count)
            .ok_or_else(|| CliError::invalid(pos, format!("[lattice] needs a nonnegative integer `{k}`")))
    };
    let one = BigRational::from_integer(1.into());
    Ok(Lattice::new(
        count("Nt")?,
        count("Nx")?,
        values.get("a_t").cloned().unwrap_or_else(|| one.clone()),
        values.get("a_x").cloned().unwrap_or(one),
        values.get("m2").cloned().unwrap_or_else(BigRational::zero),
    )?)
}

fn lattice_builtin(u: &Use, env: &Env, l: &LatticeAlgebra) -> Result<Poly, CliError> {
    let args = Args { u, env };
    args.check_flags(&[])?;
    if u.name == "phi4" {
        let g = args.required("coupling", 0)?;
        return Ok(l.quartic(&Scalar::from(g)));
    }
    let lat = l.lattice();
    let site = |k: usize, name: &str| -> Result<usize, CliError> {
        let t = args.count(&format!("t_{name}"), 2 * k)?;
        let x = args.count(&format!("x_{name}"), 2 * k + 1)?;
        if t >= lat.nt || x >= lat.nx {
            return Err(CliError::invalid(u.pos, format!("site ({t},{x}) is outside the lattice")));
        }
        Ok(lat.index(t, x))
    };
    let (a, b) = (site(0, "a")?, site(1, "b")?);
    let interior = l.interior_sites();
    if !interior.contains(&a) || !interior.contains(&b) || a == b {
        return Err(CliError::invalid(u.pos, "theta needs two distinct sites on interior time slices"));
    }
    Ok(if u.name == "theta" { l.theta(a, b) } else { l.ghost_theta(a, b) })
}

fn explicit_model(file: &ModelFile, env: &Env, truncation: Truncation) -> Result<Model, CliError> {
    let mut content = Content::default();
    let mut declared: HashMap<String, Pos> = HashMap::new();
    let mut declare = |name: &str, pos: Pos| -> Result<(), CliError> {
        check_name(name, pos)?;
        if declared.insert(name.to_string(), pos).is_some() || env.params.contains_key(name) {
            return Err(CliError::invalid(pos, format!("`{name}` is declared twice")));
        }
        Ok(())
    };
    for g in &file.generators {
        for n in &g.names {
            declare(n, g.pos)?;
            match g.kind {
                GenKind::Even => content.fields.push(n.clone()),
                GenKind::Ghost => content.ghosts.push(n.clone()),
            }
        }
    }
    for p in &file.nonminimal {
        declare(&p.antighost, p.pos)?;
        declare(&p.multiplier, p.pos)?;
        content.nonminimal.push((p.antighost.clone(), p.multiplier.clone()));
    }
    let alg = content.algebra(truncation)?;

    let single = |items: &[Binding], what: &str| -> Result<Option<Poly>, CliError> {
        match items {
            [] => Ok(None),
            [b] => env.poly(&b.value, &alg, false).map(Some),
            [_, b, ..] => Err(CliError::invalid(b.pos, format!("only one {what} may be declared"))),
        }
    };
    let action = single(&file.action, "action")?.unwrap_or_else(|| Poly::zero(&alg));

    let mut symmetries = Vec::new();
    let mut ghost_slot: HashMap<&str, usize> = HashMap::new();
    for s in &file.symmetries {
        if !content.ghosts.contains(&s.ghost) {
            return Err(CliError::Undeclared { pos: s.pos, name: s.ghost.clone() });
        }
        if ghost_slot.insert(s.ghost.as_str(), symmetries.len()).is_some() {
            return Err(CliError::invalid(s.pos, format!("ghost `{}` is used by two symmetries", s.ghost)));
        }
        let x = env.poly(&s.field, &alg, true)?;
        let mut rho = BTreeMap::new();
        let mut rebuilt = Poly::zero(&alg);
        for f in &content.fields {
            let idx = alg.lookup(f)?;
            let anti = alg.partner(idx).expect("fields have antifields");
            let comp = x.derivative(anti);
            if !comp.is_zero() {
                rebuilt = &rebuilt + &(&comp * &Poly::var(&alg, anti));
                rho.insert(idx, comp);
            }
        }
        if rebuilt != x || rho.values().any(|c| c.support().iter().any(|&g| alg.is_antifield(g))) {
            return Err(CliError::invalid(s.pos, "a symmetry must be a sum of terms `coefficient*d/dfield` over even fields"));
        }
        symmetries.push(SymmetryGenerator { name: s.name.clone(), ghost: alg.lookup(&s.ghost)?, rho });
    }

    let structure = if file.structure.is_empty() {
        None
    } else {
        let n = symmetries.len();
        let mut f = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for c in &file.structure {
            let slot = |g: &str| ghost_slot.get(g).copied().ok_or_else(|| CliError::Undeclared { pos: c.pos, name: g.to_string() });
            let (a, b) = (slot(&c.a)?, slot(&c.b)?);
            let value = env.poly(&c.value, &alg, false)?;
            let mut rebuilt = Poly::zero(&alg);
            for s in &symmetries {
                let coeff = value.derivative(s.ghost);
                if !coeff.support().is_empty() || !coeff.is_classical() {
                    return Err(CliError::invalid(c.pos, "structure constants must be numbers"));
                }
                let k = coeff.coefficient_of(&bv_core::graded::Term::plain(bv_core::graded::Monomial::one()));
                rebuilt = &rebuilt + &Poly::var(&alg, s.ghost).scale(&k);
                let cidx = ghost_slot[alg.generator(s.ghost).id().as_str()];
                f[cidx][a][b] = k.clone();
                f[cidx][b][a] = -k;
            }
            if rebuilt != value {
                return Err(CliError::invalid(c.pos, "`comm` must equal a linear combination of symmetry ghosts"));
            }
        }
        Some(LieStructure::new(f)?)
    };

    let nonminimal = content
        .nonminimal
        .iter()
        .map(|(c, b)| Ok(NonminimalPair { antighost: alg.lookup(c)?, multiplier: alg.lookup(b)? }))
        .collect::<Result<Vec<_>, CliError>>()?;
    let psi = single(&file.gauge_fermion, "gauge fermion")?;
    Ok(Model::new("model", action, symmetries, structure, nonminimal, psi)?)
}

/// Expression evaluation context: parameters plus bound summation indices.
pub(crate) struct Env<'a> {
    params: &'a HashMap<String, BigRational>,
    bound: Vec<(String, BigRational)>,
}

impl<'a> Env<'a> {
    pub(crate) fn new(params: &'a HashMap<String, BigRational>) -> Self {
        Self { params, bound: Vec::new() }
    }

    fn lookup(&self, name: &str) -> Option<&BigRational> {
        self.bound.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v).or_else(|| self.params.get(name))
    }

    fn integer(&self, e: &Expr) -> Result<BigInt, CliError> {
        let v = self.constant(e)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(CliError::invalid(pos_of(e), format!("`{e}` must be an integer")))
        }
    }

    fn range(&self, lo: &Expr, hi: &Expr) -> Result<Vec<BigInt>, CliError> {
        let (lo, hi) = (self.integer(lo)?, self.integer(hi)?);
        let mut out = Vec::new();
        let mut k = lo;
        while k <= hi {
            out.push(k.clone());
            k += 1;
        }
        Ok(out)
    }

    fn exponent(&self, e: &Expr) -> Result<u32, CliError> {
        self.integer(e)?
            .to_u32()
            .ok_or_else(|| CliError::invalid(pos_of(e), format!("exponent `{e}` must be a nonnegative integer")))
    }

    /// Evaluates an expression that may only mention numbers and parameters.
    pub(crate) fn constant(&self, e: &Expr) -> Result<BigRational, CliError> {
        Ok(match e {
            Expr::Num(n) => n.clone(),
            Expr::Ident { name, indices, pos } => match self.lookup(name) {
                Some(v) if indices.is_empty() => v.clone(),
                _ => return Err(CliError::Undeclared { pos: *pos, name: name.clone() }),
            },
            Expr::Deriv { pos, .. } => return Err(CliError::invalid(*pos, "`d/d` is only allowed in symmetries")),
            Expr::Neg(a) => -self.constant(a)?,
            Expr::Add(a, b) => self.constant(a)? + self.constant(b)?,
            Expr::Sub(a, b) => self.constant(a)? - self.constant(b)?,
            Expr::Mul(a, b) => self.constant(a)? * self.constant(b)?,
            Expr::Pow(a, b) => num_traits::pow(self.constant(a)?, self.exponent(b)? as usize),
            Expr::Fold { product, var, lo, hi, body } => {
                let mut acc = BigRational::from_integer(if *product { 1 } else { 0 }.into());
                for k in self.range(lo, hi)? {
                    let mut inner = Env { params: self.params, bound: self.bound.clone() };
                    inner.bound.push((var.clone(), BigRational::from_integer(k)));
                    let v = inner.constant(body)?;
                    acc = if *product { acc * v } else { acc + v };
                }
                acc
            }
        })
    }

    /// Evaluates an expression in `alg`. With `derivations`, `d/dX` stands
    /// for the antifield of `X`.
    pub(crate) fn poly(&self, e: &Expr, alg: &Arc<Algebra>, derivations: bool) -> Result<Poly, CliError> {
        Ok(match e {
            Expr::Num(n) => Poly::constant(alg, Scalar::from(n.clone())),
            Expr::Ident { name, indices, pos } => {
                if indices.is_empty() {
                    if let Some(v) = self.lookup(name) {
                        return Ok(Poly::constant(alg, Scalar::from(v.clone())));
                    }
                    match name.as_str() {
                        "i" => return Ok(Poly::constant(alg, Scalar::i())),
                        "h" => return Ok(Poly::hbar(alg)),
                        "l" => return Ok(Poly::lambda(alg)),
                        _ => {}
                    }
                }
                let id = if indices.is_empty() {
                    name.clone()
                } else {
                    let idx = indices.iter().map(|i| self.integer(i).map(|v| v.to_string())).collect::<Result<Vec<_>, _>>()?;
                    format!("{name}[{}]", idx.join(","))
                };
                match alg.find(&id) {
                    Some(g) => Poly::var(alg, g),
                    None => return Err(CliError::Undeclared { pos: *pos, name: id }),
                }
            }
            Expr::Deriv { target, pos } => {
                let anti = derivations
                    .then(|| alg.find(target))
                    .flatten()
                    .filter(|&g| !alg.is_antifield(g) && !alg.is_odd(g))
                    .and_then(|g| alg.partner(g));
                match anti {
                    Some(a) => Poly::var(alg, a),
                    None if !derivations => return Err(CliError::invalid(*pos, "`d/d` is only allowed in symmetries")),
                    None => return Err(CliError::Undeclared { pos: *pos, name: target.clone() }),
                }
            }
            Expr::Neg(a) => -self.poly(a, alg, derivations)?,
            Expr::Add(a, b) => &self.poly(a, alg, derivations)? + &self.poly(b, alg, derivations)?,
            Expr::Sub(a, b) => &self.poly(a, alg, derivations)? - &self.poly(b, alg, derivations)?,
            Expr::Mul(a, b) => &self.poly(a, alg, derivations)? * &self.poly(b, alg, derivations)?,
            Expr::Pow(a, b) => self.poly(a, alg, derivations)?.pow(self.exponent(b)?),
            Expr::Fold { product, var, lo, hi, body } => {
                let mut acc = if *product { Poly::one(alg) } else { Poly::zero(alg) };
                for k in self.range(lo, hi)? {
                    let mut inner = Env { params: self.params, bound: self.bound.clone() };
                    inner.bound.push((var.clone(), BigRational::from_integer(k)));
                    let v = inner.poly(body, alg, derivations)?;
                    acc = if *product { &acc * &v } else { &acc + &v };
                }
                acc
            }
        })
    }
}

fn pos_of(e: &Expr) -> Pos {
    match e {
        Expr::Ident { pos, .. } | Expr::Deriv { pos, .. } => *pos,
        Expr::Neg(a) | Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Mul(a, _) | Expr::Pow(a, _) => pos_of(a),
        Expr::Fold { lo, .. } => pos_of(lo),
        Expr::Num(_) => Pos::default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load_default(src: &str) -> Result<Loaded, CliError> {
        load(src, Truncation::default())
    }

    #[test]
    fn builtin_circles() {
        let l = load_default("use toy_circles(N=1)\n").unwrap();
        let Setup::Finite(m) = &l.setup else { panic!("finite model expected") };
        assert_eq!(m.action.to_string(), "-z + x^2*z + y^2*z");
        assert_eq!(m.symmetries.len(), 1);
    }

    #[test]
    fn hand_written_circles_match_builtin() {
        let src = "[generators]\neven x, y, z\nghost c\n[action]\nS = z*(x^2 + y^2 - 1)\n[symmetries]\nrotation : c -> y*d/dx - x*d/dy\n";
        let Setup::Finite(m) = load_default(src).unwrap().setup else { panic!() };
        let b = models::toy_circles(1).unwrap();
        assert_eq!(m.action.to_string(), b.action.to_string());
        let rho: Vec<String> = m.symmetries[0].rho.values().map(|p| p.to_string()).collect();
        assert_eq!(rho, ["y", "-x"]);
    }

    #[test]
    fn missing_ghost_is_rejected() {
        let err = load_default("[generators]\neven x\n[action]\nS = x^2\n[symmetries]\ns1 : C -> x*d/dx\n").unwrap_err();
        assert!(matches!(err, CliError::Undeclared { ref name, .. } if name == "C"), "{err}");
    }

    #[test]
    fn undeclared_identifier() {
        let err = load_default("[generators]\neven x\n[action]\nS = x*y\n").unwrap_err();
        assert_eq!(err.to_string(), "4:7: undeclared identifier `y`");
    }

    #[test]
    fn grading_violation() {
        let err = load_default("[generators]\neven x\nghost c\n[action]\nS = x*c\n").unwrap_err();
        assert!(matches!(err, CliError::Model(_)), "{err}");
    }

    #[test]
    fn params_and_folds() {
        let src = "[params]\nN = 2\n[generators]\neven x, y, z\nghost c\n[action]\nS = z*prod(k = 1..N, x^2 + y^2 - k^2)\n";
        let Setup::Finite(m) = load_default(src).unwrap().setup else { panic!() };
        assert_eq!(m.action, models::toy_circles(2).unwrap().action.transfer(&m.algebra).unwrap());
    }

    #[test]
    fn structure_section() {
        let src = "[generators]\nghost C1, C2, C3\n[symmetries]\na : C1 -> 0\nb : C2 -> 0\nc : C3 -> 0\n[structure]\ncomm(C1, C2) = C3\ncomm(C2, C3) = C1\ncomm(C3, C1) = C2\n";
        let Setup::Finite(m) = load_default(src).unwrap().setup else { panic!() };
        assert_eq!(m.structure, LieStructure::su2());
    }

    #[test]
    fn lattice_with_interaction() {
        let src = "use free_scalar(4, 2, 1, 1, 1)\nuse phi4(1)\n";
        let Setup::Lattice(l) = load_default(src).unwrap().setup else { panic!() };
        assert_eq!(l.interaction.unwrap(), l.algebra.quartic(&Scalar::one()));
        let src = "[lattice]\nNt = 4\nNx = 2\nm2 = 1\n[interaction]\nV = l*1/24*sum(t = 0..3, sum(x = 0..1, phi[t, x]^4))\n";
        let Setup::Lattice(l) = load_default(src).unwrap().setup else { panic!() };
        assert_eq!(l.interaction.unwrap(), l.algebra.quartic(&Scalar::one()));
    }

    #[test]
    fn hash_ignores_layout() {
        let a = load_default("use toy_circles(N=1)\n").unwrap();
        let b = load_default("# comment\n\nuse   toy_circles( N = 1 )\n").unwrap();
        assert_eq!(a.hash, b.hash);
        assert_eq!(a.hash.len(), 16);
    }
}
