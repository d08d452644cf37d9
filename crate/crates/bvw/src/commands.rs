//! Command-line surface and the dispatch from commands to library calls.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use bv_core::classical::{
    antibracket, bv_differential, check_cme, expand_by_ta, extended_action, gauge_fix, gauge_fixed_extended_action,
    is_symmetry, Model, Triviality,
};
use bv_core::cohomology::{cohomology_dim, BasisFilter, Differential};
use bv_core::graded::Poly;
use bv_core::lattice::PropagatorKind;

use crate::error::CliError;
use crate::report::{Report, Value};
use crate::setup::{LatticeSetup, Loaded, Setup};

#[derive(Debug, Parser)]
#[command(name = "bvw", version, about = "Exact BV calculus workbench")]
pub struct Cli {
    /// Model file.
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BracketKind {
    /// Classical antibracket.
    Anti,
    /// Peierls bracket of the free lattice action.
    Peierls,
    /// Antibracket with the ⋆-product.
    Star,
    /// Antibracket with the time-ordered product.
    T,
}

impl BracketKind {
    fn name(self) -> &'static str {
        match self {
            BracketKind::Anti => "anti",
            BracketKind::Peierls => "peierls",
            BracketKind::Star => "star",
            BracketKind::T => "t",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the classical master equation of the extended action.
    CheckCme,
    /// Test declared symmetries (or `--x`) and classify them.
    Symmetries {
        /// Degree bound for equation-of-motion multipliers.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// A vector field to test instead of the declared symmetries.
        #[arg(long)]
        x: Option<String>,
    },
    /// Print the extended action.
    Extend,
    /// Print the gauge-fixed extended action.
    GaugeFix,
    /// Gauge-fixed action and gauge-fixed BRST transformations.
    BrstTable,
    /// Truncated cohomology dimension.
    Cohomology {
        #[arg(long, allow_negative_numbers = true)]
        gh: i64,
        #[arg(long = "max-deg")]
        max_deg: u32,
        #[arg(long, default_value = "s")]
        diff: Differential,
        /// Restrict to monomials of this pure ghost number.
        #[arg(long = "pure-ghost", allow_negative_numbers = true)]
        pure_ghost: Option<i64>,
    },
    /// Export a lattice propagator.
    Propagator {
        #[arg(long, default_value = "causal")]
        kind: PropagatorKind,
    },
    /// Bracket of two expressions.
    Bracket {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum)]
        which: Option<BracketKind>,
    },
    /// ⋆-product of two lattice functionals.
    Star {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Time-ordered product of two lattice functionals.
    Tprod {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// S-matrix of the interaction, or the relative S-matrix of `--f`.
    Smatrix {
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        f: Option<String>,
    },
    /// Classical retarded Møller map of `--g`.
    Moller {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        g: String,
    },
    /// Check the quantum master equation of the free action plus interaction.
    Qme,
    /// Apply the quantum BV operator to `--x`.
    Qbv {
        #[arg(long)]
        x: String,
    },
}

impl Command {
    /// Canonical echo of the command and its arguments.
    pub fn echo(&self) -> String {
        let q = |s: &str| format!("'{s}'");
        match self {
            Command::CheckCme => "check-cme".into(),
            Command::Symmetries { degree, x } => {
                let mut s = format!("symmetries --degree {degree}");
                if let Some(x) = x {
                    s += &format!(" --x {}", q(x));
                }
                s
            }
            Command::Extend => "extend".into(),
            Command::GaugeFix => "gauge-fix".into(),
            Command::BrstTable => "brst-table".into(),
            Command::Cohomology { gh, max_deg, diff, pure_ghost } => {
                let mut s = format!("cohomology --gh {gh} --max-deg {max_deg} --diff {}", diff.name());
                if let Some(p) = pure_ghost {
                    s += &format!(" --pure-ghost {p}");
                }
                s
            }
            Command::Propagator { kind } => format!("propagator --kind {}", kind.name()),
            Command::Bracket { x, y, which } => {
                let mut s = format!("bracket --x {} --y {}", q(x), q(y));
                if let Some(w) = which {
                    s += &format!(" --which {}", w.name());
                }
                s
            }
            Command::Star { f, g } => format!("star --f {} --g {}", q(f), q(g)),
            Command::Tprod { f, g } => format!("tprod --f {} --g {}", q(f), q(g)),
            Command::Smatrix { order, f } => {
                let mut s = "smatrix".to_string();
                if let Some(o) = order {
                    s += &format!(" --order {o}");
                }
                if let Some(f) = f {
                    s += &format!(" --f {}", q(f));
                }
                s
            }
            Command::Moller { order, g } => format!("moller --order {order} --g {}", q(g)),
            Command::Qme => "qme".into(),
            Command::Qbv { x } => format!("qbv --x {}", q(x)),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::CheckCme => "check-cme",
            Command::Symmetries { .. } => "symmetries",
            Command::Extend => "extend",
            Command::GaugeFix => "gauge-fix",
            Command::BrstTable => "brst-table",
            Command::Cohomology { .. } => "cohomology",
            Command::Propagator { .. } => "propagator",
            Command::Bracket { .. } => "bracket",
            Command::Star { .. } => "star",
            Command::Tprod { .. } => "tprod",
            Command::Smatrix { .. } => "smatrix",
            Command::Moller { .. } => "moller",
            Command::Qme => "qme",
            Command::Qbv { .. } => "qbv",
        }
    }
}

fn finite<'a>(cmd: &Command, loaded: &'a Loaded) -> Result<&'a Model, CliError> {
    match &loaded.setup {
        Setup::Finite(m) => Ok(m),
        Setup::Lattice(_) => Err(CliError::Usage(format!("`{}` needs a finite-dimensional model", cmd.name()))),
    }
}

fn lattice<'a>(cmd: &Command, loaded: &'a Loaded) -> Result<&'a LatticeSetup, CliError> {
    match &loaded.setup {
        Setup::Lattice(l) => Ok(l),
        Setup::Finite(_) => Err(CliError::Usage(format!("`{}` needs a lattice model", cmd.name()))),
    }
}

fn interaction(l: &LatticeSetup) -> Poly {
    l.interaction.clone().unwrap_or_else(|| Poly::zero(l.algebra.algebra()))
}

fn triviality(t: Triviality) -> String {
    match t {
        Triviality::Trivial => "trivial".into(),
        Triviality::Nontrivial => "nontrivial".into(),
        Triviality::Unknown(d) => format!("unknown (multipliers up to degree {d})"),
    }
}

fn show(p: &Poly) -> Value {
    Value::Str(p.to_string())
}

/// Runs one command against a loaded model.
pub fn run(cmd: &Command, loaded: &Loaded) -> Result<Report, CliError> {
    let mut r = Report::new(cmd.echo(), loaded.hash.clone());
    match cmd {
        Command::CheckCme => {
            let m = finite(cmd, loaded)?;
            let cme = check_cme(m);
            let nilpotent = (0..m.algebra.len()).all(|g| {
                let x = Poly::var(&m.algebra, g);
                bv_differential(m, &bv_differential(m, &x)).is_zero()
            });
            r.push("holds", cme.holds);
            r.push("residual", show(&cme.residual));
            r.push("s_squared_zero", nilpotent);
            r.ok = cme.holds;
        }
        Command::Symmetries { degree, x } => {
            let m = finite(cmd, loaded)?;
            let mut fields: Vec<(String, Poly)> = Vec::new();
            match x {
                Some(src) => fields.push(("x".into(), loaded.expression(src)?)),
                None => {
                    for s in &m.symmetries {
                        let mut v = Poly::zero(&m.algebra);
                        for (&f, comp) in &s.rho {
                            let anti = m.algebra.partner(f).expect("fields have antifields");
                            v = &v + &(comp * &Poly::var(&m.algebra, anti));
                        }
                        fields.push((s.name.clone(), v));
                    }
                }
            }
            let mut items = Vec::new();
            for (name, v) in fields {
                let rep = is_symmetry(m, &v, *degree)?;
                items.push(Value::Obj(vec![
                    ("name".into(), name.into()),
                    ("vector_field".into(), show(&v)),
                    ("symmetry".into(), rep.symmetry.into()),
                    ("variation".into(), show(&rep.variation)),
                    ("triviality".into(), triviality(rep.triviality).into()),
                ]));
            }
            r.push("symmetries", Value::List(items));
        }
        Command::Extend => {
            let m = finite(cmd, loaded)?;
            r.push("extended_action", show(&extended_action(m)));
        }
        Command::GaugeFix => {
            let m = finite(cmd, loaded)?;
            let psi = m.gauge_fermion.clone().unwrap_or_else(|| Poly::zero(&m.algebra));
            r.push("gauge_fermion", show(&psi));
            r.push("gauge_fixed_extended_action", show(&gauge_fixed_extended_action(m)?));
        }
        Command::BrstTable => {
            let m = finite(cmd, loaded)?;
            let transformed = gauge_fix(m, &extended_action(m))?;
            let ta = expand_by_ta(m, &transformed);
            r.push("gauge_fixed_action", show(&ta.gauge_fixed_action));
            let rows =
                ta.brst_table.iter().map(|(g, p)| (m.algebra.generator(*g).id(), show(p))).collect::<Vec<_>>();
            r.push("brst", Value::Obj(rows));
        }
        Command::Cohomology { gh, max_deg, diff, pure_ghost } => {
            let m = finite(cmd, loaded)?;
            let rep = cohomology_dim(m, *diff, *gh, *max_deg, BasisFilter { pure_ghost: *pure_ghost })?;
            for (k, v) in rep.fields() {
                let value = match v.parse::<i64>() {
                    Ok(n) => Value::Int(n),
                    Err(_) => Value::Str(v),
                };
                r.push(k, value);
            }
            r.push("representatives", Value::List(rep.representative_cocycles.iter().map(show).collect()));
        }
        Command::Propagator { kind } => {
            let l = lattice(cmd, loaded)?;
            let m = l.algebra.propagators().get(*kind);
            r.push("kind", kind.name());
            r.push("lattice", l.algebra.lattice().to_string());
            r.push("symmetric", m.is_symmetric());
            r.push("antisymmetric", m.is_antisymmetric());
            let rows = m
                .entries
                .iter()
                .map(|row| Value::Str(row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")))
                .collect();
            r.push("rows", Value::List(rows));
        }
        Command::Bracket { x, y, which } => {
            let (px, py) = (loaded.expression(x)?, loaded.expression(y)?);
            let default = match loaded.setup {
                Setup::Finite(_) => BracketKind::Anti,
                Setup::Lattice(_) => BracketKind::Peierls,
            };
            let kind = which.unwrap_or(default);
            let value = match kind {
                BracketKind::Anti => antibracket(&px, &py),
                BracketKind::Peierls => {
                    let l = lattice(cmd, loaded)?;
                    l.algebra.report(&l.algebra.peierls(&px, &py))
                }
                BracketKind::Star => {
                    let l = lattice(cmd, loaded)?;
                    l.algebra.report(&l.algebra.star_bracket(&px, &py))
                }
                BracketKind::T => {
                    let l = lattice(cmd, loaded)?;
                    l.algebra.report(&l.algebra.t_bracket(&px, &py))
                }
            };
            r.push("bracket", kind.name());
            r.push("result", show(&value));
        }
        Command::Star { f, g } | Command::Tprod { f, g } => {
            let l = lattice(cmd, loaded)?;
            let (pf, pg) = (loaded.expression(f)?, loaded.expression(g)?);
            let value = match cmd {
                Command::Star { .. } => l.algebra.star(&pf, &pg),
                _ => l.algebra.tprod(&pf, &pg),
            };
            r.push("result", show(&l.algebra.report(&value)));
        }
        Command::Smatrix { order, f } => {
            let l = lattice(cmd, loaded)?;
            let v = interaction(l);
            let value = match f {
                Some(src) => l.algebra.bogoliubov(&v, &loaded.expression(src)?, *order)?,
                None => l.algebra.smatrix(&v, *order)?,
            };
            r.push("result", show(&l.algebra.report(&value)));
        }
        Command::Moller { order, g } => {
            let l = lattice(cmd, loaded)?;
            let value = l.algebra.classical_moller(&interaction(l), &loaded.expression(g)?, *order)?;
            r.push("result", show(&value));
        }
        Command::Qme => {
            let l = lattice(cmd, loaded)?;
            let q = l.algebra.check_qme(&l.algebra.free_action(), &interaction(l))?;
            r.push("holds", q.holds);
            r.push("holds_exponential", q.holds_exp);
            r.push("forms_agree", q.agree);
            r.push("residual", show(&q.residual));
            r.push("exponential_residual", show(&q.exp_residual));
            r.ok = q.holds;
        }
        Command::Qbv { x } => {
            let l = lattice(cmd, loaded)?;
            let (s, v, px) = (l.algebra.free_action(), interaction(l), loaded.expression(x)?);
            let q = l.algebra.quantum_bv(&s, &v, &px)?;
            r.push("result", show(&q.explicit));
            r.push("exponential", show(&q.exponential));
            r.push("qme_holds", q.qme_holds);
            r.push("forms_agree", q.agree);
            r.push("warning", q.warning);
            r.push("s_hat_squared_zero", l.algebra.s_hat_squared(&s, &v, &px).is_zero());
        }
    }
    Ok(r)
}
