//! Model-file language: lexer, syntax tree, LL(1) parser and canonical
//! printer.
//!
//! ```text
//! # concentric circles, written out by hand
//! [generators]
//! even x, y, z
//! ghost c
//!
//! [action]
//! S = z*(x^2 + y^2 - 1)
//!
//! [symmetries]
//! rotation : c -> y*d/dx - x*d/dy
//! ```
//!
//! Every statement ends at a newline; newlines inside parentheses or
//! brackets are ignored. `#` starts a comment.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::CliError;

/// Source position, 1-based. Positions never take part in equality, so two
/// trees that differ only in layout compare equal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    /// `d/dX`, the coordinate vector field of `X`.
    Deriv(String),
    Number(BigRational),
    Sym(&'static str),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Deriv(s) => write!(f, "`d/d{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const SYMBOLS: [&str; 14] = ["->", "..", "+", "-", "*", "^", "(", ")", "[", "]", ",", "=", ":", ";"];

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, CliError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let mut depth = 0i32;
    let ident_at = |start: usize| -> (String, usize) {
        let mut j = start;
        while j < chars.len() && is_ident_char(chars[j]) {
            j += 1;
        }
        if j < chars.len() && chars[j] == '‡' {
            j += 1;
        }
        (chars[start..j].iter().collect(), j)
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            if depth == 0 {
                out.push((Tok::Newline, pos));
            }
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let num: String = chars[i..j].iter().collect();
            let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
            if j + 1 < chars.len() && chars[j] == '/' && chars[j + 1].is_ascii_digit() {
                let mut k = j + 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let den: BigInt = chars[j + 1..k].iter().collect::<String>().parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(CliError::syntax(pos, "zero denominator"));
                }
                value /= BigRational::from_integer(den);
                j = k;
            }
            out.push((Tok::Number(value), pos));
            col += j - i;
            i = j;
            continue;
        }
        if is_ident_start(c) {
            let (name, j) = ident_at(i);
            // `d/dX` is lexed as a single token.
            if name == "d" && j + 2 < chars.len() && chars[j] == '/' && chars[j + 1] == 'd' && is_ident_start(chars[j + 2]) {
                let (target, k) = ident_at(j + 2);
                out.push((Tok::Deriv(target), pos));
                col += k - i;
                i = k;
                continue;
            }
            out.push((Tok::Ident(name), pos));
            col += j - i;
            i = j;
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) else {
            return Err(CliError::syntax(pos, format!("unexpected character `{c}`")));
        };
        match *sym {
            "(" | "[" => depth += 1,
            ")" | "]" => depth -= 1,
            _ => {}
        }
        out.push((Tok::Sym(sym), pos));
        i += sym.chars().count();
        col += sym.chars().count();
    }
    out.push((Tok::Newline, Pos { line, col }));
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

/// Polynomial expressions.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Nonnegative rational literal.
    Num(BigRational),
    /// Identifier with optional lattice indices, e.g. `phi[t, x]`.
    Ident { name: String, indices: Vec<Expr>, pos: Pos },
    Deriv { target: String, pos: Pos },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    /// `sum(k = lo..hi, body)` or `prod(k = lo..hi, body)`, bounds inclusive.
    Fold { product: bool, var: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(n) => write!(f, "{n}")?,
            Expr::Ident { name, indices, .. } => {
                f.write_str(name)?;
                if !indices.is_empty() {
                    f.write_str("[")?;
                    for (k, e) in indices.iter().enumerate() {
                        if k > 0 {
                            f.write_str(", ")?;
                        }
                        e.write(f, 0)?;
                    }
                    f.write_str("]")?;
                }
            }
            Expr::Deriv { target, .. } => write!(f, "d/d{target}")?,
            Expr::Neg(e) => {
                f.write_str("-")?;
                e.write(f, 3)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.write(f, 2)?;
                f.write_str("*")?;
                b.write(f, 3)?;
            }
            Expr::Pow(a, b) => {
                a.write(f, 5)?;
                f.write_str("^")?;
                b.write(f, 5)?;
            }
            Expr::Fold { product, var, lo, hi, body } => {
                f.write_str(if *product { "prod(" } else { "sum(" })?;
                write!(f, "{var} = ")?;
                lo.write(f, 0)?;
                f.write_str("..")?;
                hi.write(f, 0)?;
                f.write_str(", ")?;
                body.write(f, 0)?;
                f.write_str(")")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

/// `name = value` or a bare value in a `use` argument list.
#[derive(Clone, Debug, PartialEq)]
pub struct UseArg {
    pub key: Option<String>,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Use {
    pub name: String,
    pub args: Vec<UseArg>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub name: String,
    pub value: Expr,
    pub pos: Pos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Even,
    Ghost,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenDecl {
    pub kind: GenKind,
    pub names: Vec<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymDecl {
    pub name: String,
    pub ghost: String,
    /// Vector field written with `d/dX` factors.
    pub field: Expr,
    pub pos: Pos,
}

/// `comm(a, b) = Σ f^c_{ab} c`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommDecl {
    pub a: String,
    pub b: String,
    pub value: Expr,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairDecl {
    pub antighost: String,
    pub multiplier: String,
    pub pos: Pos,
}

/// A parsed model file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModelFile {
    pub uses: Vec<Use>,
    pub params: Vec<Binding>,
    pub generators: Vec<GenDecl>,
    pub action: Vec<Binding>,
    pub symmetries: Vec<SymDecl>,
    pub structure: Vec<CommDecl>,
    pub nonminimal: Vec<PairDecl>,
    pub gauge_fermion: Vec<Binding>,
    pub lattice: Vec<Binding>,
    pub interaction: Vec<Binding>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Params,
    Generators,
    Action,
    Symmetries,
    Structure,
    Nonminimal,
    GaugeFermion,
    Lattice,
    Interaction,
}

impl Section {
    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "params" => Self::Params,
            "generators" => Self::Generators,
            "action" => Self::Action,
            "symmetries" => Self::Symmetries,
            "structure" => Self::Structure,
            "nonminimal" => Self::Nonminimal,
            "gauge_fermion" => Self::GaugeFermion,
            "lattice" => Self::Lattice,
            "interaction" => Self::Interaction,
            _ => return None,
        })
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T, CliError> {
        Err(CliError::syntax(self.pos(), format!("expected {wanted}, found {}", self.peek())))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn sym(&mut self, s: &str) -> Result<(), CliError> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&format!("`{s}`"))
        }
    }

    fn ident(&mut self) -> Result<(String, Pos), CliError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let p = self.bump().1;
                Ok((s, p))
            }
            _ => self.unexpected("an identifier"),
        }
    }

    fn end_of_statement(&mut self) -> Result<(), CliError> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.unexpected("end of line"),
        }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym("+") {
                self.bump();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym("-") {
                self.bump();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        while self.is_sym("*") {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.is_sym("-") {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.is_sym("^") {
            self.bump();
            let exp = self.atom()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                Ok(Expr::Num(n))
            }
            Tok::Deriv(target) => {
                let pos = self.bump().1;
                Ok(Expr::Deriv { target, pos })
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.sym(")")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let pos = self.bump().1;
                if (name == "sum" || name == "prod") && self.is_sym("(") {
                    self.bump();
                    let (var, _) = self.ident()?;
                    self.sym("=")?;
                    let lo = self.expr()?;
                    self.sym("..")?;
                    let hi = self.expr()?;
                    self.sym(",")?;
                    let body = self.expr()?;
                    self.sym(")")?;
                    return Ok(Expr::Fold {
                        product: name == "prod",
                        var,
                        lo: Box::new(lo),
                        hi: Box::new(hi),
                        body: Box::new(body),
                    });
                }
                let mut indices = Vec::new();
                if self.is_sym("[") {
                    self.bump();
                    indices.push(self.expr()?);
                    while self.is_sym(",") {
                        self.bump();
                        indices.push(self.expr()?);
                    }
                    self.sym("]")?;
                }
                Ok(Expr::Ident { name, indices, pos })
            }
            _ => self.unexpected("an expression"),
        }
    }

    fn binding(&mut self) -> Result<Binding, CliError> {
        let (name, pos) = self.ident()?;
        self.sym("=")?;
        let value = self.expr()?;
        Ok(Binding { name, value, pos })
    }

    fn use_stmt(&mut self) -> Result<Use, CliError> {
        let pos = self.bump().1;
        let (name, _) = self.ident()?;
        let mut args = Vec::new();
        self.sym("(")?;
        if !self.is_sym(")") {
            loop {
                args.push(self.use_arg()?);
                if !self.is_sym(",") {
                    break;
                }
                self.bump();
            }
        }
        self.sym(")")?;
        Ok(Use { name, args, pos })
    }

    /// `key = value` needs two tokens of lookahead on the surface; it is
    /// parsed as an expression first and reinterpreted when `=` follows a
    /// bare identifier.
    fn use_arg(&mut self) -> Result<UseArg, CliError> {
        let value = self.expr()?;
        if self.is_sym("=") {
            if let Expr::Ident { name, indices, .. } = &value {
                if indices.is_empty() {
                    let key = name.clone();
                    self.bump();
                    return Ok(UseArg { key: Some(key), value: self.expr()? });
                }
            }
            return self.unexpected("`,` or `)`");
        }
        Ok(UseArg { key: None, value })
    }

    fn file(&mut self) -> Result<ModelFile, CliError> {
        let mut m = ModelFile::default();
        let mut section: Option<Section> = None;
        loop {
            self.skip_newlines();
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Eof => return Ok(m),
                Tok::Sym("[") => {
                    self.bump();
                    let (name, npos) = self.ident()?;
                    self.sym("]")?;
                    section = Some(
                        Section::from_name(&name)
                            .ok_or_else(|| CliError::syntax(npos, format!("unknown section `[{name}]`")))?,
                    );
                }
                Tok::Ident(kw) if kw == "use" => m.uses.push(self.use_stmt()?),
                _ => match section {
                    None => return self.unexpected("`use` or a section header"),
                    Some(Section::Params) => m.params.push(self.binding()?),
                    Some(Section::Action) => m.action.push(self.binding()?),
                    Some(Section::GaugeFermion) => m.gauge_fermion.push(self.binding()?),
                    Some(Section::Lattice) => m.lattice.push(self.binding()?),
                    Some(Section::Interaction) => m.interaction.push(self.binding()?),
                    Some(Section::Generators) => {
                        let (kw, kpos) = self.ident()?;
                        let kind = match kw.as_str() {
                            "even" => GenKind::Even,
                            "ghost" => GenKind::Ghost,
                            _ => return Err(CliError::syntax(kpos, format!("expected `even` or `ghost`, found `{kw}`"))),
                        };
                        let mut names = vec![self.ident()?.0];
                        while self.is_sym(",") {
                            self.bump();
                            names.push(self.ident()?.0);
                        }
                        m.generators.push(GenDecl { kind, names, pos });
                    }
                    Some(Section::Symmetries) => {
                        let (name, _) = self.ident()?;
                        self.sym(":")?;
                        let (ghost, _) = self.ident()?;
                        self.sym("->")?;
                        let field = self.expr()?;
                        m.symmetries.push(SymDecl { name, ghost, field, pos });
                    }
                    Some(Section::Structure) => {
                        let (kw, kpos) = self.ident()?;
                        if kw != "comm" {
                            return Err(CliError::syntax(kpos, format!("expected `comm`, found `{kw}`")));
                        }
                        self.sym("(")?;
                        let (a, _) = self.ident()?;
                        self.sym(",")?;
                        let (b, _) = self.ident()?;
                        self.sym(")")?;
                        self.sym("=")?;
                        let value = self.expr()?;
                        m.structure.push(CommDecl { a, b, value, pos });
                    }
                    Some(Section::Nonminimal) => {
                        let (antighost, _) = self.ident()?;
                        self.sym(",")?;
                        let (multiplier, _) = self.ident()?;
                        m.nonminimal.push(PairDecl { antighost, multiplier, pos });
                    }
                },
            }
            self.end_of_statement()?;
        }
    }
}

/// Parses a model file.
pub fn parse(src: &str) -> Result<ModelFile, CliError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    p.file()
}

/// Parses a standalone expression, as given on the command line.
pub fn parse_expr(src: &str) -> Result<Expr, CliError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    p.skip_newlines();
    match p.peek() {
        Tok::Eof => Ok(e),
        _ => p.unexpected("end of expression"),
    }
}

impl fmt::Display for ModelFile {
    /// Canonical text: `use` lines, then the sections in a fixed order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in &self.uses {
            write!(f, "use {}(", u.name)?;
            for (k, a) in u.args.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                if let Some(key) = &a.key {
                    write!(f, "{key}=")?;
                }
                write!(f, "{}", a.value)?;
            }
            writeln!(f, ")")?;
        }
        let bindings = |f: &mut fmt::Formatter<'_>, name: &str, items: &[Binding]| -> fmt::Result {
            if !items.is_empty() {
                writeln!(f, "\n[{name}]")?;
                for b in items {
                    writeln!(f, "{} = {}", b.name, b.value)?;
                }
            }
            Ok(())
        };
        bindings(f, "params", &self.params)?;
        if !self.generators.is_empty() {
            writeln!(f, "\n[generators]")?;
            for g in &self.generators {
                let kw = match g.kind {
                    GenKind::Even => "even",
                    GenKind::Ghost => "ghost",
                };
                writeln!(f, "{kw} {}", g.names.join(", "))?;
            }
        }
        bindings(f, "action", &self.action)?;
        if !self.symmetries.is_empty() {
            writeln!(f, "\n[symmetries]")?;
            for s in &self.symmetries {
                writeln!(f, "{} : {} -> {}", s.name, s.ghost, s.field)?;
            }
        }
        if !self.structure.is_empty() {
            writeln!(f, "\n[structure]")?;
            for c in &self.structure {
                writeln!(f, "comm({}, {}) = {}", c.a, c.b, c.value)?;
            }
        }
        if !self.nonminimal.is_empty() {
            writeln!(f, "\n[nonminimal]")?;
            for p in &self.nonminimal {
                writeln!(f, "{}, {}", p.antighost, p.multiplier)?;
            }
        }
        bindings(f, "gauge_fermion", &self.gauge_fermion)?;
        bindings(f, "lattice", &self.lattice)?;
        bindings(f, "interaction", &self.interaction)
    }
}
