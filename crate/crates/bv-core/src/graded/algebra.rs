//! Generators with their gradings, and the immutable algebra context.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::series::Truncation;
use crate::error::AlgebraError;

/// Lattice site `(t, x)` attached to a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub t: usize,
    pub x: usize,
}

/// Suffix marking antifields in generated names.
pub const ANTIFIELD_MARK: char = '‡';

/// One symbolic degree of freedom.
///
/// Parity is never stored: it is `|ghost| mod 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub site: Option<Site>,
    pub ghost: i32,
    pub antifield_number: u32,
    /// Pure ghost number. Antighosts carry `-1` here so that
    /// `#gh = #pg − #af` holds for every generator.
    pub pure_ghost: i32,
    /// Id of the field this generator is the antifield of.
    pub antifield_of: Option<String>,
}

impl Generator {
    /// A field-type generator (field, ghost, antighost, multiplier) of the
    /// given ghost number; `#af = 0` and `#pg = #gh`.
    pub fn field(name: impl Into<String>, ghost: i32) -> Self {
        Self {
            name: name.into(),
            site: None,
            ghost,
            antifield_number: 0,
            pure_ghost: ghost,
            antifield_of: None,
        }
    }

    pub fn at(mut self, site: Site) -> Self {
        self.site = Some(site);
        self
    }

    /// The antifield of `field`: `#gh = −#gh(field) − 1`,
    /// `#af = max(#pg(field), 0) + 1`, and `#pg` fixed by `#gh = #pg − #af`.
    pub fn antifield(field: &Generator) -> Self {
        let ghost = -field.ghost - 1;
        let antifield_number = field.pure_ghost.max(0) as u32 + 1;
        Self {
            name: format!("{}{}", field.name, ANTIFIELD_MARK),
            site: field.site,
            ghost,
            antifield_number,
            pure_ghost: ghost + antifield_number as i32,
            antifield_of: Some(field.id()),
        }
    }

    /// Unique id: the name, followed by `[t,x]` for lattice generators.
    pub fn id(&self) -> String {
        match self.site {
            Some(s) => format!("{}[{},{}]", self.name, s.t, s.x),
            None => self.name.clone(),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.ghost.rem_euclid(2) == 1
    }

    pub fn is_antifield(&self) -> bool {
        self.antifield_of.is_some()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// Immutable algebra context. The declaration order of the generators is the
/// canonical order used for monomials.
#[derive(Debug)]
pub struct Algebra {
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    partner: Vec<Option<usize>>,
    odd: Vec<bool>,
    truncation: Truncation,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.truncation == other.truncation
    }
}

impl Algebra {
    /// Validates the generator list and freezes it into a shared context.
    pub fn new(generators: Vec<Generator>, truncation: Truncation) -> Result<Arc<Self>, AlgebraError> {
        assert!(generators.len() < u16::MAX as usize, "too many generators");
        let mut index = HashMap::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.id(), i).is_some() {
                return Err(AlgebraError::DuplicateId(g.id()));
            }
            if g.ghost != g.pure_ghost - g.antifield_number as i32 {
                return Err(AlgebraError::GradingViolated {
                    id: g.id(),
                    reason: format!(
                        "#gh = {} but #pg − #af = {}",
                        g.ghost,
                        g.pure_ghost - g.antifield_number as i32
                    ),
                });
            }
        }
        let mut partner = vec![None; generators.len()];
        for (i, g) in generators.iter().enumerate() {
            let Some(field_id) = &g.antifield_of else { continue };
            let &j = index.get(field_id).ok_or_else(|| AlgebraError::UnknownPartner {
                antifield: g.id(),
                field: field_id.clone(),
            })?;
            let field = &generators[j];
            if field.is_antifield() || partner[j].is_some() {
                return Err(AlgebraError::GradingViolated {
                    id: g.id(),
                    reason: format!("`{field_id}` cannot be paired twice or with an antifield"),
                });
            }
            if g.ghost != -field.ghost - 1 {
                return Err(AlgebraError::GradingViolated {
                    id: g.id(),
                    reason: format!("#gh must be {} for the antifield of `{field_id}`", -field.ghost - 1),
                });
            }
            if g.antifield_number == 0 {
                return Err(AlgebraError::GradingViolated {
                    id: g.id(),
                    reason: "antifields must have #af ≥ 1".into(),
                });
            }
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
        let odd = generators.iter().map(Generator::is_odd).collect();
        Ok(Arc::new(Self { generators, index, partner, odd, truncation }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        &self.generators[idx]
    }

    pub fn find(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn lookup(&self, id: &str) -> Result<usize, AlgebraError> {
        self.find(id).ok_or_else(|| AlgebraError::UnknownGenerator(id.to_string()))
    }

    pub fn partner(&self, idx: usize) -> Option<usize> {
        self.partner[idx]
    }

    pub fn is_odd(&self, idx: usize) -> bool {
        self.odd[idx]
    }

    pub fn is_antifield(&self, idx: usize) -> bool {
        self.generators[idx].is_antifield()
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    /// All `(field, antifield)` index pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&i| !self.is_antifield(i))
            .filter_map(|i| self.partner[i].map(|j| (i, j)))
            .collect()
    }

    /// A copy of this algebra with a different truncation.
    pub fn with_truncation(&self, truncation: Truncation) -> Arc<Self> {
        Arc::new(Self {
            generators: self.generators.clone(),
            index: self.index.clone(),
            partner: self.partner.clone(),
            odd: self.odd.clone(),
            truncation,
        })
    }
}
