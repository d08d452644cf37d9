//! Truncation orders and series coefficients in the two formal parameters
//! `ħ` (printed `h`) and `λ` (printed `l`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::scalar::Scalar;
use crate::error::AlgebraError;

/// Maximal retained orders of `ħ` and `λ`.
///
/// Powers of `ħ` may be negative: `e^{iV/ħ}` produces `λ^k ħ^{-k}`. Every
/// term generated by the library satisfies `ħ-power + λ-power ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub hbar: i32,
    pub lambda: u32,
}

impl Truncation {
    pub const fn new(hbar: i32, lambda: u32) -> Self {
        Self { hbar, lambda }
    }

    pub fn keeps(&self, hbar: i32, lambda: u32) -> bool {
        hbar <= self.hbar && lambda <= self.lambda
    }

    /// Working precision for computations that divide by `ħ`.
    ///
    /// A product of factors whose terms obey `a + b ≥ 0` only needs input
    /// orders with `a + b ≤ K_ħ + K_λ` to be exact at every order inside the
    /// reported box `a ≤ K_ħ, b ≤ K_λ`; this widened box contains that
    /// triangle.
    pub fn widened(&self) -> Self {
        Self { hbar: self.hbar + self.lambda as i32, lambda: self.lambda }
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self { hbar: 2, lambda: 2 }
    }
}

impl FromStr for Truncation {
    type Err = AlgebraError;

    /// Parses `"Kh,Kl"`, e.g. `"2,3"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::BadTruncation(s.to_string());
        let (h, l) = s.split_once(',').ok_or_else(bad)?;
        let hbar: i32 = h.trim().parse().map_err(|_| bad())?;
        let lambda: u32 = l.trim().parse().map_err(|_| bad())?;
        if hbar < 0 {
            return Err(bad());
        }
        Ok(Self { hbar, lambda })
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.hbar, self.lambda)
    }
}

/// Coefficient of one monomial: a finite map `(ħ-power, λ-power) → ℚ(i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Series {
    terms: BTreeMap<(i32, u32), Scalar>,
}

impl Series {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut s = Self::new();
        s.add_term(0, 0, &c);
        s
    }

    pub fn add_term(&mut self, hbar: i32, lambda: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((hbar, lambda)).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(hbar, lambda));
        }
    }

    pub fn get(&self, hbar: i32, lambda: u32) -> Scalar {
        self.terms.get(&(hbar, lambda)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i32, u32), &Scalar)> {
        self.terms.iter()
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((a, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            if *a != 0 || *b != 0 {
                write!(f, "*h^{a}*l^{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_truncation() {
        assert_eq!("3,1".parse::<Truncation>().unwrap(), Truncation::new(3, 1));
        assert!("3".parse::<Truncation>().is_err());
        assert!("-1,2".parse::<Truncation>().is_err());
    }

    #[test]
    fn series_cancellation_prunes() {
        let mut s = Series::new();
        s.add_term(1, 0, &Scalar::from_int(2));
        s.add_term(1, 0, &Scalar::from_int(-2));
        assert!(s.is_zero());
    }

    #[test]
    fn series_display() {
        let mut s = Series::constant(Scalar::ratio(1, 2));
        s.add_term(1, 2, &Scalar::ratio(-3, 4));
        assert_eq!(s.to_string(), "1/2 + -3/4*h^1*l^2");
    }
}
