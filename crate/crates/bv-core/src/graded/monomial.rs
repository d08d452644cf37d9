//! Canonically ordered monomials.

use std::cmp::Ordering;

use smallvec::SmallVec;

use super::algebra::Algebra;

/// A product of generators, stored as `(generator index, exponent)` pairs
/// sorted by index. Odd generators have exponent 1.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial(SmallVec<[(u16, u16); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(idx: usize) -> Self {
        Self(smallvec::smallvec![(idx as u16, 1)])
    }

    /// Builds a monomial from already-sorted, duplicate-free factors.
    pub fn from_sorted(factors: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let v: SmallVec<[(u16, u16); 4]> = factors
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(g, e)| (g as u16, e as u16))
            .collect();
        debug_assert!(v.windows(2).all(|w| w[0].0 < w[1].0));
        Self(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(g, e)| (g as usize, e as u32))
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.0
            .binary_search_by_key(&(idx as u16), |&(g, _)| g)
            .map(|k| self.0[k].1 as u32)
            .unwrap_or(0)
    }

    /// Number of odd factors, i.e. the parity.
    pub fn odd_count(&self, alg: &Algebra) -> u32 {
        self.0.iter().filter(|&&(g, _)| alg.is_odd(g as usize)).count() as u32
    }

    pub fn is_odd(&self, alg: &Algebra) -> bool {
        self.odd_count(alg) % 2 == 1
    }

    /// Sum of a per-generator grading weighted by exponents.
    pub fn grading(&self, alg: &Algebra, f: impl Fn(&super::algebra::Generator) -> i64) -> i64 {
        self.0.iter().map(|&(g, e)| f(alg.generator(g as usize)) * e as i64).sum()
    }

    /// Graded product. Returns `None` when an odd generator would be squared,
    /// otherwise the sign from moving odd factors of `rhs` past those of
    /// `self` and the merged monomial.
    pub fn mul(&self, rhs: &Monomial, alg: &Algebra) -> Option<(bool, Monomial)> {
        let mut out = SmallVec::with_capacity(self.0.len() + rhs.0.len());
        let mut negative = false;
        // Odd factors of `self` not yet passed by the merge.
        let mut odd_left_remaining = self.odd_count(alg);
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < rhs.0.len() {
            let take_left = match (self.0.get(i), rhs.0.get(j)) {
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        if alg.is_odd(a.0 as usize) {
                            return None;
                        }
                        out.push((a.0, a.1 + b.1));
                        i += 1;
                        j += 1;
                        continue;
                    }
                },
                (Some(_), None) => true,
                (None, _) => false,
            };
            if take_left {
                let a = self.0[i];
                if alg.is_odd(a.0 as usize) {
                    odd_left_remaining -= 1;
                }
                out.push(a);
                i += 1;
            } else {
                let b = rhs.0[j];
                if alg.is_odd(b.0 as usize) && odd_left_remaining % 2 == 1 {
                    negative = !negative;
                }
                out.push(b);
                j += 1;
            }
        }
        Some((negative, Monomial(out)))
    }

    /// Left derivative by generator `idx`: `(sign negative, multiplicity,
    /// remaining monomial)`, or `None` when `idx` does not occur.
    pub fn derivative(&self, idx: usize, alg: &Algebra) -> Option<(bool, u32, Monomial)> {
        let pos = self.0.binary_search_by_key(&(idx as u16), |&(g, _)| g).ok()?;
        let (_, e) = self.0[pos];
        let negative = alg.is_odd(idx)
            && self.0[..pos].iter().filter(|&&(g, _)| alg.is_odd(g as usize)).count() % 2 == 1;
        let mut rest = self.0.clone();
        if e == 1 {
            rest.remove(pos);
        } else {
            rest[pos].1 -= 1;
        }
        Some((negative, e as u32, Monomial(rest)))
    }
}

impl Ord for Monomial {
    /// Total degree first; within a degree, larger exponents on earlier
    /// generators come first (`x^2 < x*y < y^2`).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()) {
                if a.0 != b.0 {
                    return a.0.cmp(&b.0);
                }
                if a.1 != b.1 {
                    return b.1.cmp(&a.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
