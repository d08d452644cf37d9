//! The finite 1+1 lattice and its discretized Klein–Gordon operator.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::LatticeError;
use crate::graded::Site;

pub type Rat = BigRational;

/// `Nt × Nx` points, periodic in space, open in time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub nt: usize,
    pub nx: usize,
    pub a_t: Rat,
    pub a_x: Rat,
    pub mass_sq: Rat,
}

impl Lattice {
    pub fn new(nt: usize, nx: usize, a_t: Rat, a_x: Rat, mass_sq: Rat) -> Result<Self, LatticeError> {
        let bad = |m: &str| Err(LatticeError::InvalidLattice(m.to_string()));
        if nt < 2 {
            return bad("Nt must be at least 2");
        }
        if nx < 1 {
            return bad("Nx must be at least 1");
        }
        if !a_t.is_positive() || !a_x.is_positive() {
            return bad("spacings must be positive");
        }
        if a_t > a_x {
            return bad("a_t must not exceed a_x");
        }
        Ok(Self { nt, nx, a_t, a_x, mass_sq })
    }

    /// Convenience constructor from integers.
    pub fn unit(nt: usize, nx: usize, mass_sq: i64) -> Result<Self, LatticeError> {
        Self::new(nt, nx, Rat::one(), Rat::one(), Rat::from_integer(mass_sq.into()))
    }

    pub fn sites(&self) -> usize {
        self.nt * self.nx
    }

    /// Cell volume `a_t a_x`.
    pub fn volume(&self) -> Rat {
        &self.a_t * &self.a_x
    }

    /// Row-major index of `(t, x)`.
    pub fn index(&self, t: usize, x: usize) -> usize {
        debug_assert!(t < self.nt && x < self.nx);
        t * self.nx + x
    }

    pub fn site(&self, p: usize) -> Site {
        Site { t: p / self.nx, x: p % self.nx }
    }

    /// Periodic spatial distance.
    pub fn spatial_distance(&self, x: usize, y: usize) -> usize {
        let d = x.abs_diff(y);
        d.min(self.nx - d)
    }

    /// Whether `p` lies in the closed forward lattice light cone of `q`
    /// excluding the time slice of `q` itself.
    pub fn in_future_cone(&self, p: usize, q: usize) -> bool {
        let (sp, sq) = (self.site(p), self.site(q));
        sp.t > sq.t && self.spatial_distance(sp.x, sq.x) <= sp.t - sq.t
    }

    /// `P = ∂_t² − ∂_x² + m²` with central second differences, zero outside
    /// the time range, as a dense symmetric matrix.
    pub fn operator(&self) -> Vec<Vec<Rat>> {
        let n = self.sites();
        let mut p = vec![vec![Rat::zero(); n]; n];
        let it2 = (&self.a_t * &self.a_t).recip();
        let ix2 = (&self.a_x * &self.a_x).recip();
        for t in 0..self.nt {
            for x in 0..self.nx {
                let row = self.index(t, x);
                p[row][row] += &self.mass_sq - &it2 * Rat::from_integer(2.into()) + &ix2 * Rat::from_integer(2.into());
                if t > 0 {
                    p[row][self.index(t - 1, x)] += &it2;
                }
                if t + 1 < self.nt {
                    p[row][self.index(t + 1, x)] += &it2;
                }
                p[row][self.index(t, (x + 1) % self.nx)] -= &ix2;
                p[row][self.index(t, (x + self.nx - 1) % self.nx)] -= &ix2;
            }
        }
        p
    }

    /// Sites whose stencil lies inside the lattice: all but the last slice.
    pub fn stencil_rows(&self) -> impl Iterator<Item = usize> + '_ {
        0..(self.nt - 1) * self.nx
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nt={} Nx={} a_t={} a_x={} m2={}", self.nt, self.nx, self.a_t, self.a_x, self.mass_sq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Lattice::unit(1, 3, 0).is_err());
        assert!(Lattice::unit(2, 0, 0).is_err());
        let r = |n: i64, d: i64| Rat::new(n.into(), d.into());
        assert!(Lattice::new(3, 3, r(2, 1), r(1, 1), r(0, 1)).is_err());
        assert!(Lattice::new(3, 3, r(1, 2), r(1, 1), r(0, 1)).is_ok());
    }

    #[test]
    fn operator_is_symmetric() {
        for nx in 1..4 {
            let l = Lattice::unit(3, nx, 1).unwrap();
            let p = l.operator();
            for i in 0..l.sites() {
                for j in 0..l.sites() {
                    assert_eq!(p[i][j], p[j][i]);
                }
            }
        }
    }

    #[test]
    fn cone_wraps_around() {
        let l = Lattice::unit(4, 5, 0).unwrap();
        assert!(l.in_future_cone(l.index(1, 4), l.index(0, 0)));
        assert!(!l.in_future_cone(l.index(1, 2), l.index(0, 0)));
        assert!(!l.in_future_cone(l.index(0, 0), l.index(0, 0)));
    }
}
