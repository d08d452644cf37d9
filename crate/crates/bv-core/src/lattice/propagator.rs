//! Retarded, advanced, causal and Dirac propagators as exact matrices.

use std::fmt;

use num_traits::Zero;

use super::grid::{Lattice, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropagatorKind {
    Retarded,
    Advanced,
    Causal,
    Dirac,
}

impl PropagatorKind {
    pub const ALL: [PropagatorKind; 4] =
        [PropagatorKind::Retarded, PropagatorKind::Advanced, PropagatorKind::Causal, PropagatorKind::Dirac];

    pub fn name(&self) -> &'static str {
        match self {
            PropagatorKind::Retarded => "retarded",
            PropagatorKind::Advanced => "advanced",
            PropagatorKind::Causal => "causal",
            PropagatorKind::Dirac => "dirac",
        }
    }
}

impl std::str::FromStr for PropagatorKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        PropagatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown propagator kind `{s}` (expected retarded, advanced, causal or dirac)"))
    }
}

/// A dense `(Nt·Nx)²` matrix indexed by row-major site indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropagatorMatrix {
    pub kind: PropagatorKind,
    pub lattice: Lattice,
    pub entries: Vec<Vec<Rat>>,
}

impl PropagatorMatrix {
    pub fn get(&self, p: usize, q: usize) -> &Rat {
        &self.entries[p][q]
    }

    /// Entry between `(t,x)` and `(t0,x0)`.
    pub fn at(&self, (t, x): (usize, usize), (t0, x0): (usize, usize)) -> &Rat {
        self.get(self.lattice.index(t, x), self.lattice.index(t0, x0))
    }

    pub fn transpose(&self, kind: PropagatorKind) -> PropagatorMatrix {
        let n = self.entries.len();
        let entries = (0..n).map(|i| (0..n).map(|j| self.entries[j][i].clone()).collect()).collect();
        PropagatorMatrix { kind, lattice: self.lattice.clone(), entries }
    }

    fn combine(&self, other: &Self, kind: PropagatorKind, f: impl Fn(&Rat, &Rat) -> Rat) -> PropagatorMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        PropagatorMatrix { kind, lattice: self.lattice.clone(), entries }
    }

    /// Weighted action on a test function: `(K∗g)(p) = Σ_q a_t a_x K(p,q) g(q)`.
    pub fn apply(&self, g: &[Rat]) -> Vec<Rat> {
        let v = self.lattice.volume();
        self.entries.iter().map(|row| row.iter().zip(g).map(|(k, x)| k * x).sum::<Rat>() * &v).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == -&self.entries[j][i]))
    }
}

impl fmt::Display for PropagatorMatrix {
    /// Header line, then one row per line with space-separated `p/q` entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.kind.name(), self.lattice)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(Rat::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `Δ^R` by explicit time stepping: for each source `q` the column solves
/// `P Δ^R(·,q) = δ_q / (a_t a_x)` with `Δ^R(t ≤ t_q, ·) = 0`.
pub fn green_retarded(lattice: &Lattice) -> PropagatorMatrix {
    let n = lattice.sites();
    let (nt, nx) = (lattice.nt, lattice.nx);
    let at2 = &lattice.a_t * &lattice.a_t;
    let ix2 = (&lattice.a_x * &lattice.a_x).recip();
    let two = Rat::from_integer(2.into());
    let source = lattice.volume().recip();
    let mut entries = vec![vec![Rat::zero(); n]; n];
    for q in 0..n {
        let sq = lattice.site(q);
        // g[t][x] for the current source.
        let mut g = vec![vec![Rat::zero(); nx]; nt];
        for t in sq.t..nt - 1 {
            for x in 0..nx {
                let (left, right) = ((x + nx - 1) % nx, (x + 1) % nx);
                let lap = (&g[t][right] - &g[t][x] * &two + &g[t][left]) * &ix2;
                let delta = if t == sq.t && x == sq.x { source.clone() } else { Rat::zero() };
                let prev = if t > 0 { g[t - 1][x].clone() } else { Rat::zero() };
                g[t + 1][x] = (delta + lap - &lattice.mass_sq * &g[t][x]) * &at2 + &g[t][x] * &two - prev;
            }
        }
        for (t, row) in g.into_iter().enumerate() {
            for (x, val) in row.into_iter().enumerate() {
                entries[lattice.index(t, x)][q] = val;
            }
        }
    }
    PropagatorMatrix { kind: PropagatorKind::Retarded, lattice: lattice.clone(), entries }
}

/// The four propagators of a lattice.
#[derive(Clone, Debug)]
pub struct Propagators {
    pub retarded: PropagatorMatrix,
    pub advanced: PropagatorMatrix,
    pub causal: PropagatorMatrix,
    pub dirac: PropagatorMatrix,
}

impl Propagators {
    pub fn get(&self, kind: PropagatorKind) -> &PropagatorMatrix {
        match kind {
            PropagatorKind::Retarded => &self.retarded,
            PropagatorKind::Advanced => &self.advanced,
            PropagatorKind::Causal => &self.causal,
            PropagatorKind::Dirac => &self.dirac,
        }
    }
}

/// `Δ^A = (Δ^R)ᵀ`, `Δ = Δ^R − Δ^A`, `Δ_D = (Δ^R + Δ^A)/2`.
pub fn propagators(lattice: &Lattice) -> Propagators {
    let retarded = green_retarded(lattice);
    let advanced = retarded.transpose(PropagatorKind::Advanced);
    let half = Rat::new(1.into(), 2.into());
    let causal = retarded.combine(&advanced, PropagatorKind::Causal, |r, a| r - a);
    let dirac = retarded.combine(&advanced, PropagatorKind::Dirac, |r, a| (r + a) * &half);
    Propagators { retarded, advanced, causal, dirac }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn first_stencil_steps() {
        let l = Lattice::unit(6, 5, 0).unwrap();
        let r = green_retarded(&l);
        assert!(r.at((1, 0), (0, 0)).is_one());
        assert!(r.at((2, 0), (0, 0)).is_zero());
        assert!(r.at((2, 1), (0, 0)).is_one());
        assert!(r.at((2, 4), (0, 0)).is_one());
    }

    #[test]
    fn derived_propagators() {
        let l = Lattice::unit(6, 5, 0).unwrap();
        let p = propagators(&l);
        assert!(p.causal.at((1, 0), (0, 0)).is_one());
        assert!(p.causal.is_antisymmetric());
        assert!(p.dirac.is_symmetric());
        for i in 0..l.sites() {
            assert!(p.causal.get(i, i).is_zero());
        }
    }

    #[test]
    fn export_is_row_major() {
        let l = Lattice::unit(2, 1, 0).unwrap();
        let text = green_retarded(&l).to_string();
        assert_eq!(text, "retarded Nt=2 Nx=1 a_t=1 a_x=1 m2=0\n0 0\n1 0\n");
    }
}
