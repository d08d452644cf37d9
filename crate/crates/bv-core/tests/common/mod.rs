//! Seeded random elements shared by the property suites.

#![allow(dead_code)]

use std::sync::Arc;

use bv_core::graded::{Algebra, Monomial, Poly, Scalar, Term};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random polynomial over `gens` with at most `terms` terms of degree at
/// most `max_degree` and small Gaussian-integer coefficients. With
/// `parity`, only monomials of that parity are kept.
pub fn poly(
    rng: &mut ChaCha8Rng,
    alg: &Arc<Algebra>,
    gens: &[usize],
    terms: usize,
    max_degree: u32,
    parity: Option<bool>,
) -> Poly {
    let mut out = Poly::zero(alg);
    for _ in 0..rng.gen_range(1..=terms) {
        let degree = rng.gen_range(0..=max_degree);
        let mut factors: Vec<(usize, u32)> = Vec::new();
        for _ in 0..degree {
            let g = gens[rng.gen_range(0..gens.len())];
            match factors.iter_mut().find(|(h, _)| *h == g) {
                Some(f) if !alg.is_odd(g) => f.1 += 1,
                Some(_) => {}
                None => factors.push((g, 1)),
            }
        }
        factors.sort_unstable();
        let mono = Monomial::from_sorted(factors);
        if parity.is_some_and(|p| mono.is_odd(alg) != p) {
            continue;
        }
        let re = rng.gen_range(-3i64..=3);
        let im = if rng.gen_bool(0.2) { rng.gen_range(-2i64..=2) } else { 0 };
        let c = &Scalar::from_int(re) + &(&Scalar::i() * &Scalar::from_int(im));
        out.add_term(Term::plain(mono), &c);
    }
    out
}

/// Random polynomial of random homogeneous parity over all generators.
pub fn homogeneous(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>, terms: usize, max_degree: u32) -> (Poly, bool) {
    let gens: Vec<usize> = (0..alg.len()).collect();
    let odd = rng.gen_bool(0.5);
    (poly(rng, alg, &gens, terms, max_degree, Some(odd)), odd)
}

/// `(−1)^k` as a scalar.
pub fn sign(negative: bool) -> Scalar {
    if negative {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}
