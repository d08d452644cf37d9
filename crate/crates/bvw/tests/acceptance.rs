//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.
//!
//! Run with `cargo test -p bvw --test acceptance -- --nocapture` to see the
//! report. The test fails if any attainable criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bv_core::classical::{
    alpha_psi, antibracket, bv_differential, check_cme, expand_by_ta, extended_action, gauge_fix, laplacian, Model,
};
use bv_core::cohomology::{cohomology_dim, BasisFilter, Differential};
use bv_core::graded::{Algebra, Monomial, Poly, Scalar, Term, Truncation};
use bv_core::lattice::{propagators, Lattice, LatticeAlgebra, PropagatorKind, Rat};
use bv_core::models;
use bvw::setup::{self, Setup};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_CASES: u64 = 100;

/// Criteria that cannot hold as stated, with the reason printed next to them.
const UNATTAINABLE: &[(u32, &str)] = &[(
    3,
    "the unsigned Δ-bracket identities are graded-symmetric in P,Q while the bracket is graded-antisymmetric",
)];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn sign(negative: bool) -> Scalar {
    if negative {
        Scalar::from_int(-1)
    } else {
        Scalar::one()
    }
}

fn random_poly(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>, gens: &[usize], max_degree: u32, odd: Option<bool>) -> Poly {
    let mut out = Poly::zero(alg);
    for _ in 0..rng.gen_range(1..=4) {
        let mut factors: BTreeMap<usize, u32> = BTreeMap::new();
        for _ in 0..rng.gen_range(0..=max_degree) {
            let g = gens[rng.gen_range(0..gens.len())];
            let e = factors.entry(g).or_insert(0);
            if *e == 0 || !alg.is_odd(g) {
                *e += 1;
            }
        }
        let mono = Monomial::from_sorted(factors);
        if odd.is_some_and(|p| mono.is_odd(alg) != p) {
            continue;
        }
        out.add_term(Term::plain(mono), &Scalar::from_int(rng.gen_range(-3..=3)));
    }
    out
}

fn random_homogeneous(rng: &mut ChaCha8Rng, alg: &Arc<Algebra>) -> (Poly, bool) {
    let gens: Vec<usize> = (0..alg.len()).collect();
    let odd = rng.gen_bool(0.5);
    (random_poly(rng, alg, &gens, 3, Some(odd)), odd)
}

fn finite_suite() -> Vec<Model> {
    vec![models::toy_circles(1).unwrap(), models::lie_gauge(true, true).unwrap(), models::ym_matrix(0, false).unwrap()]
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn criterion_1() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (n, d) in [(1u32, 4u32), (2, 6), (3, 8)] {
        let model = workspace_root().join(format!("models/toy_circles_{n}.bvw"));
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_bvw"))
            .args(["cohomology", "--model"])
            .arg(&model)
            .args(["--gh", "0", "--diff", "s", "--max-deg", &d.to_string()])
            .output()
            .expect("bvw runs");
        let elapsed = start.elapsed();
        let stdout = String::from_utf8_lossy(&out.stdout);
        let dim = stdout
            .lines()
            .find_map(|l| l.strip_prefix("dim_cohomology: "))
            .and_then(|v| v.parse::<u32>().ok());
        let ok = out.status.success() && dim == Some(n) && elapsed < Duration::from_secs(60);
        pass &= ok;
        parts.push(format!("N={n} D={d} dim={} {:.2}s", dim.map_or("?".into(), |v| v.to_string()), elapsed.as_secs_f64()));
    }
    Outcome::new(pass, parts.join(", "))
}

fn criterion_2() -> Outcome {
    let mut failures = 0;
    for m in finite_suite() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..RANDOM_CASES {
            let (x, px) = random_homogeneous(&mut rng, &m.algebra);
            let (y, py) = random_homogeneous(&mut rng, &m.algebra);
            let (z, pz) = random_homogeneous(&mut rng, &m.algebra);
            let both_even = !px && !py;
            let antisym = antibracket(&y, &x) == -antibracket(&x, &y).scale(&sign(both_even));
            let jacobi = &antibracket(&x, &antibracket(&y, &z))
                - &antibracket(&y, &antibracket(&x, &z)).scale(&sign(both_even))
                == antibracket(&antibracket(&x, &y), &z);
            let leibniz = antibracket(&x, &(&y * &z))
                == &(&antibracket(&x, &y) * &z) + &(&antibracket(&x, &z) * &y).scale(&sign(py && pz));
            failures += [antisym, jacobi, leibniz].iter().filter(|ok| !**ok).count();
        }
    }
    Outcome::new(failures == 0, format!("{RANDOM_CASES} triples x 3 models, {failures} violations"))
}

/// Literal and sign-corrected Δ-bracket identities.
fn criterion_3() -> (Outcome, bool) {
    let (mut nilpotent, mut literal, mut literal2, mut corrected, mut corrected2, mut total) = (0, 0, 0, 0, 0, 0);
    for m in finite_suite() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..RANDOM_CASES {
            let (p, pp) = random_homogeneous(&mut rng, &m.algebra);
            let (q, pq) = random_homogeneous(&mut rng, &m.algebra);
            let bracket = antibracket(&p, &q);
            let (dp, dq, dpq) = (laplacian(&p), laplacian(&q), laplacian(&(&p * &q)));
            total += 1;
            nilpotent += usize::from(laplacian(&dp).is_zero());
            literal += usize::from(bracket == &(&dpq - &(&dp * &q)) - &(&p * &dq).scale(&sign(pp)));
            corrected += usize::from(bracket == &(&dpq - &(&p * &dq)).scale(&sign(pq)) - &(&dp * &q));
            let d_bracket = laplacian(&bracket);
            literal2 += usize::from(d_bracket == -&(&antibracket(&dp, &q) + &antibracket(&p, &dq).scale(&sign(pp))));
            corrected2 += usize::from(d_bracket == &antibracket(&p, &dq) - &antibracket(&dp, &q).scale(&sign(pq)));
        }
    }
    let attainable = nilpotent == total && corrected == total && corrected2 == total;
    let pass = attainable && literal == total && literal2 == total;
    let detail = format!(
        "Δ²=0 {nilpotent}/{total}; unsigned identities {literal}/{total} and {literal2}/{total}; \
         sign-corrected identities {corrected}/{total} and {corrected2}/{total}"
    );
    (Outcome::new(pass, detail), attainable)
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for m in [models::toy_circles(1).unwrap(), models::lie_gauge(false, false).unwrap(), models::ym_matrix(0, false).unwrap()]
    {
        let cme = check_cme(&m);
        let nilpotent = (0..m.algebra.len()).all(|g| {
            let x = Poly::var(&m.algebra, g);
            bv_differential(&m, &bv_differential(&m, &x)).is_zero()
        });
        pass &= cme.holds && nilpotent;
        parts.push(format!("{} cme={} s²=0:{}", m.name, cme.holds, nilpotent));
    }
    let src = std::fs::read_to_string(workspace_root().join("models/su2_corrupted.bvw")).unwrap();
    let loaded = setup::load(&src, Truncation::default()).unwrap();
    let Setup::Finite(bad) = &loaded.setup else { panic!("finite model expected") };
    let cme = check_cme(bad);
    pass &= !cme.holds && !cme.residual.is_zero();
    parts.push(format!("corrupted cme={} residual={}", cme.holds, cme.residual));
    Outcome::new(pass, parts.join("; "))
}

fn levi_civita(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn criterion_5() -> Outcome {
    let m = models::lie_gauge(true, true).unwrap();
    let psi = m.gauge_fermion.clone().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = 0;
    for _ in 0..RANDOM_CASES {
        let (x, _) = random_homogeneous(&mut rng, &m.algebra);
        let (y, _) = random_homogeneous(&mut rng, &m.algebra);
        let a = |p: &Poly| alpha_psi(&psi, p).unwrap();
        violations += usize::from(a(&antibracket(&x, &y)) != antibracket(&a(&x), &a(&y)));
    }
    let alg = &m.algebra;
    let gen = |id: &str| Poly::gen(alg, id).unwrap();
    let table = expand_by_ta(&m, &gauge_fix(&m, &extended_action(&m)).unwrap()).brst_table;
    let row = |id: &str| table.get(&alg.lookup(id).unwrap()).cloned().unwrap_or_else(|| Poly::zero(alg));
    let mut rows_ok = true;
    for a in 0..3 {
        let k = a + 1;
        rows_ok &= row(&format!("Cbar{k}")) == gen(&format!("B{k}")).scale(&Scalar::i());
        rows_ok &= row(&format!("B{k}")).is_zero();
        // −½[C,C]^a = −½ Σ_{b,c} ε_{abc} C^b C^c
        let mut expected = Poly::zero(alg);
        for b in 0..3 {
            for c in 0..3 {
                let e = levi_civita(a, b, c);
                if e != 0 {
                    let t = &gen(&format!("C{}", b + 1)) * &gen(&format!("C{}", c + 1));
                    expected.add_assign_scaled(&t, &Scalar::ratio(-e, 2));
                }
            }
        }
        rows_ok &= row(&format!("C{k}")) == expected;
    }
    Outcome::new(
        violations == 0 && rows_ok,
        format!("α_ψ bracket violations {violations}/{RANDOM_CASES}; BRST rows match: {rows_ok}"),
    )
}

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn criterion_6() -> Outcome {
    let configs = [
        Lattice::unit(4, 3, 0).unwrap(),
        Lattice::unit(5, 3, 1).unwrap(),
        Lattice::new(5, 4, rat(1, 2), rat(1, 1), rat(2, 1)).unwrap(),
        Lattice::new(3, 2, rat(1, 3), rat(2, 1), rat(1, 2)).unwrap(),
    ];
    let mut pass = true;
    for lattice in &configs {
        let props = propagators(lattice);
        let p = lattice.operator();
        let r = &props.get(PropagatorKind::Retarded).entries;
        let n = lattice.sites();
        let inv_vol = lattice.volume().recip();
        for row in lattice.stencil_rows() {
            for q in 0..n {
                let v: Rat = (0..n).map(|k| &p[row][k] * &r[k][q]).sum();
                pass &= v == if row == q { inv_vol.clone() } else { Rat::zero() };
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (sa, sb) = (lattice.site(a), lattice.site(b));
                let inside = sa.t > sb.t && lattice.spatial_distance(sa.x, sb.x) <= sa.t - sb.t;
                pass &= inside || r[a][b].is_zero();
            }
        }
        pass &= props.get(PropagatorKind::Causal).is_antisymmetric() && props.get(PropagatorKind::Dirac).is_symmetric();
    }
    let unit = propagators(&Lattice::unit(3, 3, 0).unwrap());
    let ret = unit.get(PropagatorKind::Retarded);
    pass &= ret.at((1, 0), (0, 0)).is_one() && ret.at((2, 0), (0, 0)).is_zero();
    pass &= ret.at((2, 1), (0, 0)).is_one() && ret.at((2, 2), (0, 0)).is_one();
    let masses: Vec<String> = configs.iter().map(|l| l.mass_sq.to_string()).collect();
    Outcome::new(pass, format!("{} lattices, m² ∈ {{{}}}", configs.len(), masses.join(", ")))
}

fn lattice_algebra(nt: usize, nx: usize, trunc: Truncation) -> LatticeAlgebra {
    LatticeAlgebra::new(Lattice::unit(nt, nx, 1).unwrap(), trunc).unwrap()
}

fn test_function(rng: &mut ChaCha8Rng, l: &LatticeAlgebra, sites: &[usize]) -> Vec<Rat> {
    let mut f = vec![Rat::zero(); l.sites()];
    for &p in sites {
        f[p] = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
    }
    f
}

fn criterion_7() -> Outcome {
    let l = lattice_algebra(4, 2, Truncation::new(2, 0));
    let all: Vec<usize> = (0..l.sites()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut commutator, mut star_assoc, mut t_comm, mut t_assoc, mut ordered) = (0, 0, 0, 0, 0);
    let cases = 50;
    for _ in 0..cases {
        let (f, g) = (test_function(&mut rng, &l, &all), test_function(&mut rng, &l, &all));
        let (pf, pg) = (l.smeared(&f).unwrap(), l.smeared(&g).unwrap());
        let pairing = l.propagator_pairing(PropagatorKind::Causal, &f, &g).unwrap();
        let expected = Poly::formal(l.algebra(), 1, 0).scale(&(&Scalar::i() * &Scalar::from(pairing)));
        commutator += usize::from(&l.star(&pf, &pg) - &l.star(&pg, &pf) == expected);

        let [a, b, c] = [0; 3].map(|_| random_poly(&mut rng, l.algebra(), &all, 2, None));
        star_assoc += usize::from(l.star(&l.star(&a, &b), &c) == l.star(&a, &l.star(&b, &c)));
        t_comm += usize::from(l.tprod(&a, &b) == l.tprod(&b, &a));
        t_assoc += usize::from(l.tprod(&l.tprod(&a, &b), &c) == l.tprod(&a, &l.tprod(&b, &c)));

        let split = rng.gen_range(1..4) * l.lattice().nx;
        let late: Vec<usize> = (split..l.sites()).collect();
        let early: Vec<usize> = (0..split).collect();
        let (fl, ge) = (test_function(&mut rng, &l, &late), test_function(&mut rng, &l, &early));
        let (pl, pe) = (l.smeared(&fl).unwrap(), l.smeared(&ge).unwrap());
        let (hl, he) =
            (random_poly(&mut rng, l.algebra(), &late, 2, None), random_poly(&mut rng, l.algebra(), &early, 2, None));
        ordered += usize::from(l.tprod(&pl, &pe) == l.star(&pl, &pe) && l.tprod(&hl, &he) == l.star(&hl, &he));
    }
    let counts = [commutator, star_assoc, t_comm, t_assoc, ordered];
    Outcome::new(
        counts.iter().all(|&c| c == cases),
        format!(
            "commutator {commutator}/{cases}, ⋆ assoc {star_assoc}/{cases}, ·T comm {t_comm}/{cases}, \
             ·T assoc {t_assoc}/{cases}, later-support ·T=⋆ {ordered}/{cases}"
        ),
    )
}

fn criterion_8() -> Outcome {
    let l = lattice_algebra(4, 2, Truncation::new(2, 0));
    let s = l.free_action();
    let all: Vec<usize> = (0..l.sites()).collect();
    let interior = l.interior_sites();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut agree = 0;
    for _ in 0..RANDOM_CASES {
        let mut x = Poly::zero(l.algebra());
        for _ in 0..rng.gen_range(1..=2) {
            let a = interior[rng.gen_range(0..interior.len())];
            let anti = Poly::var(l.algebra(), l.antifield_index(a));
            x = &x + &(&random_poly(&mut rng, l.algebra(), &all, 2, None) * &anti);
        }
        assert!(l.is_regular(&x));
        let r = l.tkoszul(&s, &x).unwrap();
        let direct = &l.star_bracket(&x, &s) + &laplacian(&x).shift(1, 0).scale(&Scalar::i());
        agree += usize::from(r.agree && r.t_bracket == direct);
    }
    let cases = RANDOM_CASES as usize;
    Outcome::new(agree == cases, format!("{agree}/{cases} random regular X"))
}

fn criterion_9() -> Outcome {
    let l = lattice_algebra(4, 2, Truncation::new(1, 2));
    let s = l.free_action();
    let i = l.interior_sites();
    let phi = |p: usize| Poly::var(l.algebra(), p);
    let anti = |p: usize| Poly::var(l.algebra(), l.antifield_index(p));
    let quartic = l.quartic(&Scalar::one());
    let theta = l.ghost_theta(i[0], i[1]);
    let bilinear = (&phi(i[0]) * &anti(i[0])).shift(0, 1);

    let mut forms_agree = 0;
    let mut verdicts = Vec::new();
    for (name, v) in [("quartic", &quartic), ("theta", &theta), ("bilinear", &bilinear)] {
        let r = l.check_qme(&s, v).unwrap();
        forms_agree += usize::from(r.agree && r.holds == r.holds_exp);
        verdicts.push(format!("{name}:{}", if r.holds { "holds" } else { "fails" }));
    }
    let expected_verdicts = verdicts == ["quartic:holds", "theta:holds", "bilinear:fails"];

    let xs = [phi(3), &phi(i[1]) * &anti(i[0]), &(&phi(1) * &phi(2)) * &anti(i[2]), &phi(0) * &phi(i[3])];
    let (mut intertwining, mut nilpotent, mut total) = (0, 0, 0);
    for v in [&quartic, &theta] {
        for x in &xs {
            total += 1;
            let q = l.quantum_bv(&s, v, x).unwrap();
            let shat = &l.t_bracket(x, &(&s + v)) - &laplacian(x).shift(1, 0).scale(&Scalar::i());
            let lhs = l.star_bracket(&l.retarded_map(v, x).unwrap(), &s);
            let rhs = l.retarded_map(v, &shat).unwrap();
            intertwining += usize::from(q.agree && l.report(&lhs) == l.report(&rhs));
            nilpotent += usize::from(l.s_hat_squared(&s, v, x).is_zero());
        }
    }
    Outcome::new(
        forms_agree == 3 && expected_verdicts && intertwining == total && nilpotent == total,
        format!(
            "forms agree {forms_agree}/3 ({}); intertwining {intertwining}/{total}; ŝ²=0 {nilpotent}/{total}",
            verdicts.join(", ")
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut ok, mut total) = (0, 0);
    for (nt, nx) in [(4, 2), (5, 2), (4, 3)] {
        let l = lattice_algebra(nt, nx, Truncation::new(0, 3));
        for _ in 0..5 {
            let split = rng.gen_range(1..nt) * nx;
            let late: Vec<usize> = (split..l.sites()).collect();
            let early: Vec<usize> = (0..split).collect();
            let pf = l.smeared(&test_function(&mut rng, &l, &late)).unwrap();
            let v = (&pf * &pf).shift(0, 1);
            let g = random_poly(&mut rng, l.algebra(), &early, 2, None);
            for order in 0..=3 {
                total += 1;
                ok += usize::from(l.classical_moller(&v, &g, order).unwrap() == g);
            }
        }
    }
    Outcome::new(ok == total, format!("{ok}/{total} (lattice, sample, order) cases with r_V(G) = G"))
}

/// Independent oracle for criterion 11: Buchberger's algorithm over ℚ in
/// three variables with graded reverse lexicographic order.
mod groebner {
    use std::cmp::Ordering;
    use std::collections::BTreeMap;

    use bv_core::lattice::Rat;
    use num_traits::{One, Zero};

    pub type Exp = [u32; 3];
    pub type P = BTreeMap<Exp, Rat>;

    fn grevlex(a: &Exp, b: &Exp) -> Ordering {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| (0..3).rev().map(|i| b[i].cmp(&a[i])).find(|o| o.is_ne()).unwrap_or(Ordering::Equal))
    }

    fn lead(p: &P) -> Option<(Exp, Rat)> {
        p.iter().max_by(|a, b| grevlex(a.0, b.0)).map(|(e, c)| (*e, c.clone()))
    }

    fn divides(a: &Exp, b: &Exp) -> bool {
        (0..3).all(|i| a[i] <= b[i])
    }

    pub fn add_scaled(p: &mut P, q: &P, c: &Rat, shift: &Exp) {
        for (e, v) in q {
            let key = [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]];
            let entry = p.entry(key).or_insert_with(Rat::zero);
            *entry += c * v;
            if entry.is_zero() {
                p.remove(&key);
            }
        }
    }

    pub fn mul(p: &P, q: &P) -> P {
        let mut out = P::new();
        for (e, c) in q {
            add_scaled(&mut out, p, c, e);
        }
        out
    }

    pub fn derivative(p: &P, var: usize) -> P {
        let mut out = P::new();
        for (e, c) in p {
            if e[var] > 0 {
                let mut d = *e;
                d[var] -= 1;
                out.insert(d, c * Rat::from_integer(e[var].into()));
            }
        }
        out
    }

    fn reduce(mut p: P, basis: &[P]) -> P {
        let mut rem = P::new();
        while let Some((e, c)) = lead(&p) {
            match basis.iter().find_map(|g| lead(g).filter(|(lg, _)| divides(lg, &e)).map(|l| (g, l))) {
                Some((g, (lg, lc))) => {
                    let shift = [e[0] - lg[0], e[1] - lg[1], e[2] - lg[2]];
                    add_scaled(&mut p, g, &(-c / lc), &shift);
                }
                None => {
                    p.remove(&e);
                    rem.insert(e, c);
                }
            }
        }
        rem
    }

    fn s_poly(f: &P, g: &P) -> P {
        let ((lf, cf), (lg, cg)) = (lead(f).unwrap(), lead(g).unwrap());
        let lcm: Exp = [lf[0].max(lg[0]), lf[1].max(lg[1]), lf[2].max(lg[2])];
        let mut out = P::new();
        add_scaled(&mut out, f, &cf.recip(), &[lcm[0] - lf[0], lcm[1] - lf[1], lcm[2] - lf[2]]);
        add_scaled(&mut out, g, &-cg.recip(), &[lcm[0] - lg[0], lcm[1] - lg[1], lcm[2] - lg[2]]);
        out
    }

    pub fn basis(generators: Vec<P>) -> Vec<P> {
        let mut g: Vec<P> = generators.into_iter().filter(|p| !p.is_empty()).collect();
        let mut pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        while let Some((i, j)) = pairs.pop() {
            let r = reduce(s_poly(&g[i], &g[j]), &g);
            if !r.is_empty() {
                g.push(r);
                let k = g.len() - 1;
                pairs.extend((0..k).map(|i| (i, k)));
            }
        }
        g
    }

    /// Monomials of degree at most `d` outside the leading-term ideal: the
    /// dimension of `ℚ[x,y,z]_{≤d} / (I ∩ ℚ[x,y,z]_{≤d})`.
    pub fn standard_monomials(basis: &[P], d: u32) -> usize {
        let leads: Vec<Exp> = basis.iter().filter_map(|g| lead(g).map(|(e, _)| e)).collect();
        let mut count = 0;
        for a in 0..=d {
            for b in 0..=d - a {
                for c in 0..=d - a - b {
                    count += usize::from(!leads.iter().any(|l| divides(l, &[a, b, c])));
                }
            }
        }
        count
    }

    pub fn constant(c: i64) -> P {
        P::from([([0, 0, 0], Rat::from_integer(c.into()))])
    }

    pub fn var(i: usize) -> P {
        let mut e = [0; 3];
        e[i] = 1;
        P::from([(e, Rat::one())])
    }
}

/// Equations of motion of `z Π_k (x² + y² − k²)` written out directly.
fn toy_equations(n: i64) -> Vec<groebner::P> {
    use groebner::{add_scaled, constant, derivative, mul, var};
    let mut r2 = mul(&var(0), &var(0));
    add_scaled(&mut r2, &mul(&var(1), &var(1)), &Rat::one(), &[0, 0, 0]);
    let mut action = var(2);
    for k in 1..=n {
        let mut factor = r2.clone();
        add_scaled(&mut factor, &constant(k * k), &-Rat::one(), &[0, 0, 0]);
        action = mul(&action, &factor);
    }
    (0..3).map(|v| derivative(&action, v)).collect()
}

fn criterion_11() -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 1..=2u32 {
        let model = models::toy_circles(n).unwrap();
        let gb = groebner::basis(toy_equations(n as i64));
        for gh in 0..=1i64 {
            for d in 1..=5u32 {
                let filter = BasisFilter { pure_ghost: Some(gh) };
                let dim = cohomology_dim(&model, Differential::Delta, gh, d, filter).unwrap().dim_cohomology;
                // One odd ghost: the pure-ghost-1 sector is c times the quotient in degree d − 1.
                let oracle = groebner::standard_monomials(&gb, d - gh as u32);
                pass &= dim == oracle;
                rows.push(format!("N={n} gh={gh} D={d}: {dim}/{oracle}"));
            }
        }
    }
    Outcome::new(pass, rows.join(", "))
}

#[test]
fn acceptance() {
    let (c3, c3_attainable) = criterion_3();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "toy-model invariants", criterion_1()),
        (2, "antibracket algebra", criterion_2()),
        (3, "BV-algebra identities", c3),
        (4, "master equations", criterion_4()),
        (5, "gauge fixing", criterion_5()),
        (6, "lattice exactness", criterion_6()),
        (7, "deformation quantization", criterion_7()),
        (8, "quantum Koszul identity", criterion_8()),
        (9, "QME and quantum BV operator", criterion_9()),
        (10, "Møller causality", criterion_10()),
        (11, "oracle equivalence", criterion_11()),
    ];
    let mut unexpected = Vec::new();
    for (n, name, o) in &results {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let note = UNATTAINABLE.iter().find(|(k, _)| k == n).filter(|_| !o.pass);
        match note {
            Some((_, why)) => println!("criterion {n:>2} {name}: {verdict} ({}; unattainable: {why})", o.detail),
            None => println!("criterion {n:>2} {name}: {verdict} ({})", o.detail),
        }
        if !o.pass && note.is_none() {
            unexpected.push(*n);
        }
    }
    assert!(c3_attainable, "Δ² = 0 or a sign-corrected Δ-bracket identity failed");
    assert!(unexpected.is_empty(), "failing criteria: {unexpected:?}");
}
