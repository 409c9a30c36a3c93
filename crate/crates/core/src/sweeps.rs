//! Seeded property suites over the model varieties.
//!
//! Each sweep enumerates its cases up front and fans the checks out through
//! [`crate::par`], collecting human-readable failure strings. The `*_seq`
//! variants force the sequential path so the two can be benchmarked against
//! each other.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{
    act_autl, act_torus, autl_reduce, is_autl_canonical, stabilizer_solve, t_reduce, AutLElement,
    Half, MatrixPairE, PointConfig,
};
use crate::cohom::h_line_bundle;
use crate::geom::{euler_characteristic, grr_pushforward, canonical_class, ChernData, ChowClass};
use crate::monad::{
    monad_chern, monad_complete, monad_compose_check, pointwise_check, restrict_to_lambda,
    MonadData, PolyMatrix,
};
use crate::rational::{rat, ratio, Rational};
use crate::stability::{hodge_inequality_check, threshold_c_f, FibrationFrame, SheafNumData};
use crate::strata::{check_ineq_fg, dim_end, enumerate_split_types, generic_split, moduli_dims};
use crate::variety::Variety;

/// Seed used by the CLI and the acceptance suite unless overridden.
pub const DEFAULT_SEED: u64 = 0x0F1B_57AB;

/// Outcome of one sweep: how many cases ran and what failed.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("PASS {} ({} cases)", self.name, self.cases)
        } else {
            format!(
                "FAIL {} ({} of {} cases): {}",
                self.name,
                self.failures.len(),
                self.cases,
                self.failures.first().map(String::as_str).unwrap_or("")
            )
        }
    }
}

fn run_cases<T, F>(name: &'static str, cases: Vec<T>, parallel: bool, f: F) -> SweepReport
where
    T: Send,
    F: Fn(T) -> Option<String> + Send + Sync,
{
    let total = cases.len();
    let outcomes = if parallel {
        crate::par::map_collect(cases, f)
    } else {
        crate::par::map_collect_seq(cases, f)
    };
    SweepReport {
        name,
        cases: total,
        failures: outcomes.into_iter().flatten().collect(),
    }
}

const HIRZEBRUCHS: [u32; 4] = [0, 1, 2, 3];
const P2_BUNDLES: [(u32, u32); 5] = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 3)];

fn all_varieties() -> Vec<Variety> {
    let mut out = vec![Variety::P1, Variety::P2];
    out.extend(HIRZEBRUCHS.iter().map(|&l| Variety::hirzebruch(l)));
    out.extend(P2_BUNDLES.iter().map(|&(a, b)| Variety::p2_bundle(a, b)));
    out
}

/// `ch(π_! F) = (r, -n)` for rank `r`, `c1 = 0`, `c2 = n·pt` on every `Y_ℓ`.
pub fn grr_sweep(parallel: bool) -> SweepReport {
    let mut cases = Vec::new();
    for ell in HIRZEBRUCHS {
        for r in 1..=5u32 {
            for n in 0..=8i64 {
                cases.push((ell, r, n));
            }
        }
    }
    run_cases("grr-pushforward", cases, parallel, |(ell, r, n)| {
        let v = Variety::hirzebruch(ell);
        let s = SheafNumData::monad_type(v, r, n);
        let push = match s.to_chern().and_then(|ch| grr_pushforward(&ch)) {
            Ok(p) => p,
            Err(e) => return Some(format!("ell={ell} r={r} n={n}: {e}")),
        };
        let want_deg = ChowClass::point(Variety::P1).scale(&rat(-n));
        if push.rank() != rat(r as i64) || push.ch_part(1) != want_deg {
            return Some(format!(
                "ell={ell} r={r} n={n}: got rank {} deg {}",
                push.rank(),
                push.ch_part(1)
            ));
        }
        None
    })
}

fn end_sheaf(v: Variety, r: u32, n: i64) -> SheafNumData {
    let c2 = match v {
        Variety::P2Bundle { .. } => ChowClass::divisor(v, (1, 0))
            .power(2)
            .unwrap()
            .scale(&rat(2 * r as i64 * n)),
        _ => ChowClass::point(v).scale(&rat(2 * r as i64 * n)),
    };
    SheafNumData::new(r * r, ChowClass::zero(v), c2, Rational::zero())
}

/// `χ(End F) = -2rn + r²` on `Y_ℓ` and `1 - (2(1+a+b)nr - r² + 1)` on
/// `Y_{a,b}`, through the Todd class.
pub fn euler_end_sweep(parallel: bool) -> SweepReport {
    let mut cases = Vec::new();
    for ell in HIRZEBRUCHS {
        for r in 2..=4u32 {
            for n in r as i64..=8 {
                cases.push((Variety::hirzebruch(ell), r, n));
            }
        }
    }
    for (a, b) in P2_BUNDLES {
        for r in 2..=4u32 {
            for n in r as i64..=8 {
                cases.push((Variety::p2_bundle(a, b), r, n));
            }
        }
    }
    run_cases("euler-characteristics", cases, parallel, |(v, r, n)| {
        let expect = match v {
            Variety::P2Bundle { a, b } => {
                let m = 2 * (1 + a as i64 + b as i64) * n * r as i64 - (r as i64).pow(2) + 1;
                1 - m
            }
            _ => -2 * r as i64 * n + (r as i64).pow(2),
        };
        let chi = end_sheaf(v, r, n)
            .to_chern()
            .and_then(|ch| euler_characteristic(&ch));
        match chi {
            Ok(x) if x == rat(expect) => None,
            Ok(x) => Some(format!("{v} r={r} n={n}: chi = {x}, want {expect}")),
            Err(e) => Some(format!("{v} r={r} n={n}: {e}")),
        }
    })
}

/// `χ(S(-1,-1)) = 0` for rank `s`, `c1 = 0`, `c2 = c·u²`, `c3 = 0`.
pub fn twist_vanishing_sweep(parallel: bool) -> SweepReport {
    let mut cases = Vec::new();
    for (a, b) in P2_BUNDLES {
        for s in 1..=6u32 {
            for c in 0..=8i64 {
                cases.push((a, b, s, c));
            }
        }
    }
    run_cases("twist-vanishing", cases, parallel, |(a, b, s, c)| {
        let v = Variety::p2_bundle(a, b);
        let sheaf = SheafNumData::monad_type(v, s, c);
        let twist = ChowClass::divisor(v, (-1, -1));
        let chi = sheaf
            .to_chern()
            .and_then(|ch| ch.twist(&twist))
            .and_then(|t| euler_characteristic(&t));
        match chi {
            Ok(x) if x.is_zero() => None,
            Ok(x) => Some(format!("({a},{b}) s={s} c={c}: chi = {x}")),
            Err(e) => Some(format!("({a},{b}) s={s} c={c}: {e}")),
        }
    })
}

/// Hodge-index inequality for seeded divisor classes with coefficients in
/// `[-10, 10]` and `c ∈ [0, 20]`.
pub fn hodge_sweep(seed: u64, per_variety: usize, parallel: bool) -> SweepReport {
    let mut varieties: Vec<Variety> = HIRZEBRUCHS.iter().map(|&l| Variety::hirzebruch(l)).collect();
    varieties.extend(P2_BUNDLES.iter().map(|&(a, b)| Variety::p2_bundle(a, b)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for v in varieties {
        for _ in 0..per_variety {
            let k = rng.gen_range(-10..=10i64);
            let l = rng.gen_range(-10..=10i64);
            let c = ratio(rng.gen_range(0..=20 * 4), 4);
            cases.push((v, k, l, c));
        }
    }
    run_cases("hodge-inequality", cases, parallel, |(v, k, l, c)| {
        let frame = FibrationFrame::standard(v).expect("fibred");
        let xi = ChowClass::divisor(v, (k, l));
        match hodge_inequality_check(&frame, &xi, &c) {
            Ok(chk) if chk.holds => None,
            Ok(chk) => Some(format!("{v} xi=({k},{l}) c={c}: {} < {}", chk.lhs, chk.rhs)),
            Err(e) => Some(format!("{v} xi=({k},{l}) c={c}: {e}")),
        }
    })
}

/// `c_F` specializes to `r(r-1)n` on Hirzebruch frames and `r(r-1)n(a+b)`
/// on the P²-bundle frames.
pub fn threshold_sweep(parallel: bool) -> SweepReport {
    let mut cases = Vec::new();
    for ell in HIRZEBRUCHS {
        for r in 2..=4u32 {
            for n in r as i64..=8 {
                cases.push((Variety::hirzebruch(ell), r, n));
            }
        }
    }
    for (a, b) in P2_BUNDLES {
        for r in 2..=4u32 {
            for n in r as i64..=8 {
                cases.push((Variety::p2_bundle(a, b), r, n));
            }
        }
    }
    run_cases("threshold-specialization", cases, parallel, |(v, r, n)| {
        let frame = FibrationFrame::standard(v).expect("fibred");
        let s = SheafNumData::monad_type(v, r, n);
        let expect = match v {
            Variety::P2Bundle { a, b } => rat(r as i64 * (r as i64 - 1) * n * (a + b) as i64),
            _ => rat(r as i64 * (r as i64 - 1) * n),
        };
        match threshold_c_f(&frame, &s) {
            Ok(x) if x == expect => None,
            Ok(x) => Some(format!("{v} r={r} n={n}: c_F = {x}, want {expect}")),
            Err(e) => Some(format!("{v} r={r} n={n}: {e}")),
        }
    })
}

/// Splitting-type dimension bound, moduli-dimension identity, and the
/// deformation inequality, all exhaustive over their stated ranges.
pub fn strata_sweep(parallel: bool) -> SweepReport {
    #[derive(Clone)]
    enum Case {
        DimEnd(u32, u32),
        Dims(u32, u32),
        Ineq(u32, u32),
    }
    let mut cases = Vec::new();
    for r in 2..=5u32 {
        for n_f in 0..=12u32 {
            cases.push(Case::DimEnd(r, n_f));
        }
    }
    for r in 2..=6u32 {
        for n in r..=12 {
            cases.push(Case::Dims(r, n));
            cases.push(Case::Ineq(r, n));
        }
    }
    run_cases("strata", cases, parallel, |case| match case {
        Case::DimEnd(r, n_f) => {
            let generic = generic_split(r, n_f);
            for t in enumerate_split_types(r, n_f) {
                let d = dim_end(&t);
                if d < (r as i64).pow(2) {
                    return Some(format!("dim End({t}) = {d} < r^2"));
                }
                if (d == (r as i64).pow(2)) != (t == generic) {
                    return Some(format!("equality mismatch at {t}"));
                }
            }
            None
        }
        Case::Dims(r, n) => match moduli_dims(r, n) {
            Ok(d) if d.extension_space_dim - d.group_dim == d.hilb_fiber_dim => None,
            Ok(_) => Some(format!("dims identity fails at r={r} n={n}")),
            Err(e) => Some(format!("r={r} n={n}: {e}")),
        },
        Case::Ineq(r, n) => {
            for r_prime in 1..r {
                for n_prime in r_prime..=n {
                    if !check_ineq_fg(r, n, r_prime, n_prime) {
                        return Some(format!("ineq fails at ({r},{n},{r_prime},{n_prime})"));
                    }
                }
            }
            None
        }
    })
}

const CANONICAL_SHAPES: [(usize, usize); 4] = [(2, 3), (2, 4), (3, 5), (3, 7)];

/// Canonical-form suite: reduction succeeds, is idempotent and
/// orbit-constant, stabilizers are trivial, and the torus reduction is
/// orbit-constant, for seeded data over `x = (0, 1, …, n-1)`.
pub fn canonical_sweep(seed: u64, seeds_per_shape: usize, orbit_samples: usize, parallel: bool) -> SweepReport {
    let mut cases = Vec::new();
    for (r, n) in CANONICAL_SHAPES {
        for i in 0..seeds_per_shape {
            cases.push((r, n, seed ^ ((r as u64) << 32) ^ ((n as u64) << 40) ^ i as u64));
        }
    }
    run_cases("canonical-form", cases, parallel, move |(r, n, case_seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
        let e = MatrixPairE::seeded_generic(r, &PointConfig::integers(n), &mut rng);
        let tag = format!("(r,n)=({r},{n}) seed={case_seed}");
        let red = match autl_reduce(&e) {
            Ok(red) => red,
            Err(err) => return Some(format!("{tag}: {err}")),
        };
        match is_autl_canonical(&red.canonical) {
            Ok(true) => {}
            _ => return Some(format!("{tag}: reduction not in slice form")),
        }
        match act_autl(&red.g_used, &e, Half::Both) {
            Ok(moved) if moved == red.canonical => {}
            _ => return Some(format!("{tag}: g_used does not reproduce the output")),
        }
        match autl_reduce(&red.canonical) {
            Ok(again) if again.canonical == red.canonical && again.g_used.is_identity() => {}
            _ => return Some(format!("{tag}: not idempotent")),
        }
        for _ in 0..orbit_samples {
            let g = AutLElement::seeded(e.r1(), e.r2(), &mut rng);
            let moved = match act_autl(&g, &e, Half::Both) {
                Ok(m) => m,
                Err(err) => return Some(format!("{tag}: {err}")),
            };
            match autl_reduce(&moved) {
                Ok(r2) if r2.canonical == red.canonical => {}
                Ok(_) => return Some(format!("{tag}: orbit reduction differs")),
                Err(err) => return Some(format!("{tag}: orbit reduction failed: {err}")),
            }
        }
        let stab = match stabilizer_solve(&red.canonical) {
            Ok(s) => s,
            Err(err) => return Some(format!("{tag}: {err}")),
        };
        if stab.len() != 1 || !stab[0].is_identity() {
            return Some(format!("{tag}: stabilizer has {} elements", stab.len()));
        }
        let base = match t_reduce(&e) {
            Ok(b) => b,
            Err(err) => return Some(format!("{tag}: t_reduce: {err}")),
        };
        for _ in 0..3 {
            let t: Vec<Rational> = (0..n)
                .map(|_| {
                    let num = loop {
                        let x = rng.gen_range(-6..=6i64);
                        if x != 0 {
                            break x;
                        }
                    };
                    ratio(num, rng.gen_range(1..=3))
                })
                .collect();
            let moved = act_torus(&e, &t);
            match t_reduce(&moved) {
                Ok(r2) if r2.scaled == base.scaled => {}
                Ok(_) => return Some(format!("{tag}: torus reduction differs")),
                Err(err) => return Some(format!("{tag}: torus orbit: {err}")),
            }
        }
        None
    })
}

/// Monad suite: the pulled-back P² monad, seeded completions, and the Chern
/// bookkeeping.
pub fn monad_sweep(seed: u64, completion_seeds: usize, samples: usize, parallel: bool) -> SweepReport {
    #[derive(Clone)]
    enum Case {
        Pullback(usize),
        Complete { a: u32, b: u32, r: u32, n: u32, seed: u64 },
        Chern { a: u32, b: u32, r: u32, n: u32 },
    }
    let mut cases = vec![Case::Pullback(samples)];
    for (a, b) in [(0u32, 0u32), (0, 1)] {
        for (r, n) in [(2u32, 1u32), (2, 2), (3, 2)] {
            for i in 0..completion_seeds {
                cases.push(Case::Complete {
                    a,
                    b,
                    r,
                    n,
                    seed: seed ^ ((a as u64) << 24) ^ ((b as u64) << 28) ^ ((r as u64) << 32) ^ ((n as u64) << 36) ^ i as u64,
                });
            }
        }
    }
    for a in 0..=3u32 {
        for b in a..=3 {
            for r in 1..=5u32 {
                for n in 0..=5u32 {
                    cases.push(Case::Chern { a, b, r, n });
                }
            }
        }
    }
    run_cases("monad", cases, parallel, move |case| match case {
        Case::Pullback(samples) => {
            let m = MonadData::p2_pullback_example();
            if !monad_compose_check(&m).is_monad {
                return Some("pullback monad: B·A != 0".into());
            }
            let rep = pointwise_check(&m, samples, seed);
            if !rep.a_injective || !rep.b_surjective {
                return Some(format!("pullback monad: {} pointwise failures", rep.failures.len()));
            }
            let lam = restrict_to_lambda(&m);
            if !lam.trivial_on_lambda {
                return Some("pullback monad: not trivial on Lambda".into());
            }
            None
        }
        Case::Complete { a, b, r, n, seed } => {
            let v = Variety::p2_bundle(a, b);
            let mid = (r + 2 * n) as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a_mat = PolyMatrix::seeded_degree_u(v, mid, n as usize, &mut rng);
            let basis = match monad_complete(v, r, n, &a_mat) {
                Ok(basis) => basis,
                Err(e) => return Some(format!("complete ({a},{b},{r},{n}): {e}")),
            };
            if basis.is_empty() {
                return Some(format!("complete ({a},{b},{r},{n}): empty solution space"));
            }
            for b_mat in &basis {
                let m = match MonadData::new(v, r, n, a_mat.clone(), b_mat.clone()) {
                    Ok(m) => m,
                    Err(e) => return Some(format!("complete ({a},{b},{r},{n}): {e}")),
                };
                if !monad_compose_check(&m).is_monad {
                    return Some(format!("complete ({a},{b},{r},{n}): candidate fails B·A = 0"));
                }
            }
            None
        }
        Case::Chern { a, b, r, n } => {
            let v = Variety::p2_bundle(a, b);
            let ch = match monad_chern(v, r, n) {
                Ok(ch) => ch,
                Err(e) => return Some(format!("chern ({a},{b},{r},{n}): {e}")),
            };
            let u2 = ChowClass::divisor(v, (1, 0)).power(2).unwrap();
            if ch.rank() != rat(r as i64)
                || !ch.c1().is_zero()
                || ch.c2() != u2.scale(&rat(n as i64))
                || !ch.c3().is_zero()
            {
                return Some(format!("chern ({a},{b},{r},{n}): wrong classes"));
            }
            None
        }
    })
}

/// Cohomology consistency: `Σ(-1)ⁱhⁱ = χ` and Serre duality for seeded
/// line bundles on every model variety.
pub fn cohom_sweep(seed: u64, per_variety: usize, parallel: bool) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for v in all_varieties() {
        for _ in 0..per_variety {
            let k = rng.gen_range(-6..=6i64);
            let l = if v.is_fibred() { rng.gen_range(-6..=6i64) } else { 0 };
            cases.push((v, k, l));
        }
    }
    run_cases("cohomology-consistency", cases, parallel, |(v, k, l)| {
        let h = h_line_bundle(v, (k, l));
        let alt: i64 = h
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 0 { *x } else { -*x })
            .sum();
        let chi = ChernData::line_bundle(&ChowClass::divisor(v, (k, l)))
            .and_then(|ch| euler_characteristic(&ch));
        match chi {
            Ok(x) if x == rat(alt) => {}
            Ok(x) => return Some(format!("{v} O({k},{l}): sum {alt} != chi {x}")),
            Err(e) => return Some(format!("{v} O({k},{l}): {e}")),
        }
        let kappa = canonical_class(v).as_divisor_degree().expect("integral canonical");
        let dual = h_line_bundle(v, (kappa.0 - k, kappa.1 - l));
        let flipped: Vec<i64> = dual.iter().rev().copied().collect();
        if h != flipped {
            return Some(format!("{v} O({k},{l}): Serre duality fails: {h:?} vs {dual:?}"));
        }
        None
    })
}

/// All nine suites at their acceptance sizes, in criterion order.
pub fn run_all(seed: u64) -> Vec<SweepReport> {
    vec![
        grr_sweep(true),
        euler_end_sweep(true),
        twist_vanishing_sweep(true),
        hodge_sweep(seed, 1000, true),
        threshold_sweep(true),
        strata_sweep(true),
        canonical_sweep(seed, 50, 20, true),
        monad_sweep(seed, 20, 500, true),
        cohom_sweep(seed, 200, true),
    ]
}
