//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

mod common;

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::poly::*;
use common::*;
use monograde::cone::{facets_of_rays, rays_of_facets};
use monograde::divisorial::{canonical_module, class_group, is_gorenstein, same_class, DivisorialIdeal};
use monograde::exact_linalg::IntVector;
use monograde::groebner::{groebner_basis, GbConfig, GroebnerBasis, IdealPresentation, TermOrder};
use monograde::monoid::AffineMonoid;
use monograde::multigraded::{
    analyze_prime, graded_hull, graded_hull_with_passes, is_graded, truncated_maximality, GradedRingSpec,
    GradingMatrix, PRIMALITY_SAMPLES,
};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_260_101;
const TRUNCATION: u32 = 8;

type Outcome = Result<String, String>;

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Random rays with a positive first coordinate, kept when they span ℚᵈ.
fn random_rays(rng: &mut ChaCha8Rng, d: usize, extra: usize, bound: i64) -> Vec<Vec<i64>> {
    loop {
        let k = d + rng.gen_range(0..=extra);
        let rays: Vec<Vec<i64>> = (0..k)
            .map(|_| {
                let mut r = vec![rng.gen_range(1..=bound)];
                r.extend((1..d).map(|_| rng.gen_range(-bound..=bound)));
                r
            })
            .collect();
        if rank(&rays) == d {
            return rays;
        }
    }
}

fn monoid_corpus() -> Vec<(usize, Vec<Vec<i64>>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..24)
        .map(|i| {
            let d = 1 + (i % 3);
            (d, random_rays(&mut rng, d, 2, 6))
        })
        .collect()
}

fn cone_corpus() -> Vec<(usize, Vec<Vec<i64>>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    (0..50)
        .map(|i| {
            let d = 2 + (i % 3);
            (d, random_rays(&mut rng, d, 3, 9))
        })
        .collect()
}

fn ambient(m: &AffineMonoid, pts: &[IntVector]) -> Vec<Vec<i64>> {
    sorted(pts.iter().map(|p| to_i64(&m.to_ambient(p))).collect())
}

fn quadrant() -> AffineMonoid {
    AffineMonoid::from_generators(&ivs(&[vec![1, 0], vec![0, 1]])).unwrap()
}

fn veronese() -> AffineMonoid {
    AffineMonoid::from_generators(&ivs(&[vec![1, 0], vec![1, 1], vec![1, 2]])).unwrap()
}

fn rnc3() -> AffineMonoid {
    AffineMonoid::from_cone(&ivs(&[vec![1, 0], vec![1, 3]])).unwrap()
}

fn canonical_vs_enumeration() -> Outcome {
    let corpus = monoid_corpus();
    for (d, rays) in &corpus {
        let m = AffineMonoid::from_cone(&ivs(rays)).map_err(|e| e.to_string())?;
        let facets = brute_facets(*d, rays);
        let ext = extreme_rays(*d, rays, &facets);
        let hb = brute_hilbert_basis(*d, &ext, &facets);
        let expected = brute_canonical_generators(*d, &ext, &facets, &hb);
        let got = ambient(&m, &canonical_module(&m).map_err(|e| e.to_string())?.generators);
        check(got == expected, || format!("rays {rays:?}: got {got:?}, expected {expected:?}"))?;
    }
    Ok(format!("{} monoids of rank ≤ 3", corpus.len()))
}

fn free_monoids() -> Outcome {
    for n in 1..=4usize {
        let units: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let m = AffineMonoid::from_generators(&ivs(&units)).map_err(|e| e.to_string())?;
        let omega = canonical_module(&m).map_err(|e| e.to_string())?;
        let got = ambient(&m, &omega.generators);
        check(got == vec![vec![1; n]], || format!("n = {n}: generators {got:?}"))?;
        check(to_i64(omega.ideal.heights()) == vec![1; n], || format!("n = {n}: heights"))?;
    }
    Ok("n = 1..4 give the single generator (1, …, 1)".into())
}

/// An integer point on which every facet form is one.
fn gorenstein_point(d: usize, facets: &[Vec<i64>]) -> bool {
    combinations(facets.len(), d).into_iter().any(|s| {
        let a: Vec<Vec<i64>> = s.iter().map(|&i| facets[i].clone()).collect();
        let Some(x) = solve(&a, &vec![1; d]) else { return false };
        if !x.iter().all(|q| q.is_integer()) {
            return false;
        }
        let x: Vec<i64> = x.iter().map(|q| q.to_integer() as i64).collect();
        facets.iter().all(|f| dot(f, &x) == 1)
    })
}

fn gorenstein_triple() -> Outcome {
    let mut cases: Vec<(String, AffineMonoid, Option<bool>)> = monoid_corpus()
        .into_iter()
        .map(|(_, rays)| (format!("{rays:?}"), AffineMonoid::from_cone(&ivs(&rays)).unwrap(), None))
        .collect();
    cases.push(("quadrant".into(), quadrant(), Some(true)));
    cases.push(("Veronese-2".into(), veronese(), Some(true)));
    cases.push(("RNC3".into(), rnc3(), Some(false)));
    let mut yes = 0;
    for (name, m, expected) in &cases {
        let omega = canonical_module(m).map_err(|e| e.to_string())?;
        let class_trivial = class_group(m).unwrap().quotient.is_zero_class(omega.ideal.heights());
        let principal = omega.generators.len() == 1;
        let ring = DivisorialIdeal::unit(m).unwrap();
        let shifted = same_class(&ring, &omega.ideal).unwrap().is_some();
        let report = is_gorenstein(m).map_err(|e| format!("{name}: {e}"))?;
        let facets = to_i64s(m.facet_forms());
        let oracle = gorenstein_point(m.rank(), &facets);
        let all = [class_trivial, principal, shifted, report.gorenstein, oracle];
        check(all.iter().all(|&b| b == oracle), || format!("{name}: tests disagree {all:?}"))?;
        if let Some(e) = expected {
            check(oracle == *e, || format!("{name}: expected {e}"))?;
        }
        yes += oracle as usize;
    }
    Ok(format!("{} monoids agree ({yes} Gorenstein)", cases.len()))
}

fn class_groups() -> Outcome {
    for (name, m, order) in [("quadrant", quadrant(), 1), ("Veronese-2", veronese(), 2), ("RNC3", rnc3(), 3)] {
        let forms = to_i64s(m.facet_forms());
        let got: Vec<i64> = class_group(&m)
            .map_err(|e| e.to_string())?
            .invariant_factors()
            .iter()
            .map(|x| x.to_i64().unwrap())
            .collect();
        let expected: Vec<i64> = if order == 1 { vec![] } else { vec![order] };
        check(got == expected, || format!("{name}: factors {got:?}"))?;
        check(invariant_factors(&forms, 2) == expected, || format!("{name}: minors disagree"))?;
        let cosets = coset_count(&forms, 2, 4, 4);
        check(cosets == order as usize, || format!("{name}: {cosets} cosets"))?;
    }
    Ok("quadrant trivial, Veronese-2 ℤ/2, RNC3 ℤ/3".into())
}

fn cone_round_trip() -> Outcome {
    let corpus = cone_corpus();
    for (d, rays) in &corpus {
        let c = facets_of_rays(*d, &ivs(rays)).map_err(|e| e.to_string())?;
        let back = rays_of_facets(*d, c.facet_forms()).map_err(|e| e.to_string())?;
        let forms = sorted(to_i64s(c.facet_forms()));
        check(sorted(to_i64s(back.rays())) == sorted(to_i64s(c.rays())), || format!("{rays:?}: rays changed"))?;
        check(sorted(to_i64s(back.facet_forms())) == forms, || format!("{rays:?}: forms changed"))?;
        check(forms == brute_facets(*d, rays), || format!("{rays:?}: facets differ from enumeration"))?;
        let ext = to_i64s(c.rays());
        for f in &forms {
            check(&primitive(f) == f, || format!("{rays:?}: {f:?} not primitive"))?;
            // a facet is supported by d − 1 independent extreme rays
            let on: Vec<Vec<i64>> = ext.iter().filter(|r| dot(f, r) == 0).cloned().collect();
            check(rank(&on) == d - 1, || format!("{rays:?}: {f:?} is redundant"))?;
        }
    }
    Ok(format!("{} cones of rank 2..4", corpus.len()))
}

fn hilbert_bases() -> Outcome {
    let mut count = 0;
    let mut beyond = 0;
    for (d, rays) in cone_corpus().iter().filter(|(d, _)| *d <= 3) {
        let m = AffineMonoid::from_cone(&ivs(rays)).map_err(|e| e.to_string())?;
        let got = ambient(&m, m.hilbert_basis().map_err(|e| e.to_string())?);
        let facets = brute_facets(*d, rays);
        let ext = extreme_rays(*d, rays, &facets);
        let expected = brute_hilbert_basis(*d, &ext, &facets);
        check(got == expected, || format!("{rays:?}: got {got:?}, expected {expected:?}"))?;
        // inside [−5, 5]ᵈ the basis consists of irreducible box points
        let inside: Vec<Vec<i64>> = box_points(&vec![-5; *d], &vec![5; *d])
            .into_iter()
            .filter(|x| x.iter().any(|&c| c != 0) && in_cone(&facets, x))
            .collect();
        for b in got.iter().filter(|b| b.iter().all(|c| c.abs() <= 5)) {
            let split = inside.iter().any(|y| {
                let z: Vec<i64> = b.iter().zip(y).map(|(p, q)| p - q).collect();
                y != b && z.iter().any(|&c| c != 0) && in_cone(&facets, &z)
            });
            check(!split, || format!("{rays:?}: {b:?} splits inside the box"))?;
        }
        beyond += got.iter().filter(|b| b.iter().any(|c| c.abs() > 5)).count();
        count += 1;
    }
    Ok(format!("{count} cones of rank ≤ 3; {beyond} basis elements lie outside [−5, 5]ᵈ"))
}

struct HullCase {
    vars: &'static [&'static str],
    degrees: Vec<Vec<i64>>,
    ideal: &'static [&'static str],
    hull: Option<&'static [&'static str]>,
}

fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

fn shown(vars: &[&str], g: &GroebnerBasis) -> Vec<String> {
    g.polynomials()
        .iter()
        .map(|p| p.to_string_with(&names(vars), &TermOrder::grevlex(vars.len())))
        .collect()
}

fn spec(degrees: &[Vec<i64>]) -> GradedRingSpec {
    let rows: Vec<&[i64]> = degrees.iter().map(|d| d.as_slice()).collect();
    GradedRingSpec::new(GradingMatrix::from_i64(&rows).unwrap())
}

fn hull_cases() -> Vec<HullCase> {
    let z = |w: &[i64]| w.iter().map(|&x| vec![x]).collect::<Vec<_>>();
    let xy: &[&str] = &["x", "y"];
    let xyz: &[&str] = &["x", "y", "z"];
    vec![
        HullCase { vars: xy, degrees: z(&[1, 1]), ideal: &["x + y"], hull: Some(&["x + y"]) },
        HullCase { vars: &["x"], degrees: z(&[1]), ideal: &["x + 1"], hull: Some(&[]) },
        HullCase { vars: xy, degrees: z(&[1, 1]), ideal: &["x + y^2"], hull: Some(&[]) },
        HullCase { vars: xy, degrees: vec![vec![1, 0], vec![0, 1]], ideal: &["x + y"], hull: Some(&[]) },
        HullCase {
            vars: xy,
            degrees: vec![vec![1, 0], vec![0, 1]],
            ideal: &["x + y", "y^2"],
            hull: Some(&["y^2", "x*y", "x^2"]),
        },
        HullCase { vars: xy, degrees: z(&[1, -1]), ideal: &["x*y - 1"], hull: Some(&["x*y - 1"]) },
        HullCase { vars: xyz, degrees: z(&[1, 1, 1]), ideal: &["x*y - z^2", "x^3"], hull: None },
        HullCase { vars: xy, degrees: z(&[1, 1]), ideal: &["x + 1", "y"], hull: Some(&["y"]) },
        HullCase {
            vars: xyz,
            degrees: vec![vec![2, 0], vec![1, 0], vec![0, 1]],
            ideal: &["x - y^2", "z - 1"],
            hull: Some(&["y^2 - x"]),
        },
        HullCase { vars: xyz, degrees: z(&[1, -1, 2]), ideal: &["x*y - 1", "z - x^2 + y"], hull: Some(&["x*y - 1"]) },
        HullCase { vars: xyz, degrees: z(&[1, 2, -1]), ideal: &["x^2 - y", "x*z - 1"], hull: None },
        HullCase { vars: xy, degrees: z(&[1, 1]), ideal: &["x^2 + y^2 - 1"], hull: Some(&[]) },
        HullCase { vars: xyz, degrees: z(&[1, 1, 1]), ideal: &["x*z - y^2", "x + y + z - 1"], hull: Some(&["y^2 - x*z"]) },
        HullCase {
            vars: xyz,
            degrees: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            ideal: &["z - x*y", "x^2 - y"],
            hull: Some(&["x*y - z"]),
        },
    ]
}

fn hull_case(case: &HullCase, cfg: &GbConfig) -> Result<(), String> {
    let err = |e: monograde::Error| format!("{:?}: {e}", case.ideal);
    let n = case.vars.len();
    let i = IdealPresentation::parse(&names(case.vars), case.ideal, TermOrder::grevlex(n)).map_err(err)?;
    let s = spec(&case.degrees);
    let hull = graded_hull(&i, &s, cfg).map_err(err)?;
    let gi = groebner_basis(&i, cfg).map_err(err)?;
    let gh = groebner_basis(&hull, cfg).map_err(err)?;
    let label = || format!("{:?} with degrees {:?}", case.ideal, case.degrees);
    check(gi.contains_ideal(&hull), || format!("{}: hull not contained", label()))?;
    check(is_graded(&gh, &s), || format!("{}: hull not graded", label()))?;
    let again = groebner_basis(&graded_hull(&hull, &s, cfg).map_err(err)?, cfg).map_err(err)?;
    check(again.polynomials() == gh.polynomials(), || format!("{}: not idempotent", label()))?;
    let r = case.degrees[0].len();
    let reversed: Vec<usize> = (0..r).rev().collect();
    let other = groebner_basis(&graded_hull_with_passes(&i, &s, &reversed, cfg).map_err(err)?, cfg).map_err(err)?;
    check(other.polynomials() == gh.polynomials(), || format!("{}: pass order matters", label()))?;
    for f in homogeneous_members(&gi, &case.degrees, TRUNCATION) {
        check(gh.contains(&f), || format!("{}: {f} is homogeneous in I but not in the hull", label()))?;
    }
    let gap = truncated_maximality(&i, &hull, &s, TRUNCATION, cfg).map_err(err)?;
    check(gap.is_none(), || format!("{}: library reports a gap", label()))?;
    if let Some(expected) = case.hull {
        let got = shown(case.vars, &gh);
        check(got == expected, || format!("{}: hull {got:?}", label()))?;
    }
    Ok(())
}

fn graded_hulls() -> Outcome {
    let cfg = GbConfig::default();
    let cases = hull_cases();
    let fine = cases.iter().filter(|c| c.degrees[0].len() == 2).count();
    for case in &cases {
        hull_case(case, &cfg)?;
    }
    Ok(format!(
        "{} ideals ({} ℤ-graded, {fine} ℤ²-graded), maximality to degree {TRUNCATION}",
        cases.len(),
        cases.len() - fine
    ))
}

/// Variables, degrees, generators of `p` and the expected `p*`.
type PrimeCase = (&'static [&'static str], Vec<Vec<i64>>, &'static [&'static str], &'static [&'static str]);

fn prime_diagnostics() -> Outcome {
    let z = |w: &[i64]| w.iter().map(|&x| vec![x]).collect::<Vec<_>>();
    let fine = vec![vec![1, 0], vec![0, 1]];
    let cases: Vec<PrimeCase> = vec![
        (&["x", "y"], z(&[1, 1]), &["x + 1", "y"], &["y"]),
        (&["x"], z(&[1]), &["x - 1"], &[]),
        // kernels of point evaluations
        (&["x", "y"], fine.clone(), &["x - 2", "y + 3"], &[]),
        (&["x", "y"], z(&[1, 1]), &["x - 1", "y - 1"], &["x - y"]),
        (&["x", "y", "z"], z(&[1, 1, 1]), &["x - 1", "y - 2", "z - 3"], &["y - 2/3*z", "x - 1/3*z"]),
        (&["x", "y", "z"], vec![vec![1, 0], vec![0, 1], vec![1, 1]], &["x - 1", "y + 1", "z - 2"], &["x*y + 1/2*z"]),
        (&["x", "y"], z(&[1, -1]), &["x - 1", "y - 1"], &["x*y - 1"]),
    ];
    let cfg = GbConfig::default();
    for (vars, degrees, gens, expected) in &cases {
        let n = vars.len();
        let err = |e: monograde::Error| format!("{gens:?}: {e}");
        let p = IdealPresentation::parse(&names(vars), gens, TermOrder::grevlex(n)).map_err(err)?;
        let s = spec(degrees);
        let a = analyze_prime(&p, &s, &cfg).map_err(err)?;
        let gp = groebner_basis(&p, &cfg).map_err(err)?;
        let gs = groebner_basis(&a.p_star, &cfg).map_err(err)?;
        check(is_graded(&gs, &s) && !a.graded, || format!("{gens:?}: p* not graded"))?;
        check(gp.contains_ideal(&a.p_star), || format!("{gens:?}: p* ⊄ p"))?;
        check(a.samples == PRIMALITY_SAMPLES, || format!("{gens:?}: {} samples", a.samples))?;
        check(a.dim_quotient_p_star > a.dim_quotient_p, || format!("{gens:?}: dimensions {a:?}"))?;
        check(1 <= a.tau && a.tau <= a.sigma, || format!("{gens:?}: τ = {}, σ = {}", a.tau, a.sigma))?;
        check(a.sigma == rank(degrees), || format!("{gens:?}: σ = {}", a.sigma))?;
        let got = shown(vars, &gs);
        check(got == *expected, || format!("{gens:?}: p* = {got:?}"))?;
        for f in homogeneous_members(&gp, degrees, TRUNCATION) {
            check(gs.contains(&f), || format!("{gens:?}: {f} missing from p*"))?;
        }
    }
    Ok(format!("{} nongraded primes", cases.len()))
}

fn determinism() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    for path in &files {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let command = v["command"].as_str().ok_or("fixture without command")?;
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_monograde"))
                .env_remove("MONOGRADE_BUDGET")
                .args([command, "--input"])
                .arg(path)
                .output()
                .map_err(|e| e.to_string())
        };
        let first = run()?;
        check(first.status.success(), || format!("{}: exit {:?}", path.display(), first.status.code()))?;
        for _ in 0..2 {
            check(run()?.stdout == first.stdout, || format!("{}: output changed", path.display()))?;
        }
    }
    Ok(format!("{} fixtures, three runs each", files.len()))
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 9] = [
        (1, "canonical generators vs enumeration", canonical_vs_enumeration, Some(Duration::from_secs(60))),
        (2, "free monoids", free_monoids, Some(Duration::from_secs(1))),
        (3, "Gorenstein triple equivalence", gorenstein_triple, None),
        (4, "class group fixtures", class_groups, None),
        (5, "cone duality round trip", cone_round_trip, Some(Duration::from_secs(30))),
        (6, "Hilbert basis vs enumeration", hilbert_bases, None),
        (7, "graded hull", graded_hulls, Some(Duration::from_secs(120))),
        (8, "prime diagnostics", prime_diagnostics, None),
        (9, "CLI determinism", determinism, None),
    ];
    let mut failed = 0;
    for (k, name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed >= l => Err(format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), l.as_secs())),
            (o, _) => o,
        };
        let limit = limit.map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
        match outcome {
            Ok(detail) => println!("PASS {k} {name}: {detail} ({:.2} s{limit})", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {k} {name}: {why} ({:.2} s{limit})", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
