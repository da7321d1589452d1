//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::time::{Duration, Instant};

use bifurcata::fiber::{euler_affine_curve_along, euler_fiber_split_along, general_branches, generic_shift};
use bifurcata::infinity::{analyze_with, lambda_bifurcation_set, AnalyzeOptions};
use bifurcata::jets::{count_jets, count_jets_filtered, count_jets_linear, smooth_bundle_check, Filter, JetSpec};
use bifurcata::newton::{is_convenient, is_nondegenerate, kouchnirenko_number};
use bifurcata::report::{to_json, ReportJson};
use bifurcata::{analyze, critical_spectrum, parse_polynomial, AnalysisReport, Poly, Rat, UPoly, ValueClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SIZE: usize = 60;
const CORPUS_SEED: u64 = 7;

type Check = Result<String, String>;

fn p(s: &str) -> Poly<Rat> {
    parse_polynomial(s).expect("valid polynomial")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Random polynomials of degree 2..=4 with small integer coefficients whose
/// Jacobian ideal is zero-dimensional.
fn corpus() -> Vec<Poly<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let mut out = Vec::new();
    while out.len() < CORPUS_SIZE {
        let mut terms = Vec::new();
        for i in 0..=4u32 {
            for j in 0..=(4 - i) {
                if (i, j) != (0, 0) && rng.gen_bool(0.35) {
                    let c: i64 = rng.gen_range(-3..=3);
                    if c != 0 {
                        terms.push(format!("{c}*x^{i}*y^{j}"));
                    }
                }
            }
        }
        if terms.is_empty() {
            continue;
        }
        let f = p(&terms.join(" + "));
        if f.degree().unwrap_or(0) < 2 || critical_spectrum(&f).is_err() || out.contains(&f) {
            continue;
        }
        out.push(f);
    }
    out
}

fn options() -> AnalyzeOptions {
    AnalyzeOptions { workers: 4, ..AnalyzeOptions::default() }
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let f = p("x*(x*y - 1)");
    let r = analyze(&f).map_err(|e| e.to_string())?;
    let zero = ValueClass::rational(&Rat::int(0));
    ensure(r.euler_jump_set == vec![zero.clone()], || format!("jump set {:?}", r.euler_jump_set))?;
    let lambda = lambda_bifurcation_set(&f).map_err(|e| e.to_string())?;
    ensure(lambda == vec![zero.clone()], || format!("lambda set {lambda:?}"))?;
    ensure(r.chi_gen == 0, || format!("chi_gen {}", r.chi_gen))?;
    let v = r.fibers.iter().find(|v| v.value == zero).ok_or("no fiber over 0")?;
    let got = (v.chi_a, v.mu_a, v.lambda_a, v.chi_infinity);
    ensure(got == (1, Some(0), Some(1), Some(-1)), || format!("(chi, mu, lambda, chi_inf) = {got:?}"))?;
    let elapsed = t.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("chi_gen 0, chi_0 1, mu 0, lambda 1, chi_inf -1 in {elapsed:?}"))
}

/// Fiber relations, plus the general algorithm over `Q[α]/(m)` as an
/// independent oracle for the algebraic classes of degree at most 4.
fn criterion_2(reports: &[AnalysisReport], elapsed: Duration) -> Check {
    let mut classes = 0;
    let mut oracle = 0;
    for r in reports {
        let f = &r.polynomial;
        for v in &r.fibers {
            let (mu, lambda, chi_inf) = match (v.mu_a, v.lambda_a, v.chi_infinity) {
                (Some(m), Some(l), Some(c)) => (m as i64, l, c),
                _ => return Err(format!("{}: missing invariants at {}", f.render(), v.value)),
            };
            ensure(v.chi_a - r.chi_gen == mu + lambda, || format!("{}: relation fails at {}", f.render(), v.value))?;
            ensure(chi_inf == -lambda, || format!("{}: chi_inf != -lambda at {}", f.render(), v.value))?;
            if mu == 0 {
                ensure(chi_inf == r.chi_gen - v.chi_a, || format!("{}: non-critical {} breaks chi_gen - chi_a", f.render(), v.value))?;
            }
            classes += 1;
            if (2..=4).contains(&v.value.degree()) {
                let branches = general_branches(f, v.value.minpoly(), 1).map_err(|e| e.to_string())?;
                ensure(branches.iter().all(|(_, chi)| *chi == v.chi_a), || {
                    format!("{}: general algorithm disagrees at {}", f.render(), v.value)
                })?;
                oracle += 1;
            }
        }
    }
    ensure(elapsed < Duration::from_secs(120), || format!("corpus took {elapsed:?}"))?;
    Ok(format!("{} polynomials, {classes} classes ({oracle} re-derived over number fields), analysis {elapsed:?}", reports.len()))
}

fn criterion_3(reports: &[AnalysisReport]) -> Check {
    for r in reports {
        let c = r.consistency.as_ref().ok_or_else(|| format!("{}: no consistency record", r.polynomial.render()))?;
        ensure(r.chi_gen == 1 - (c.mu_sum + c.lambda_sum), || {
            format!("{}: {} != 1 - ({} + {})", r.polynomial.render(), r.chi_gen, c.mu_sum, c.lambda_sum)
        })?;
    }
    for (s, chi, mu, lambda) in [("y^2 - x^3", -1, 2, 0), ("x^2 + y^2", 0, 1, 0)] {
        let r = analyze(&p(s)).map_err(|e| e.to_string())?;
        let c = r.consistency.ok_or("no consistency record")?;
        ensure((r.chi_gen, c.mu_sum, c.lambda_sum) == (chi, mu, lambda), || {
            format!("{s}: got {} = 1 - ({} + {})", r.chi_gen, c.mu_sum, c.lambda_sum)
        })?;
    }
    Ok(format!("{} polynomials and both anchors", reports.len()))
}

fn criterion_4(reports: &[AnalysisReport]) -> Check {
    let mut jumps = 0;
    for r in reports {
        let lambda = r.lambda_set.as_ref().ok_or("no lambda set")?;
        let cover = lambda.iter().fold(UPoly::one(&()), |acc, c| acc.mul(c.minpoly()));
        for j in &r.euler_jump_set {
            let rem = cover.rem(j.minpoly()).map_err(|e| e.to_string())?;
            ensure(rem.is_zero(), || format!("{}: jump value {j} outside the lambda set", r.polynomial.render()))?;
            jumps += 1;
        }
    }
    Ok(format!("{jumps} jump classes, zero violations"))
}

fn fibers_of(r: &AnalysisReport) -> Vec<(ValueClass, i64)> {
    r.fibers.iter().map(|v| (v.value.clone(), v.chi_a)).collect()
}

fn criterion_5(corpus: &[Poly<Rat>], reports: &[AnalysisReport]) -> Check {
    let mut checks = 0;
    for (f, r) in corpus.iter().zip(reports) {
        let swapped = analyze_with(&f.swap_vars(0, 1), &options()).map_err(|e| e.to_string())?;
        ensure(swapped.chi_gen == r.chi_gen && fibers_of(&swapped) == fibers_of(r), || {
            format!("{}: swapped analysis differs", f.render())
        })?;
        let generic = generic_shift(f).map_err(|e| e.to_string())?;
        let (a, b) = (euler_affine_curve_along(&generic, 0), euler_affine_curve_along(&generic, 1));
        let (a, b) = (a.map_err(|e| e.to_string())?.chi, b.map_err(|e| e.to_string())?.chi);
        ensure(a == b && a == r.chi_gen, || format!("{}: generic chi along x {a}, along y {b}", f.render()))?;
        for v in &r.fibers {
            let along_x = euler_fiber_split_along(f, &v.value, 0).map_err(|e| e.to_string())?;
            ensure(along_x == vec![(v.value.clone(), v.chi_a)], || {
                format!("{}: projecting along x changes chi at {}", f.render(), v.value)
            })?;
        }
        checks += 2 + r.fibers.len();
    }
    Ok(format!("{checks} comparisons on {} polynomials", corpus.len()))
}

fn criterion_6() -> Check {
    for (s, nu) in [("x^2 + y^2", 1), ("y^2 - x^3", 2), ("x^2 + y^3", 2)] {
        let got = kouchnirenko_number(&p(s)).map_err(|e| e.to_string())?;
        ensure(got == nu, || format!("nu({s}) = {got}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 40 {
        let (a, b) = (rng.gen_range(2..=5u32), rng.gen_range(2..=5u32));
        let mut terms = vec![format!("{}*x^{a}", rng.gen_range(1..=3)), format!("{}*y^{b}", rng.gen_range(-3..=-1))];
        for i in 0..a {
            for j in 0..b {
                // strictly below the face joining (a, 0) and (0, b)
                if (i, j) != (0, 0) && i * b + j * a < a * b && rng.gen_bool(0.4) {
                    terms.push(format!("{}*x^{i}*y^{j}", rng.gen_range(-3..=3)));
                }
            }
        }
        let f = p(&terms.join(" + "));
        let ok = |r: bifurcata::Result<bool>| r.unwrap_or(false);
        if !ok(is_convenient(&f)) || !ok(is_nondegenerate(&f)) {
            continue;
        }
        let nu = kouchnirenko_number(&f).map_err(|e| e.to_string())?;
        let mu = critical_spectrum(&f).map_err(|e| format!("{}: {e}", f.render()))?.mu_total as i64;
        ensure(nu == mu, || format!("{}: nu {nu}, mu {mu}", f.render()))?;
        checked += 1;
    }
    Ok(format!("3 anchors and {checked} perturbed x^a + y^b"))
}

fn criterion_7() -> Check {
    let t = Instant::now();
    let mut checks = 0;
    for s in ["x", "x - y^2", "x + y + y^3"] {
        let f = p(s);
        for prime in [2, 3, 5] {
            for n in 0..=3 {
                ensure(smooth_bundle_check(&f, prime, n).map_err(|e| e.to_string())?, || format!("{s} mod {prime}, n = {n}"))?;
                let spec = JetSpec::new(prime, n, Filter::OnFiber).map_err(|e| e.to_string())?.with_workers(4);
                let brute = count_jets(&f, &spec).map_err(|e| e.to_string())?.count;
                let linear = count_jets_linear(&f, &spec).map_err(|e| e.to_string())?.count;
                ensure(brute == linear, || format!("{s} mod {prime}, n = {n}: {brute} vs {linear}"))?;
                checks += 1;
            }
        }
    }
    let elapsed = t.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{checks} checks in {elapsed:?}"))
}

fn criterion_8() -> Check {
    let f = p("x");
    for prime in [2u64, 3, 5] {
        for n in 0..=3 {
            let spec = JetSpec::new(prime, n, Filter::OrderAc).map_err(|e| e.to_string())?;
            let count = count_jets_filtered(&f, &spec).map_err(|e| e.to_string())?.count;
            ensure(count == (prime as u128).pow(n + 1), || format!("p = {prime}, n = {n}: {count}"))?;
        }
    }
    Ok("p in {2, 3, 5}, n <= 3".into())
}

fn criterion_9(corpus: &[Poly<Rat>]) -> Check {
    let render = |f: &Poly<Rat>, workers: usize| -> Result<String, String> {
        let r = analyze_with(f, &AnalyzeOptions { workers, ..AnalyzeOptions::default() }).map_err(|e| e.to_string())?;
        Ok(to_json(&ReportJson::from(&r)))
    };
    for f in corpus.iter().take(12) {
        let base = render(f, 1)?;
        for workers in [1, 2, 3, 8] {
            ensure(render(f, workers)? == base, || format!("{}: report differs with {workers} workers", f.render()))?;
        }
    }
    let f = p("x*y - 1");
    let spec = JetSpec::new(3, 2, Filter::OnFiber).map_err(|e| e.to_string())?;
    let base = count_jets(&f, &spec).map_err(|e| e.to_string())?.count;
    for workers in [2, 5, 16] {
        let c = count_jets(&f, &spec.with_workers(workers)).map_err(|e| e.to_string())?.count;
        ensure(c == base, || format!("jet count differs with {workers} workers"))?;
    }
    Ok("12 reports with 1, 2, 3, 8 workers; jet counts with 1, 2, 5, 16".into())
}

fn main() {
    let corpus = corpus();
    let t = Instant::now();
    let reports: Result<Vec<AnalysisReport>, String> = corpus
        .iter()
        .map(|f| analyze_with(f, &options()).map_err(|e| format!("{}: {e}", f.render())))
        .collect();
    let elapsed = t.elapsed();
    let corpus_check = |k: &dyn Fn(&[AnalysisReport]) -> Check| match &reports {
        Ok(r) => k(r),
        Err(e) => Err(e.clone()),
    };
    let criteria: Vec<(u32, Box<dyn Fn() -> Check + '_>)> = vec![
        (1, Box::new(criterion_1)),
        (2, Box::new(|| corpus_check(&|r| criterion_2(r, elapsed)))),
        (3, Box::new(|| corpus_check(&criterion_3))),
        (4, Box::new(|| corpus_check(&criterion_4))),
        (5, Box::new(|| corpus_check(&|r| criterion_5(&corpus, r)))),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(|| criterion_9(&corpus))),
    ];
    let mut failed = 0;
    for (n, check) in &criteria {
        let t = Instant::now();
        let result = check();
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {n}: PASS ({detail}) [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why}) [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
