//! Acceptance checks. Prints one PASS or FAIL line per criterion; the
//! process succeeds even when a line fails so that the remaining test
//! targets still run, and the summary line names every failure.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wrightml::analysis::{count_inflections, count_mode_changes, default_grid, shape_grid};
use wrightml::distribution::{moment_by_quadrature, sample_stable};
use wrightml::wright::laplace_identity_check;
use wrightml::*;

use common::{halton, rel, AIRY_DENSITY, ERFCX};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(id: &str, failures: &mut Vec<String>, f: impl FnOnce() -> Result<Outcome>) {
    let t = Instant::now();
    let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
    let tag = if o.pass { "PASS" } else { "FAIL" };
    println!("criterion {id}: {tag} ({:.2?}) {}", t.elapsed(), o.detail);
    if !o.pass {
        failures.push(id.to_string());
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion_1() -> Result<Outcome> {
    let (r, dt) = timed(solve_alpha_star);
    let r = r?;
    let err = (r.alpha_star - 0.771667).abs();
    Ok(outcome(
        err <= 1e-5 && dt < Duration::from_millis(100),
        format!(
            "alpha* = {:.16}, |alpha* - 0.771667| = {err:.1e}, {dt:.2?}",
            r.alpha_star
        ),
    ))
}

fn criterion_2() -> Result<Outcome> {
    let star = solve_alpha_star()?.alpha_star;
    let (rows, dt) = timed(|| rho_curve(1000));
    let rows = rows?;
    let pos = rows
        .iter()
        .filter(|(a, _)| *a <= star - 0.01)
        .all(|(_, r)| *r > 0.0);
    let neg = rows
        .iter()
        .filter(|(a, _)| *a >= star + 0.01)
        .all(|(_, r)| *r < 0.0);
    let changes: Vec<_> = rows
        .windows(2)
        .filter(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0))
        .map(|w| (w[0].0, w[1].0))
        .collect();
    let one = changes.len() == 1 && changes[0].0 < star && star < changes[0].1;
    Ok(outcome(
        pos && neg && one && dt < Duration::from_secs(1),
        format!("positive below: {pos}, negative above: {neg}, sign changes {changes:?}, {dt:.2?}"),
    ))
}

fn criterion_3() -> Result<Outcome> {
    let half = DensityModel::new(AdmissiblePair::new(0.5, 0.5)?)?;
    let mut e1: f64 = 0.0;
    for i in 0..=200 {
        let x = 10.0 * i as f64 / 200.0;
        let exact = (-x * x / 4.0).exp() / std::f64::consts::PI.sqrt();
        e1 = e1.max(rel(half.density(x)?, exact));
    }
    let airy = DensityModel::new(AdmissiblePair::new(1.0 / 3.0, 2.0 / 3.0)?)?;
    let mut e2: f64 = 0.0;
    for &(x, v) in &AIRY_DENSITY {
        e2 = e2.max(rel(airy.density(x)?, v));
    }
    let p = MlParams::new(0.5, 1.0)?;
    let mut e3: f64 = 0.0;
    for &(x, v) in &ERFCX {
        e3 = e3.max(rel(ml_eval(p, -x)?.value, v));
    }
    Ok(outcome(
        e1 <= 1e-10 && e2 <= 1e-8 && e3 <= 1e-9,
        format!("max rel err: half-normal {e1:.1e}, Airy {e2:.1e}, erfcx {e3:.1e}"),
    ))
}

fn criterion_4() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let (res, dt) = timed(|| -> Result<()> {
        for _ in 0..12 {
            let a = rng.random_range(0.1..0.9);
            let b = rng.random_range(0.0..2.0);
            let t = rng.random_range(0.1..5.0);
            let (lhs, rhs) = laplace_identity_check(WrightParams::new(-a, b)?, t)?;
            worst = worst.max((lhs - rhs).abs());
        }
        Ok(())
    });
    res?;
    Ok(outcome(
        worst <= 1e-7 && dt < Duration::from_secs(5),
        format!("12 triples, max |lhs - rhs| = {worst:.1e}, {dt:.2?}"),
    ))
}

fn criterion_5() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (u, v) in halton(20) {
        let p = AdmissiblePair::new(0.05 + 0.9 * u, 2.0 * v)?;
        for s in [0.5, 1.0, 2.0, 3.0] {
            let (q, _) = moment_by_quadrature(p, s)?;
            worst = worst.max(rel(q, mellin_moment(p, s)?));
        }
    }
    Ok(outcome(
        worst <= 1e-6,
        format!("20 pairs x 4 orders, max rel err {worst:.1e}"),
    ))
}

fn lc(a: f64, b: f64) -> Result<ScanReport> {
    let p = AdmissiblePair::new(a, b)?;
    logconcavity_scan(p, default_grid(p)?)
}

fn criterion_6() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for a in [0.5, 0.7, 0.75] {
        let r = lc(a, 1.0 - a)?;
        ok &= r.verdict == Verdict::Holds;
        notes.push(format!("{a}: {}", r.verdict));
    }
    for a in [0.8, 0.9] {
        let r = lc(a, 1.0 - a)?;
        // the statistic at 0 is rho(alpha) / phi(0)^2, so its sign is that of rho
        let at0 = lc_at_zero(a, 1.0 - a)?;
        let consistent = at0 < 0.0 && rho_of_alpha(a) < 0.0;
        ok &= r.verdict == Verdict::Fails && consistent;
        notes.push(format!(
            "{a}: {} at x = {:.3}, statistic(0) = {at0:.3e}, rho = {:.3e}",
            r.verdict,
            r.witness,
            rho_of_alpha(a)
        ));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn lc_at_zero(a: f64, b: f64) -> Result<f64> {
    let p = AdmissiblePair::new(a, b)?;
    Ok(logconcavity_scan(p, GridSpec::linear(0.0, 1e-9, 2))?.min_value)
}

fn criterion_7() -> Result<Outcome> {
    let mut ok = true;
    let mut fails = Vec::new();
    let pairs = [
        (0.1, 0.1),
        (0.2, 0.9),
        (0.3, 0.3),
        (0.4, 1.5),
        (0.5, 0.6),
        (0.6, 2.0),
        (0.7, 0.7),
        (0.8, 1.1),
        (0.9, 0.9),
        (0.95, 1.3),
    ];
    for (a, b) in pairs
        .into_iter()
        .chain([(0.5, 0.0), (0.7, 0.0), (0.8, 0.0)])
    {
        let r = lc(a, b)?;
        if r.verdict != Verdict::Holds {
            ok = false;
            fails.push(format!("({a}, {b}) {}", r.verdict));
        }
    }
    let r = lc(0.9, 0.1)?;
    let star = solve_alpha_star_beta(0.1)?.alpha_star;
    ok &= r.verdict == Verdict::Fails && 0.9 > star;
    Ok(outcome(
        ok,
        format!(
            "13 pairs hold (exceptions {fails:?}); (0.9, 0.1): {} with alpha*(0.1) = {star:.6}",
            r.verdict
        ),
    ))
}

fn criterion_8() -> Result<Outcome> {
    let mut ok = true;
    let mut notes = Vec::new();
    for (rho, beta, want) in [(-0.6, 0.5, 0), (-0.6, -0.5, 1), (-0.6, -1.15, 2)] {
        let z = count_zeros(rho, beta, None)?;
        ok &= z.count == want;
        notes.push(format!(
            "({rho}, {beta}) -> {} at {:?}",
            z.count, z.locations
        ));
    }
    Ok(outcome(ok, notes.join("; ")))
}

fn criterion_9() -> Result<Outcome> {
    let mut ok = true;
    let mut bad = Vec::new();
    for (u, v) in halton(20) {
        let (a, b) = (0.02 + 1.98 * u, 0.02 + 1.98 * v);
        let s = reciprocal_convexity_un(a, b, 60)?;
        let g =
            reciprocal_convexity_grid(a, b, HalfLine::Positive, GridSpec::linear(0.0, 20.0, 200))?;
        if s.verdict != Verdict::Holds || g.verdict != Verdict::Holds {
            ok = false;
            bad.push(format!("({a:.3}, {b:.3}) {} {}", s.verdict, g.verdict));
        }
    }
    Ok(outcome(ok, format!("20 pairs, exceptions {bad:?}")))
}

fn criterion_10() -> Result<(Outcome, Outcome)> {
    let mut ok = true;
    let mut notes = Vec::new();
    let mut tail_ok = true;
    let mut tails = Vec::new();
    for (a, want) in [
        (0.3, Verdict::Holds),
        (0.5, Verdict::Holds),
        (0.7, Verdict::Holds),
        (0.85, Verdict::Fails),
        (0.95, Verdict::Fails),
    ] {
        let g = EntropyGen::new(a)?;
        let r = g.certify_concavity(400)?;
        ok &= r.verdict == want;
        notes.push(format!("{a}: {}", r.verdict));
        let (d, _) = g.concavity_statistic(-40.0)?;
        let ratio = d * 40f64.powi(6) / (2.0 * rho_of_alpha(a));
        tail_ok &= (ratio - 1.0).abs() <= 0.05;
        tails.push(format!("{a}: {ratio:.3}"));
    }
    Ok((
        outcome(ok, notes.join("; ")),
        outcome(
            tail_ok,
            format!("z^6 D(z) / (2 rho) at z = -40: {}", tails.join(", ")),
        ),
    ))
}

fn ks(sorted: &[f64], cdf: &[f64]) -> f64 {
    let n = sorted.len() as f64;
    cdf.iter()
        .enumerate()
        .map(|(i, &c)| (c - i as f64 / n).max((i + 1) as f64 / n - c))
        .fold(0.0, f64::max)
}

fn criterion_11() -> Result<Outcome> {
    let n = 100_000;
    let crit = 1.628 / (n as f64).sqrt();
    let mut ok = true;
    let mut notes = Vec::new();
    for (a, b) in [(0.5, 0.5), (0.7, 0.3), (0.3, 1.2)] {
        let m = DensityModel::new(AdmissiblePair::new(a, b)?)?;
        let mut s = m.sample(n, 11)?;
        s.sort_by(f64::total_cmp);
        let d = ks(&s, &m.cdf_sorted(&s)?);
        ok &= d < crit;
        notes.push(format!("KS({a}, {b}) = {d:.5}"));
    }
    for a in [0.5, 0.8] {
        let z = sample_stable(a, n, 5)?;
        for lambda in [0.5, 1.0, 2.0] {
            let v: Vec<f64> = z.iter().map(|z| (-lambda * z).exp()).collect();
            let mean = v.iter().sum::<f64>() / n as f64;
            let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            let sigma = (var / n as f64).sqrt();
            let dev = (mean - (-lambda.powf(a)).exp()).abs() / sigma;
            ok &= dev <= 3.0;
            notes.push(format!("L({a}, {lambda}) {dev:.2} sd"));
        }
    }
    Ok(outcome(
        ok,
        format!("critical {crit:.5}; {}", notes.join(", ")),
    ))
}

fn criterion_12() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst_modes = 0;
    let mut worst_infl = 0;
    for _ in 0..50 {
        let a = rng.random_range(0.05..0.95);
        let b = rng.random_range(0.0..2.0);
        let p = AdmissiblePair::new(a, b)?;
        worst_modes = worst_modes.max(count_mode_changes(p, shape_grid(a, 2000))?);
    }
    for _ in 0..50 {
        let a = rng.random_range(0.5..0.95);
        let b = rng.random_range(0.0..=a);
        let p = AdmissiblePair::new(a, b)?;
        worst_infl = worst_infl.max(count_inflections(p, shape_grid(a, 2000))?);
    }
    Ok(outcome(
        worst_modes <= 1 && worst_infl <= 2,
        format!("max derivative sign changes {worst_modes}, max inflections {worst_infl}"),
    ))
}

fn main() {
    let t = Instant::now();
    let mut failures = Vec::new();
    run("1", &mut failures, criterion_1);
    run("2", &mut failures, criterion_2);
    run("3", &mut failures, criterion_3);
    run("4", &mut failures, criterion_4);
    run("5", &mut failures, criterion_5);
    run("6", &mut failures, criterion_6);
    run("7", &mut failures, criterion_7);
    run("8", &mut failures, criterion_8);
    run("9", &mut failures, criterion_9);
    let (ten, dt) = timed(criterion_10);
    match ten {
        Ok((mut a, b)) => {
            a.detail = format!("{}; both parts {dt:.2?}", a.detail);
            run("10a", &mut failures, || Ok(a));
            run("10b", &mut failures, || Ok(b));
        }
        Err(e) => {
            run("10a", &mut failures, || Err(e.clone()));
            run("10b", &mut failures, || Err(e));
        }
    }
    run("11", &mut failures, criterion_11);
    run("12", &mut failures, criterion_12);
    if failures.is_empty() {
        println!("acceptance: all criteria PASS ({:.1?})", t.elapsed());
    } else {
        println!(
            "acceptance: FAIL on {} ({:.1?})",
            failures.join(", "),
            t.elapsed()
        );
    }
}
