//! Acceptance suite shared by the `acceptance` test target and the CLI's
//! `bench` command. Each criterion runs independently and reports the
//! measured quantity next to its pinned threshold.

use std::time::Instant;

use serde::Serialize;

use crate::error_model::{lambda_star, theta_ratio};
use crate::grids::{Grid, GridSpec, QuadRule, QuadSpec};
use crate::io::{load_fsgim, save_fsgim};
use crate::reference::{
    default_sin_terms, exact_cubic_linear, exact_exp, exact_power, exact_sin_series, oracle_rlfi, OracleConfig,
};
use crate::rlfi::{build_fsgim, cardinal_eval, eval_rlfi, FracOrder, SampleVector};
use crate::specfun::gamma;
use crate::Result;

/// Version of the serialized report layout.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const CUBIC_EXACT: f64 = 2.218_878_969_089_873;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    Cubic,
    Power,
    Exponential,
    Sine,
    LambdaStar,
    Structural,
    Oracle,
    Precompute,
    ThetaRatio,
}

impl Criterion {
    pub const ALL: [Criterion; 9] = [
        Criterion::Cubic,
        Criterion::Power,
        Criterion::Exponential,
        Criterion::Sine,
        Criterion::LambdaStar,
        Criterion::Structural,
        Criterion::Oracle,
        Criterion::Precompute,
        Criterion::ThetaRatio,
    ];

    pub fn id(self) -> u8 {
        Self::ALL.iter().position(|&c| c == self).expect("listed") as u8 + 1
    }

    pub fn key(self) -> &'static str {
        match self {
            Criterion::Cubic => "cubic",
            Criterion::Power => "power",
            Criterion::Exponential => "exponential",
            Criterion::Sine => "sine",
            Criterion::LambdaStar => "lambda_star",
            Criterion::Structural => "structural",
            Criterion::Oracle => "oracle",
            Criterion::Precompute => "precompute",
            Criterion::ThetaRatio => "theta_ratio",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Criterion::Cubic => "cubic-plus-linear at t = 0.5: relative error and single-evaluation time",
            Criterion::Power => "t^N, N in {3,5,7,9,11}: absolute error",
            Criterion::Exponential => "e^{kt}, k in {-2,-1,1,2}: absolute error and n-sweep decay",
            Criterion::Sine => "sin(1 - t), alpha = 0.2, 1000 points: Euclidean error norm",
            Criterion::LambdaStar => "lambda* to 4 digits and against a Newton root",
            Criterion::Structural => "structural invariants suite and its runtime",
            Criterion::Oracle => "agreement with the adaptive oracle on three functions",
            Criterion::Precompute => "100 applies of a loaded matrix vs 100 rebuilds",
            Criterion::ThetaRatio => "leading-coefficient asymptotic ratio at n_q = 200",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.key() == key)
    }
}

/// Result of one criterion. `measured` is compared against `threshold`
/// in the direction given by `comparison`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub key: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub comparison: &'static str,
    pub threshold: f64,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub all_passed: bool,
    pub outcomes: Vec<Outcome>,
}

impl Outcome {
    /// One-line human-readable summary.
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {:<12} measured {:.3e} {} {:.3e}  ({})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.key,
            self.measured,
            self.comparison,
            self.threshold,
            self.detail
        )
    }
}

struct Measured {
    passed: bool,
    measured: f64,
    comparison: &'static str,
    threshold: f64,
    detail: String,
}

fn at_most(measured: f64, threshold: f64, extra_ok: bool, detail: String) -> Measured {
    Measured { passed: measured <= threshold && extra_ok, measured, comparison: "<=", threshold, detail }
}

fn at_least(measured: f64, threshold: f64, extra_ok: bool, detail: String) -> Measured {
    Measured { passed: measured >= threshold && extra_ok, measured, comparison: ">=", threshold, detail }
}

pub fn run(c: Criterion) -> Outcome {
    let start = Instant::now();
    let result = match c {
        Criterion::Cubic => cubic(),
        Criterion::Power => power(),
        Criterion::Exponential => exponential(),
        Criterion::Sine => sine(),
        Criterion::LambdaStar => Ok(lambda_star_check()),
        Criterion::Structural => Ok(structural()),
        Criterion::Oracle => oracle(),
        Criterion::Precompute => precompute(),
        Criterion::ThetaRatio => theta(),
    };
    let m = result.unwrap_or_else(|e| Measured {
        passed: false,
        measured: f64::NAN,
        comparison: "<=",
        threshold: f64::NAN,
        detail: format!("error: {e}"),
    });
    Outcome {
        id: c.id(),
        key: c.key(),
        title: c.title(),
        passed: m.passed,
        measured: m.measured,
        comparison: m.comparison,
        threshold: m.threshold,
        detail: m.detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all() -> Report {
    report(&Criterion::ALL)
}

pub fn report(criteria: &[Criterion]) -> Report {
    let outcomes: Vec<Outcome> = criteria.iter().map(|&c| run(c)).collect();
    Report { schema_version: REPORT_SCHEMA_VERSION, all_passed: outcomes.iter().all(|o| o.passed), outcomes }
}

fn half() -> FracOrder {
    FracOrder::new(0.5).expect("valid order")
}

fn cubic() -> Result<Measured> {
    let f = |t: f64| 2.0 * t.powi(3) + 8.0 * t;
    let run = || eval_rlfi(f, GridSpec::new(3, 0.5), QuadSpec::new(4, 0.5), half(), &[0.5]);
    run()?; // warm-up
    let start = Instant::now();
    let v = run()?[0];
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let rel = ((v - CUBIC_EXACT) / CUBIC_EXACT).abs();
    let closed = ((exact_cubic_linear(0.5)? - CUBIC_EXACT) / CUBIC_EXACT).abs();
    Ok(at_most(
        rel,
        5e-15,
        ms < 50.0 && closed <= 5e-16,
        format!("value {v:.16}, one evaluation {ms:.3} ms (limit 50 ms)"),
    ))
}

fn power() -> Result<Measured> {
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for n in [3u32, 5, 7, 9, 11] {
        let v =
            eval_rlfi(|t| t.powi(n as i32), GridSpec::new(n as usize, 0.5), QuadSpec::new(12, 0.5), half(), &[0.5])?[0];
        let err = (v - exact_power(n, 0.5, 0.5)?).abs();
        worst = worst.max(err);
        parts.push(format!("N={n}: {err:.1e}"));
    }
    Ok(at_most(worst, 1e-13, true, parts.join(", ")))
}

/// Absolute errors for `e^{kt}` at `t = 0.5`, `α = 0.5`, `λ = λ_q = 0.5`,
/// `n_q = 12`, over `n = 4..=13`.
pub fn exponential_sweep(k: f64) -> Result<Vec<(usize, f64)>> {
    let exact = exact_exp(k, 0.5, 0.5)?;
    (4..=13)
        .map(|n| {
            let v = eval_rlfi(|t| (k * t).exp(), GridSpec::new(n, 0.5), QuadSpec::new(12, 0.5), half(), &[0.5])?[0];
            Ok((n, (v - exact).abs()))
        })
        .collect()
}

fn exponential() -> Result<Measured> {
    let mut worst: f64 = 0.0;
    for k in [-2.0, -1.0, 1.0, 2.0] {
        let v = eval_rlfi(|t| (k * t).exp(), GridSpec::new(13, 0.5), QuadSpec::new(12, 0.5), half(), &[0.5])?[0];
        worst = worst.max((v - exact_exp(k, 0.5, 0.5)?).abs());
    }
    let sweep = exponential_sweep(1.0)?;
    // An exact hit counts as one ulp of the exact value.
    let floor = f64::EPSILON * exact_exp(1.0, 0.5, 0.5)?;
    let first = sweep.first().expect("non-empty").1.max(floor);
    let last = sweep.last().expect("non-empty").1.max(floor);
    let decades = first.log10() - last.log10();
    Ok(at_most(
        worst,
        1e-13,
        decades >= 8.0,
        format!("n-sweep 4..13 (k = 1) spans {decades:.2} decades (need >= 8): {first:.1e} -> {last:.1e}"),
    ))
}

fn sine() -> Result<Measured> {
    let alpha = FracOrder::new(0.2)?;
    let points: Vec<f64> = (0..1000).map(|i| i as f64 / 999.0).collect();
    let approx = eval_rlfi(|t| (1.0 - t).sin(), GridSpec::new(16, 1.0), QuadSpec::new(16, 0.5), alpha, &points)?;
    let terms = default_sin_terms();
    let mut sq = 0.0;
    for (&z, v) in points.iter().zip(&approx) {
        let e = v - exact_sin_series(0.2, z, terms)?;
        sq += e * e;
    }
    let norm = sq.sqrt();
    Ok(at_most(norm, 1e-12, true, format!("{terms} series terms in the reference")))
}

/// Newton's method on `d/dλ [(−1/2 − 2λ) ln(1 + 2λ)] = 0`, from −0.1.
pub fn lambda_star_newton() -> f64 {
    let g = |l: f64| -2.0 * (2.0 * l).ln_1p() - (1.0 + 4.0 * l) / (1.0 + 2.0 * l);
    let dg = |l: f64| {
        let a = 1.0 + 2.0 * l;
        -4.0 / a - 2.0 / (a * a)
    };
    let mut l: f64 = -0.1;
    for _ in 0..50 {
        let step = g(l) / dg(l);
        l -= step;
        if step.abs() <= 1e-17 {
            break;
        }
    }
    l
}

fn lambda_star_check() -> Measured {
    let ls = lambda_star();
    let newton = lambda_star_newton();
    let diff = (ls - newton).abs();
    let rounded = format!("{:.4}", ls);
    at_most(
        diff,
        1e-12,
        rounded == "-0.1351",
        format!("lambda* = {ls:.15}, 4 digits {rounded}, Newton root {newton:.15}"),
    )
}

/// Structural invariants over the grids used throughout the crate. Returns
/// the first violation.
pub fn structural_suite() -> std::result::Result<usize, String> {
    const LAMBDAS: [f64; 6] = [-0.4, -0.1351, 0.0, 0.5, 1.0, 2.0];
    let fail = |what: String| Err::<usize, String>(what);
    let mut checks = 0usize;
    for lam in LAMBDAS {
        let g = gamma(lam + 0.5).map_err(|e| e.to_string())?;
        let beta = g * g / gamma(2.0 * lam + 1.0).map_err(|e| e.to_string())?;
        for n in [0usize, 1, 2, 5, 10, 20, 40] {
            let grid = Grid::new(n, lam).map_err(|e| e.to_string())?;
            let t = grid.nodes();
            for k in 0..=n {
                if (t[k] + t[n - k] - 1.0).abs() > 1e-13 {
                    return fail(format!("node symmetry n={n} lambda={lam} k={k}"));
                }
                for (m, &tm) in t.iter().enumerate() {
                    let v = cardinal_eval(&grid, k, tm).map_err(|e| e.to_string())?;
                    if (v - if k == m { 1.0 } else { 0.0 }).abs() > 1e-12 {
                        return fail(format!("cardinal delta n={n} lambda={lam} k={k} m={m}: {v:e}"));
                    }
                }
                checks += n + 2;
            }
            for i in 0..=16 {
                let x = i as f64 / 16.0;
                let s: f64 = (0..=n).map(|k| cardinal_eval(&grid, k, x).unwrap_or(f64::NAN)).sum();
                if !((s - 1.0).abs() <= 1e-12) {
                    return fail(format!("partition of unity n={n} lambda={lam} t={x}: {s}"));
                }
                checks += 1;
            }
            if grid.christoffel().iter().any(|&w| !(w > 0.0)) {
                return fail(format!("Christoffel positivity n={n} lambda={lam}"));
            }
            let s: f64 = grid.christoffel().iter().sum();
            if !(((s - beta) / beta).abs() <= 1e-12) {
                return fail(format!("Christoffel sum n={n} lambda={lam}: {s} vs {beta}"));
            }
            checks += 2;
        }
        for n_q in [0usize, 1, 4, 12, 24, 40] {
            let q = QuadRule::new(n_q, lam).map_err(|e| e.to_string())?;
            for p in 0..=n_q {
                let v = q.integrate(|y| y.powi(p as i32));
                if !((v - 1.0 / (p as f64 + 1.0)).abs() <= 1e-13) {
                    return fail(format!("SGIRV exactness n_q={n_q} lambda_q={lam} p={p}: {v}"));
                }
                checks += 1;
            }
        }
    }

    let points: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    for lam in LAMBDAS {
        for (n, n_q) in [(4usize, 4usize), (12, 16), (20, 24)] {
            for a in [0.2, 0.5, 0.9] {
                let alpha = FracOrder::new(a).map_err(|e| e.to_string())?;
                let q = build_fsgim(
                    &Grid::new(n, lam).map_err(|e| e.to_string())?,
                    &QuadRule::new(n_q, 0.5).map_err(|e| e.to_string())?,
                    alpha,
                    &points,
                )
                .map_err(|e| e.to_string())?;
                let g1 = gamma(a + 1.0).map_err(|e| e.to_string())?;
                for (m, &z) in points.iter().enumerate() {
                    let c = z.powf(a) / g1;
                    let s: f64 = q.scaled_row(m).iter().sum();
                    if !((s - c).abs() <= 1e-13 * c) {
                        return fail(format!("row sum n={n} lambda={lam} alpha={a} z={z}: {s} vs {c}"));
                    }
                    checks += 1;
                }
                let mut buf = Vec::new();
                save_fsgim(&q, &mut buf).map_err(|e| e.to_string())?;
                let r = load_fsgim(&buf[..]).map_err(|e| e.to_string())?;
                let same = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits());
                if r != q || !same(r.generator(), q.generator()) || !same(r.scaled(), q.scaled()) {
                    return fail(format!("serialization round trip n={n} lambda={lam} alpha={a}"));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

fn structural() -> Measured {
    let start = Instant::now();
    let verdict = structural_suite();
    let secs = start.elapsed().as_secs_f64();
    match verdict {
        Ok(checks) => at_most(secs, 60.0, true, format!("{checks} checks passed in {secs:.2} s")),
        Err(what) => at_most(secs, 60.0, false, format!("violation: {what}")),
    }
}

fn oracle() -> Result<Measured> {
    let cfg = OracleConfig::default();
    let points: Vec<f64> = (0..50).map(|i| i as f64 / 49.0).collect();
    type Named = (&'static str, fn(f64) -> f64);
    let funcs: [Named; 3] =
        [("exp(2t)", |t| (2.0 * t).exp()), ("sin(1-t)", |t| (1.0 - t).sin()), ("1/(1+t)", |t| 1.0 / (1.0 + t))];
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (name, f) in funcs {
        let approx = eval_rlfi(f, GridSpec::new(20, 0.5), QuadSpec::new(24, 0.5), half(), &points)?;
        let mut w: f64 = 0.0;
        for (&z, v) in points.iter().zip(&approx) {
            w = w.max((v - oracle_rlfi(f, 0.5, z, &cfg)?.value).abs());
        }
        worst = worst.max(w);
        parts.push(format!("{name}: {w:.1e}"));
    }
    Ok(at_most(worst, 1e-10, true, parts.join(", ")))
}

fn precompute() -> Result<Measured> {
    let (gs, qs) = (GridSpec::new(32, 0.5), QuadSpec::new(36, 0.5));
    let points: Vec<f64> = (0..=1000).map(|i| i as f64 / 1000.0).collect();
    let funcs: Vec<Box<dyn Fn(f64) -> f64>> = (0..100)
        .map(|i| {
            let c = -2.0 + 4.0 * i as f64 / 99.0;
            Box::new(move |t: f64| (c * t).exp() + (i as f64 * t).sin()) as Box<dyn Fn(f64) -> f64>
        })
        .collect();

    let grid = Grid::from_spec(gs)?;
    let samples: Vec<SampleVector> = funcs.iter().map(|f| SampleVector::from_fn(&grid, f)).collect::<Result<_>>()?;
    let mut buf = Vec::new();
    save_fsgim(&build_fsgim(&grid, &QuadRule::from_spec(qs)?, half(), &points)?, &mut buf)?;
    let loaded = load_fsgim(&buf[..])?;

    let start = Instant::now();
    let mut applied = Vec::with_capacity(samples.len());
    for s in &samples {
        applied.push(loaded.apply(s)?);
    }
    let apply_secs = start.elapsed().as_secs_f64();

    let start = Instant::now();
    let mut rebuilt = Vec::with_capacity(funcs.len());
    for f in &funcs {
        rebuilt.push(eval_rlfi(f, gs, qs, half(), &points)?);
    }
    let rebuild_secs = start.elapsed().as_secs_f64();

    let identical = applied.iter().flatten().zip(rebuilt.iter().flatten()).all(|(a, b)| a.to_bits() == b.to_bits());
    let speedup = rebuild_secs / apply_secs.max(1e-9);
    Ok(at_least(
        speedup,
        10.0,
        identical,
        format!(
            "apply {:.3} ms vs rebuild {:.1} ms for 100 vectors; outputs identical: {identical}",
            apply_secs * 1e3,
            rebuild_secs * 1e3
        ),
    ))
}

fn theta() -> Result<Measured> {
    let r05 = theta_ratio(200, 0.5)?;
    let r1 = theta_ratio(200, 1.0)?;
    let dev = (r05 - 1.0).abs().max((r1 - 1.0).abs());
    Ok(at_most(dev, 0.02, true, format!("ratio {r05:.6} (lambda_q = 0.5), {r1:.6} (lambda_q = 1)")))
}
