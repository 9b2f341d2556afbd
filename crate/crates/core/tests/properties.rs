use proptest::prelude::*;
use sgfrac::grids::sgg_nodes;
use sgfrac::io::{load_fsgim, save_fsgim};
use sgfrac::reference::{
    default_sin_terms, exact_cubic_linear, exact_exp, exact_power, exact_sin_series, integrate_adaptive, oracle_rlfi,
    OracleConfig,
};
use sgfrac::rlfi::cardinal_eval;
use sgfrac::specfun::{gamma, hyp1f1, DEFAULT_SERIES_TOL};
use sgfrac::{build_fsgim, eval_rlfi, FracOrder, Grid, GridSpec, QuadRule, QuadSpec, SampleVector};

fn lambda() -> impl Strategy<Value = f64> {
    -0.45f64..3.0
}

fn alpha() -> impl Strategy<Value = f64> {
    0.05f64..0.95
}

/// A smooth test function drawn from a small parametric family.
fn smooth(c: f64, w: f64) -> impl Fn(f64) -> f64 {
    move |t| (c * t).exp() + (w * t + 0.3).sin() + 1.0 / (1.5 + t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gamma_recurrence(x in 0.1f64..60.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(((lhs - rhs) / lhs).abs() <= 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence_wide(m in 1u64..(170 << 20)) {
        // Dyadic x keeps x + 1 exact, so only gamma's own rounding is measured.
        let x = m as f64 / (1u64 << 20) as f64;
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(((lhs - rhs) / lhs).abs() <= 4e-15, "x = {}", x);
    }

    #[test]
    fn gamma_recurrence_negative(k in 1u32..150, frac in 1u64..1023) {
        let x = -(k as f64) + frac as f64 / 1024.0;
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!(((lhs - rhs) / lhs).abs() <= 4e-15, "x = {}", x);
    }

    #[test]
    fn nodes_symmetric_and_ordered(n in 1usize..60, lam in lambda()) {
        let t = sgg_nodes(n, lam).unwrap();
        for k in 0..=n {
            prop_assert!((t[k] + t[n - k] - 1.0).abs() <= 1e-13);
            prop_assert!(t[k] > 0.0 && t[k] < 1.0);
        }
        prop_assert!(t.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sgirv_integrates_monomials(n_q in 0usize..50, lq in lambda()) {
        let q = QuadRule::new(n_q, lq).unwrap();
        for p in 0..=n_q {
            let v = q.integrate(|y| y.powi(p as i32));
            prop_assert!((v - 1.0 / (p as f64 + 1.0)).abs() <= 1e-13, "p = {}", p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hyp1f1_matches_integral(a in alpha(), z in -6.0f64..6.0) {
        // ₁F₁(α; α+1; z) = ∫₀¹ exp(z u^{1/α}) du.
        let cfg = OracleConfig { abs_tol: 1e-15, rel_tol: 1e-15, max_subdivisions: 4000 };
        let want = integrate_adaptive(|u: f64| (z * u.powf(1.0 / a)).exp(), 0.0, 1.0, &cfg).unwrap().value;
        let got = hyp1f1(a, a + 1.0, z, DEFAULT_SERIES_TOL).unwrap().value;
        prop_assert!(((got - want) / want).abs() <= 1e-13, "{} vs {}", got, want);
    }

    #[test]
    fn cardinal_delta_and_partition(n in 1usize..40, lam in lambda(), t in 0.0f64..=1.0) {
        let grid = Grid::new(n, lam).unwrap();
        let s: f64 = (0..=n).map(|k| cardinal_eval(&grid, k, t).unwrap()).sum();
        prop_assert!((s - 1.0).abs() <= 1e-12);
        for k in 0..=n {
            for m in 0..=n {
                let v = cardinal_eval(&grid, k, grid.nodes()[m]).unwrap();
                let want = if k == m { 1.0 } else { 0.0 };
                prop_assert!((v - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn row_sum_identity(n in 1usize..30, n_q in 1usize..30, lam in lambda(), lq in lambda(), a in alpha(),
                        z in prop::collection::vec(0.0f64..=1.0, 1..8)) {
        let alpha = FracOrder::new(a).unwrap();
        let q = build_fsgim(&Grid::new(n, lam).unwrap(), &QuadRule::new(n_q, lq).unwrap(), alpha, &z).unwrap();
        let g1 = gamma(a + 1.0).unwrap();
        for (m, &zm) in z.iter().enumerate() {
            let c = zm.powf(a) / g1;
            let s: f64 = q.scaled_row(m).iter().sum();
            prop_assert!((s - c).abs() <= 1e-13 * c);
            for (sv, gv) in q.scaled_row(m).iter().zip(q.generator_row(m)) {
                prop_assert!((sv - c * gv).abs() <= 1e-15 * (c * gv).abs());
            }
        }
    }

    #[test]
    fn apply_is_linear(n in 2usize..30, lam in lambda(), a in alpha(), s in -3.0f64..3.0, r in -3.0f64..3.0,
                       c1 in -2.0f64..2.0, c2 in -2.0f64..2.0) {
        let grid = Grid::new(n, lam).unwrap();
        let points: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let q = build_fsgim(&grid, &QuadRule::new(n + 2, 0.5).unwrap(), FracOrder::new(a).unwrap(), &points).unwrap();
        let f = SampleVector::from_fn(&grid, smooth(c1, 2.0)).unwrap();
        let g = SampleVector::from_fn(&grid, smooth(c2, -1.0)).unwrap();
        let combo: Vec<f64> = f.values().iter().zip(g.values()).map(|(x, y)| s * x + r * y).collect();
        let h = SampleVector::new(grid.id(), combo).unwrap();
        let (qf, qg, qh) = (q.apply(&f).unwrap(), q.apply(&g).unwrap(), q.apply(&h).unwrap());
        for m in 0..points.len() {
            // Rounding scale of the sums involved.
            let scale: f64 = q.scaled_row(m).iter().zip(f.values().iter().zip(g.values()))
                .map(|(w, (x, y))| w.abs() * ((s * x).abs() + (r * y).abs()))
                .sum();
            prop_assert!((qh[m] - (s * qf[m] + r * qg[m])).abs() <= 8.0 * f64::EPSILON * scale);
        }
    }

    #[test]
    fn eval_equals_build_then_apply(n in 1usize..25, n_q in 1usize..25, lam in lambda(), lq in lambda(), a in alpha(),
                                     z in prop::collection::vec(0.0f64..=1.0, 1..10), c in -2.0f64..2.0) {
        let alpha = FracOrder::new(a).unwrap();
        let f = smooth(c, 1.0);
        let one = eval_rlfi(&f, GridSpec::new(n, lam), QuadSpec::new(n_q, lq), alpha, &z).unwrap();
        let grid = Grid::new(n, lam).unwrap();
        let q = build_fsgim(&grid, &QuadRule::new(n_q, lq).unwrap(), alpha, &z).unwrap();
        let two = q.apply(&SampleVector::from_fn(&grid, &f).unwrap()).unwrap();
        prop_assert!(one.iter().zip(&two).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn fsgim_round_trip(n in 0usize..20, n_q in 0usize..20, lam in lambda(), lq in lambda(), a in alpha(),
                        z in prop::collection::vec(0.0f64..=1.0, 0..12)) {
        let q = build_fsgim(&Grid::new(n, lam).unwrap(), &QuadRule::new(n_q, lq).unwrap(), FracOrder::new(a).unwrap(), &z)
            .unwrap();
        let mut buf = Vec::new();
        save_fsgim(&q, &mut buf).unwrap();
        let r = load_fsgim(&buf[..]).unwrap();
        prop_assert_eq!(&r, &q);
        let same = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(u, v)| u.to_bits() == v.to_bits());
        prop_assert!(same(r.generator(), q.generator()) && same(r.scaled(), q.scaled()) && same(r.points(), q.points()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn closed_forms_agree_with_oracle(a in alpha(), t in 0.0f64..=1.0, p in 0u32..12, k in 0.2f64..3.0, neg in any::<bool>()) {
        let cfg = OracleConfig::default();
        let k = if neg { -k } else { k };
        let o = oracle_rlfi(|x| x.powi(p as i32), a, t, &cfg).unwrap().value;
        prop_assert!((o - exact_power(p, a, t).unwrap()).abs() <= 1e-11);
        let o = oracle_rlfi(|x| (k * x).exp(), a, t, &cfg).unwrap().value;
        prop_assert!((o - exact_exp(k, a, t).unwrap()).abs() <= 1e-11);
        let o = oracle_rlfi(|x| (1.0 - x).sin(), a, t, &cfg).unwrap().value;
        prop_assert!((o - exact_sin_series(a, t, default_sin_terms()).unwrap()).abs() <= 1e-11);
        let o = oracle_rlfi(|x| 2.0 * x.powi(3) + 8.0 * x, 0.5, t, &cfg).unwrap().value;
        prop_assert!((o - exact_cubic_linear(t).unwrap()).abs() <= 1e-11);
    }

    #[test]
    fn oracle_error_estimate_is_conservative(a in alpha(), t in 0.05f64..=1.0, which in 0usize..3) {
        let f = |x: f64| match which {
            0 => (2.0 * x).exp(),
            1 => (1.0 - x).sin(),
            _ => 1.0 / (1.0 + x),
        };
        let loose = OracleConfig { abs_tol: 1e-8, rel_tol: 1e-8, max_subdivisions: 2000 };
        let tight = OracleConfig { abs_tol: 5e-9, rel_tol: 5e-9, max_subdivisions: 2000 };
        let e1 = oracle_rlfi(f, a, t, &loose).unwrap();
        let e2 = oracle_rlfi(f, a, t, &tight).unwrap();
        prop_assert!((e1.value - e2.value).abs() <= e1.error.max(f64::EPSILON * e1.value.abs()));
    }

    #[test]
    fn polynomial_consistency(p in 0u32..=10, z in prop::collection::vec(0.0f64..=1.0, 20)) {
        let n = 10;
        let n_q = (2 * p as usize).max(1);
        let half = FracOrder::new(0.5).unwrap();
        let out = eval_rlfi(|t| t.powi(p as i32), GridSpec::new(n, 0.5), QuadSpec::new(n_q, 0.5), half, &z).unwrap();
        for (&zm, v) in z.iter().zip(out) {
            prop_assert!((v - exact_power(p, 0.5, zm).unwrap()).abs() <= 1e-12);
        }
    }
}

#[test]
fn convergence_trend_for_exponential() {
    let half = FracOrder::new(0.5).unwrap();
    let exact = exact_exp(1.0, 0.5, 0.5).unwrap();
    let floor = f64::EPSILON * exact;
    let errs: Vec<f64> = (4..=13)
        .map(|n| {
            let v = eval_rlfi(f64::exp, GridSpec::new(n, 0.5), QuadSpec::new(12, 0.5), half, &[0.5]).unwrap()[0];
            (v - exact).abs().max(floor)
        })
        .collect();
    // Non-increasing once the error is below 1e-6 (up to roundoff).
    for w in errs.windows(2) {
        if w[0] < 1e-6 {
            assert!(w[1] <= w[0].max(4.0 * floor), "{errs:?}");
        }
    }
    assert!(errs[0].log10() - errs[errs.len() - 1].log10() >= 8.0, "{errs:?}");
}

#[test]
fn oracle_equivalence_fifty_points() {
    let cfg = OracleConfig::default();
    let half = FracOrder::new(0.5).unwrap();
    let points: Vec<f64> = (0..50).map(|i| (i as f64 + 0.5) / 50.0).collect();
    let funcs: [fn(f64) -> f64; 3] = [|t| (2.0 * t).exp(), |t| (1.0 - t).sin(), |t| 1.0 / (1.0 + t)];
    for f in funcs {
        let out = eval_rlfi(f, GridSpec::new(20, 0.5), QuadSpec::new(24, 0.5), half, &points).unwrap();
        for (&z, v) in points.iter().zip(out) {
            assert!((v - oracle_rlfi(f, 0.5, z, &cfg).unwrap().value).abs() <= 1e-10);
        }
    }
}
