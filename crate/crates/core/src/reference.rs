//! Ground truth for fractional integrals: closed forms for the four test
//! families and a brute-force adaptive quadrature oracle.
//!
//! The oracle integrates the substituted form
//! `t^α/Γ(α+1) · ∫₀¹ f(t(1 − y^{1/α})) dy`, whose integrand is bounded, with
//! globally adaptive 7/15-point Gauss–Kronrod panels. It shares no code
//! with the Gegenbauer machinery it is used to check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{gamma, hyp1f1, hyp2f1_terminating, DEFAULT_SERIES_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-14, rel_tol: 1e-14, max_subdivisions: 2000 }
    }
}

/// Integral estimate and its (conservative) error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

// Kronrod abscissae (descending, last one is the centre) and weights; the
// odd-indexed abscissae carry the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    Panel { a, b, value: kronrod * h, error: ((kronrod - gauss) * h).abs() }
}

/// Globally adaptive Gauss–Kronrod integration of `f` over `[a, b]`: the
/// panel with the largest error estimate is bisected until the summed
/// estimate drops below `max(abs_tol, rel_tol·|value|)`.
pub fn integrate_adaptive(f: impl Fn(f64) -> f64, a: f64, b: f64, cfg: &OracleConfig) -> Result<Estimate> {
    if !(cfg.abs_tol > 0.0 && cfg.rel_tol > 0.0) {
        return Err(Error::domain("integrate_adaptive", "tolerances must be positive"));
    }
    let mut panels = vec![gk15(&f, a, b)];
    let mut subdivisions = 0;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) {
            return Ok(Estimate { value, error, subdivisions });
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::SubdivisionBudget { subdivisions, estimate: value, error });
        }
        let (worst, _) =
            panels.iter().enumerate().max_by(|x, y| x.1.error.total_cmp(&y.1.error)).expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Panel cannot be split further in floating point.
            return Err(Error::SubdivisionBudget { subdivisions, estimate: value, error });
        }
        panels.push(gk15(&f, p.a, mid));
        panels.push(gk15(&f, mid, p.b));
        subdivisions += 1;
    }
}

/// Brute-force left Riemann–Liouville integral of order `alpha` at `t`.
pub fn oracle_rlfi(f: impl Fn(f64) -> f64, alpha: f64, t: f64, cfg: &OracleConfig) -> Result<Estimate> {
    check_order(alpha)?;
    check_t("oracle_rlfi", t)?;
    if t == 0.0 {
        return Ok(Estimate { value: 0.0, error: 0.0, subdivisions: 0 });
    }
    let inv = 1.0 / alpha;
    let scale = t.powf(alpha) / gamma(alpha + 1.0)?;
    let inner = integrate_adaptive(|y| f(t * (1.0 - y.powf(inv))), 0.0, 1.0, cfg)?;
    Ok(Estimate { value: scale * inner.value, error: scale * inner.error, subdivisions: inner.subdivisions })
}

fn check_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain("fractional order", format!("alpha = {alpha} must lie in (0, 1)")));
    }
    Ok(())
}

fn check_t(func: &'static str, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(func, format!("t = {t} outside [0, 1]")));
    }
    Ok(())
}

/// RLFI of `t^N`: `N! / Γ(N + α + 1) · t^{N+α}`.
pub fn exact_power(power: u32, alpha: f64, t: f64) -> Result<f64> {
    check_order(alpha)?;
    check_t("exact_power", t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let n = power as f64;
    Ok(gamma(n + 1.0)? / gamma(n + alpha + 1.0)? * t.powf(n + alpha))
}

/// RLFI of `e^{kt}`: `t^α e^{kt} / Γ(α+1) · ₁F₁(α; α+1; −kt)`.
pub fn exact_exp(k: f64, alpha: f64, t: f64) -> Result<f64> {
    check_order(alpha)?;
    check_t("exact_exp", t)?;
    if k == 0.0 || !k.is_finite() {
        return Err(Error::domain("exact_exp", "k must be finite and nonzero"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let m = hyp1f1(alpha, alpha + 1.0, -k * t, DEFAULT_SERIES_TOL)?;
    Ok(t.powf(alpha) * (k * t).exp() / gamma(alpha + 1.0)? * m.value)
}

/// Order-1/2 RLFI of `2t³ + 8t`: `(192 t^{7/2} + 1120 t^{3/2}) / (105 √π)`.
pub fn exact_cubic_linear(t: f64) -> Result<f64> {
    check_t("exact_cubic_linear", t)?;
    Ok((192.0 * t.powf(3.5) + 1120.0 * t.powf(1.5)) / (105.0 * std::f64::consts::PI.sqrt()))
}

/// Number of terms used by [`exact_sin_series`] by default: the series is
/// cut once `1/Γ(2k + 2)` drops below 1e-18.
pub fn default_sin_terms() -> usize {
    let mut k = 0usize;
    let mut inv_fact = 1.0; // 1/(2k+1)!
    while inv_fact >= 1e-18 {
        k += 1;
        inv_fact /= ((2 * k) * (2 * k + 1)) as f64;
    }
    k
}

/// RLFI of `sin(1 − t)`:
/// `t^α/Γ(α+1) Σ_k (−1)^k / Γ(2k+2) · ₂F₁(−2k−1, 1; α+1; t)`, summed over
/// `k < n_terms`.
pub fn exact_sin_series(alpha: f64, t: f64, n_terms: usize) -> Result<f64> {
    check_order(alpha)?;
    check_t("exact_sin_series", t)?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for k in 0..n_terms {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let f = hyp2f1_terminating(-(2 * k as i64) - 1, 1.0, alpha + 1.0, t)?;
        sum += sign / gamma(2.0 * k as f64 + 2.0)? * f;
    }
    Ok(t.powf(alpha) / gamma(alpha + 1.0)? * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_kronrod_exactness() {
        let cfg = OracleConfig::default();
        for p in 0..=22 {
            let e = integrate_adaptive(|x| x.powi(p), 0.0, 1.0, &cfg).unwrap();
            assert!((e.value - 1.0 / (p as f64 + 1.0)).abs() <= 1e-15, "p = {p}");
            // Both rules are exact up to degree 13, so no split is needed.
            if p <= 13 {
                assert_eq!(e.subdivisions, 0, "p = {p}");
            }
        }
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let cfg = OracleConfig { max_subdivisions: 3, ..OracleConfig::default() };
        match integrate_adaptive(|x: f64| x.sqrt().recip(), 0.0, 1.0, &cfg) {
            Err(Error::SubdivisionBudget { estimate, .. }) => assert!(estimate > 1.0 && estimate < 2.0),
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn power_examples() {
        let v = 2.0 * exact_power(3, 0.5, 0.5).unwrap() + 8.0 * exact_power(1, 0.5, 0.5).unwrap();
        assert!((v - 2.218_878_969_089_873).abs() <= 1e-15);
        // 1/Γ(2.5) = 4/(3√π).
        let v = exact_power(1, 0.5, 1.0).unwrap();
        assert!((v - 0.752_252_778_063_675_1).abs() <= 1e-15);
        assert_eq!(exact_power(4, 0.3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn cubic_linear_examples() {
        assert!((exact_cubic_linear(0.5).unwrap() - 2.218_878_969_089_873).abs() <= 1e-15);
        assert_eq!(exact_cubic_linear(0.0).unwrap(), 0.0);
        for &t in &[0.1, 0.33, 0.5, 0.8, 1.0] {
            let lin = 2.0 * exact_power(3, 0.5, t).unwrap() + 8.0 * exact_power(1, 0.5, t).unwrap();
            assert!((exact_cubic_linear(t).unwrap() - lin).abs() <= 1e-15 * lin.max(1.0));
        }
    }

    #[test]
    fn oracle_constant_function() {
        let e = oracle_rlfi(|_| 1.0, 0.5, 1.0, &OracleConfig::default()).unwrap();
        assert!((e.value - std::f64::consts::FRAC_2_SQRT_PI).abs() <= 1e-15);
    }

    #[test]
    fn oracle_matches_closed_forms() {
        let cfg = OracleConfig::default();
        for &alpha in &[0.2, 0.5, 0.7] {
            for &t in &[0.1, 0.5, 0.93] {
                let o = oracle_rlfi(|x| x.powi(3), alpha, t, &cfg).unwrap().value;
                assert!((o - exact_power(3, alpha, t).unwrap()).abs() <= 1e-12);
                let o = oracle_rlfi(|x: f64| x.exp(), alpha, t, &cfg).unwrap().value;
                assert!((o - exact_exp(1.0, alpha, t).unwrap()).abs() <= 1e-12);
                let o = oracle_rlfi(|x: f64| (-2.0 * x).exp(), alpha, t, &cfg).unwrap().value;
                assert!((o - exact_exp(-2.0, alpha, t).unwrap()).abs() <= 1e-12);
                let o = oracle_rlfi(|x: f64| (1.0 - x).sin(), alpha, t, &cfg).unwrap().value;
                let s = exact_sin_series(alpha, t, default_sin_terms()).unwrap();
                assert!((o - s).abs() <= 1e-12, "alpha {alpha} t {t}: {o} vs {s}");
            }
        }
    }

    #[test]
    fn sin_series_terms_and_tail() {
        let k = default_sin_terms();
        assert_eq!(k, 10);
        for &t in &[0.2, 0.5, 1.0] {
            let a = exact_sin_series(0.2, t, k).unwrap();
            let b = exact_sin_series(0.2, t, k + 1).unwrap();
            assert!((a - b).abs() < 1e-16);
        }
        assert_eq!(exact_sin_series(0.2, 0.0, k).unwrap(), 0.0);
    }

    #[test]
    fn exp_guards() {
        assert!(exact_exp(0.0, 0.5, 0.5).is_err());
        assert_eq!(exact_exp(1.0, 0.5, 0.0).unwrap(), 0.0);
        assert!(exact_exp(1.0, 1.5, 0.5).is_err());
    }
}
