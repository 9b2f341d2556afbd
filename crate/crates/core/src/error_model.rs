//! Computable parts of the asymptotic error analysis, and a parameter
//! advisor built on it.
//!
//! The asymptotic bounds contain constants (σ, ν, ρ, D, γ, ϖ^upp) that are
//! only known to exist. They are taken as caller inputs, default to 1, and
//! every value derived from them is flagged as asymptotic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gegenbauer::{check_lambda, ln_leading_coeff, norm_lambda_bar, SgBasis};
use crate::grids::QuadRule;
use crate::rlfi::{modal_integral, FracOrder};
use crate::specfun::{gamma, lambert_w0, ln_gamma};

/// Half-width of the excluded neighbourhood around λ*.
pub const LAMBDA_STAR_DELTA: f64 = 0.02;
/// Margin above −1/2 for recommended indices.
pub const INDEX_EPSILON: f64 = 0.01;
/// Upper end of the recommended index interval.
pub const INDEX_UPPER: f64 = 2.0;
/// `n >= DOMINANT_RATIO · n_q` counts as `n ≫ n_q`.
pub const DOMINANT_RATIO: usize = 3;

/// `ln sinh(x)` for `x > 0`, safe for large `x`.
fn ln_sinh(x: f64) -> f64 {
    if x < 1.0 {
        x.sinh().ln()
    } else {
        x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
    }
}

/// `T₁(λ) = (1 + 2λ)^{−1/2 − 2λ}`.
pub fn t1(lambda: f64) -> Result<f64> {
    check_lambda("t1", lambda)?;
    Ok(((-0.5 - 2.0 * lambda) * (2.0 * lambda).ln_1p()).exp())
}

fn ln_t2(lambda: f64) -> f64 {
    let a = 1.0 + 2.0 * lambda;
    (0.5 + lambda) * ((1.0 + lambda).ln() - ln_sinh(1.0 / a) - a.ln())
}

/// `T₂(λ) = [(1 + λ) csch(1/(1 + 2λ)) / (1 + 2λ)]^{1/2 + λ}`.
pub fn t2(lambda: f64) -> Result<f64> {
    check_lambda("t2", lambda)?;
    Ok(ln_t2(lambda).exp())
}

fn ln_t3(lambda: f64) -> f64 {
    let b = 1.0 + lambda;
    0.5 * b * (b.ln() + ln_sinh(1.0 / b))
}

/// `T₃(λ) = [(1 + λ) sinh(1/(1 + λ))]^{(1 + λ)/2}`.
pub fn t3(lambda: f64) -> Result<f64> {
    check_lambda("t3", lambda)?;
    Ok(ln_t3(lambda).exp())
}

/// Leading constant ϑ_{α,λ} of the asymptotic interpolation bound. Defined
/// for any `α > 0` so its behaviour can be studied beyond the operator's
/// `(0, 1)` range.
pub fn vartheta(alpha: f64, lambda: f64) -> Result<f64> {
    check_lambda("vartheta", lambda)?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::domain("vartheta", format!("alpha = {alpha} must be positive")));
    }
    let ln = -(4.0 * std::f64::consts::PI).ln() + alpha + 1.0 - (0.5 + alpha) * alpha.ln()
        + (-0.5 - 2.0 * lambda) * (2.0 * lambda).ln_1p()
        + (1.0 / (1620.0 * (1.0 + lambda).powi(5))).ln_1p()
        + ln_t2(lambda)
        - 0.5 * alpha * (alpha.ln() + ln_sinh(1.0 / alpha))
        + ln_t3(lambda);
    Ok(ln.exp())
}

/// The maximiser of `T₁` on `(−1/2, 0)`: `λ* = (e^{W(e/2) − 1} − 1) / 2`.
pub fn lambda_star() -> f64 {
    let w = lambert_w0(std::f64::consts::E / 2.0).expect("W is defined at e/2");
    0.5 * (w - 1.0).exp_m1()
}

/// `Θ_{λ_q} = √(2π) Γ(2λ_q + 1) / Γ(λ_q + 1)`.
pub fn theta_const(lambda_q: f64) -> Result<f64> {
    check_lambda("theta_const", lambda_q)?;
    Ok((2.0 * std::f64::consts::PI).sqrt() * gamma(2.0 * lambda_q + 1.0)? / gamma(lambda_q + 1.0)?)
}

/// `(n_q+1)! K̂_{n_q+1} / [Θ_{λ_q} n_q^{3/2 − λ_q} (2n_q/e)^{n_q}]`, in the
/// log domain. Tends to 1 as `n_q → ∞`.
pub fn theta_ratio(n_q: usize, lambda_q: f64) -> Result<f64> {
    if n_q == 0 {
        return Err(Error::domain("theta_ratio", "n_q must be positive"));
    }
    let nq = n_q as f64;
    let ln = ln_gamma(nq + 2.0) + ln_leading_coeff(lambda_q, n_q + 1)?
        - theta_const(lambda_q)?.ln()
        - (1.5 - lambda_q) * nq.ln()
        - nq * (std::f64::consts::LN_2 + nq.ln() - 1.0);
    Ok(ln.exp())
}

/// `χ_{n,m}^λ = n! Γ(λ+1/2) Γ(n+m+2λ) / ((n−m)! Γ(n+2λ) Γ(m+λ+1/2))`,
/// the constant of the `m`-th derivative of `Ĝ_n^λ`.
pub fn chi(n: usize, m: usize, lambda: f64) -> Result<f64> {
    check_lambda("chi", lambda)?;
    if m > n {
        return Err(Error::domain("chi", format!("m = {m} exceeds n = {n}")));
    }
    if m == 0 {
        return Ok(1.0);
    }
    let (nf, mf) = (n as f64, m as f64);
    let ln = ln_gamma(nf + 1.0) + ln_gamma(lambda + 0.5) + ln_gamma(nf + mf + 2.0 * lambda)
        - ln_gamma(nf - mf + 1.0)
        - ln_gamma(nf + 2.0 * lambda)
        - ln_gamma(mf + lambda + 0.5);
    Ok(ln.exp())
}

/// Interpolation part of the error at `t`, with `f^{(n+1)}(ξ)` replaced by
/// `deriv_value`:
/// `t^α d / ((n+1)! Γ(α+1) K̂_{n+1}) · ∫₀¹ Ĝ_{n+1}(t(1 − y^{1/α})) dy`.
/// The integral uses an SGIRV rule of degree `n + 16`.
pub fn truncation_closed_form(n: usize, alpha: FracOrder, lambda: f64, t: f64, deriv_value: f64) -> Result<f64> {
    check_lambda("truncation_closed_form", lambda)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain("truncation_closed_form", format!("t = {t} outside [0, 1]")));
    }
    if !deriv_value.is_finite() {
        return Err(Error::domain("truncation_closed_form", "derivative value must be finite"));
    }
    if deriv_value == 0.0 || t == 0.0 {
        return Ok(0.0);
    }
    let quad = QuadRule::new(n + 16, 0.5)?;
    let basis = SgBasis::new(lambda, n + 1)?;
    let integral = modal_integral(n + 1, t, alpha, &quad, &basis)?;
    let a = alpha.value();
    let ln_scale = a * t.ln() - ln_gamma(n as f64 + 2.0) - ln_gamma(a + 1.0) - ln_leading_coeff(lambda, n + 1)?;
    Ok(deriv_value * ln_scale.exp() * integral)
}

/// Exponential decay condition of the quadrature error for `n ∼ n_q`:
/// `α > 2 t η^{1/α − 1}`.
pub fn decay_condition(alpha: FracOrder, t: f64, eta: f64) -> Result<bool> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::domain("decay_condition", format!("eta = {eta} must lie in (0, 1)")));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain("decay_condition", format!("t = {t} outside [0, 1]")));
    }
    let a = alpha.value();
    Ok(a > 2.0 * t * eta.powf(1.0 / a - 1.0))
}

/// Relation between interpolation and quadrature degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadRegime {
    /// `n_q >= n`: the quadrature error term vanishes.
    Exact,
    /// `n_q < n < 3 n_q`.
    Comparable,
    /// `n >= 3 n_q`.
    Dominant,
}

pub fn quad_regime(n: usize, n_q: usize) -> QuadRegime {
    if n_q >= n {
        QuadRegime::Exact
    } else if n >= DOMINANT_RATIO * n_q {
        QuadRegime::Dominant
    } else {
        QuadRegime::Comparable
    }
}

/// Existential constants of the asymptotic bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    pub sigma: f64,
    pub nu: f64,
    pub rho: f64,
    pub d: f64,
    pub gamma_nq: f64,
    pub varpi_upp: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        Self { sigma: 1.0, nu: 1.0, rho: 1.0, d: 1.0, gamma_nq: 1.0, varpi_upp: 1.0 }
    }
}

pub const ASYMPTOTIC_CAVEAT: &str =
    "asymptotic estimate; problem-dependent constants unknown (set to the supplied values)";

/// A number that is only meaningful up to unknown constants as `n → ∞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Asymptotic {
    pub value: f64,
    pub asymptotic: bool,
    pub caveat: &'static str,
}

impl Asymptotic {
    fn new(value: f64) -> Self {
        Self { value, asymptotic: true, caveat: ASYMPTOTIC_CAVEAT }
    }
}

/// Inputs for [`error_report`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportInput {
    pub n: usize,
    pub n_q: usize,
    pub alpha: f64,
    pub lambda: f64,
    pub lambda_q: f64,
    pub t: f64,
    /// Quadrature mean-value point η ∈ (0, 1).
    pub eta: f64,
    /// Bound on `|f^{(n+1)}|` (also used as `f^{(n+1)}(ξ)` in the closed form).
    pub deriv_bound: f64,
    /// Bound on `|f|`.
    pub sup_f: f64,
    pub constants: BoundConstants,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub interp_bound: Asymptotic,
    pub quad_bound: Asymptotic,
    pub truncation_closed_form: f64,
    pub vartheta: f64,
    pub decay_ok: bool,
    pub regime: QuadRegime,
    /// Which branch of Υ_σ(n) applies.
    pub upsilon_case: &'static str,
    /// Which branch of ₂Υ_{D,ρ}(n, n_q) applies.
    pub upsilon2_case: &'static str,
    pub advisory_notes: Vec<String>,
}

fn finite_or(what: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain("error_report", format!("{what} is not finite")))
    }
}

/// Evaluates every computable piece of the error analysis for one setting.
pub fn error_report(input: &ReportInput) -> Result<ErrorReport> {
    let ReportInput { n, n_q, alpha, lambda, lambda_q, t, eta, deriv_bound, sup_f, constants: c } = *input;
    if n == 0 || n_q == 0 {
        return Err(Error::domain("error_report", "n and n_q must be positive"));
    }
    check_lambda("error_report", lambda_q)?;
    let order = FracOrder::new(alpha)?;
    let (nf, nqf) = (n as f64, n_q as f64);
    let th = vartheta(alpha, lambda)?;

    let (upsilon_case, ln_upsilon) = if lambda >= 0.0 {
        ("lambda >= 0: 1", 0.0)
    } else {
        ("lambda < 0: sigma n^-lambda", c.sigma.ln() - lambda * nf.ln())
    };
    let ln_interp = th.ln() + nf * (1.0 - 4f64.ln()) + (-1.5 - nf + lambda) * nf.ln() + ln_upsilon;
    let interp = finite_or("interpolation bound", deriv_bound.abs() * ln_interp.exp())?;

    let upsilon2_case = match (lambda >= 0.0, lambda_q >= 0.0) {
        (true, true) => "lambda >= 0, lambda_q >= 0: 1",
        (false, true) => "lambda < 0, lambda_q >= 0: D n^-lambda",
        (true, false) => "lambda >= 0, lambda_q < 0: rho n_q^-lambda_q",
        (false, false) => "lambda < 0, lambda_q < 0: D rho n^-lambda n_q^-lambda_q",
    };
    let regime = quad_regime(n, n_q);
    let quad = if regime == QuadRegime::Exact || t == 0.0 {
        0.0
    } else {
        let mut ln_u2 = 0.0;
        if lambda < 0.0 {
            ln_u2 += c.d.ln() - lambda * nf.ln();
        }
        if lambda_q < 0.0 {
            ln_u2 += c.rho.ln() - lambda_q * nqf.ln();
        }
        let norms = norm_lambda_bar(lambda, n.max(n_q + 1))?;
        let lb_max = if lambda >= 0.0 { norms.lambda_bar[n] } else { norms.lambda_bar[n_q + 1] };
        let theta = theta_const(lambda_q)?;
        let ln_case = match regime {
            QuadRegime::Comparable => {
                (c.nu / theta).ln() + (lambda_q - lambda) * nqf.ln() + nqf * (2.0 * t / alpha).ln()
            }
            _ => {
                c.gamma_nq.ln() + 2.0 * (nqf + 1.0) * nf.ln() - theta.ln() - (1.5 - lambda_q) * nqf.ln()
                    + nqf * (std::f64::consts::E * t / (2.0 * alpha * nqf)).ln()
            }
        };
        let ln_q = (sup_f.abs() * c.varpi_upp).ln() + alpha * t.ln() - lb_max.ln() - ln_gamma(alpha + 1.0)
            + (nf * (nf - nqf)).ln()
            + nqf * (1.0 - alpha) / alpha * eta.ln()
            + ln_u2
            + ln_case;
        finite_or("quadrature bound", ln_q.exp())?
    };

    let closed = finite_or("closed form", truncation_closed_form(n, order, lambda, t, deriv_bound)?)?;
    let decay_ok = decay_condition(order, t, eta)?;

    let mut notes = Vec::new();
    if (lambda - lambda_star()).abs() < LAMBDA_STAR_DELTA {
        notes.push(format!("lambda is within {LAMBDA_STAR_DELTA} of lambda* where vartheta peaks"));
    }
    if lambda > 0.0 {
        notes.push("positive lambda raises the polynomial factor n^(-3/2-n+lambda)".to_string());
    }
    if lambda < -0.5 + INDEX_EPSILON || lambda_q < -0.5 + INDEX_EPSILON {
        notes.push("index close to -1/2: Gegenbauer evaluation becomes ill-conditioned".to_string());
    }
    match regime {
        QuadRegime::Exact => notes.push("n_q >= n: quadrature error term vanishes".to_string()),
        QuadRegime::Comparable => {
            if !decay_ok {
                notes.push("decay condition alpha > 2 t eta^(1/alpha-1) fails: quadrature error may not decay".into());
            }
            if lambda_q >= lambda {
                notes.push("n ~ n_q: choosing lambda_q < lambda speeds up quadrature convergence".to_string());
            }
        }
        QuadRegime::Dominant => {
            notes.push(
                "n >> n_q: quadrature error typically diverges unless t eta^(1/alpha-1)/alpha is small; increase n_q"
                    .into(),
            );
            if lambda_q >= 1.5 {
                notes.push("n >> n_q: choose lambda_q < 3/2".to_string());
            }
        }
    }

    Ok(ErrorReport {
        interp_bound: Asymptotic::new(interp),
        quad_bound: Asymptotic::new(quad),
        truncation_closed_form: closed,
        vartheta: th,
        decay_ok,
        regime,
        upsilon_case,
        upsilon2_case,
        advisory_notes: notes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdviceMode {
    Standard,
    Precision,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamAdvice {
    pub lambda: f64,
    pub lambda_q: f64,
    pub mode: AdviceMode,
    pub regime: QuadRegime,
    /// Recommended range for λ.
    pub lambda_range: (f64, f64),
    /// Neighbourhood of λ* to avoid.
    pub excluded: (f64, f64),
    /// Constraints on λ_q relevant to this `(n, n_q)`.
    pub constraints: Vec<String>,
    pub rationale: String,
}

/// Recommends `(λ, λ_q)`. `Standard` is the shifted Chebyshev choice;
/// `Precision` follows the asymptotic analysis for large `n`.
pub fn advise_params(n: usize, n_q: usize, mode: AdviceMode) -> ParamAdvice {
    let ls = lambda_star();
    let excluded = (ls - LAMBDA_STAR_DELTA, ls + LAMBDA_STAR_DELTA);
    let regime = quad_regime(n, n_q);
    match mode {
        AdviceMode::Standard => ParamAdvice {
            lambda: 0.0,
            lambda_q: 0.0,
            mode,
            regime,
            lambda_range: (-0.5 + INDEX_EPSILON, INDEX_UPPER),
            excluded,
            constraints: Vec::new(),
            rationale: "lambda = lambda_q = 0 (shifted Chebyshev): robust default for general use".to_string(),
        },
        AdviceMode::Precision => {
            let (lambda_q, constraints) = match regime {
                QuadRegime::Dominant => (0.5, vec!["n >> n_q: lambda_q < 3/2".to_string()]),
                _ => (-0.1, vec!["n ~ n_q: lambda_q < lambda".to_string()]),
            };
            ParamAdvice {
                lambda: 0.0,
                lambda_q,
                mode,
                regime,
                lambda_range: (-0.5 + INDEX_EPSILON, 0.0),
                excluded,
                constraints,
                rationale: format!(
                    "lambda in [{:.2}, 0] away from lambda* = {ls:.4} +/- {LAMBDA_STAR_DELTA}; lambda = 0 keeps the polynomial factor small without the instability near -1/2",
                    -0.5 + INDEX_EPSILON
                ),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gegenbauer::derivative_factor;

    #[test]
    fn lambda_star_value() {
        let ls = lambda_star();
        assert!((ls - (-0.1351)).abs() <= 5e-5);
        assert!((ls - (-0.135_077_486_021_146_53)).abs() <= 1e-15);
        let (a, b) = (t1(ls).unwrap(), t1(ls + 0.01).unwrap());
        assert!(a >= b && a >= t1(ls - 0.01).unwrap());
    }

    #[test]
    fn t1_examples_and_concavity() {
        assert_eq!(t1(0.0).unwrap(), 1.0);
        let h = 1e-3;
        let mut best = (f64::NEG_INFINITY, 0.0);
        let mut lam = -0.5 + 1e-4;
        let lnt = |l: f64| t1(l).unwrap().ln();
        while lam + 2.0 * h < -1e-4 {
            let d2 = lnt(lam) - 2.0 * lnt(lam + h) + lnt(lam + 2.0 * h);
            assert!(d2 < 0.0, "not concave at {lam}");
            let v = t1(lam + h).unwrap();
            if v > best.0 {
                best = (v, lam + h);
            }
            lam += h;
        }
        assert!((best.1 - lambda_star()).abs() <= h);
    }

    #[test]
    fn t2_t3_positive_and_tame() {
        let mut prev: Option<f64> = None;
        for i in 1..500 {
            let lam = -0.5 + i as f64 * 1e-3;
            let p = t2(lam).unwrap() * t3(lam).unwrap();
            assert!(p > 0.0 && p.is_finite());
            if let Some(q) = prev {
                assert!((p - q).abs() < 0.05);
            }
            prev = Some(p);
        }
        // T₁T₂ ~ e^{-1/2} √(1 + 2λ) as λ → −1/2.
        for eps in [1e-4f64, 1e-6, 1e-8] {
            let lam = -0.5 + eps;
            let want = (-0.5f64).exp() * (2.0 * eps).sqrt();
            assert!((t1(lam).unwrap() * t2(lam).unwrap() / want - 1.0).abs() < 1e-2);
        }
    }

    #[test]
    fn vartheta_examples() {
        // Independent evaluation of each factor at 30 digits.
        assert!((vartheta(0.5, 0.5).unwrap() / 0.330_408_220_078_184_53 - 1.0).abs() <= 1e-13);
        assert!((vartheta(0.5, 0.0).unwrap() / 0.615_041_815_432_613_1 - 1.0).abs() <= 1e-13);
        assert!((vartheta(0.2, 1.0).unwrap() / 0.114_486_761_579_603_74 - 1.0).abs() <= 1e-13);
        assert!((vartheta(0.5, -0.49).unwrap() / 0.069_881_122_604_609_59 - 1.0).abs() <= 1e-13);
        let seq: Vec<f64> = [-0.49, -0.499, -0.4999].iter().map(|&l| vartheta(0.5, l).unwrap()).collect();
        assert!(seq[0] > seq[1] && seq[1] > seq[2]);
        assert!((seq[1] / 0.020_092_539_722_449_744 - 1.0).abs() <= 1e-13);
        assert!((seq[2] / 0.006_254_830_183_694_704 - 1.0).abs() <= 1e-13);
        assert!(vartheta(0.5, -0.5 + 1e-12).unwrap() < 1e-6);
        assert!(vartheta(0.5, -0.5).is_err());
    }

    #[test]
    fn vartheta_argmax_in_lambda() {
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 1..5000 {
            let lam = -0.5 + i as f64 * 1e-4;
            let v = vartheta(0.5, lam).unwrap();
            if v > best.0 {
                best = (v, lam);
            }
        }
        assert!((best.1 - (-0.076)).abs() <= 2e-3, "argmax {}", best.1);
    }

    #[test]
    fn vartheta_decreases_in_alpha() {
        for lam in [-0.4, 0.0, 0.5, 1.0] {
            let mut prev = f64::INFINITY;
            for i in 0..=400 {
                let a = 1.0 + i as f64 * 0.01;
                let v = vartheta(a, lam).unwrap();
                assert!(v < prev, "lam {lam} alpha {a}");
                prev = v;
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert!((theta_const(0.5).unwrap() - 2.0 * 2f64.sqrt()).abs() <= 1e-14);
        assert!((theta_const(0.0).unwrap() - (2.0 * std::f64::consts::PI).sqrt()).abs() <= 1e-14);
        for lq in [0.5, 1.0] {
            let r = theta_ratio(200, lq).unwrap();
            assert!((0.98..=1.02).contains(&r), "lambda_q {lq}: {r}");
        }
        assert!((theta_ratio(200, 0.5).unwrap() - 1.002_291_167_891_978).abs() <= 1e-10);
    }

    #[test]
    fn chi_examples() {
        assert!((chi(2, 1, 0.5).unwrap() - 6.0).abs() <= 1e-13);
        assert_eq!(chi(4, 0, 0.3).unwrap(), 1.0);
        assert!(chi(2, 3, 0.5).is_err());
        // m = n: (n − m)! = 1, so 3! Γ(1) Γ(7) / (Γ(4) Γ(4)) = 120.
        assert!((chi(3, 3, 0.5).unwrap() - 120.0).abs() <= 1e-12);
    }

    #[test]
    fn chi_matches_product_form() {
        for lam in [-0.4, -0.1351, 0.0, 0.5, 1.0, 2.0] {
            for n in 1..=20 {
                for m in 1..=n {
                    let p = derivative_factor(lam, n, m);
                    let c = chi(n, m, lam).unwrap();
                    assert!(((c - p) / p).abs() <= 1e-12, "lam {lam} n {n} m {m}: {c} vs {p}");
                }
            }
        }
    }

    #[test]
    fn chi_growth_is_n_to_the_2m() {
        let r: Vec<f64> =
            [1000usize, 2000, 4000].iter().map(|&n| chi(n, 3, 0.5).unwrap() / (n as f64).powi(6)).collect();
        assert!((r[1] / r[0] - 1.0).abs() < 5e-3 && (r[2] / r[1] - 1.0).abs() < 2.5e-3);
    }

    #[test]
    fn truncation_examples() {
        let half = FracOrder::new(0.5).unwrap();
        assert_eq!(truncation_closed_form(3, half, 0.5, 0.5, 0.0).unwrap(), 0.0);
        let a = truncation_closed_form(3, half, 0.5, 0.5, 1.0).unwrap();
        let b = truncation_closed_form(3, half, 0.5, 0.5, -2.5).unwrap();
        assert!((b + 2.5 * a).abs() <= 1e-15 * a.abs());
        let bound = truncation_closed_form(3, half, 0.5, 0.5, std::f64::consts::E).unwrap().abs();
        let approx =
            crate::rlfi::eval_rlfi(f64::exp, crate::GridSpec::new(3, 0.5), crate::QuadSpec::new(30, 0.5), half, &[0.5])
                .unwrap()[0];
        let observed = (approx - crate::reference::exact_exp(1.0, 0.5, 0.5).unwrap()).abs();
        assert!(bound >= observed, "{bound} < {observed}");
    }

    #[test]
    fn decay_examples() {
        let a = |x| FracOrder::new(x).unwrap();
        assert!(decay_condition(a(0.9), 0.1, 0.5).unwrap());
        let want = 0.1 > 2.0 * 0.99f64.powf(9.0);
        assert_eq!(decay_condition(a(0.1), 1.0, 0.99).unwrap(), want);
        for &al in &[0.05, 0.5, 0.95] {
            for &eta in &[0.01, 0.5, 0.99] {
                assert!(decay_condition(a(al), 0.0, eta).unwrap());
            }
        }
        assert!(decay_condition(a(0.5), 0.5, 1.0).is_err());
    }

    #[test]
    fn advice() {
        for (n, nq) in [(3, 4), (50, 48), (50, 8), (200, 1)] {
            let s = advise_params(n, nq, AdviceMode::Standard);
            assert_eq!((s.lambda, s.lambda_q), (0.0, 0.0));
        }
        let p = advise_params(50, 48, AdviceMode::Precision);
        assert!(p.lambda >= -0.45 && p.lambda <= 0.0);
        assert!(p.lambda < p.excluded.0 || p.lambda > p.excluded.1);
        assert!(p.lambda_q < p.lambda);
        assert_eq!(p.regime, QuadRegime::Comparable);
        let p = advise_params(50, 8, AdviceMode::Precision);
        assert!(p.lambda_q < 1.5);
        assert!(p.constraints.iter().any(|c| c.contains("3/2")));
        for adv in [p, advise_params(50, 48, AdviceMode::Precision)] {
            for v in [adv.lambda, adv.lambda_q] {
                assert!((-0.5 + INDEX_EPSILON..=INDEX_UPPER).contains(&v));
            }
        }
    }

    #[test]
    fn report_flags_and_cases() {
        let input = ReportInput {
            n: 10,
            n_q: 6,
            alpha: 0.5,
            lambda: -0.14,
            lambda_q: 0.3,
            t: 0.5,
            eta: 0.5,
            deriv_bound: std::f64::consts::E,
            sup_f: std::f64::consts::E,
            constants: BoundConstants::default(),
        };
        let r = error_report(&input).unwrap();
        assert!(r.interp_bound.asymptotic && r.quad_bound.asymptotic);
        assert!(r.interp_bound.value.is_finite() && r.quad_bound.value > 0.0);
        assert_eq!(r.regime, QuadRegime::Comparable);
        assert!(r.upsilon_case.starts_with("lambda < 0"));
        assert!(r.upsilon2_case.contains("D n^-lambda"));
        assert!(r.advisory_notes.iter().any(|s| s.contains("lambda*")));
        let r = error_report(&ReportInput { n_q: 12, lambda: 0.5, ..input }).unwrap();
        assert_eq!(r.quad_bound.value, 0.0);
        assert_eq!(r.regime, QuadRegime::Exact);
    }
}
