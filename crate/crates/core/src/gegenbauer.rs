//! Shifted Gegenbauer polynomials on `[0, 1]`.
//!
//! `Ĝ_j^λ(t) = G_j^λ(2t − 1)` where `G_j^λ` is the Gegenbauer family fixed
//! by `G_0 = 1`, `G_1 = x` and
//!
//! ```text
//! (j + 2λ) G_{j+1}(x) = 2 (j + λ) x G_j(x) − j G_{j−1}(x),   j >= 1.
//! ```
//!
//! With this standardization `G_j^λ(1) = 1` for every `λ > −1/2`, and the
//! Chebyshev case `λ = 0` needs no limiting argument.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{gamma, ln_gamma};

pub(crate) fn check_lambda(func: &'static str, lambda: f64) -> Result<()> {
    if !(lambda > -0.5) || !lambda.is_finite() {
        return Err(Error::domain(func, format!("lambda = {lambda} must be finite and > -1/2")));
    }
    Ok(())
}

/// Fills `out[j] = G_j^λ(x)` for `j < out.len()` in the unshifted variable.
pub(crate) fn fill_x(lambda: f64, x: f64, out: &mut [f64]) {
    let len = out.len();
    if len == 0 {
        return;
    }
    out[0] = 1.0;
    if len == 1 {
        return;
    }
    out[1] = x;
    for j in 1..len - 1 {
        let jf = j as f64;
        out[j + 1] = (2.0 * (jf + lambda) * x * out[j] - jf * out[j - 1]) / (jf + 2.0 * lambda);
    }
}

/// `G_j^λ(x)` by the same recurrence as [`fill_x`], without storing the
/// whole column. Bit-identical to `fill_x(..)[j]`.
pub(crate) fn eval_x(lambda: f64, j: usize, x: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, x);
    for k in 1..j {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * x * cur - kf * prev) / (kf + 2.0 * lambda);
        prev = cur;
        cur = next;
    }
    cur
}

/// Constant `c` in `d^m/dt^m Ĝ_j^λ = c · Ĝ_{j−m}^{λ+m}`, as a running product.
pub(crate) fn derivative_factor(lambda: f64, j: usize, m: usize) -> f64 {
    if m > j {
        return 0.0;
    }
    (0..m).fold(1.0, |acc, i| {
        let (jf, i) = (j as f64, i as f64);
        acc * 2.0 * (jf - i) * (jf + i + 2.0 * lambda) / (2.0 * lambda + 2.0 * i + 1.0)
    })
}

/// A shifted Gegenbauer family of fixed index λ and bounded degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SgBasis {
    lambda: f64,
    max_degree: usize,
    allow_extrapolation: bool,
}

impl SgBasis {
    pub fn new(lambda: f64, max_degree: usize) -> Result<Self> {
        check_lambda("SgBasis::new", lambda)?;
        Ok(Self { lambda, max_degree, allow_extrapolation: false })
    }

    /// Permits evaluation outside `[0, 1]`. Off by default: SG polynomials
    /// grow quickly outside their interval of orthogonality.
    pub fn with_extrapolation(mut self, allow: bool) -> Self {
        self.allow_extrapolation = allow;
        self
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn check(&self, func: &'static str, j: usize, t: f64) -> Result<()> {
        if j > self.max_degree {
            return Err(Error::domain(func, format!("degree {j} exceeds max_degree {}", self.max_degree)));
        }
        if t.is_nan() || (!self.allow_extrapolation && !(0.0..=1.0).contains(&t)) {
            return Err(Error::domain(func, format!("t = {t} outside [0, 1]")));
        }
        Ok(())
    }

    /// `Ĝ_j^λ(t)`.
    pub fn eval(&self, j: usize, t: f64) -> Result<f64> {
        self.check("sg_eval", j, t)?;
        Ok(eval_x(self.lambda, j, 2.0 * t - 1.0))
    }

    /// `[Ĝ_0^λ(t), …, Ĝ_n^λ(t)]` from a single recurrence pass.
    pub fn eval_all(&self, n: usize, t: f64) -> Result<Vec<f64>> {
        self.check("sg_eval_all", n, t)?;
        let mut out = vec![0.0; n + 1];
        fill_x(self.lambda, 2.0 * t - 1.0, &mut out);
        Ok(out)
    }

    /// `m`-th derivative of `Ĝ_j^λ` with respect to `t`, via
    /// `d/dt Ĝ_j^λ = 2 j (j + 2λ)/(2λ + 1) · Ĝ_{j−1}^{λ+1}` applied `m` times.
    pub fn derivative(&self, j: usize, t: f64, m: usize) -> Result<f64> {
        self.check("sg_derivative", j, t)?;
        if m == 0 {
            return Err(Error::domain("sg_derivative", "derivative order must be >= 1"));
        }
        if m > j {
            return Ok(0.0);
        }
        let factor = derivative_factor(self.lambda, j, m);
        Ok(factor * eval_x(self.lambda + m as f64, j - m, 2.0 * t - 1.0))
    }
}

/// Squared weighted L² norms `λ̄_j = ∫₀¹ (Ĝ_j^λ)² (t − t²)^{λ−1/2} dt`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormConstants {
    pub lambda: f64,
    pub lambda_bar: Vec<f64>,
}

impl NormConstants {
    pub fn len(&self) -> usize {
        self.lambda_bar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda_bar.is_empty()
    }
}

/// Norms `λ̄_0 … λ̄_n` of the shifted family:
///
/// ```text
/// λ̄_0 = Γ(λ + 1/2)² / Γ(2λ + 1)
/// λ̄_j = j! Γ(λ + 1/2)² / (2 (j + λ) Γ(j + 2λ)),   j >= 1
/// ```
///
/// evaluated through the ratio `λ̄_{j+1}/λ̄_j = (j+1)(j+λ)/((j+1+λ)(j+2λ))`.
pub fn norm_lambda_bar(lambda: f64, n: usize) -> Result<NormConstants> {
    check_lambda("norm_lambda_bar", lambda)?;
    let g = gamma(lambda + 0.5)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(g * g / gamma(2.0 * lambda + 1.0)?);
    if n >= 1 {
        out.push(out[0] / (2.0 * (1.0 + lambda)));
    }
    for j in 1..n {
        let jf = j as f64;
        let next = out[j] * (jf + 1.0) * (jf + lambda) / ((jf + 1.0 + lambda) * (jf + 2.0 * lambda));
        out.push(next);
    }
    Ok(NormConstants { lambda, lambda_bar: out })
}

/// Natural log of the leading coefficient
/// `K̂_n^λ = 2^{n−1} Γ(2λ+1) Γ(n+λ) / (Γ(λ+1) Γ(n+2λ))`
/// (coefficient of `x^n` in `G_n^λ(x)`).
pub fn ln_leading_coeff(lambda: f64, n: usize) -> Result<f64> {
    check_lambda("leading_coeff", lambda)?;
    if n == 0 {
        return Ok(0.0);
    }
    let nf = n as f64;
    Ok((nf - 1.0) * std::f64::consts::LN_2 + ln_gamma(2.0 * lambda + 1.0) + ln_gamma(nf + lambda)
        - ln_gamma(lambda + 1.0)
        - ln_gamma(nf + 2.0 * lambda))
}

/// Leading coefficient `K̂_n^λ`; may overflow to `inf` for large `n`, in
/// which case use [`ln_leading_coeff`].
pub fn leading_coeff(lambda: f64, n: usize) -> Result<f64> {
    Ok(ln_leading_coeff(lambda, n)?.exp())
}
