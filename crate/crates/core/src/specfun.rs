//! Special functions used throughout the crate.
//!
//! Gamma and log-gamma (Stirling's series with upward recurrence), the principal branch of the
//! Lambert W function (Halley iteration), the confluent hypergeometric
//! series ₁F₁ and terminating Gauss series ₂F₁. Everything is pure and
//! reentrant.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::error::{Error, Result};

/// Hard cap on the number of series terms summed by [`hyp1f1`].
pub const SERIES_TERM_CAP: usize = 10_000;

/// Default relative tolerance for series truncation.
pub const DEFAULT_SERIES_TOL: f64 = 1e-16;

/// Below this the argument is shifted upward before using Stirling's series.
const STIRLING_MIN: f64 = 10.0;

/// Truncated series value together with convergence bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub converged: bool,
}

/// `sin(pi * x)` with exact argument reduction.
pub(crate) fn sin_pi(x: f64) -> f64 {
    // r in [-1, 1] exactly, then fold into [-1/2, 1/2].
    let mut r = x - 2.0 * (x / 2.0).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Stirling correction `ln Γ(z) − [(z − 1/2) ln z − z + ln √(2π)]` for
/// `z >= 10`; the first omitted term is below 4e-17.
fn stirling_tail(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0
        + inv2
            * (-1.0 / 360.0
                + inv2
                    * (1.0 / 1260.0
                        + inv2
                            * (-1.0 / 1680.0
                                + inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360_360.0 + inv2 * (1.0 / 156.0)))))))
}

/// `Γ(z)` for `z >= 10` by Stirling's series. The power `z^{z − 1/2}` is
/// split in two halves so that neither factor overflows before `e^{−z}`
/// is applied.
fn gamma_stirling(z: f64) -> f64 {
    let half = z.powf((z - 0.5) / 2.0);
    let rest = (2.0 * PI).sqrt() * (-z).exp() * stirling_tail(z).exp();
    (half * rest) * half
}

/// `a + b` as an unevaluated pair `(hi, lo)`.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `Γ(zh + zl)` for `zh > 0`, `|zl| <= ulp(zh)`. Small arguments are moved
/// up to `[10, 11)` with `Γ(z) = Γ(z + n) / (z (z+1) ⋯ (z+n−1))`, the
/// product being carried in double-double.
fn gamma_positive(zh: f64, zl: f64) -> f64 {
    let (mut ph, mut pl) = (1.0, 0.0);
    let (mut yh, mut yl) = (zh, zl);
    while yh < STIRLING_MIN {
        let h = ph * yh;
        let e = ph.mul_add(yh, -h);
        pl = pl * yh + e + ph * yl;
        ph = h;
        let (h, e) = two_sum(yh, 1.0);
        yh = h;
        yl += e;
    }
    // Γ(yh + yl) ≈ Γ(yh) (1 + yl ψ(yh)) with ψ(y) ≈ ln y − 1/(2y).
    let psi = yh.ln() - 0.5 / yh;
    gamma_stirling(yh) * (1.0 + yl * psi) / ph * (1.0 - pl / ph)
}

/// Gamma function Γ(x) for real `x`; poles at non-positive integers are
/// reported as domain errors.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("gamma", "argument is NaN"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::domain("gamma", format!("pole at x = {x}")));
    }
    if x > 0.0 {
        if x > 171.624_376_956_302_7 {
            return Ok(f64::INFINITY);
        }
        return Ok(gamma_positive(x, 0.0));
    }
    // Reflection, with 1 − x carried exactly.
    let (h, l) = two_sum(1.0, -x);
    if h > 171.624_376_956_302_7 {
        return Ok(0.0);
    }
    Ok(PI / (sin_pi(x) * gamma_positive(h, l)))
}

/// Natural logarithm of |Γ(x)|. Returns `+inf` at the poles.
pub fn ln_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return PI.ln() - sin_pi(x).abs().ln() - ln_gamma(1.0 - x);
    }
    if x < 15.0 {
        return gamma_positive(x, 0.0).ln();
    }
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + stirling_tail(x)
}

/// Principal branch W₀ of the Lambert W function: the `w >= -1` solving
/// `w·e^w = x`.
pub fn lambert_w0(x: f64) -> Result<f64> {
    const BRANCH: f64 = -1.0 / E;
    if x.is_nan() {
        return Err(Error::domain("lambert_w0", "argument is NaN"));
    }
    if x < BRANCH {
        // Allow the rounding slop of -1/e itself.
        if BRANCH - x <= 4.0 * f64::EPSILON {
            return Ok(-1.0);
        }
        return Err(Error::domain("lambert_w0", format!("x = {x} < -1/e")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }

    let mut w = if x < -0.25 {
        let p = (2.0 * (E * x + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if x < 3.0 {
        // Padé-style guess, good to a few percent on this range.
        x * (1.0 + 4.0 / 3.0 * x) / (1.0 + 7.0 / 3.0 * x + 5.0 / 6.0 * x * x)
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };

    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1.abs() < 1e-12 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 2.0 * f64::EPSILON * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn sum_series<F>(mut ratio: F, z_abs: f64, tol: f64) -> Result<SeriesResult>
where
    F: FnMut(usize) -> f64,
{
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    for k in 0..SERIES_TERM_CAP {
        term *= ratio(k);
        // Neumaier compensated accumulation.
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        let value = sum + comp;
        if term == 0.0 || (term.abs() <= tol * value.abs() && (k as f64) + 1.0 > z_abs) {
            return Ok(SeriesResult { value, terms_used: k + 2, converged: true });
        }
    }
    Err(Error::NonConvergence { what: "hypergeometric series", iterations: SERIES_TERM_CAP })
}

/// Confluent hypergeometric function ₁F₁(a; c; z) by its defining power
/// series. Negative `z` goes through Kummer's transformation
/// ₁F₁(a; c; z) = e^z ₁F₁(c − a; c; −z) so the summed terms do not cancel.
pub fn hyp1f1(a: f64, c: f64, z: f64, tol: f64) -> Result<SeriesResult> {
    if is_nonpositive_integer(c) {
        return Err(Error::domain("hyp1f1", format!("c = {c} is a non-positive integer")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("hyp1f1", "tolerance must be positive"));
    }
    if z == 0.0 {
        return Ok(SeriesResult { value: 1.0, terms_used: 1, converged: true });
    }
    if z < 0.0 && !is_nonpositive_integer(a) {
        let b = c - a;
        let mz = -z;
        let inner = sum_series(|k| (b + k as f64) * mz / ((c + k as f64) * (k as f64 + 1.0)), mz, tol)?;
        return Ok(SeriesResult { value: z.exp() * inner.value, ..inner });
    }
    sum_series(|k| (a + k as f64) * z / ((c + k as f64) * (k as f64 + 1.0)), z.abs(), tol)
}

/// Terminating Gauss series ₂F₁(a, b; c; z) for a non-positive integer `a`;
/// the sum has exactly `|a| + 1` terms.
pub fn hyp2f1_terminating(a: i64, b: f64, c: f64, z: f64) -> Result<f64> {
    if a > 0 {
        return Err(Error::domain("hyp2f1_terminating", format!("a = {a} must be <= 0")));
    }
    let terms = a.unsigned_abs() as usize;
    let af = a as f64;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..terms {
        let kf = k as f64;
        let ck = c + kf;
        if ck == 0.0 {
            return Err(Error::domain("hyp2f1_terminating", format!("(c)_k vanishes at k = {} for c = {c}", k + 1)));
        }
        term *= (af + kf) * (b + kf) / (ck * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}
