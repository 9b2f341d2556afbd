//! The fractional integration operator: cardinal functions, interpolation,
//! modal integrals and the FSGIM.
//!
//! Substituting `τ = t(1 − y^{1/α})` turns the RLFI of `f` into
//! `t^α/Γ(α+1) · ∫₀¹ f(t(1 − y^{1/α})) dy`, whose integrand is smooth. The
//! interpolant of `f` is expanded in SG modes, each mode is integrated with
//! the SGIRV rule, and the result is collected into a matrix acting on node
//! samples:
//!
//! ```text
//! generator[m, k] = Σ_j I_j(z_m) · ϖ_k Ĝ_j(t_k) / λ̄_j
//! scaled[m, k]    = z_m^α / Γ(α+1) · generator[m, k]
//! ```

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gegenbauer::{fill_x, SgBasis};
use crate::grids::{Grid, GridId, GridSpec, QuadRule, QuadSpec};
use crate::specfun::{gamma, Neumaier};

/// Fractional order `α ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::domain("FracOrder::new", format!("alpha = {alpha} must lie in (0, 1)")));
        }
        Ok(Self(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `Γ(α + 1)`.
    fn gamma1(self) -> Result<f64> {
        gamma(self.0 + 1.0)
    }
}

/// Samples of `f` at the nodes of one particular grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleVector {
    grid: GridId,
    values: Vec<f64>,
}

impl SampleVector {
    /// Wraps values that were taken at the nodes of grid `grid`.
    pub fn new(grid: GridId, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n + 1 {
            return Err(Error::LengthMismatch { expected: grid.n + 1, got: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::domain("SampleVector::new", format!("sample {i} is not finite")));
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at the nodes of `grid`.
    pub fn from_fn(grid: &Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid.id(), grid.nodes().iter().map(|&t| f(t)).collect())
    }

    pub fn grid(&self) -> GridId {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn check_point(func: &'static str, t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(func, format!("point {t} outside [0, 1]")));
    }
    Ok(())
}

/// Cardinal function `L_k(t) = ϖ_k Σ_j Ĝ_j(t_k) Ĝ_j(t) / λ̄_j`.
pub fn cardinal_eval(grid: &Grid, k: usize, t: f64) -> Result<f64> {
    let n = grid.n();
    if k > n {
        return Err(Error::domain("cardinal_eval", format!("index {k} exceeds n = {n}")));
    }
    check_point("cardinal_eval", t)?;
    let lam = grid.lambda();
    let mut gk = vec![0.0; n + 1];
    let mut gt = vec![0.0; n + 1];
    fill_x(lam, 2.0 * grid.nodes()[k] - 1.0, &mut gk);
    fill_x(lam, 2.0 * t - 1.0, &mut gt);
    let mut acc = Neumaier::default();
    for (j, lb) in grid.norms().lambda_bar.iter().enumerate() {
        acc.add(gk[j] * gt[j] / lb);
    }
    Ok(grid.christoffel()[k] * acc.value())
}

/// Value at `t` of the degree-`n` interpolant through `samples`.
pub fn interpolate(grid: &Grid, samples: &SampleVector, t: f64) -> Result<f64> {
    check_grid(grid.id(), samples.grid())?;
    let mut acc = Neumaier::default();
    for (k, f) in samples.values().iter().enumerate() {
        acc.add(f * cardinal_eval(grid, k, t)?);
    }
    Ok(acc.value())
}

/// `Σ_q w_q Ĝ_j(t(1 − y_q^{1/α}))`: the SGIRV approximation of
/// `∫₀¹ Ĝ_j(t(1 − y^{1/α})) dy`.
pub fn modal_integral(j: usize, t: f64, alpha: FracOrder, quad: &QuadRule, basis: &SgBasis) -> Result<f64> {
    check_point("modal_integral", t)?;
    let inv = 1.0 / alpha.value();
    let mut s = 0.0;
    for (&y, &w) in quad.nodes().iter().zip(quad.weights()) {
        s += w * basis.eval(j, t * (1.0 - y.powf(inv)))?;
    }
    Ok(s)
}

/// Provenance of a built matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BuildMeta {
    /// Version of the library that built the matrix.
    pub version: String,
}

impl Default for BuildMeta {
    fn default() -> Self {
        Self { version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

/// Precomputed fractional integration matrix for one `(α, grid, quad,
/// points)` combination. Immutable once built.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fsgim {
    pub(crate) alpha: FracOrder,
    pub(crate) grid: GridId,
    pub(crate) quad: QuadSpec,
    pub(crate) grid_nodes: Vec<f64>,
    pub(crate) quad_nodes: Vec<f64>,
    pub(crate) quad_weights: Vec<f64>,
    pub(crate) points: Vec<f64>,
    pub(crate) generator: Vec<f64>,
    pub(crate) scaled: Vec<f64>,
    pub(crate) meta: BuildMeta,
}

fn check_grid(expected: GridId, got: GridId) -> Result<()> {
    if expected.n != got.n
        || expected.lambda.to_bits() != got.lambda.to_bits()
        || expected.fingerprint != got.fingerprint
    {
        return Err(Error::GridMismatch {
            matrix_n: expected.n,
            matrix_lambda: expected.lambda,
            matrix_fp: expected.fingerprint,
            sample_n: got.n,
            sample_lambda: got.lambda,
            sample_fp: got.fingerprint,
        });
    }
    Ok(())
}

impl Fsgim {
    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    pub fn grid_id(&self) -> GridId {
        self.grid
    }

    pub fn grid_spec(&self) -> GridSpec {
        GridSpec::new(self.grid.n, self.grid.lambda)
    }

    pub fn quad_spec(&self) -> QuadSpec {
        self.quad
    }

    pub fn grid_nodes(&self) -> &[f64] {
        &self.grid_nodes
    }

    pub fn quad_nodes(&self) -> &[f64] {
        &self.quad_nodes
    }

    pub fn quad_weights(&self) -> &[f64] {
        &self.quad_weights
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn meta(&self) -> &BuildMeta {
        &self.meta
    }

    /// Number of rows (evaluation points).
    pub fn rows(&self) -> usize {
        self.points.len()
    }

    /// Number of columns (`n + 1`).
    pub fn cols(&self) -> usize {
        self.grid.n + 1
    }

    /// Row-major generator, `rows() × cols()`.
    pub fn generator(&self) -> &[f64] {
        &self.generator
    }

    /// Row-major scaled matrix, `rows() × cols()`.
    pub fn scaled(&self) -> &[f64] {
        &self.scaled
    }

    pub fn generator_row(&self, m: usize) -> &[f64] {
        let c = self.cols();
        &self.generator[m * c..(m + 1) * c]
    }

    pub fn scaled_row(&self, m: usize) -> &[f64] {
        let c = self.cols();
        &self.scaled[m * c..(m + 1) * c]
    }

    /// Approximate RLFI values at every point: `scaled · samples`. Fails if
    /// the samples were not taken on this matrix's grid.
    pub fn apply(&self, samples: &SampleVector) -> Result<Vec<f64>> {
        check_grid(self.grid, samples.grid())?;
        let f = samples.values();
        Ok(self
            .scaled
            .chunks_exact(self.cols())
            .map(|row| {
                let mut acc = Neumaier::default();
                for (q, v) in row.iter().zip(f) {
                    acc.add(q * v);
                }
                acc.value()
            })
            .collect())
    }
}

/// Builds the FSGIM for the given grid, quadrature rule, order and points.
pub fn build_fsgim(grid: &Grid, quad: &QuadRule, alpha: FracOrder, points: &[f64]) -> Result<Fsgim> {
    for &z in points {
        check_point("build_fsgim", z)?;
    }
    let cols = grid.n() + 1;
    let lam = grid.lambda();
    let lambda_bar = &grid.norms().lambda_bar;

    // bt[k][j] = ϖ_k Ĝ_j(t_k) / λ̄_j, stored row-major by node.
    let mut g = vec![0.0; cols];
    let mut bt = vec![0.0; cols * cols];
    for (k, (&t, &w)) in grid.nodes().iter().zip(grid.christoffel()).enumerate() {
        fill_x(lam, 2.0 * t - 1.0, &mut g);
        for j in 0..cols {
            bt[k * cols + j] = w * g[j] / lambda_bar[j];
        }
    }

    let inv = 1.0 / alpha.value();
    let ypow: Vec<f64> = quad.nodes().iter().map(|y| y.powf(inv)).collect();
    let gamma1 = alpha.gamma1()?;

    let rows = points.len();
    let mut generator = vec![0.0; rows * cols];
    let mut scaled = vec![0.0; rows * cols];
    let mut modal = vec![0.0; cols];
    for (m, &z) in points.iter().enumerate() {
        if z == 0.0 {
            continue;
        }
        modal.iter_mut().for_each(|v| *v = 0.0);
        for (yp, &w) in ypow.iter().zip(quad.weights()) {
            fill_x(lam, 2.0 * (z * (1.0 - yp)) - 1.0, &mut g);
            for j in 0..cols {
                modal[j] += w * g[j];
            }
        }
        let c = z.powf(alpha.value()) / gamma1;
        let row = m * cols;
        for k in 0..cols {
            let b = &bt[k * cols..(k + 1) * cols];
            let mut acc = Neumaier::default();
            for j in 0..cols {
                acc.add(modal[j] * b[j]);
            }
            let v = acc.value();
            generator[row + k] = v;
            scaled[row + k] = c * v;
        }
    }

    Ok(Fsgim {
        alpha,
        grid: grid.id(),
        quad: quad.spec(),
        grid_nodes: grid.nodes().to_vec(),
        quad_nodes: quad.nodes().to_vec(),
        quad_weights: quad.weights().to_vec(),
        points: points.to_vec(),
        generator,
        scaled,
        meta: BuildMeta::default(),
    })
}

/// One-shot evaluation: build the grid and rule, sample `f`, build the
/// matrix and apply it.
pub fn eval_rlfi(
    f: impl Fn(f64) -> f64,
    grid: GridSpec,
    quad: QuadSpec,
    alpha: FracOrder,
    points: &[f64],
) -> Result<Vec<f64>> {
    let grid = Grid::from_spec(grid)?;
    let quad = QuadRule::from_spec(quad)?;
    let samples = SampleVector::from_fn(&grid, f)?;
    build_fsgim(&grid, &quad, alpha, points)?.apply(&samples)
}
