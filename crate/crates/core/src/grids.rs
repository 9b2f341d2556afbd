//! Shifted Gegenbauer–Gauss (SGG) grids and the unweighted quadrature rule
//! built on them.
//!
//! Nodes are the zeros of `Ĝ_{n+1}^λ`: eigenvalues of the Golub–Welsch
//! Jacobi matrix, polished by Newton's method on the recurrence and then
//! symmetrized about `t = 1/2`.

use nalgebra::DMatrix;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gegenbauer::{check_lambda, derivative_factor, eval_x, fill_x, norm_lambda_bar, NormConstants};

/// Largest quadrature degree accepted by [`QuadRule::new`].
pub const MAX_QUAD_DEGREE: usize = 120;

/// Interpolation grid parameters: degree `n` (so `n + 1` nodes) and index λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub n: usize,
    pub lambda: f64,
}

impl GridSpec {
    pub fn new(n: usize, lambda: f64) -> Self {
        Self { n, lambda }
    }
}

/// Quadrature parameters: degree `n_q` (so `n_q + 1` nodes) and index λ_q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadSpec {
    pub n_q: usize,
    pub lambda_q: f64,
}

impl QuadSpec {
    pub fn new(n_q: usize, lambda_q: f64) -> Self {
        Self { n_q, lambda_q }
    }
}

/// Identity of an interpolation grid, used to reject samples taken on the
/// wrong nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridId {
    pub n: usize,
    pub lambda: f64,
    pub fingerprint: u64,
}

pub(crate) fn fingerprint(n: usize, lambda: f64, nodes: &[f64]) -> u64 {
    let mut h = Sha256::new();
    h.update((n as u64).to_le_bytes());
    h.update(lambda.to_bits().to_le_bytes());
    for v in nodes {
        h.update(v.to_bits().to_le_bytes());
    }
    let digest = h.finalize();
    let mut first = [0u8; 8];
    first.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(first)
}

/// Monic three-term coefficient β_k of the Gegenbauer weight on `[-1, 1]`.
fn jacobi_beta(lambda: f64, k: usize) -> f64 {
    if k == 1 {
        return 1.0 / (2.0 * (1.0 + lambda));
    }
    let k = k as f64;
    k * (k + 2.0 * lambda - 1.0) / (4.0 * (k + lambda) * (k + lambda - 1.0))
}

/// The `n + 1` zeros of `Ĝ_{n+1}^λ` in ascending order.
pub fn sgg_nodes(n: usize, lambda: f64) -> Result<Vec<f64>> {
    check_lambda("sgg_nodes", lambda)?;
    if n == 0 {
        return Ok(vec![0.5]);
    }
    let size = n + 1;
    let mut jac = DMatrix::<f64>::zeros(size, size);
    for k in 1..size {
        let b = jacobi_beta(lambda, k).sqrt();
        jac[(k - 1, k)] = b;
        jac[(k, k - 1)] = b;
    }
    let eig = nalgebra::SymmetricEigen::try_new(jac, f64::EPSILON, 10_000)
        .ok_or(Error::NonConvergence { what: "Jacobi matrix eigensolver", iterations: 10_000 })?;
    let mut x: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    x.sort_by(|a, b| a.total_cmp(b));

    // Newton polish on G_{n+1}; dG_{n+1}/dx = c · G_n^{λ+1}.
    let dfac = derivative_factor(lambda, n + 1, 1) / 2.0;
    for (i, xi) in x.iter_mut().enumerate() {
        let mut last = f64::INFINITY;
        for _ in 0..4 {
            let p = eval_x(lambda, n + 1, *xi);
            let dp = dfac * eval_x(lambda + 1.0, n, *xi);
            let step = p / dp;
            if !step.is_finite() {
                return Err(Error::NonConvergence { what: "Newton polish of SGG node", iterations: i });
            }
            *xi -= step;
            last = step.abs();
            if last <= f64::EPSILON * xi.abs().max(1e-3) {
                break;
            }
        }
        if last > 1e-10 {
            return Err(Error::NonConvergence { what: "Newton polish of SGG node", iterations: 4 });
        }
    }

    for k in 0..size / 2 {
        let v = 0.5 * (x[n - k] - x[k]);
        x[k] = -v;
        x[n - k] = v;
    }
    if size % 2 == 1 {
        x[n / 2] = 0.0;
    }
    if x.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NonConvergence { what: "SGG nodes are not strictly increasing", iterations: 0 });
    }
    Ok(x.into_iter().map(|xi| 0.5 * (1.0 + xi)).collect())
}

/// Christoffel numbers `ϖ_k = 1 / Σ_j Ĝ_j(t_k)² / λ̄_j` for the given nodes.
pub fn christoffel(nodes: &[f64], norms: &NormConstants) -> Vec<f64> {
    let n1 = norms.len();
    let mut g = vec![0.0; n1];
    nodes
        .iter()
        .map(|&t| {
            fill_x(norms.lambda, 2.0 * t - 1.0, &mut g);
            let s: f64 = g.iter().zip(&norms.lambda_bar).map(|(gj, lb)| gj * gj / lb).sum();
            1.0 / s
        })
        .collect()
}

/// `μ_j = ∫₀¹ Ĝ_j^λ(t) dt` for `j = 0..=n`: 1, zero for odd `j`, and
/// `(2λ − 1) / ((j + 1)(j + 2λ − 1))` for even `j >= 2`.
pub fn unweighted_moments(lambda: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|j| match j {
            0 => 1.0,
            j if j % 2 == 1 => 0.0,
            j => {
                let jf = j as f64;
                (2.0 * lambda - 1.0) / ((jf + 1.0) * (jf + 2.0 * lambda - 1.0))
            }
        })
        .collect()
}

/// SGG interpolation grid with its Christoffel numbers and norms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    spec: GridSpec,
    nodes: Vec<f64>,
    christoffel: Vec<f64>,
    norms: NormConstants,
    fingerprint: u64,
}

impl Grid {
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        let nodes = sgg_nodes(n, lambda)?;
        let norms = norm_lambda_bar(lambda, n)?;
        let christoffel = christoffel(&nodes, &norms);
        let fingerprint = fingerprint(n, lambda, &nodes);
        Ok(Self { spec: GridSpec { n, lambda }, nodes, christoffel, norms, fingerprint })
    }

    pub fn from_spec(spec: GridSpec) -> Result<Self> {
        Self::new(spec.n, spec.lambda)
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn lambda(&self) -> f64 {
        self.spec.lambda
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn christoffel(&self) -> &[f64] {
        &self.christoffel
    }

    pub fn norms(&self) -> &NormConstants {
        &self.norms
    }

    pub fn id(&self) -> GridId {
        GridId { n: self.spec.n, lambda: self.spec.lambda, fingerprint: self.fingerprint }
    }
}

/// Interpolatory rule for the unweighted integral over `[0, 1]` sampled at
/// the SGG nodes of index λ_q. Exact for polynomials of degree `<= n_q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadRule {
    spec: QuadSpec,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    pub fn new(n_q: usize, lambda_q: f64) -> Result<Self> {
        sgirv_weights(n_q, lambda_q)
    }

    pub fn from_spec(spec: QuadSpec) -> Result<Self> {
        sgirv_weights(spec.n_q, spec.lambda_q)
    }

    pub fn spec(&self) -> QuadSpec {
        self.spec
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ_q w_q g(y_q)`.
    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&y, w)| w * g(y)).sum()
    }
}

/// Builds the integration row vector: each cardinal function at the λ_q
/// nodes is expanded in the SG basis and integrated mode by mode,
/// `w_q = ϖ_q Σ_j Ĝ_j(y_q) μ_j / λ̄_j`.
pub fn sgirv_weights(n_q: usize, lambda_q: f64) -> Result<QuadRule> {
    if n_q > MAX_QUAD_DEGREE {
        return Err(Error::QuadTooLarge { n_q, max: MAX_QUAD_DEGREE });
    }
    let nodes = sgg_nodes(n_q, lambda_q)?;
    let norms = norm_lambda_bar(lambda_q, n_q)?;
    let cw = christoffel(&nodes, &norms);
    let mu = unweighted_moments(lambda_q, n_q);
    let mut g = vec![0.0; n_q + 1];
    let weights = nodes
        .iter()
        .zip(&cw)
        .map(|(&y, &c)| {
            fill_x(lambda_q, 2.0 * y - 1.0, &mut g);
            let s: f64 = (0..=n_q).filter(|j| mu[*j] != 0.0).map(|j| g[j] * mu[j] / norms.lambda_bar[j]).sum();
            c * s
        })
        .collect();
    Ok(QuadRule { spec: QuadSpec { n_q, lambda_q }, nodes, weights })
}
