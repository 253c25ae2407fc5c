//! Eigen-decomposition of an ordered, reduced arrow and the full solver
//! pipeline for an arbitrary symmetric 3x3 matrix.
//!
//! For a reduced arrow `A` with `abar = alpha1 - alpha2 > 0`:
//!
//! * `A - alpha1 I` is a fully reduced arrow whose positive eigenvalue is
//!   `mu = lambda1 - alpha1`;
//! * `P (alpha2 I - A) P`, with `P` swapping the first two coordinates, is
//!   another one whose positive eigenvalue is `nu = alpha2 - lambda3`;
//! * `lambda2 = nu - mu + gamma` follows from the trace.
//!
//! The three eigenvectors then have closed forms in `mu`, `nu` and the arrow
//! entries that involve no subtraction apart from `abar` itself.

use thiserror::Error;

use crate::deflation::{force_deflation, numerical_deflation, resolve_deflated, DeflationOutcome};
use crate::primitives::{EigenDecomp3, Mat3, SymMat3, Vec3};
use crate::reduction::{reduce_to_arrow, ArrowMat3};
use crate::secular::{rightmost, Method, ReducedArrow, SecularError, ZeroFinderResult};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SolveError {
    #[error("arrow is not ordered and reduced: {0:?}")]
    NotReduced(ArrowMat3),
    #[error(transparent)]
    Secular(#[from] SecularError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Multiplier on `eps` in the deflation test.
    pub c_deflate: f64,
    /// Multiplier on `eps` in the zero finder termination tests.
    pub c_term: f64,
    /// Iteration cap; `None` uses the method's default (20 or 100).
    pub max_iter: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            method: Method::Rational,
            c_deflate: 8.0,
            c_term: 4.0,
            max_iter: None,
        }
    }
}

impl SolverConfig {
    pub fn with_method(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    fn iteration_cap(&self) -> usize {
        self.max_iter
            .unwrap_or_else(|| self.method.default_max_iter())
    }
}

/// `A - alpha1 I`, whose positive eigenvalue is `mu = lambda1 - alpha1`.
pub fn shift_right(a: &ArrowMat3) -> Result<ReducedArrow, SolveError> {
    if !a.is_reduced() {
        return Err(SolveError::NotReduced(*a));
    }
    Ok(ReducedArrow::new(
        a.abar(),
        a.beta1,
        a.beta2,
        a.gamma - a.alpha1,
    )?)
}

/// `P (alpha2 I - A) P`, whose positive eigenvalue is `nu = alpha2 - lambda3`.
pub fn shift_left(a: &ArrowMat3) -> Result<ReducedArrow, SolveError> {
    if !a.is_reduced() {
        return Err(SolveError::NotReduced(*a));
    }
    Ok(ReducedArrow::new(
        a.abar(),
        a.beta2,
        a.beta1,
        a.alpha2 - a.gamma,
    )?)
}

/// Unnormalized eigenvectors `(u1, u2, u3)` for `lambda1`, `lambda2`, `lambda3`.
pub fn eigenvectors_from_roots(a: &ArrowMat3, mu: f64, nu: f64) -> [Vec3; 3] {
    let abar = a.abar();
    let (b1, b2) = (a.beta1, a.beta2);
    let mu_a = mu + abar;
    let nu_a = nu + abar;
    let u1 = Vec3::new(b1 * mu_a, b2 * mu, mu * mu_a);
    let u2 = Vec3::new(-b2 * mu * nu_a, b1 * nu * mu_a, b1 * b2 * abar);
    let u3 = Vec3::new(b1 * nu, b2 * nu_a, -nu * nu_a);
    [u1, u2, u3]
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrowEigenSolution {
    pub mu: f64,
    pub nu: f64,
    /// `[alpha1 + mu, nu - mu + gamma, alpha2 - nu]`
    pub lambda: [f64; 3],
    /// Eigenvectors as produced by the closed forms.
    pub raw: [Vec3; 3],
    /// Unit-length eigenvectors.
    pub unit: [Vec3; 3],
    pub method: Method,
    pub right: ZeroFinderResult,
    pub left: ZeroFinderResult,
}

impl ArrowEigenSolution {
    pub fn decomp(&self) -> EigenDecomp3 {
        EigenDecomp3::sorted(self.lambda, Mat3::from_columns(self.unit))
    }
}

/// Solves an ordered, reduced arrow with two rightmost-root searches.
pub fn solve_arrow(
    a: &ArrowMat3,
    method: Method,
    c_term: f64,
    max_iter: usize,
) -> Result<ArrowEigenSolution, SolveError> {
    let right = rightmost(&shift_right(a)?, method, c_term, max_iter)?;
    let left = rightmost(&shift_left(a)?, method, c_term, max_iter)?;
    let (mu, nu) = (right.root, left.root);
    let raw = eigenvectors_from_roots(a, mu, nu);
    Ok(ArrowEigenSolution {
        mu,
        nu,
        lambda: [a.alpha1 + mu, nu - mu + a.gamma, a.alpha2 - nu],
        raw,
        unit: raw.map(Vec3::normalized),
        method,
        right,
        left,
    })
}

/// How the arrow stage of [`solve_traced`] was resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum SolvePath {
    Diagonal,
    Deflated,
    /// Zero finder underflowed to `mu = 0` or `nu = 0`; the deflating
    /// rotation was applied unconditionally.
    ForcedDeflation,
    Secular(Box<ArrowEigenSolution>),
}

/// Everything [`solve`] computes, for diagnostics and tests.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveTrace {
    /// Power of two the input was multiplied by before reduction.
    pub scale: f64,
    /// Arrow of the scaled input.
    pub arrow: ArrowMat3,
    pub rotation: Mat3,
    pub path: SolvePath,
    pub decomp: EigenDecomp3,
}

/// Eigen-decomposition of `s` with eigenvalues descending and unit
/// eigenvector columns whose largest component is positive.
pub fn solve(s: &SymMat3, cfg: &SolverConfig) -> Result<EigenDecomp3, SolveError> {
    solve_traced(s, cfg).map(|t| t.decomp)
}

pub fn solve_traced(s: &SymMat3, cfg: &SolverConfig) -> Result<SolveTrace, SolveError> {
    let max = s.max_abs();
    if max == 0.0 {
        let arrow = ArrowMat3::new(0.0, 0.0, 0.0, 0.0, 0.0);
        let decomp = EigenDecomp3 {
            values: [0.0; 3],
            vectors: Mat3::identity(),
        };
        return Ok(SolveTrace {
            scale: 1.0,
            arrow,
            rotation: Mat3::identity(),
            path: SolvePath::Diagonal,
            decomp,
        });
    }
    let exp = max.log2().floor() as i32;
    let scaled = s.scaled(pow2(-exp));

    let (arrow, q) = reduce_to_arrow(&scaled);
    let (path, local) = match numerical_deflation(&arrow, cfg.c_deflate) {
        DeflationOutcome::NoDeflation(a) => {
            let sol = solve_arrow(&a, cfg.method, cfg.c_term, cfg.iteration_cap())?;
            if sol.mu > 0.0 && sol.nu > 0.0 {
                let d = sol.decomp();
                (SolvePath::Secular(Box::new(sol)), d)
            } else {
                let d = resolve_deflated(&force_deflation(&a)).expect("forced deflation resolves");
                (SolvePath::ForcedDeflation, d)
            }
        }
        outcome @ DeflationOutcome::Diagonal { .. } => (
            SolvePath::Diagonal,
            resolve_deflated(&outcome).expect("diagonal resolves"),
        ),
        outcome @ DeflationOutcome::Deflated { .. } => (
            SolvePath::Deflated,
            resolve_deflated(&outcome).expect("deflation resolves"),
        ),
    };

    let back = q.transpose() * local.vectors;
    let cols = back.columns().map(Vec3::with_canonical_sign);
    let unscale = pow2(exp);
    let decomp = EigenDecomp3 {
        values: local.values.map(|v| v * unscale),
        vectors: Mat3::from_columns(cols),
    };
    Ok(SolveTrace {
        scale: pow2(-exp),
        arrow,
        rotation: q,
        path,
        decomp,
    })
}

/// Solves every matrix independently; runs in parallel with the `parallel`
/// feature.
pub fn solve_batch(mats: &[SymMat3], cfg: &SolverConfig) -> Vec<Result<EigenDecomp3, SolveError>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        mats.par_iter().map(|s| solve(s, cfg)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        mats.iter().map(|s| solve(s, cfg)).collect()
    }
}

/// `2^k` for any `k` whose result is a finite, nonzero binary64 value,
/// including the subnormal range.
fn pow2(k: i32) -> f64 {
    let half = k / 2;
    2f64.powi(half) * 2f64.powi(k - half)
}
