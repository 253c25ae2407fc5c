//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Three operations are exported: a single solve with diagnostics, a trace of
//! both zero finders on the spectral function, and a small accuracy sweep
//! against the Jacobi baseline. Each has a native counterpart returning
//! `Result<_, String>` so the logic is testable off the browser.

use wasm_bindgen::prelude::*;

use arrow3::assembly::{shift_left, shift_right, solve_traced, SolvePath, SolverConfig};
use arrow3::deflation::{numerical_deflation, DeflationOutcome};
use arrow3::harness::{metrics, run_comparison, sorted_differences, Distribution, RunConfig};
use arrow3::oracle::oracle_eig3;
use arrow3::secular::{bg_start, rightmost_bg, rightmost_newton, spectral_f, Method, ReducedArrow};
use arrow3::SymMat3;

/// Largest sweep the page may request; keeps the UI responsive.
pub const MAX_SWEEP: u32 = 200_000;

fn parse_method(name: &str) -> Result<Method, String> {
    match name {
        "bg" => Ok(Method::Rational),
        "newton" => Ok(Method::Newton),
        _ => Err(format!("unknown method '{name}' (expected bg or newton)")),
    }
}

fn parse_matrix(upper: &[f64]) -> Result<SymMat3, String> {
    let upper: [f64; 6] = upper.try_into().map_err(|_| {
        format!(
            "expected 6 entries a11 a12 a13 a22 a23 a33, got {}",
            upper.len()
        )
    })?;
    SymMat3::from_upper(upper).map_err(|e| e.to_string())
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Solution {
    values: Vec<f64>,
    vectors: Vec<f64>,
    oracle: Vec<f64>,
    arrow: Vec<f64>,
    path: String,
    orth: f64,
    resid: f64,
    iterations: Vec<u32>,
}

#[wasm_bindgen]
impl Solution {
    /// Eigenvalues, descending.
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }
    /// Eigenvector matrix, row-major; column j belongs to `values[j]`.
    #[wasm_bindgen(getter)]
    pub fn vectors(&self) -> Vec<f64> {
        self.vectors.clone()
    }
    /// Reference eigenvalues from tight-threshold Jacobi.
    #[wasm_bindgen(getter)]
    pub fn oracle(&self) -> Vec<f64> {
        self.oracle.clone()
    }
    /// `[alpha1, alpha2, beta1, beta2, gamma]` of the power-of-two scaled input.
    #[wasm_bindgen(getter)]
    pub fn arrow(&self) -> Vec<f64> {
        self.arrow.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn path(&self) -> String {
        self.path.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn orth(&self) -> f64 {
        self.orth
    }
    #[wasm_bindgen(getter)]
    pub fn resid(&self) -> f64 {
        self.resid
    }
    /// Zero-finder iterations for `[mu, nu]`; empty unless the secular path ran.
    #[wasm_bindgen(getter)]
    pub fn iterations(&self) -> Vec<u32> {
        self.iterations.clone()
    }
}

pub fn solve_native(upper: &[f64], method: &str) -> Result<Solution, String> {
    let s = parse_matrix(upper)?;
    let cfg = SolverConfig::with_method(parse_method(method)?);
    let trace = solve_traced(&s, &cfg).map_err(|e| e.to_string())?;
    let oracle = oracle_eig3(&s).map_err(|e| e.to_string())?;
    let m = metrics(&s, &trace.decomp);
    let (path, iterations) = match &trace.path {
        SolvePath::Diagonal => ("diagonal", vec![]),
        SolvePath::Deflated => ("deflated", vec![]),
        SolvePath::ForcedDeflation => ("forced deflation", vec![]),
        SolvePath::Secular(sol) => (
            "zero finder",
            vec![sol.right.iterations as u32, sol.left.iterations as u32],
        ),
    };
    let a = trace.arrow;
    Ok(Solution {
        values: trace.decomp.values.to_vec(),
        vectors: trace.decomp.vectors.rows().concat(),
        oracle: oracle.decomp.values.to_vec(),
        arrow: vec![a.alpha1, a.alpha2, a.beta1, a.beta2, a.gamma],
        path: path.to_string(),
        orth: m.orth,
        resid: m.resid,
        iterations,
    })
}

/// Solves the symmetric matrix with upper triangle `a11 a12 a13 a22 a23 a33`.
#[wasm_bindgen]
pub fn solve(upper: &[f64], method: &str) -> Result<Solution, JsError> {
    solve_native(upper, method).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct ZeroTrace {
    xs: Vec<f64>,
    fs: Vec<f64>,
    bg: Vec<f64>,
    newton: Vec<f64>,
    root: f64,
}

#[wasm_bindgen]
impl ZeroTrace {
    /// Sample abscissae on `(0, x_max]`.
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }
    /// Spectral function at `xs`.
    #[wasm_bindgen(getter)]
    pub fn fs(&self) -> Vec<f64> {
        self.fs.clone()
    }
    /// Iterates of the rational method, starting point first.
    #[wasm_bindgen(getter)]
    pub fn bg(&self) -> Vec<f64> {
        self.bg.clone()
    }
    /// Newton iterates, starting point first.
    #[wasm_bindgen(getter)]
    pub fn newton(&self) -> Vec<f64> {
        self.newton.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn root(&self) -> f64 {
        self.root
    }
}

pub fn zero_trace_native(upper: &[f64], side: &str, samples: u32) -> Result<ZeroTrace, String> {
    let s = parse_matrix(upper)?;
    let cfg = SolverConfig::default();
    let arrow = solve_traced(&s, &cfg).map_err(|e| e.to_string())?.arrow;
    let DeflationOutcome::NoDeflation(a) = numerical_deflation(&arrow, cfg.c_deflate) else {
        return Err("the arrow deflates; no zero finding is needed for this matrix".into());
    };
    let reduced: ReducedArrow = match side {
        "right" => shift_right(&a),
        "left" => shift_left(&a),
        _ => return Err(format!("unknown side '{side}' (expected right or left)")),
    }
    .map_err(|e| e.to_string())?;

    let bg = rightmost_bg(&reduced, cfg.c_term, Method::Rational.default_max_iter())
        .map_err(|e| e.to_string())?;
    let newton = rightmost_newton(&reduced, cfg.c_term, Method::Newton.default_max_iter())
        .map_err(|e| e.to_string())?;
    let x_max = 1.25 * bg_start(&reduced);
    let n = samples.clamp(2, 4096);
    let (xs, fs) = (1..=n)
        .map(|i| {
            let x = x_max * f64::from(i) / f64::from(n);
            (x, spectral_f(x, &reduced).unwrap_or(f64::NAN))
        })
        .unzip();
    Ok(ZeroTrace {
        xs,
        fs,
        bg: bg.history,
        newton: newton.history,
        root: bg.root,
    })
}

/// Samples the shifted spectral function for the largest (`right`) or
/// smallest (`left`) eigenvalue and records both zero finders' iterates.
#[wasm_bindgen(js_name = zeroTrace)]
pub fn zero_trace(upper: &[f64], side: &str, samples: u32) -> Result<ZeroTrace, JsError> {
    zero_trace_native(upper, side, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Sweep {
    orth: Vec<f64>,
    resid: Vec<f64>,
    stats: Vec<f64>,
    better: Vec<f64>,
}

#[wasm_bindgen]
impl Sweep {
    /// Sorted `baseline - arrow` orthogonality differences.
    #[wasm_bindgen(getter)]
    pub fn orth(&self) -> Vec<f64> {
        self.orth.clone()
    }
    /// Sorted `baseline - arrow` residual differences.
    #[wasm_bindgen(getter)]
    pub fn resid(&self) -> Vec<f64> {
        self.resid.clone()
    }
    /// Max and median of orth arrow, orth baseline, resid arrow, resid baseline.
    #[wasm_bindgen(getter)]
    pub fn stats(&self) -> Vec<f64> {
        self.stats.clone()
    }
    /// Fraction of trials where the arrow solver is strictly better, `[orth, resid]`.
    #[wasm_bindgen(getter)]
    pub fn better(&self) -> Vec<f64> {
        self.better.clone()
    }
}

pub fn sweep_native(dist: &str, n: u32, seed: u32, method: &str) -> Result<Sweep, String> {
    let dist: Distribution = dist.parse()?;
    if n == 0 || n > MAX_SWEEP {
        return Err(format!("trial count must be in 1..={MAX_SWEEP}"));
    }
    let cfg = RunConfig::new(dist, u64::from(n), u64::from(seed), parse_method(method)?);
    let cmp = run_comparison(&cfg).map_err(|e| e.to_string())?;
    let diffs = sorted_differences(&cmp.records).map_err(|e| e.to_string())?;
    let s = cmp.summary;
    let total = cmp.records.len() as f64;
    Ok(Sweep {
        orth: diffs.orth,
        resid: diffs.resid,
        stats: [s.orth_main, s.orth_base, s.resid_main, s.resid_base]
            .iter()
            .flat_map(|t| [t.max, t.median])
            .collect(),
        better: vec![
            s.main_better_orth as f64 / total,
            s.main_better_resid as f64 / total,
        ],
    })
}

/// Runs `n` random trials from `uniform`, `normal` or `chisq` and compares
/// the arrow solver with the Jacobi baseline.
#[wasm_bindgen]
pub fn sweep(dist: &str, n: u32, seed: u32, method: &str) -> Result<Sweep, JsError> {
    sweep_native(dist, n, seed, method).map_err(|e| JsError::new(&e))
}
