//! Independent reference solvers: cyclic Jacobi for the full 3x3 problem and
//! plain bisection for scalar roots.
//!
//! Nothing here shares code with the arrow pipeline beyond the matrix types,
//! so it can serve as ground truth in tests and as the comparison baseline in
//! the harness.

use thiserror::Error;

use crate::primitives::{EigenDecomp3, Mat3, SymMat3, EPS};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OracleError {
    #[error("Jacobi sweeps did not converge within {0} sweeps")]
    SweepLimitExceeded(usize),
    #[error("bracket [{lo}, {hi}] does not straddle a sign change")]
    InvalidBracket { lo: f64, hi: f64 },
}

pub const MAX_SWEEPS: usize = 30;

/// Stopping rule for the cyclic Jacobi sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// Every off-diagonal entry at most `eps * ||S||_F`.
    Tight,
    /// Off-diagonals at most `sqrt(eps) * ||S||_F`, then one more full sweep.
    Loose,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub decomp: EigenDecomp3,
    pub sweeps: usize,
}

/// Ground-truth eigen-decomposition by cyclic Jacobi at the tight threshold.
pub fn oracle_eig3(s: &SymMat3) -> Result<OracleResult, OracleError> {
    jacobi_eig3(s, Threshold::Tight)
}

/// The comparison baseline: cyclic Jacobi at the loose threshold.
pub fn baseline_eig3(s: &SymMat3) -> Result<OracleResult, OracleError> {
    jacobi_eig3(s, Threshold::Loose)
}

pub fn jacobi_eig3(s: &SymMat3, threshold: Threshold) -> Result<OracleResult, OracleError> {
    let norm = s.frob_norm();
    let tol = match threshold {
        Threshold::Tight => EPS * norm,
        Threshold::Loose => EPS.sqrt() * norm,
    };
    let mut a = s.to_mat3();
    let mut v = Mat3::identity();
    let off = |a: &Mat3| a[(0, 1)].abs().max(a[(0, 2)].abs()).max(a[(1, 2)].abs());

    let mut sweeps = 0;
    while off(&a) > tol {
        if sweeps == MAX_SWEEPS {
            return Err(OracleError::SweepLimitExceeded(MAX_SWEEPS));
        }
        sweep(&mut a, &mut v);
        sweeps += 1;
    }
    if threshold == Threshold::Loose && sweeps > 0 {
        sweep(&mut a, &mut v);
        sweeps += 1;
    }

    // Rayleigh quotients of the accumulated columns
    let sm = s.to_mat3();
    let cols = v.columns();
    let values = cols.map(|c| c.dot(sm.mul_vec(c)) / c.dot(c));
    Ok(OracleResult {
        decomp: EigenDecomp3::sorted(values, v),
        sweeps,
    })
}

fn sweep(a: &mut Mat3, v: &mut Mat3) {
    for (p, q) in [(0, 1), (0, 2), (1, 2)] {
        rotate(a, v, p, q);
    }
}

/// Annihilates `a[p][q]` with the classical two-sided Jacobi rotation and
/// accumulates it into `v`.
fn rotate(a: &mut Mat3, v: &mut Mat3, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
        sgn / (theta.abs() + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // A <- J^T A J with J = [[c, s], [-s, c]] on rows/cols (p, q)
    for k in 0..3 {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..3 {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;

    for k in 0..3 {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Root of `f` in `[lo, hi]` by bisection, stopping once the bracket is no
/// wider than `tol` (or cannot be split further).
pub fn bisect_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64, OracleError> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo);
    let fhi = f(hi);
    if lo.is_nan()
        || hi.is_nan()
        || lo >= hi
        || flo.is_nan()
        || fhi.is_nan()
        || flo.signum() == fhi.signum()
    {
        return Err(OracleError::InvalidBracket { lo, hi });
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    let lo_negative = flo < 0.0;
    loop {
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
