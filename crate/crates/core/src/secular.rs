//! Rightmost zero of the spectral function of a fully reduced arrow
//!
//! ```text
//! [ 0       0       beta1 ]
//! [ 0     -abar     beta2 ]
//! [ beta1   beta2   gbar  ]
//! ```
//!
//! The spectral function
//!
//! ```text
//! f(x) = x - gbar - beta1^2 / x - beta2^2 / (x + abar)
//! ```
//!
//! has exactly one zero in `(0, inf)`, and on that interval `f' >= 1` is
//! strictly decreasing. Two finders exploit this:
//!
//! * a rational iteration that matches `x - sigma - w1/x` to `f` through
//!   second order, starting from the right and converging cubically and
//!   monotonically from above;
//! * Newton's method, started from the left where concavity makes the
//!   iteration monotone from below.

use thiserror::Error;

use crate::primitives::EPS;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SecularError {
    #[error("fully reduced arrow requires abar > 0 and nonzero finite couplings (abar={abar}, beta1={beta1}, beta2={beta2}, gbar={gbar})")]
    InvalidArrow {
        abar: f64,
        beta1: f64,
        beta2: f64,
        gbar: f64,
    },
    #[error("spectral function evaluated at a pole (x={0})")]
    Pole(f64),
    #[error("zero finder did not terminate within {0} iterations")]
    IterationLimitExceeded(usize),
    #[error("non-finite intermediate in zero finder step at x={0}")]
    NonFinite(f64),
}

/// Which zero finder to use for the rightmost root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    #[default]
    Rational,
    Newton,
}

impl Method {
    pub fn default_max_iter(self) -> usize {
        match self {
            Method::Rational => 20,
            Method::Newton => 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedArrow {
    abar: f64,
    beta1: f64,
    beta2: f64,
    gbar: f64,
}

impl ReducedArrow {
    pub fn new(abar: f64, beta1: f64, beta2: f64, gbar: f64) -> Result<Self, SecularError> {
        let finite = [abar, beta1, beta2, gbar].iter().all(|v| v.is_finite());
        if !finite || abar <= 0.0 || beta1 == 0.0 || beta2 == 0.0 {
            return Err(SecularError::InvalidArrow {
                abar,
                beta1,
                beta2,
                gbar,
            });
        }
        Ok(Self {
            abar,
            beta1,
            beta2,
            gbar,
        })
    }

    pub fn abar(&self) -> f64 {
        self.abar
    }
    pub fn beta1(&self) -> f64 {
        self.beta1
    }
    pub fn beta2(&self) -> f64 {
        self.beta2
    }
    pub fn gbar(&self) -> f64 {
        self.gbar
    }

    #[inline]
    pub(crate) fn f(&self, x: f64) -> f64 {
        x - self.gbar - self.beta1 * self.beta1 / x - self.beta2 * self.beta2 / (x + self.abar)
    }

    #[inline]
    pub(crate) fn fp(&self, x: f64) -> f64 {
        let r1 = self.beta1 / x;
        let r2 = self.beta2 / (x + self.abar);
        1.0 + r1 * r1 + r2 * r2
    }

    #[inline]
    pub(crate) fn fpp(&self, x: f64) -> f64 {
        let y = x + self.abar;
        -2.0 * (self.beta1 * self.beta1 / (x * x * x) + self.beta2 * self.beta2 / (y * y * y))
    }

    fn check_pole(&self, x: f64) -> Result<(), SecularError> {
        if x == 0.0 || x + self.abar == 0.0 {
            Err(SecularError::Pole(x))
        } else {
            Ok(())
        }
    }
}

pub fn spectral_f(x: f64, a: &ReducedArrow) -> Result<f64, SecularError> {
    a.check_pole(x)?;
    Ok(a.f(x))
}

pub fn spectral_fp(x: f64, a: &ReducedArrow) -> Result<f64, SecularError> {
    a.check_pole(x)?;
    Ok(a.fp(x))
}

pub fn spectral_fpp(x: f64, a: &ReducedArrow) -> Result<f64, SecularError> {
    a.check_pole(x)?;
    Ok(a.fpp(x))
}

/// Positive root of `x^2 - g x - w = 0` for `w > 0`, without cancellation.
fn positive_quadratic_root(g: f64, w: f64) -> f64 {
    let half = 0.5 * g;
    let disc = half.hypot(w.sqrt());
    if half >= 0.0 {
        half + disc
    } else {
        w / (disc - half)
    }
}

/// Zero of the limiting interpolant `x - gbar - (beta1^2 + beta2^2)/x`.
/// Lies at or to the right of the root.
pub fn bg_start(a: &ReducedArrow) -> f64 {
    let w = a.beta1.hypot(a.beta2);
    positive_quadratic_root(a.gbar, w * w)
}

/// Zero of `x - gbar - beta1^2/x`, where `f = -beta2^2/(x + abar) < 0`.
/// Lies to the left of the root.
pub fn newton_start(a: &ReducedArrow) -> f64 {
    positive_quadratic_root(a.gbar, a.beta1 * a.beta1)
}

/// Coefficients of `phi(x) = omega0 x - sigma - omega1 / x`, which agrees
/// with `f` through the second derivative at the interpolation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BgCoefficients {
    pub sigma: f64,
    pub omega0: f64,
    pub omega1: f64,
}

pub fn bg_coefficients(xj: f64, a: &ReducedArrow) -> BgCoefficients {
    let y = xj + a.abar;
    let ratio = xj / y;
    let b2 = a.beta2 * a.beta2;
    let omega1 = a.beta1 * a.beta1 + b2 * ratio * ratio * ratio;
    let omega0 = 1.0 + b2 * a.abar / (y * y * y);
    let sigma = omega0 * xj - omega1 / xj - a.f(xj);
    BgCoefficients {
        sigma,
        omega0,
        omega1,
    }
}

/// One rational step from `xj`, which must lie to the right of the root.
///
/// Solves `a D^2 + b D - f = 0` for the increment `D = xj - x_{j+1}` with
/// `a = -omega0/xj` and `b = f'(xj) + f(xj)/xj`.
pub fn bg_step(xj: f64, a: &ReducedArrow) -> Result<f64, SecularError> {
    a.check_pole(xj)?;
    let f = a.f(xj);
    let fp = a.fp(xj);
    let omega0 = bg_coefficients(xj, a).omega0;
    let qa = -omega0 / xj;
    let qb = fp + f / xj;
    let two_f_b = 2.0 * f / qb;
    // clamp rounding below zero; the exact discriminant is nonnegative
    let disc = (1.0 + (2.0 * qa / qb) * two_f_b).max(0.0);
    let delta = two_f_b / (1.0 + disc.sqrt());
    let mut next = xj - delta;
    if next < 0.5 * xj {
        // xj - delta cancels; take the positive zero of the interpolant directly
        let k = bg_coefficients(xj, a);
        next = positive_quadratic_root(k.sigma / k.omega0, k.omega1 / k.omega0);
    }
    if !next.is_finite() {
        return Err(SecularError::NonFinite(xj));
    }
    Ok(next)
}

/// Root found by one of the zero finders, with the iterate history
/// (starting point first).
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroFinderResult {
    pub root: f64,
    pub iterations: usize,
    pub history: Vec<f64>,
}

fn iterate(
    start: f64,
    max_iter: usize,
    converged: impl Fn(f64) -> bool,
    step: impl Fn(f64) -> Result<f64, SecularError>,
    advances: impl Fn(f64, f64) -> bool,
) -> Result<ZeroFinderResult, SecularError> {
    if !start.is_finite() || start < 0.0 {
        return Err(SecularError::NonFinite(start));
    }
    if start == 0.0 {
        // couplings underflowed; the caller decides how to deflate
        return Ok(ZeroFinderResult {
            root: 0.0,
            iterations: 0,
            history: vec![0.0],
        });
    }
    let mut x = start;
    let mut history = vec![x];
    let mut iterations = 0;
    loop {
        if converged(x) {
            break;
        }
        if iterations == max_iter {
            return Err(SecularError::IterationLimitExceeded(max_iter));
        }
        let next = step(x)?;
        iterations += 1;
        // Monotone in exact arithmetic; a step that fails to advance means
        // rounding has reached the root.
        if !advances(x, next) {
            break;
        }
        x = next;
        history.push(x);
    }
    Ok(ZeroFinderResult {
        root: x,
        iterations,
        history,
    })
}

/// Rightmost root by the rational iteration, stopping once
/// `f(x)/f'(x) < c eps x`.
pub fn rightmost_bg(
    a: &ReducedArrow,
    c: f64,
    max_iter: usize,
) -> Result<ZeroFinderResult, SecularError> {
    iterate(
        bg_start(a),
        max_iter,
        |x| a.f(x) / a.fp(x) < c * EPS * x,
        |x| bg_step(x, a),
        |x, next| next < x && next > 0.0,
    )
}

/// Rightmost root by Newton's method from the left, stopping once
/// `|f(x)| < c eps x`.
pub fn rightmost_newton(
    a: &ReducedArrow,
    c: f64,
    max_iter: usize,
) -> Result<ZeroFinderResult, SecularError> {
    iterate(
        newton_start(a),
        max_iter,
        |x| a.f(x).abs() < c * EPS * x,
        |x| {
            let next = x - a.f(x) / a.fp(x);
            if next.is_finite() {
                Ok(next)
            } else {
                Err(SecularError::NonFinite(x))
            }
        },
        |x, next| next > x,
    )
}

pub fn rightmost(
    a: &ReducedArrow,
    method: Method,
    c: f64,
    max_iter: usize,
) -> Result<ZeroFinderResult, SecularError> {
    match method {
        Method::Rational => rightmost_bg(a, c, max_iter),
        Method::Newton => rightmost_newton(a, c, max_iter),
    }
}
