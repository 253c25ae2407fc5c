//! Eigen-decomposition of 3x3 real symmetric matrices.
//!
//! The solver rotates the leading 2x2 block to diagonal form, which leaves an
//! ordered arrow matrix. Negligible couplings are deflated; otherwise the
//! extreme eigenvalues are the positive zeros of two shifted spectral
//! functions, found by a cubically convergent rational iteration (or
//! Newton's method), and all three eigenvectors follow in closed form.
//!
//! ```
//! use arrow3::{solve, SolverConfig, SymMat3};
//!
//! let s = SymMat3::new(2.0, 1.0, 0.0, 2.0, 1.0, 2.0).unwrap();
//! let d = solve(&s, &SolverConfig::default()).unwrap();
//! assert!((d.values[0] - (2.0 + 2f64.sqrt())).abs() < 1e-14);
//! assert!(d.orthogonality_error() < 1e-14);
//! ```

pub mod assembly;
pub mod deflation;
pub mod harness;
pub mod oracle;
pub mod primitives;
pub mod reduction;
pub mod secular;

pub use assembly::{solve, solve_batch, solve_traced, SolveError, SolvePath, SolverConfig};
pub use primitives::{cross, frob_norm, hypot2, EigenDecomp3, Mat3, SymMat3, Vec3, EPS};
pub use reduction::ArrowMat3;
pub use secular::{Method, ReducedArrow};
