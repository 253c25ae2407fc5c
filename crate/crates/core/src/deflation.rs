//! Exact and numerical deflation of an ordered arrow.
//!
//! A Givens rotation `G` in the (1,2)-plane that takes `beta1` to zero turns
//! the arrow into a tridiagonal matrix whose (1,2) entry is
//! `(alpha1 - alpha2) beta1 beta2 / h^2`. When that entry is negligible against
//! `|alpha1 + alpha2|` it is dropped, the (1,1) entry is accepted as an
//! eigenvalue and the trailing 2x2 block is solved directly.

use thiserror::Error;

use crate::primitives::{hypot2, EigenDecomp3, Mat3, Vec3, EPS};
use crate::reduction::ArrowMat3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DeflationError {
    #[error("arrow did not deflate; it must be solved through the secular equation")]
    NotDeflated,
}

/// Trailing block `[[d, h], [h, g]]` left after a deflation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block2 {
    pub d: f64,
    pub h: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeflationOutcome {
    /// Both couplings vanish. Holds the diagonal `(alpha1, alpha2, gamma)`.
    Diagonal { diag: [f64; 3] },
    /// `accepted` is an eigenvalue with eigenvector `rotation^T e1`.
    Deflated {
        accepted: f64,
        block: Block2,
        rotation: Mat3,
    },
    /// Ordered and reduced: `alpha1 > alpha2`, `beta1 != 0`, `beta2 != 0`.
    NoDeflation(ArrowMat3),
}

/// Classifies an ordered arrow. `c` scales the deflation threshold.
pub fn numerical_deflation(a: &ArrowMat3, c: f64) -> DeflationOutcome {
    let h = hypot2(a.beta1, a.beta2);
    if h == 0.0 {
        return DeflationOutcome::Diagonal {
            diag: [a.alpha1, a.alpha2, a.gamma],
        };
    }
    let (w1, w2) = (a.beta1 / h, a.beta2 / h);
    let alpha = a.alpha1 - a.alpha2;
    // |alpha beta1 beta2| <= C eps |alpha1 + alpha2| h^2, divided through by h^2
    if (alpha * w1 * w2).abs() <= c * EPS * (a.alpha1 + a.alpha2).abs() {
        force_deflation(a)
    } else {
        DeflationOutcome::NoDeflation(*a)
    }
}

/// Applies the deflating rotation unconditionally, discarding the (1,2)
/// coupling it produces. Requires `h > 0`.
pub(crate) fn force_deflation(a: &ArrowMat3) -> DeflationOutcome {
    let h = hypot2(a.beta1, a.beta2);
    let (w1, w2) = (a.beta1 / h, a.beta2 / h);
    let rotation = Mat3::new([[w2, -w1, 0.0], [w1, w2, 0.0], [0.0, 0.0, 1.0]]);
    DeflationOutcome::Deflated {
        accepted: a.alpha1 * (w2 * w2) + a.alpha2 * (w1 * w1),
        block: Block2 {
            d: a.alpha1 * (w1 * w1) + a.alpha2 * (w2 * w2),
            h,
            g: a.gamma,
        },
        rotation,
    }
}

/// Eigen-decomposition of a symmetric 2x2 block.
///
/// `(c, s)` is the unit eigenvector for `lam_hi`; `(-s, c)` belongs to `lam_lo`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eig2 {
    pub lam_hi: f64,
    pub lam_lo: f64,
    pub c: f64,
    pub s: f64,
}

/// Eigenpairs of `[[d1, off], [off, d2]]`.
///
/// The eigenvalue of larger magnitude comes from the half-sum and the
/// discriminant with matching signs; the other is recovered from the
/// determinant divided by it, so neither suffers cancellation.
pub fn eig2_sym(d1: f64, off: f64, d2: f64) -> Eig2 {
    let sm = d1 + d2;
    let df = d1 - d2;
    let adf = df.abs();
    let tb = off + off;
    let ab = tb.abs();
    let (acmx, acmn) = if d1.abs() > d2.abs() {
        (d1, d2)
    } else {
        (d2, d1)
    };
    let rt = if adf > ab {
        adf * (1.0 + (ab / adf).powi(2)).sqrt()
    } else if adf < ab {
        ab * (1.0 + (adf / ab).powi(2)).sqrt()
    } else {
        ab * std::f64::consts::SQRT_2
    };

    // rt1: larger magnitude; rt2: smaller magnitude
    let (rt1, rt2, sgn1) = if sm < 0.0 {
        let rt1 = 0.5 * (sm - rt);
        (rt1, (acmx / rt1) * acmn - (off / rt1) * off, -1.0)
    } else if sm > 0.0 {
        let rt1 = 0.5 * (sm + rt);
        (rt1, (acmx / rt1) * acmn - (off / rt1) * off, 1.0)
    } else {
        (0.5 * rt, -0.5 * rt, 1.0)
    };

    let (cs, sgn2) = if df >= 0.0 {
        (df + rt, 1.0)
    } else {
        (df - rt, -1.0)
    };
    let (mut cs1, mut sn1) = if cs.abs() > ab {
        let ct = -tb / cs;
        let sn1 = 1.0 / (1.0 + ct * ct).sqrt();
        (ct * sn1, sn1)
    } else if ab == 0.0 {
        (1.0, 0.0)
    } else {
        let tn = -cs / tb;
        let cs1 = 1.0 / (1.0 + tn * tn).sqrt();
        (cs1, tn * cs1)
    };
    if sgn1 == sgn2 {
        let tn = cs1;
        cs1 = -sn1;
        sn1 = tn;
    }
    // (cs1, sn1) is the eigenvector of rt1, (-sn1, cs1) that of rt2
    if rt1 >= rt2 {
        Eig2 {
            lam_hi: rt1,
            lam_lo: rt2,
            c: cs1,
            s: sn1,
        }
    } else {
        Eig2 {
            lam_hi: rt2,
            lam_lo: rt1,
            c: -sn1,
            s: cs1,
        }
    }
}

/// Full eigen-decomposition of a deflated arrow, in arrow coordinates.
pub fn resolve_deflated(outcome: &DeflationOutcome) -> Result<EigenDecomp3, DeflationError> {
    match *outcome {
        DeflationOutcome::Diagonal { diag } => Ok(EigenDecomp3::sorted(diag, Mat3::identity())),
        DeflationOutcome::Deflated {
            accepted,
            block,
            rotation,
        } => {
            let e = eig2_sym(block.d, block.h, block.g);
            // eigenvectors of G A G^T, mapped back by G^T
            let gt = rotation.transpose();
            let cols = [
                gt.mul_vec(Vec3::new(1.0, 0.0, 0.0)),
                gt.mul_vec(Vec3::new(0.0, e.c, e.s)),
                gt.mul_vec(Vec3::new(0.0, -e.s, e.c)),
            ];
            Ok(EigenDecomp3::sorted(
                [accepted, e.lam_hi, e.lam_lo],
                Mat3::from_columns(cols),
            ))
        }
        DeflationOutcome::NoDeflation(_) => Err(DeflationError::NotDeflated),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::SymMat3;
    use proptest::prelude::*;

    #[test]
    fn beta_deflation_recovers_shaft_entry() {
        let a = ArrowMat3::new(3.0, 1.0, 0.0, 2.0, 0.0);
        match numerical_deflation(&a, 8.0) {
            DeflationOutcome::Deflated {
                accepted, block, ..
            } => {
                assert_eq!(accepted, 3.0);
                assert_eq!(
                    block,
                    Block2 {
                        d: 1.0,
                        h: 2.0,
                        g: 0.0
                    }
                );
            }
            other => panic!("expected deflation, got {other:?}"),
        }
    }

    #[test]
    fn zero_couplings_are_diagonal() {
        let a = ArrowMat3::new(1.0, 0.0, 0.0, 0.0, 7.0);
        let out = numerical_deflation(&a, 8.0);
        assert_eq!(
            out,
            DeflationOutcome::Diagonal {
                diag: [1.0, 0.0, 7.0]
            }
        );
        let d = resolve_deflated(&out).unwrap();
        assert_eq!(d.values, [7.0, 1.0, 0.0]);
        assert_eq!(d.vectors.column(0), Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(d.vectors.column(1), Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(d.vectors.column(2), Vec3::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn well_coupled_arrow_does_not_deflate() {
        let a = ArrowMat3::new(2.0, 1.0, 1.0, 1.0, 0.0);
        assert_eq!(
            numerical_deflation(&a, 8.0),
            DeflationOutcome::NoDeflation(a)
        );
    }

    #[test]
    fn combo_deflation_on_equal_shaft() {
        let a = ArrowMat3::new(2.0, 2.0, 1.0, 3.0, -1.0);
        let out = numerical_deflation(&a, 8.0);
        let DeflationOutcome::Deflated { accepted, .. } = out else {
            panic!("{out:?}")
        };
        assert!((accepted - 2.0).abs() < 4.0 * EPS);
        let d = resolve_deflated(&out).unwrap();
        let t = a.to_symmat();
        assert!(d.residual(&t) <= 64.0 * EPS * t.frob_norm());
        assert!(d.orthogonality_error() <= 64.0 * EPS);
    }

    #[test]
    fn opposite_shaft_only_deflates_exactly() {
        // alpha1 + alpha2 = 0 gives a zero threshold
        let a = ArrowMat3::new(1.0, -1.0, 1e-30, 1.0, 0.0);
        assert!(matches!(
            numerical_deflation(&a, 8.0),
            DeflationOutcome::NoDeflation(_)
        ));
        let a = ArrowMat3::new(1.0, -1.0, 0.0, 1.0, 0.0);
        assert!(matches!(
            numerical_deflation(&a, 8.0),
            DeflationOutcome::Deflated { .. }
        ));
    }

    #[test]
    fn resolve_rejects_undeflated() {
        let a = ArrowMat3::new(2.0, 1.0, 1.0, 1.0, 0.0);
        assert_eq!(
            resolve_deflated(&DeflationOutcome::NoDeflation(a)),
            Err(DeflationError::NotDeflated)
        );
    }

    #[test]
    fn deflated_spectrum_matches_quadratic_formula() {
        let a = ArrowMat3::new(3.0, 1.0, 0.0, 2.0, 0.0);
        let d = resolve_deflated(&numerical_deflation(&a, 8.0)).unwrap();
        // eigenvalues of [[1, 2], [2, 0]] are (1 +- sqrt(17)) / 2
        let r = 17.0_f64.sqrt();
        let expected = [3.0, (1.0 + r) / 2.0, (1.0 - r) / 2.0];
        for (got, want) in d.values.iter().zip(expected) {
            assert!(
                (got - want).abs() <= 4.0 * EPS * want.abs().max(1.0),
                "{got} vs {want}"
            );
        }
        let t = a.to_symmat();
        assert!(d.residual(&t) <= 64.0 * EPS * t.frob_norm());
    }

    #[test]
    fn eig2_examples() {
        let e = eig2_sym(5.0, 0.0, 2.0);
        assert_eq!((e.lam_hi, e.lam_lo), (5.0, 2.0));
        assert_eq!((e.c.abs(), e.s), (1.0, 0.0));
        let e = eig2_sym(0.0, 1.0, 0.0);
        assert_eq!((e.lam_hi, e.lam_lo), (1.0, -1.0));
        let e = eig2_sym(1.0, 2.0, 1.0);
        assert_eq!((e.lam_hi, e.lam_lo), (3.0, -1.0));
        let e = eig2_sym(2.0, 0.0, 5.0);
        assert_eq!((e.lam_hi, e.lam_lo), (5.0, 2.0));
        assert_eq!((e.c, e.s.abs()), (0.0, 1.0));
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![-1e3f64..1e3, -1e-3f64..1e-3, Just(0.0)]
    }

    fn ordered_arrow() -> impl Strategy<Value = ArrowMat3> {
        (finite(), finite(), finite(), finite(), finite())
            .prop_map(|(x, y, b1, b2, g)| ArrowMat3::new(x.max(y), x.min(y), b1, b2, g))
    }

    proptest! {
        #[test]
        fn eig2_diagonalizes(d1 in finite(), off in finite(), d2 in finite()) {
            let e = eig2_sym(d1, off, d2);
            prop_assert!(e.lam_hi >= e.lam_lo);
            prop_assert!((e.c * e.c + e.s * e.s - 1.0).abs() <= 4.0 * EPS);
            let scale = d1.abs().max(off.abs()).max(d2.abs());
            // residual of (c, s) against lam_hi
            let r1 = d1 * e.c + off * e.s - e.lam_hi * e.c;
            let r2 = off * e.c + d2 * e.s - e.lam_hi * e.s;
            prop_assert!(r1.abs().max(r2.abs()) <= 8.0 * EPS * scale);
        }

        #[test]
        fn outcome_invariants(a in ordered_arrow()) {
            match numerical_deflation(&a, 8.0) {
                DeflationOutcome::Diagonal { .. } => prop_assert!(a.beta1 == 0.0 && a.beta2 == 0.0),
                DeflationOutcome::Deflated { accepted, block, .. } => {
                    prop_assert!(block.h > 0.0);
                    let slack = 4.0 * EPS * a.alpha1.abs().max(a.alpha2.abs());
                    prop_assert!(accepted <= a.alpha1 + slack && accepted >= a.alpha2 - slack);
                }
                DeflationOutcome::NoDeflation(r) => prop_assert!(r.is_reduced()),
            }
        }

        #[test]
        fn triangle_inequality_relation(a in ordered_arrow()) {
            let (b1s, b2s) = (a.beta1 * a.beta1, a.beta2 * a.beta2);
            let lhs = (a.alpha1 + a.alpha2).abs() * (b1s + b2s);
            let rhs = (a.alpha1 * b2s + a.alpha2 * b1s).abs() + (a.alpha1 * b1s + a.alpha2 * b2s).abs();
            prop_assert!(lhs <= rhs * (1.0 + 8.0 * EPS));
        }

        #[test]
        fn deflated_paths_reconstruct(a in ordered_arrow()) {
            let out = numerical_deflation(&a, 8.0);
            if let Ok(d) = resolve_deflated(&out) {
                let t: SymMat3 = a.to_symmat();
                let n = t.frob_norm();
                prop_assert!(d.orthogonality_error() <= 64.0 * EPS);
                prop_assert!(d.residual(&t) <= 64.0 * EPS * n,
                    "residual {} norm {}", d.residual(&t), n);
            }
        }
    }
}
