//! Reduction of a symmetric 3x3 matrix to an ordered arrow matrix.
//!
//! A single Jacobi rotation in the (1,2)-plane diagonalizes the leading 2x2
//! block. The result has the shape
//!
//! ```text
//! [ alpha1    0     beta1 ]
//! [   0     alpha2  beta2 ]
//! [ beta1   beta2   gamma ]
//! ```
//!
//! with `alpha1 >= alpha2`.

use crate::primitives::{Mat3, SymMat3};

/// Ordered symmetric arrow matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrowMat3 {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub gamma: f64,
}

impl ArrowMat3 {
    pub fn new(alpha1: f64, alpha2: f64, beta1: f64, beta2: f64, gamma: f64) -> Self {
        Self {
            alpha1,
            alpha2,
            beta1,
            beta2,
            gamma,
        }
    }

    pub fn is_ordered(&self) -> bool {
        self.alpha1 >= self.alpha2
    }

    /// Strictly ordered shaft with both couplings nonzero.
    pub fn is_reduced(&self) -> bool {
        self.alpha1 > self.alpha2 && self.beta1 != 0.0 && self.beta2 != 0.0
    }

    pub fn abar(&self) -> f64 {
        self.alpha1 - self.alpha2
    }

    pub fn trace(&self) -> f64 {
        self.alpha1 + self.alpha2 + self.gamma
    }

    pub fn to_mat3(&self) -> Mat3 {
        Mat3::new([
            [self.alpha1, 0.0, self.beta1],
            [0.0, self.alpha2, self.beta2],
            [self.beta1, self.beta2, self.gamma],
        ])
    }

    pub fn to_symmat(&self) -> SymMat3 {
        SymMat3::from_upper([
            self.alpha1,
            0.0,
            self.beta1,
            self.alpha2,
            self.beta2,
            self.gamma,
        ])
        .expect("arrow entries are finite")
    }
}

/// Plane rotation `[[c, s], [-s, c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiRot {
    pub c: f64,
    pub s: f64,
}

impl JacobiRot {
    pub const IDENTITY: JacobiRot = JacobiRot { c: 1.0, s: 0.0 };

    /// Composes with a quarter turn, exchanging the two rotated axes.
    fn quarter_turn(self) -> Self {
        Self {
            c: -self.s,
            s: self.c,
        }
    }

    /// Embeds the rotation in the (1,2)-plane of a 3x3 matrix.
    pub fn to_mat3(self) -> Mat3 {
        Mat3::plane_rotation(0, 1, self.c, self.s)
    }
}

/// Jacobi rotation `R` with `R [[a11, a12], [a12, a22]] R^T = diag(d1, d2)`
/// and `d1 >= d2`.
pub fn jacobi_rotation(a11: f64, a12: f64, a22: f64) -> (JacobiRot, f64, f64) {
    let (rot, d1, d2) = if a12 == 0.0 {
        (JacobiRot::IDENTITY, a11, a22)
    } else {
        // Smaller root of t^2 + 2 tau t - 1 = 0; |t| <= 1 keeps the rotation
        // angle at most pi/4.
        let tau = (a22 - a11) / (2.0 * a12);
        let t = if tau.abs() > 1e150 {
            // 1 / (2 tau) without squaring tau
            0.5 / tau
        } else {
            tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
        };
        let t = if tau == 0.0 { 1.0 } else { t };
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = t * c;
        (JacobiRot { c, s: -s }, a11 - t * a12, a22 + t * a12)
    };
    if d1 < d2 {
        (rot.quarter_turn(), d2, d1)
    } else {
        (rot, d1, d2)
    }
}

/// Reduces `s` to an ordered arrow `Q S Q^T`, returning the arrow and `Q`.
pub fn reduce_to_arrow(s: &SymMat3) -> (ArrowMat3, Mat3) {
    let (rot, d1, d2) = jacobi_rotation(s.a11(), s.a12(), s.a22());
    let JacobiRot { c, s: sn } = rot;
    let arrow = ArrowMat3 {
        alpha1: d1,
        alpha2: d2,
        beta1: c * s.a13() + sn * s.a23(),
        beta2: -sn * s.a13() + c * s.a23(),
        gamma: s.a33(),
    };
    (arrow, rot.to_mat3())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::{frob_norm, EPS};
    use proptest::prelude::*;

    fn rotate2(rot: JacobiRot, a11: f64, a12: f64, a22: f64) -> [[f64; 2]; 2] {
        let r = [[rot.c, rot.s], [-rot.s, rot.c]];
        let a = [[a11, a12], [a12, a22]];
        let mut ra = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                ra[i][j] = r[i][0] * a[0][j] + r[i][1] * a[1][j];
            }
        }
        let mut out = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = ra[i][0] * r[j][0] + ra[i][1] * r[j][1];
            }
        }
        out
    }

    #[test]
    fn jacobi_diagonal_input_is_identity() {
        let (rot, d1, d2) = jacobi_rotation(5.0, 0.0, 2.0);
        assert_eq!(rot, JacobiRot::IDENTITY);
        assert_eq!((d1, d2), (5.0, 2.0));
    }

    #[test]
    fn jacobi_pure_off_diagonal() {
        let (rot, d1, d2) = jacobi_rotation(0.0, 1.0, 0.0);
        assert_eq!((d1, d2), (1.0, -1.0));
        assert!((rot.c.abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 2.0 * EPS);
        assert!((rot.s.abs() - std::f64::consts::FRAC_1_SQRT_2).abs() < 2.0 * EPS);
        let out = rotate2(rot, 0.0, 1.0, 0.0);
        assert!(out[0][1].abs() < 4.0 * EPS);
        assert!((out[0][0] - 1.0).abs() < 4.0 * EPS);
    }

    #[test]
    fn jacobi_equal_diagonal() {
        let (rot, d1, d2) = jacobi_rotation(1.0, 2.0, 1.0);
        assert_eq!((d1, d2), (3.0, -1.0));
        let out = rotate2(rot, 1.0, 2.0, 1.0);
        assert!(out[0][1].abs() < 8.0 * EPS);
        assert!((out[0][0] - 3.0).abs() < 8.0 * EPS);
        assert!((out[1][1] + 1.0).abs() < 8.0 * EPS);
    }

    #[test]
    fn jacobi_swaps_misordered_diagonal() {
        let (rot, d1, d2) = jacobi_rotation(1.0, 0.0, 2.0);
        assert_eq!((d1, d2), (2.0, 1.0));
        assert_eq!(rot, JacobiRot { c: -0.0, s: 1.0 });
    }

    #[test]
    fn reduce_diagonal_orders_shaft() {
        let s = SymMat3::diag(1.0, 2.0, 3.0).unwrap();
        let (a, q) = reduce_to_arrow(&s);
        assert_eq!((a.alpha1, a.alpha2, a.gamma), (2.0, 1.0, 3.0));
        assert_eq!((a.beta1, a.beta2), (0.0, 0.0));
        assert_eq!(q[(0, 1)].abs(), 1.0);
        assert_eq!(q[(0, 0)], 0.0);
    }

    #[test]
    fn reduce_principal_block() {
        let s = SymMat3::new(0.0, 1.0, 0.0, 0.0, 0.0, 5.0).unwrap();
        let (a, _) = reduce_to_arrow(&s);
        assert!((a.alpha1 - 1.0).abs() < 2.0 * EPS);
        assert!((a.alpha2 + 1.0).abs() < 2.0 * EPS);
        assert_eq!((a.beta1, a.beta2, a.gamma), (0.0, 0.0, 5.0));
    }

    fn sym() -> impl Strategy<Value = SymMat3> {
        proptest::array::uniform6(-10.0f64..10.0).prop_map(|u| SymMat3::from_upper(u).unwrap())
    }

    proptest! {
        #[test]
        fn reduction_reconstructs_similarity(s in sym()) {
            let (a, q) = reduce_to_arrow(&s);
            let norm = s.frob_norm();
            let qsq = q * s.to_mat3() * q.transpose();
            prop_assert!(a.is_ordered());
            let diff = qsq.sub(&a.to_mat3());
            prop_assert!(diff.max_abs() <= 16.0 * EPS * norm);
            prop_assert!(qsq[(0, 1)].abs() <= 8.0 * EPS * norm);
            let orth = frob_norm(&(q.transpose() * q).sub(&Mat3::identity()));
            prop_assert!(orth <= 8.0 * EPS);
        }

        #[test]
        fn jacobi_rotation_is_orthonormal(a11 in -1e3f64..1e3, a12 in -1e3f64..1e3, a22 in -1e3f64..1e3) {
            let (rot, d1, d2) = jacobi_rotation(a11, a12, a22);
            prop_assert!(d1 >= d2);
            prop_assert!((rot.c * rot.c + rot.s * rot.s - 1.0).abs() <= 4.0 * EPS);
            let out = rotate2(rot, a11, a12, a22);
            let scale = a11.abs().max(a12.abs()).max(a22.abs());
            prop_assert!(out[0][1].abs() <= 4.0 * EPS * scale);
        }
    }
}
