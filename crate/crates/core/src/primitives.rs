//! Small fixed-size vector and matrix types shared by every stage of the solver.

use std::ops::{Index, IndexMut, Mul, Sub};

use thiserror::Error;

/// Unit roundoff of binary64 (`2^-52`).
pub const EPS: f64 = f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
}

/// A real symmetric 3x3 matrix stored as its upper triangle.
///
/// Mirror entries are never stored twice, so the materialized matrix is
/// exactly symmetric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMat3 {
    a11: f64,
    a12: f64,
    a13: f64,
    a22: f64,
    a23: f64,
    a33: f64,
}

impl SymMat3 {
    /// Builds a matrix from its upper triangle, rejecting NaN and infinities.
    pub fn new(
        a11: f64,
        a12: f64,
        a13: f64,
        a22: f64,
        a23: f64,
        a33: f64,
    ) -> Result<Self, MatrixError> {
        Self::from_upper([a11, a12, a13, a22, a23, a33])
    }

    /// Upper triangle in row order: `a11 a12 a13 a22 a23 a33`.
    pub fn from_upper(entries: [f64; 6]) -> Result<Self, MatrixError> {
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(MatrixError::NonFinite { index, value });
        }
        let [a11, a12, a13, a22, a23, a33] = entries;
        Ok(Self {
            a11,
            a12,
            a13,
            a22,
            a23,
            a33,
        })
    }

    pub fn diag(d1: f64, d2: f64, d3: f64) -> Result<Self, MatrixError> {
        Self::new(d1, 0.0, 0.0, d2, 0.0, d3)
    }

    pub fn upper(&self) -> [f64; 6] {
        [self.a11, self.a12, self.a13, self.a22, self.a23, self.a33]
    }

    pub fn a11(&self) -> f64 {
        self.a11
    }
    pub fn a12(&self) -> f64 {
        self.a12
    }
    pub fn a13(&self) -> f64 {
        self.a13
    }
    pub fn a22(&self) -> f64 {
        self.a22
    }
    pub fn a23(&self) -> f64 {
        self.a23
    }
    pub fn a33(&self) -> f64 {
        self.a33
    }

    pub fn to_mat3(&self) -> Mat3 {
        Mat3::new([
            [self.a11, self.a12, self.a13],
            [self.a12, self.a22, self.a23],
            [self.a13, self.a23, self.a33],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22 + self.a33
    }

    pub fn max_abs(&self) -> f64 {
        self.upper().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn frob_norm(&self) -> f64 {
        frob_norm(&self.to_mat3())
    }

    /// Multiplies every entry by `factor`. Finite results are the caller's
    /// responsibility; power-of-two factors are exact.
    pub(crate) fn scaled(&self, factor: f64) -> Self {
        let u = self.upper().map(|v| v * factor);
        Self {
            a11: u[0],
            a12: u[1],
            a13: u[2],
            a22: u[3],
            a23: u[4],
            a33: u[5],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        cross(self, other)
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Euclidean length, scaled by the largest component to avoid overflow
    /// and underflow.
    pub fn norm(self) -> f64 {
        let m = self.max_abs();
        if m == 0.0 || !m.is_finite() {
            return m;
        }
        let s = self.scale(1.0 / m);
        m * s.dot(s).sqrt()
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    /// Unit vector in the same direction; the zero vector is returned unchanged.
    pub fn normalized(self) -> Self {
        let m = self.max_abs();
        if m == 0.0 {
            return self;
        }
        let s = self.scale(1.0 / m);
        s.scale(1.0 / s.dot(s).sqrt())
    }

    /// Flips the sign so that the largest-magnitude component is positive.
    /// Ties go to the earliest component.
    pub fn with_canonical_sign(self) -> Self {
        let a = self.to_array();
        let mut k = 0;
        for i in 1..3 {
            if a[i].abs() > a[k].abs() {
                k = i;
            }
        }
        if a[k] < 0.0 {
            self.scale(-1.0)
        } else {
            self
        }
    }
}

/// Cross product `u x v`.
pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    Vec3::new(
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
        u.x * v.y - u.y * v.x,
    )
}

/// `sqrt(a^2 + b^2)` without intermediate overflow or underflow.
pub fn hypot2(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

/// Dense 3x3 matrix, row major. Rotations, eigenvector matrices and
/// permutations all use this type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    m: [[f64; 3]; 3],
}

impl Mat3 {
    pub const fn new(m: [[f64; 3]; 3]) -> Self {
        Self { m }
    }

    pub const fn identity() -> Self {
        Self::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub const fn zeros() -> Self {
        Self::new([[0.0; 3]; 3])
    }

    pub fn diag(d: [f64; 3]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.m[i][i] = v;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: [Vec3; 3]) -> Self {
        let mut m = Self::zeros();
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.to_array().into_iter().enumerate() {
                m.m[i][j] = v;
            }
        }
        m
    }

    /// Rotation acting on coordinates `(p, q)` as `[[c, s], [-s, c]]`.
    pub fn plane_rotation(p: usize, q: usize, c: f64, s: f64) -> Self {
        let mut m = Self::identity();
        m.m[p][p] = c;
        m.m[p][q] = s;
        m.m[q][p] = -s;
        m.m[q][q] = c;
        m
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        self.m
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3::new(self.m[0][j], self.m[1][j], self.m[2][j])
    }

    pub fn columns(&self) -> [Vec3; 3] {
        [self.column(0), self.column(1), self.column(2)]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros();
        for i in 0..3 {
            for j in 0..3 {
                t.m[i][j] = self.m[j][i];
            }
        }
        t
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        let a = v.to_array();
        let r = |i: usize| self.m[i][0] * a[0] + self.m[i][1] * a[1] + self.m[i][2] * a[2];
        Vec3::new(r(0), r(1), r(2))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut d = *self;
        for i in 0..3 {
            for j in 0..3 {
                d.m[i][j] -= other.m[i][j];
            }
        }
        d
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_finite())
    }
}

impl Sub for Vec3 {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }
}

impl Index<(usize, usize)> for Mat3 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.m[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.m[i][j]
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut p = Mat3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                p.m[i][j] = (0..3).map(|k| self.m[i][k] * rhs.m[k][j]).sum();
            }
        }
        p
    }
}

/// Frobenius norm, computed on entries scaled by the largest magnitude so
/// that heavy-tailed inputs cannot overflow the sum of squares.
pub fn frob_norm(m: &Mat3) -> f64 {
    let scale = m.max_abs();
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 =
        m.m.iter()
            .flatten()
            .map(|v| (v / scale) * (v / scale))
            .sum();
    scale * sum.sqrt()
}

/// Eigenvalues in descending order with matching eigenvector columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomp3 {
    pub values: [f64; 3],
    pub vectors: Mat3,
}

impl EigenDecomp3 {
    /// Sorts eigenpairs so that `values` is descending; columns follow.
    pub fn sorted(values: [f64; 3], vectors: Mat3) -> Self {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        let cols = vectors.columns();
        Self {
            values: order.map(|k| values[k]),
            vectors: Mat3::from_columns(order.map(|k| cols[k])),
        }
    }

    /// `||I - V^T V||_F`
    pub fn orthogonality_error(&self) -> f64 {
        frob_norm(&Mat3::identity().sub(&(self.vectors.transpose() * self.vectors)))
    }

    /// `||T V - V diag(values)||_F`
    pub fn residual(&self, t: &SymMat3) -> f64 {
        let tv = t.to_mat3() * self.vectors;
        let vl = self.vectors * Mat3::diag(self.values);
        frob_norm(&tv.sub(&vl))
    }
}
