//! SU(2) as unit quaternions.
//!
//! An element `w + x i + y j + z k` corresponds to the matrix
//! `[[w + i x, y + i z], [-y + i z, w - i x]]`, where
//! `i = diag(i, -i)`, `j = [[0, 1], [-1, 0]]`, `k = [[0, i], [i, 0]]`.
//! The trace is `2w`. The same three quaternions form the basis of su(2), and
//! su(2) vectors throughout the crate are coordinates `[c_i, c_j, c_k]`.

use std::ops::{Mul, Neg};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;

/// Coordinates of an su(2) element in the basis (i, j, k).
pub type Su2Vec<T> = [T; 3];

/// Unit quaternion representing an element of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[T; 4]", into = "[T; 4]")]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct Su2<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> From<[T; 4]> for Su2<T> {
    fn from(q: [T; 4]) -> Self {
        Su2::new(q[0], q[1], q[2], q[3])
    }
}

impl<T: Real> From<Su2<T>> for [T; 4] {
    fn from(q: Su2<T>) -> Self {
        [q.w, q.x, q.y, q.z]
    }
}

impl<T: Real> Su2<T> {
    /// Normalizing constructor. A zero quaternion maps to the identity.
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Self::raw(w, x, y, z).normalized()
    }

    fn raw(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn identity() -> Self {
        Self::raw(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::raw(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::raw(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::raw(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// `diag(e^{iφ}, e^{-iφ})`, i.e. `cos φ + i sin φ`.
    pub fn diagonal(phi: T) -> Self {
        Self::raw(phi.cos(), phi.sin(), T::zero(), T::zero())
    }

    /// `cos φ + sin φ · n` for a (not necessarily unit) axis `n`.
    pub fn from_angle_axis(phi: T, axis: Su2Vec<T>) -> Self {
        let n = norm3(axis);
        if n == T::zero() {
            return Self::diagonal(phi);
        }
        let s = phi.sin() / n;
        Self::new(phi.cos(), s * axis[0], s * axis[1], s * axis[2])
    }

    /// Exponential of an su(2) vector: `cos|ξ| + sin|ξ| ξ/|ξ|`.
    pub fn exp(xi: Su2Vec<T>) -> Self {
        let n = norm3(xi);
        if n == T::zero() {
            return Self::identity();
        }
        let s = n.sin() / n;
        Self::new(n.cos(), s * xi[0], s * xi[1], s * xi[2])
    }

    pub fn norm(&self) -> T {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        if n == T::zero() {
            return Self::identity();
        }
        Self::raw(self.w / n, self.x / n, self.y / n, self.z / n)
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.w, -self.x, -self.y, -self.z)
    }

    /// Quaternion product, renormalized.
    pub fn compose(&self, o: &Self) -> Self {
        Self::raw(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
        .normalized()
    }

    /// `c_self(h) = self · h · self⁻¹`.
    pub fn conjugate(&self, h: &Self) -> Self {
        self.compose(h).compose(&self.inverse())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        (0..n.unsigned_abs()).fold(Self::identity(), |acc, _| acc.compose(&base))
    }

    pub fn trace(&self) -> T {
        self.w + self.w
    }

    /// The angle `arccos(Tr/2) ∈ [0, π]`, a complete conjugation invariant.
    pub fn angle(&self) -> T {
        self.w.max(-T::one()).min(T::one()).acos()
    }

    pub fn vector_part(&self) -> Su2Vec<T> {
        [self.x, self.y, self.z]
    }

    /// Euclidean distance to another element in R⁴.
    pub fn distance(&self, o: &Self) -> T {
        let d = [self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z];
        d.iter().fold(T::zero(), |a, v| a + *v * *v).sqrt()
    }

    pub fn is_central(&self, tol: T) -> bool {
        norm3(self.vector_part()) <= tol
    }

    /// `Ad_g ξ = g ξ g⁻¹` on su(2).
    pub fn ad(&self, xi: Su2Vec<T>) -> Su2Vec<T> {
        self.adjoint_matrix().apply(xi)
    }

    pub fn adjoint_matrix(&self) -> AdMatrix<T> {
        let (w, x, y, z) = (self.w, self.x, self.y, self.z);
        let one = T::one();
        let two = one + one;
        AdMatrix([
            [
                one - two * (y * y + z * z),
                two * (x * y - w * z),
                two * (x * z + w * y),
            ],
            [
                two * (x * y + w * z),
                one - two * (x * x + z * z),
                two * (y * z - w * x),
            ],
            [
                two * (x * z - w * y),
                two * (y * z + w * x),
                one - two * (x * x + y * y),
            ],
        ])
    }

    /// The 2×2 complex matrix as `(re, im)` pairs.
    pub fn complex_matrix(&self) -> [[(T, T); 2]; 2] {
        [
            [(self.w, self.x), (self.y, self.z)],
            [(-self.y, self.z), (self.w, -self.x)],
        ]
    }

    /// Haar-distributed element from a caller-owned RNG: a normalized 4D Gaussian.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut g = || T::lit(rng.sample::<f64, _>(StandardNormal));
        Self::new(g(), g(), g(), g())
    }
}

impl<T: Real> Mul for Su2<T> {
    type Output = Su2<T>;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

impl<T: Real> Neg for Su2<T> {
    type Output = Su2<T>;
    fn neg(self) -> Self {
        Self::raw(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Deterministic Haar-random element for a seed.
pub fn haar_random<T: Real>(seed: u64) -> Su2<T> {
    Su2::random(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// Matrix of `Ad_g` on su(2) in the basis (i, j, k); an element of SO(3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdMatrix<T>(pub [[T; 3]; 3]);

impl<T: Real> AdMatrix<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        AdMatrix([[o, z, z], [z, o, z], [z, z, o]])
    }

    pub fn apply(&self, v: Su2Vec<T>) -> Su2Vec<T> {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn compose(&self, o: &Self) -> Self {
        let mut out = [[T::zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).fold(T::zero(), |acc, k| acc + self.0[i][k] * o.0[k][j]);
            }
        }
        AdMatrix(out)
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        AdMatrix([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn determinant(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Largest entry of `MᵀM − I` in absolute value.
    pub fn orthogonality_defect(&self) -> T {
        let p = self.transpose().compose(self);
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((p.0[i][j] - target).abs());
            }
        }
        worst
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_array3(&self.0)
    }
}

pub(crate) fn norm3<T: Real>(v: Su2Vec<T>) -> T {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Angles `(φ, ψ, η)` of `(A, B, AB)` for a pair of elements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleTriple<T> {
    pub phi: T,
    pub psi: T,
    pub eta: T,
}

impl<T: Real> AngleTriple<T> {
    /// Validates membership in the tetrahedron
    /// `φ+ψ+η ≤ 2π, φ ≤ ψ+η, ψ ≤ φ+η, η ≤ φ+ψ`, each angle in `[0, π]`.
    pub fn new(phi: T, psi: T, eta: T) -> Result<Self> {
        let t = Self { phi, psi, eta };
        if t.is_admissible(T::lit(1e-12)) {
            Ok(t)
        } else {
            Err(Error::invalid(format!(
                "angle triple ({phi}, {psi}, {eta}) lies outside the pair-of-pants tetrahedron"
            )))
        }
    }

    pub fn of_pair(a: &Su2<T>, b: &Su2<T>) -> Self {
        Self {
            phi: a.angle(),
            psi: b.angle(),
            eta: a.compose(b).angle(),
        }
    }

    pub fn is_admissible(&self, tol: T) -> bool {
        let pi = T::PI();
        let (p, q, e) = (self.phi, self.psi, self.eta);
        let in_range = |a: T| a >= -tol && a <= pi + tol;
        in_range(p)
            && in_range(q)
            && in_range(e)
            && p + q + e <= pi + pi + tol
            && p <= q + e + tol
            && q <= p + e + tol
            && e <= p + q + tol
    }
}

/// `α²` within this distance of 0 or 1 is snapped, so that triples on the
/// faces of the tetrahedron give exactly commuting pairs.
pub const FACE_SNAP: f64 = 1e-12;

/// Coefficients `α, β ≥ 0` with `α² + β² = 1` solving
/// `cos η = α² cos(φ+ψ) + β² cos(φ−ψ)`.
pub fn conjugating_coefficients<T: Real>(t: &AngleTriple<T>) -> (T, T) {
    let plus = (t.phi + t.psi).cos();
    let minus = (t.phi - t.psi).cos();
    let denom = minus - plus; // = 2 sin φ sin ψ ≥ 0
    let mut a2 = if denom <= T::lit(1e-15) {
        T::one()
    } else {
        ((minus - t.eta.cos()) / denom).max(T::zero()).min(T::one())
    };
    let snap = T::lit(FACE_SNAP);
    if a2 < snap {
        a2 = T::zero();
    } else if T::one() - a2 < snap {
        a2 = T::one();
    }
    (a2.sqrt(), (T::one() - a2).sqrt())
}

/// Canonical representative of the conjugacy class of pairs with the given
/// angle triple: `A = diag(e^{iφ})`, `B = P diag(e^{iψ}) P⁻¹` with
/// `P = [[α, −β], [β, α]]` real.
pub fn pair_from_angles<T: Real>(t: &AngleTriple<T>) -> Result<(Su2<T>, Su2<T>)> {
    if !t.is_admissible(T::lit(1e-12)) {
        return Err(Error::invalid("angle triple outside the tetrahedron"));
    }
    let (alpha, beta) = conjugating_coefficients(t);
    let a = Su2::diagonal(t.phi);
    let p = Su2::new(alpha, T::zero(), -beta, T::zero());
    let b = p.conjugate(&Su2::diagonal(t.psi));
    Ok((a, b))
}
