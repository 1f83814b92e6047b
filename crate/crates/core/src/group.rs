//! SU(2) arithmetic in the `(a, b)` parametrization.
//!
//! An element is the matrix
//!
//! ```text
//!     [  a    b ]
//!     [ -b̄    ā ]      with |a|² + |b|² = 1.
//! ```
//!
//! Its eigenvalues are `e^{±iθ}` with `cos θ = Re a`, so the conjugacy class
//! is determined by `θ ∈ [0, π]` and every element is conjugate to the torus
//! element `ω(θ) = diag(e^{iθ}, e^{-iθ})`.
//!
//! The Lie algebra su(2) carries the inner product `⟨X, Y⟩ = ½ tr(X Y*)`.
//! With this normalization `d(e, exp X) = 2 sin(‖X‖/2)`, so the chordal
//! metric and the algebra norm agree to first order at the identity.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Inputs further than this from the unit sphere are rejected by [`GroupElement::new`].
pub const NORMALIZATION_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq)]
pub struct GroupElement {
    a: Complex64,
    b: Complex64,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SU2[a={:+.6}{:+.6}i, b={:+.6}{:+.6}i]",
            self.a.re, self.a.im, self.b.re, self.b.im
        )
    }
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        a: Complex64 { re: 1.0, im: 0.0 },
        b: Complex64 { re: 0.0, im: 0.0 },
    };

    /// Builds an element from its first row, re-normalizing small drift.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORMALIZATION_SLACK {
            return Err(Error::NotUnitary { norm_sq });
        }
        Ok(Self::normalized(a, b))
    }

    fn normalized(a: Complex64, b: Complex64) -> Self {
        let scale = (a.norm_sqr() + b.norm_sqr()).sqrt().recip();
        GroupElement {
            a: a * scale,
            b: b * scale,
        }
    }

    /// The torus element `ω(θ) = diag(e^{iθ}, e^{-iθ})`.
    pub fn torus(theta: f64) -> Self {
        GroupElement {
            a: Complex64::from_polar(1.0, theta),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// `ω(α/2) · r(β) · ω(γ/2)` where `r(β)` is the real rotation by `β/2`.
    ///
    /// Over `α ∈ [0, 2π)`, `β ∈ [0, π]`, `γ ∈ [0, 4π)` this covers SU(2) once and
    /// Haar measure is proportional to `sin β dα dβ dγ`.
    pub fn from_euler(alpha: f64, beta: f64, gamma: f64) -> Self {
        let (s, c) = (0.5 * beta).sin_cos();
        GroupElement {
            a: Complex64::from_polar(c, 0.5 * (alpha + gamma)),
            b: Complex64::from_polar(s, 0.5 * (alpha - gamma)),
        }
    }

    /// A Haar-distributed element (uniform on the 3-sphere).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let u: f64 = rng.random();
        let phi = 2.0 * PI * rng.random::<f64>();
        let psi = 2.0 * PI * rng.random::<f64>();
        GroupElement {
            a: Complex64::from_polar((1.0 - u).sqrt(), phi),
            b: Complex64::from_polar(u.sqrt(), psi),
        }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Row-major 2×2 matrix entries.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [-self.b.conj(), self.a.conj()]]
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// `-x`, the product with the central element `-e`.
    pub fn negate(&self) -> Self {
        GroupElement {
            a: -self.a,
            b: -self.b,
        }
    }

    pub fn conjugate_by(&self, z: &GroupElement) -> Self {
        *z * *self * z.inverse()
    }

    /// Conjugacy angle `θ ∈ [0, π]`: the eigenvalues are `e^{±iθ}`.
    ///
    /// Evaluated as `atan2(sin θ, cos θ)` with `sin θ = sqrt(Im(a)² + |b|²)`,
    /// which stays accurate near the poles where `acos(Re a)` does not.
    pub fn conj_angle(&self) -> f64 {
        let sin_theta = (self.a.im * self.a.im + self.b.norm_sqr()).sqrt();
        sin_theta.atan2(self.a.re)
    }

    /// `χ_1(x) = tr x = 2 Re a`.
    pub fn trace(&self) -> f64 {
        2.0 * self.a.re
    }

    /// The chordal metric `sqrt(½ tr((x-y)(x-y)*))`.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        ((self.a - other.a).norm_sqr() + (self.b - other.b).norm_sqr()).sqrt()
    }

    /// Largest componentwise deviation between two elements.
    pub fn max_abs_diff(&self, other: &GroupElement) -> f64 {
        [
            (self.a.re - other.a.re).abs(),
            (self.a.im - other.a.im).abs(),
            (self.b.re - other.b.re).abs(),
            (self.b.im - other.b.im).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        let a = self.a * rhs.a - self.b * rhs.b.conj();
        let b = self.a * rhs.b + self.b * rhs.a.conj();
        GroupElement::normalized(a, b)
    }
}

/// Free-function form of [`GroupElement::new`].
pub fn make_element(a: Complex64, b: Complex64) -> Result<GroupElement> {
    GroupElement::new(a, b)
}

pub fn metric_d(x: &GroupElement, y: &GroupElement) -> f64 {
    x.distance(y)
}

/// `X = [[i c, β], [-β̄, -i c]]` in su(2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LieVector {
    pub c: f64,
    pub beta: Complex64,
}

impl LieVector {
    pub fn new(c: f64, beta: Complex64) -> Self {
        LieVector { c, beta }
    }

    pub fn zero() -> Self {
        LieVector::new(0.0, Complex64::new(0.0, 0.0))
    }

    /// Uniformly random direction on the unit sphere of su(2), scaled to `radius`.
    pub fn random_direction<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Self {
        let z = 2.0 * rng.random::<f64>() - 1.0;
        let phi = 2.0 * PI * rng.random::<f64>();
        let rho = (1.0 - z * z).max(0.0).sqrt();
        LieVector::new(radius * z, Complex64::from_polar(radius * rho, phi))
    }

    /// `‖X‖ = sqrt(½ tr(X X*)) = sqrt(c² + |β|²)`.
    pub fn norm(&self) -> f64 {
        (self.c * self.c + self.beta.norm_sqr()).sqrt()
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(0.0, self.c), self.beta],
            [-self.beta.conj(), Complex64::new(0.0, -self.c)],
        ]
    }

    /// `X² = -‖X‖² I`, hence `exp X = cos‖X‖ I + (sin‖X‖/‖X‖) X`.
    pub fn exp(&self) -> GroupElement {
        let r = self.norm();
        let sinc = if r < 1e-8 { 1.0 - r * r / 6.0 } else { r.sin() / r };
        GroupElement::normalized(
            Complex64::new(r.cos(), self.c * sinc),
            self.beta * sinc,
        )
    }
}

pub fn exp_map(x: &LieVector) -> GroupElement {
    x.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn make_element_cases() {
        let e = make_element(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(e, GroupElement::IDENTITY);

        // [[0,1],[-1,0]] has eigenvalues ±i.
        let j = make_element(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((j.conj_angle() - PI / 2.0).abs() < 1e-15);

        assert!(matches!(
            make_element(c(1.0, 0.0), c(1.0, 0.0)),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn small_drift_is_renormalized() {
        let x = make_element(c(1.0 + 4e-7, 0.0), c(0.0, 0.0)).unwrap();
        assert!((x.a().norm_sqr() + x.b().norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn poles_have_extreme_angles() {
        assert_eq!(GroupElement::IDENTITY.conj_angle(), 0.0);
        assert!((GroupElement::IDENTITY.negate().conj_angle() - PI).abs() < 1e-15);
    }

    #[test]
    fn conj_angle_is_class_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let x = GroupElement::random(&mut rng);
            let z = GroupElement::random(&mut rng);
            assert!((x.conjugate_by(&z).conj_angle() - x.conj_angle()).abs() < 1e-12);
        }
    }

    #[test]
    fn metric_special_values() {
        let e = GroupElement::IDENTITY;
        assert_eq!(e.distance(&e), 0.0);
        assert!((e.distance(&e.negate()) - 2.0).abs() < 1e-15);
        for k in 0..=20 {
            let theta = PI * k as f64 / 20.0;
            // ½ tr((e-ω)(e-ω)*) = |1 - e^{iθ}|² = 4 sin²(θ/2)
            let expected = 2.0 * (theta / 2.0).sin().abs();
            assert!((e.distance(&GroupElement::torus(theta)) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn metric_matches_trace_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let x = GroupElement::random(&mut rng);
            let y = GroupElement::random(&mut rng);
            let (mx, my) = (x.matrix(), y.matrix());
            let mut tr = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    tr += (mx[i][j] - my[i][j]).norm_sqr();
                }
            }
            assert!((x.distance(&y) - (0.5 * tr).sqrt()).abs() < 1e-14);
            let inner = (x.a() * y.a().conj() + x.b() * y.b().conj()).re;
            assert!((x.distance(&y) - (2.0 - 2.0 * inner).max(0.0).sqrt()).abs() < 1e-7);
        }
    }

    #[test]
    fn exp_map_cases() {
        assert_eq!(LieVector::zero().exp(), GroupElement::IDENTITY);
        let theta = 0.77;
        let w = LieVector::new(theta, c(0.0, 0.0)).exp();
        assert!(w.max_abs_diff(&GroupElement::torus(theta)) < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = LieVector::random_direction(&mut rng, 0.3);
        assert!((x.norm() - 0.3).abs() < 1e-15);
        let d = GroupElement::IDENTITY.distance(&x.exp());
        assert!((d - 2.0 * 0.15f64.sin()).abs() < 1e-14);
    }

    /// Truncated power series for the 2×2 matrix exponential, independent of
    /// the closed form used by `LieVector::exp`.
    fn exp_series(m: [[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
        let mut out = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        let mut term = out;
        for k in 1..60 {
            let mut next = [[c(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        next[i][j] += term[i][l] * m[l][j];
                    }
                    next[i][j] /= k as f64;
                }
            }
            term = next;
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] += term[i][j];
                }
            }
        }
        out
    }

    #[test]
    fn exp_map_matches_power_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let r = 3.0 * rng.random::<f64>();
            let x = LieVector::random_direction(&mut rng, r);
            let series = exp_series(x.matrix());
            let closed = x.exp().matrix();
            for i in 0..2 {
                for j in 0..2 {
                    assert!((series[i][j] - closed[i][j]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn lie_norm_is_half_trace() {
        let x = LieVector::new(0.4, c(-0.2, 0.7));
        let m = x.matrix();
        let tr: f64 = m.iter().flatten().map(|z| z.norm_sqr()).sum();
        assert!((x.norm() * x.norm() - 0.5 * tr).abs() < 1e-15);
    }

    #[test]
    fn euler_parametrization_is_unitary_and_matches_factors() {
        let (al, be, ga) = (0.3, 1.1, 2.9);
        let x = GroupElement::from_euler(al, be, ga);
        let r = GroupElement::new(c((be / 2.0).cos(), 0.0), c((be / 2.0).sin(), 0.0)).unwrap();
        let y = GroupElement::torus(al / 2.0) * r * GroupElement::torus(ga / 2.0);
        assert!(x.max_abs_diff(&y) < 1e-15);
    }
}
