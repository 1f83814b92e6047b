//! Explicit Hölder-continuous witnesses whose partial sums blow up at the identity.
//!
//! The witness `f_n` is the central function whose angular profile `g_n` is the
//! sawtooth with `g_n(2kπ/(2n+3)) = (-1)^k` for `0 ≤ k ≤ n+1`, `g_n(π) = 0`, linear
//! in between. It tracks the sign of `h_n(θ) = cos((n + 3/2)θ)`, the oscillating
//! factor of the kernel, so
//!
//! ```text
//! S_n f_n(e) = (1/π) ∫ g_n cos²(θ/2) D_{n+1}(θ) dθ  −  ((2n+3)/π) ∫ g_n h_n cos(θ/2) dθ
//! ```
//!
//! has a second term of order `n` and a first term of order `log n`.
//!
//! Evaluating `S_n f_n` at another point `z` only needs left translation:
//! `S_n(L_{z⁻¹} f)(z) = S_n f(e)` because the kernel is central. The existence of a
//! single function diverging on a whole countable set follows from these witnesses
//! by a Baire-category argument, which is not constructive and is not attempted.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{classical_dirichlet, lebesgue_constant, matrix_coeffs, partial_sum_general, piecewise_linear_coeffs, CentralFn};
use crate::group::{GroupElement, LieVector};
use crate::quadrature::{gauss_legendre, gauss_legendre_on, haar_grid};
use crate::repr::TruncationMode;

/// Gauss nodes per sawtooth cell. Each cell holds one full period of the
/// kernel's oscillating factor, which 16 nodes integrate to rounding.
const NODES_PER_CELL: usize = 16;

/// Tolerance on the chain margins.
pub const MARGIN_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Sawtooth {
    n: usize,
    points: Vec<(f64, f64)>,
    central: CentralFn,
}

impl Sawtooth {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Width of one cell `I_k`, `2π/(2n+3)`.
    pub fn cell_width(&self) -> f64 {
        2.0 * PI / (2 * self.n + 3) as f64
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn as_central(&self) -> &CentralFn {
        &self.central
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.central.eval(theta)
    }

    pub fn at(&self, x: &GroupElement) -> f64 {
        self.central.at(x)
    }

    /// `I_k = [2kπ/(2n+3), 2(k+1)π/(2n+3)]` for `k = 0..=n`.
    pub fn cells(&self) -> Vec<(f64, f64)> {
        let w = self.cell_width();
        (0..=self.n).map(|k| (k as f64 * w, (k + 1) as f64 * w)).collect()
    }

    /// The half cell `[2(n+1)π/(2n+3), π]`.
    pub fn tail(&self) -> (f64, f64) {
        ((self.n + 1) as f64 * self.cell_width(), PI)
    }

    /// Exact `c_m = ⟨f_n, χ_m⟩` for `m ≤ m_max`.
    pub fn coefficients(&self, m_max: usize) -> Vec<f64> {
        piecewise_linear_coeffs(&self.points, m_max)
    }

    /// `S_n f_n(e) = Σ_{m ≤ n} (m+1) c_m`, from exact coefficients.
    pub fn partial_sum_at_identity(&self) -> f64 {
        self.coefficients(self.n)
            .iter()
            .enumerate()
            .map(|(m, c)| (m + 1) as f64 * c)
            .sum()
    }
}

pub fn sawtooth(n: usize) -> Result<Sawtooth> {
    if n < 2 {
        return Err(Error::SawtoothIndex(n));
    }
    let w = 2.0 * PI / (2 * n + 3) as f64;
    let mut points: Vec<(f64, f64)> = (0..=n + 1)
        .map(|k| (k as f64 * w, if k % 2 == 0 { 1.0 } else { -1.0 }))
        .collect();
    points.push((PI, 0.0));
    let central = CentralFn::piecewise_linear(format!("sawtooth_{n}"), points.clone())?;
    Ok(Sawtooth { n, points, central })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::HolderExponent(alpha))
    }
}

/// `(π/2)^α (2π/(2n+3))^{1-α}`, the published bound on the Hölder quotient of `f_n`.
///
/// This expression is at most `π`, but it does not dominate the actual quotient:
/// see [`holder_seminorm_exact`].
pub fn holder_bound(n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok((PI / 2.0).powf(alpha) * (2.0 * PI / (2 * n + 3) as f64).powf(1.0 - alpha))
}

/// The exact Hölder seminorm `sup |f_n(x) - f_n(y)| / d(x,y)^α`.
///
/// Two elements with conjugacy angles `θ₁, θ₂` are at distance at least
/// `2 sin(|θ₁ - θ₂|/2)`, with equality on a common maximal torus, so the supremum
/// is a one-dimensional problem for the sawtooth profile. The quotient
/// `min(2, 2Δ/w) / (2 sin(Δ/2))^α` increases on `(0, w]` and decreases after, so
/// the supremum is `2 / (2 sin(π/(2n+3)))^α`, attained between adjacent extrema.
pub fn holder_seminorm_exact(n: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let half_cell = PI / (2 * n + 3) as f64;
    Ok(2.0 / (2.0 * half_cell.sin()).powf(alpha))
}

/// `‖f_n‖_{Lip_α} = sup |f_n| + seminorm = 1 + seminorm`.
pub fn lip_norm_exact(n: usize, alpha: f64) -> Result<f64> {
    Ok(1.0 + holder_seminorm_exact(n, alpha)?)
}

/// Number of dyadic scales sampled, from `π` down to about `1e-6`.
const HOLDER_SCALES: usize = 22;

/// Sampled lower estimate of the Hölder seminorm of `f`.
///
/// Pairs `(x, x·exp(X))` are drawn with `‖X‖` stratified over dyadic scales
/// `[π 2^{-s-1}, π 2^{-s}]`. Even-indexed samples use a random direction; odd ones
/// put both points on a common maximal torus, where the metric is smallest for
/// given conjugacy angles.
pub fn holder_quotient_estimate<F>(f: F, alpha: f64, samples: usize, seed: u64) -> Result<f64>
where
    F: Fn(&GroupElement) -> f64,
{
    check_alpha(alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: f64 = 0.0;
    for i in 0..samples {
        let scale = (i / 2) % HOLDER_SCALES;
        let hi = PI * 0.5f64.powi(scale as i32);
        let r = hi * (0.5 + 0.5 * rng.random::<f64>());
        let (x, y) = if i % 2 == 0 {
            let x = GroupElement::random(&mut rng);
            let step = LieVector::random_direction(&mut rng, r).exp();
            (x, x * step)
        } else {
            let z = GroupElement::random(&mut rng);
            let theta = (PI - r) * rng.random::<f64>();
            (
                GroupElement::torus(theta).conjugate_by(&z),
                GroupElement::torus(theta + r).conjugate_by(&z),
            )
        };
        let d = x.distance(&y);
        if d > 0.0 {
            best = best.max((f(&x) - f(&y)).abs() / d.powf(alpha));
        }
    }
    Ok(best)
}

/// The two integrals whose difference is `S_n f_n(e)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiDecomposition {
    pub n: usize,
    /// `(1/π) ∫ g_n cos²(θ/2) D_{n+1}(θ) dθ`.
    pub term1: f64,
    /// `((2n+3)/π) ∫ g_n cos((n+3/2)θ) cos(θ/2) dθ`.
    pub term2: f64,
    /// `term1 - term2`.
    pub phi: f64,
}

fn integrate_cells<F: Fn(f64) -> f64>(cells: &[(f64, f64)], f: F) -> Vec<f64> {
    let gl = gauss_legendre(NODES_PER_CELL);
    cells
        .iter()
        .map(|&(lo, hi)| gauss_legendre_on(&gl, lo, hi).map(|(t, w)| w * f(t)).sum())
        .collect()
}

fn all_cells(saw: &Sawtooth) -> Vec<(f64, f64)> {
    let mut cells = saw.cells();
    cells.push(saw.tail());
    cells
}

pub fn phi_decomposition(n: usize) -> Result<PhiDecomposition> {
    let saw = sawtooth(n)?;
    let cells = all_cells(&saw);
    let freq = n as f64 + 1.5;
    let first: f64 = integrate_cells(&cells, |t| {
        let c = (0.5 * t).cos();
        saw.eval(t) * c * c * classical_dirichlet(n + 1, t)
    })
    .iter()
    .sum();
    let second: f64 = integrate_cells(&cells, |t| saw.eval(t) * (freq * t).cos() * (0.5 * t).cos())
        .iter()
        .sum();
    let term1 = first / PI;
    let term2 = (2 * n + 3) as f64 / PI * second;
    Ok(PhiDecomposition {
        n,
        term1,
        term2,
        phi: term1 - term2,
    })
}

/// One cell of the lower-bound chain for `∫_{I_k} g_n h_n cos(θ/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalBound {
    pub k: usize,
    /// `∫_{I_k} g_n h_n cos(θ/2)`.
    pub lhs: f64,
    /// `∫_{I_k} g_n² cos(θ/2)`; `g_n h_n ≥ g_n²` on the cell.
    pub squared: f64,
    /// `(2π/(3(2n+3))) cos((k+1)π/(2n+3))`; `cos(θ/2)` is at least that cosine on `I_k`
    /// and `∫_{I_k} g_n² = 2π/(3(2n+3))`.
    pub bound: f64,
    /// `min(lhs - squared, squared - bound)`.
    pub margin: f64,
}

/// Every quantity in the lower-bound chain for `|S_n f_n(e)|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub n: usize,
    pub per_interval: Vec<IntervalBound>,
    /// `∫` over `[2(n+1)π/(2n+3), π]`; nonnegative.
    pub tail_integral: f64,
    /// `Σ_k bound_k = (2π/(3(2n+3))) Σ_{k=1}^{n+1} cos(kπ/(2n+3))`.
    pub summed_bound: f64,
    /// `Σ_{k=1}^{n+1} cos(kπ/(2n+3))`.
    pub cosine_sum: f64,
    /// `D_{n+1}(π/(2n+3)) = 1 / sin(π/(2(2n+3)))`.
    pub dirichlet_value: f64,
    /// `cosine_sum - ½ (dirichlet_value - 1)`.
    pub identity_residual: f64,
    /// `2(2n+3)/π`, from `sin x ≤ x`.
    pub dirichlet_floor: f64,
    /// `(D_{n+1}(π/(2n+3)) - 1) / 3`, the lower bound on `term2` implied by the chain.
    pub final_lower_bound: f64,
    /// `term2 - (2/3)(D_{n+1}(π/(2n+3)) - 1)`. Negative: the cosine sum is only half
    /// of `D - 1`, so the doubled constant does not hold.
    pub doubled_bound_margin: f64,
    pub term1: f64,
    pub term2: f64,
    pub phi_value: f64,
    /// `(1/π) ∫ |D_{n+1}|`, which bounds `|term1|` since `|g_n cos²(θ/2)| ≤ 1`.
    pub lebesgue: f64,
    /// Published expression `(π/2)^α (2π/(2n+3))^{1-α}` at `α = 1/2`.
    pub lipalpha_norm_bound: f64,
    /// Exact `‖f_n‖_{Lip_α}` at `α = 1/2`.
    pub lipalpha_norm_exact: f64,
    /// `|phi_value| / ‖f_n‖_{Lip_{1/2}}`, growing like `sqrt(n)`.
    pub normalized_functional: f64,
}

/// Exponent used for the Hölder columns of [`ChainReport`].
pub const REPORT_ALPHA: f64 = 0.5;

impl ChainReport {
    pub fn min_interval_margin(&self) -> f64 {
        self.per_interval
            .iter()
            .map(|b| b.margin.min(b.lhs - b.bound))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn term2_margin(&self) -> f64 {
        self.term2 - self.final_lower_bound
    }

    pub fn term1_margin(&self) -> f64 {
        self.lebesgue - self.term1.abs()
    }

    /// `D_{n+1}(π/(2n+3)) ≥ 2(2n+3)/π` as computed doubles.
    pub fn floor_holds(&self) -> bool {
        self.dirichlet_value >= self.dirichlet_floor
    }

    /// Failing checks, empty when the chain holds.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for b in &self.per_interval {
            if b.margin < -MARGIN_TOLERANCE || b.lhs - b.bound < -MARGIN_TOLERANCE {
                out.push(format!("n={} interval k={} margin {:e}", self.n, b.k, b.margin));
            }
        }
        if self.tail_integral < -1e-10 {
            out.push(format!("n={} tail integral {:e}", self.n, self.tail_integral));
        }
        if self.identity_residual.abs() > 1e-10 {
            out.push(format!("n={} cosine identity residual {:e}", self.n, self.identity_residual));
        }
        if !self.floor_holds() {
            out.push(format!("n={} kernel value below 2(2n+3)/π", self.n));
        }
        if self.term2_margin() < -MARGIN_TOLERANCE {
            out.push(format!("n={} term2 margin {:e}", self.n, self.term2_margin()));
        }
        if self.term1_margin() < -MARGIN_TOLERANCE {
            out.push(format!("n={} term1 exceeds Lebesgue constant by {:e}", self.n, -self.term1_margin()));
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }
}

pub fn chain_verify(n: usize) -> Result<ChainReport> {
    let saw = sawtooth(n)?;
    let m = (2 * n + 3) as f64;
    let freq = n as f64 + 1.5;
    let cells = saw.cells();
    let product = |t: f64| saw.eval(t) * (freq * t).cos() * (0.5 * t).cos();
    let squared = |t: f64| {
        let g = saw.eval(t);
        g * g * (0.5 * t).cos()
    };
    let lhs = integrate_cells(&cells, product);
    let sq = integrate_cells(&cells, squared);
    let cell_mass = 2.0 * PI / (3.0 * m);
    let per_interval: Vec<IntervalBound> = (0..=n)
        .map(|k| {
            let bound = cell_mass * ((k + 1) as f64 * PI / m).cos();
            IntervalBound {
                k,
                lhs: lhs[k],
                squared: sq[k],
                bound,
                margin: (lhs[k] - sq[k]).min(sq[k] - bound),
            }
        })
        .collect();
    let tail_integral = integrate_cells(&[saw.tail()], product)[0];

    let cosine_sum: f64 = (1..=n + 1).map(|k| (k as f64 * PI / m).cos()).sum();
    let summed_bound = cell_mass * cosine_sum;
    let dirichlet_value = classical_dirichlet(n + 1, PI / m);
    let identity_residual = cosine_sum - 0.5 * (dirichlet_value - 1.0);

    let phi = phi_decomposition(n)?;
    let lip_exact = lip_norm_exact(n, REPORT_ALPHA)?;
    Ok(ChainReport {
        n,
        per_interval,
        tail_integral,
        summed_bound,
        cosine_sum,
        dirichlet_value,
        identity_residual,
        dirichlet_floor: 2.0 * m / PI,
        final_lower_bound: (dirichlet_value - 1.0) / 3.0,
        doubled_bound_margin: phi.term2 - 2.0 / 3.0 * (dirichlet_value - 1.0),
        term1: phi.term1,
        term2: phi.term2,
        phi_value: phi.phi,
        lebesgue: lebesgue_constant(n),
        lipalpha_norm_bound: holder_bound(n, REPORT_ALPHA)?,
        lipalpha_norm_exact: lip_exact,
        normalized_functional: phi.phi.abs() / lip_exact,
    })
}

/// One row of the translated-witness table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivergenceRow {
    pub point: [f64; 4],
    pub n: usize,
    /// `|S_n(L_{z⁻¹} f_n)(z)|` from 3D matrix coefficients.
    pub translated: f64,
    /// `|S_n f_n(e)|` from exact central coefficients.
    pub at_identity: f64,
    pub relative_gap: f64,
    /// `|S_n f_n(e)| / n`.
    pub growth: f64,
}

/// Haar grid order for the translated witnesses. The kinks of `f_n` are not aligned
/// with the grid, so convergence is only second order; 128 leaves the relative
/// gap near `1e-5` at `n = 16`.
pub const DEFAULT_DIVERGENCE_ORDER: usize = 128;

/// Largest `n` for which the 3D path is offered.
pub const GENERAL_PATH_MAX_N: usize = 24;

/// For each `z` and `n`, compares `S_n(L_{z⁻¹} f_n)(z)` computed from matrix
/// coefficients on a Haar grid of the given order against `S_n f_n(e)`.
pub fn divergence_table(points: &[GroupElement], n_list: &[usize], haar_order: usize) -> Result<Vec<DivergenceRow>> {
    if let Some(&n) = n_list.iter().find(|&&n| n > GENERAL_PATH_MAX_N) {
        return Err(Error::InvalidArgument(format!(
            "n = {n} exceeds the 3D path limit {GENERAL_PATH_MAX_N}"
        )));
    }
    let rule = haar_grid(haar_order);
    let mut rows = Vec::with_capacity(points.len() * n_list.len());
    for z in points {
        let z_inv = z.inverse();
        for &n in n_list {
            let saw = sawtooth(n)?;
            let blocks = matrix_coeffs(|y| (saw.at(&(z_inv * *y))).into(), n, &rule)?;
            let translated = partial_sum_general(&blocks, n, TruncationMode::Polyhedral, z)?;
            let central = saw.partial_sum_at_identity();
            rows.push(DivergenceRow {
                point: [z.a().re, z.a().im, z.b().re, z.b().im],
                n,
                translated: translated.norm(),
                at_identity: central.abs(),
                relative_gap: (translated - central).norm() / central.abs(),
                growth: central.abs() / n as f64,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_rejects_small_index() {
        assert_eq!(sawtooth(1).unwrap_err(), Error::SawtoothIndex(1));
    }

    #[test]
    fn sawtooth_values() {
        let g = sawtooth(5).unwrap();
        assert_eq!(g.eval(0.0), 1.0);
        assert_eq!(g.eval(PI), 0.0);
        assert!(g.eval(PI / 13.0).abs() < 1e-15);
        for k in 0..=6 {
            let t = 2.0 * k as f64 * PI / 13.0;
            let expected = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((g.eval(t) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn sawtooth_is_bounded_by_one() {
        let g = sawtooth(17).unwrap();
        for i in 0..=10_000 {
            assert!(g.eval(PI * i as f64 / 10_000.0).abs() <= 1.0);
        }
    }

    #[test]
    fn holder_bound_values() {
        let v = holder_bound(10, 0.5).unwrap();
        assert!((v - (PI / 2.0).sqrt() * (2.0 * PI / 23.0).sqrt()).abs() < 1e-15);
        assert!((holder_bound(7, 1.0 - 1e-12).unwrap() - PI / 2.0).abs() < 1e-9);
        assert!(holder_bound(3, 1.0).is_err());
        assert!(holder_bound(3, 0.0).is_err());
    }

    #[test]
    fn constant_function_has_zero_quotient() {
        assert_eq!(holder_quotient_estimate(|_| 2.5, 0.5, 1000, 1).unwrap(), 0.0);
    }

    #[test]
    fn phi_matches_coefficient_path_small_n() {
        for n in [2usize, 3, 9, 30] {
            let phi = phi_decomposition(n).unwrap();
            let coeff = sawtooth(n).unwrap().partial_sum_at_identity();
            assert!((phi.phi - coeff).abs() < 1e-9 * coeff.abs().max(1.0), "n={n}");
        }
    }

    #[test]
    fn chain_holds_at_smallest_index() {
        let r = chain_verify(2).unwrap();
        assert_eq!(r.per_interval.len(), 3);
        assert!(r.per_interval.iter().all(|b| b.margin >= 0.0 && b.lhs >= b.bound));
        assert!(r.tail_integral >= 0.0);
        assert!(r.passed(), "{:?}", r.violations());
    }

    #[test]
    fn cosine_identity_at_seventeen() {
        let r = chain_verify(17).unwrap();
        let direct: f64 = (1..=18).map(|k| (k as f64 * PI / 37.0).cos()).sum();
        let via_kernel = 0.5 * (1.0 / (PI / 74.0).sin() - 1.0);
        assert!((direct - via_kernel).abs() < 1e-12);
        assert!(r.identity_residual.abs() < 1e-12);
    }

    #[test]
    fn doubled_cosine_constant_overshoots() {
        for n in [2usize, 10, 100] {
            assert!(chain_verify(n).unwrap().doubled_bound_margin < 0.0);
        }
    }
}
