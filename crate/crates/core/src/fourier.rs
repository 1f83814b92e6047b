//! Fourier coefficients, Dirichlet kernels and partial sums on SU(2).
//!
//! Partial sums are evaluated in coefficient space:
//!
//! * central `f`: `S_N f(ω(θ)) = Σ_{n ∈ Λ_N} c_n χ_n(θ)` with `c_n = ⟨f, χ_n⟩`;
//! * general `f`: `S_N f(x) = Σ_{n ∈ Λ_N} (n+1) tr(F_n π_n(x))` with
//!   `F_n = ∫ f(x) π_n(x)* dμ(x)`.
//!
//! Literal convolution against the kernel is kept only as a test oracle.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::quadrature::{gauss_legendre, gauss_legendre_on, weyl_composite, HaarRule, WeylRule};
use crate::repr::{char_eval, characters, repr_matrix, small_d_matrix, truncation_set, CMatrix, TruncationMode, POLE_THRESHOLD};

type ThetaFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real class function on SU(2), given as a function of the conjugacy angle.
#[derive(Clone)]
pub struct CentralFn {
    label: String,
    eval: ThetaFn,
    breakpoints: Option<Arc<[(f64, f64)]>>,
    kinks: Vec<f64>,
    singular: Vec<f64>,
}

impl fmt::Debug for CentralFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CentralFn")
            .field("label", &self.label)
            .field("breakpoints", &self.breakpoints.as_ref().map(|b| b.len()))
            .field("kinks", &self.kinks.len())
            .field("singular", &self.singular)
            .finish()
    }
}

impl CentralFn {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        CentralFn {
            label: label.into(),
            eval: Arc::new(f),
            breakpoints: None,
            kinks: Vec::new(),
            singular: Vec::new(),
        }
    }

    /// Continuous piecewise-linear function through `points`, which must start at
    /// `θ = 0`, end at `θ = π` and be strictly increasing in `θ`.
    pub fn piecewise_linear(label: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self> {
        let ok_ends = points.len() >= 2
            && points[0].0 == 0.0
            && (points[points.len() - 1].0 - PI).abs() < 1e-15;
        let increasing = points.windows(2).all(|w| w[1].0 > w[0].0);
        if !ok_ends || !increasing {
            return Err(Error::InvalidArgument(
                "piecewise-linear breakpoints must increase from 0 to π".into(),
            ));
        }
        let pts: Arc<[(f64, f64)]> = points.into();
        let table = Arc::clone(&pts);
        let kinks = pts[1..pts.len() - 1].iter().map(|p| p.0).collect();
        Ok(CentralFn {
            label: label.into(),
            eval: Arc::new(move |t| interpolate(&table, t)),
            breakpoints: Some(pts),
            kinks,
            singular: Vec::new(),
        })
    }

    /// The character `χ_n` as a central function.
    pub fn character(n: usize) -> Self {
        CentralFn::new(format!("chi_{n}"), move |t| char_eval(n, t))
    }

    pub fn constant(value: f64) -> Self {
        CentralFn::new(format!("const_{value}"), move |_| value)
    }

    /// Points where the function is continuous but not smooth.
    pub fn with_kinks(mut self, kinks: Vec<f64>) -> Self {
        self.kinks = kinks;
        self
    }

    /// Points with an algebraic singularity (e.g. `|θ - θ₀|^α`).
    pub fn with_singular(mut self, points: Vec<f64>) -> Self {
        self.singular = points;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, theta: f64) -> f64 {
        (self.eval)(theta)
    }

    pub fn at(&self, x: &GroupElement) -> f64 {
        self.eval(x.conj_angle())
    }

    pub fn breakpoints(&self) -> Option<&[(f64, f64)]> {
        self.breakpoints.as_deref()
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn singular(&self) -> &[f64] {
        &self.singular
    }

    /// A composite Weyl rule that respects this function's kinks and
    /// singularities and resolves characters up to `max_freq`.
    pub fn adapted_rule(&self, max_freq: usize) -> WeylRule {
        let cell = (4.0 / (max_freq as f64 + 1.0)).min(0.25);
        weyl_composite(&self.kinks, cell, 16, &self.singular)
    }
}

fn interpolate(points: &[(f64, f64)], t: f64) -> f64 {
    let t = t.clamp(0.0, PI);
    let idx = points.partition_point(|p| p.0 <= t);
    if idx == 0 {
        return points[0].1;
    }
    if idx == points.len() {
        return points[points.len() - 1].1;
    }
    let (t0, v0) = points[idx - 1];
    let (t1, v1) = points[idx];
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

/// Coefficient data for one function.
#[derive(Debug, Clone, PartialEq)]
pub enum FourierCoeffs {
    /// `c_n = ⟨f, χ_n⟩`.
    Central(Vec<f64>),
    /// `F_n = ∫ f π_n* dμ`.
    General(Vec<CMatrix>),
}

impl FourierCoeffs {
    pub fn max_index(&self) -> usize {
        match self {
            FourierCoeffs::Central(c) => c.len().saturating_sub(1),
            FourierCoeffs::General(b) => b.len().saturating_sub(1),
        }
    }

    /// `‖P_n f‖²`: `|c_n|²` or `(n+1) ‖F_n‖²_F`.
    pub fn block_energy(&self, n: usize) -> f64 {
        match self {
            FourierCoeffs::Central(c) => c[n] * c[n],
            FourierCoeffs::General(b) => (n + 1) as f64 * b[n].iter().map(|z| z.norm_sqr()).sum::<f64>(),
        }
    }

    pub fn energy_through(&self, m: usize) -> f64 {
        (0..=m.min(self.max_index())).map(|n| self.block_energy(n)).sum()
    }

    /// Coefficients of `S_N f`: everything outside the truncation set is zeroed.
    pub fn truncated(&self, mode: TruncationMode, cutoff: usize) -> FourierCoeffs {
        let set = truncation_set(mode, cutoff);
        match self {
            FourierCoeffs::Central(c) => FourierCoeffs::Central(
                c.iter()
                    .enumerate()
                    .map(|(n, v)| if set.contains(n) { *v } else { 0.0 })
                    .collect(),
            ),
            FourierCoeffs::General(b) => FourierCoeffs::General(
                b.iter()
                    .enumerate()
                    .map(|(n, m)| if set.contains(n) { m.clone() } else { CMatrix::zeros(n + 1, n + 1) })
                    .collect(),
            ),
        }
    }
}

/// `c_n = (2/π) ∫ f(θ) χ_n(θ) sin²θ dθ` with the given Weyl rule.
pub fn coeff_central(f: &CentralFn, n: usize, rule: &WeylRule) -> f64 {
    rule.integrate(|t| f.eval(t) * char_eval(n, t))
}

/// `[c_0, …, c_{n_max}]` in one pass over the rule.
pub fn central_coeffs(f: &CentralFn, n_max: usize, rule: &WeylRule) -> Vec<f64> {
    const CHUNK: usize = 512;
    let nodes = rule.nodes();
    let weights = rule.weights();
    let partial: Vec<Vec<f64>> = nodes
        .par_chunks(CHUNK)
        .zip(weights.par_chunks(CHUNK))
        .map(|(ts, ws)| {
            let mut acc = vec![0.0; n_max + 1];
            for (&t, &w) in ts.iter().zip(ws) {
                let fw = w * f.eval(t);
                let x2 = 2.0 * t.cos();
                let (mut prev, mut cur) = (0.0, 1.0);
                for slot in acc.iter_mut() {
                    *slot += fw * cur;
                    let next = x2 * cur - prev;
                    prev = cur;
                    cur = next;
                }
            }
            acc
        })
        .collect();
    let mut out = vec![0.0; n_max + 1];
    for acc in &partial {
        for (o, a) in out.iter_mut().zip(acc) {
            *o += a;
        }
    }
    out
}

/// Exact coefficients of a continuous piecewise-linear central function.
///
/// `χ_n(θ) sin²θ = sin((n+1)θ) sin θ = ½ (cos nθ − cos (n+2)θ)` reduces each coefficient to
/// `(1/π) [I(n) − I(n+2)]` with `I(k) = ∫₀^π f(θ) cos kθ dθ`. Integrating by parts,
/// the boundary terms telescope across segments and vanish at `0` and `π`, leaving
/// `I(k) = Σ_seg slope · (cos k t₁ − cos k t₀) / k²` for `k > 0`.
pub fn piecewise_linear_coeffs(points: &[(f64, f64)], n_max: usize) -> Vec<f64> {
    let cosine_moment = |k: usize| -> f64 {
        if k == 0 {
            return points
                .windows(2)
                .map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0))
                .sum();
        }
        let kf = k as f64;
        let sum: f64 = points
            .windows(2)
            .map(|w| {
                let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
                slope * ((kf * w[1].0).cos() - (kf * w[0].0).cos())
            })
            .sum();
        sum / (kf * kf)
    };
    let moments: Vec<f64> = (0..=n_max + 2).map(cosine_moment).collect();
    (0..=n_max)
        .map(|n| (moments[n] - moments[n + 2]) / PI)
        .collect()
}

/// `‖f‖²_{L²}` for a central function.
pub fn central_norm_sq(f: &CentralFn, rule: &WeylRule) -> f64 {
    rule.integrate(|t| {
        let v = f.eval(t);
        v * v
    })
}

/// Exact `‖f‖²` for a continuous piecewise-linear central function.
pub fn piecewise_linear_norm_sq(points: &[(f64, f64)]) -> f64 {
    // (2/π)∫ (p + qθ)² sin²θ per segment; 12 Gauss nodes on pieces no wider
    // than 0.1 are accurate to rounding for this entire integrand.
    let gl = gauss_legendre(12);
    let mut total = 0.0;
    for w in points.windows(2) {
        let (t0, v0) = w[0];
        let (t1, v1) = w[1];
        let pieces = ((t1 - t0) / 0.1).ceil().max(1.0) as usize;
        let h = (t1 - t0) / pieces as f64;
        for i in 0..pieces {
            let lo = t0 + i as f64 * h;
            for (t, wt) in gauss_legendre_on(&gl, lo, lo + h) {
                let v = v0 + (v1 - v0) * (t - t0) / (t1 - t0);
                let s = t.sin();
                total += wt * v * v * s * s;
            }
        }
    }
    total * 2.0 / PI
}

/// `F_n = ∫ f(x) π_n(x)* dμ(x)`, node by node.
pub fn coeff_matrix<F>(f: F, n: usize, rule: &HaarRule) -> Result<CMatrix>
where
    F: Fn(&GroupElement) -> Complex64 + Sync,
{
    let mut acc = CMatrix::zeros(n + 1, n + 1);
    for (x, w) in rule.elements() {
        let fx = f(&x) * w;
        let m = repr_matrix(n, &x)?;
        for j in 0..=n {
            for k in 0..=n {
                acc[(j, k)] += fx * m[(k, j)].conj();
            }
        }
    }
    Ok(acc)
}

/// `[F_0, …, F_{n_max}]` using the Euler-angle factorization
/// `π_n(x)_{jk} = e^{iα(n-2j)/2} R_n(β)_{jk} e^{iγ(n-2k)/2}`.
///
/// For each `β` node the samples are Fourier-transformed in `γ` and then in `α`,
/// after which every block entry is a single weighted sum over `β`. The cost is
/// `O(M³·n_max)` instead of `O(M³·n_max³)` for an `M`-point-per-axis grid.
pub fn matrix_coeffs<F>(f: F, n_max: usize, rule: &HaarRule) -> Result<Vec<CMatrix>>
where
    F: Fn(&GroupElement) -> Complex64 + Sync,
{
    let width = 2 * n_max + 1;
    let phase_table = |angles: &[f64]| -> Vec<Complex64> {
        let mut t = Vec::with_capacity(angles.len() * width);
        for &ang in angles {
            for idx in 0..width {
                let p = idx as f64 - n_max as f64;
                t.push(Complex64::from_polar(1.0, -0.5 * p * ang));
            }
        }
        t
    };
    let alpha = rule.alpha();
    let gamma = rule.gamma();
    let alpha_phase = phase_table(alpha);
    let gamma_phase = phase_table(gamma);

    let per_beta: Vec<Result<Vec<CMatrix>>> = rule
        .beta()
        .par_iter()
        .map(|&(beta, w)| {
            // H[i][q] = Σ_l f(α_i, β, γ_l) e^{-iγ_l q/2}
            let mut h = vec![Complex64::new(0.0, 0.0); alpha.len() * width];
            for (i, &a) in alpha.iter().enumerate() {
                let row = &mut h[i * width..(i + 1) * width];
                for (l, &g) in gamma.iter().enumerate() {
                    let v = f(&GroupElement::from_euler(a, beta, g));
                    let phases = &gamma_phase[l * width..(l + 1) * width];
                    for (slot, ph) in row.iter_mut().zip(phases) {
                        *slot += v * ph;
                    }
                }
            }
            // G[p][q] = Σ_i e^{-iα_i p/2} H[i][q]
            let mut g = vec![Complex64::new(0.0, 0.0); width * width];
            for i in 0..alpha.len() {
                let hrow = &h[i * width..(i + 1) * width];
                for p in 0..width {
                    let ph = alpha_phase[i * width + p];
                    let grow = &mut g[p * width..(p + 1) * width];
                    for (slot, hv) in grow.iter_mut().zip(hrow) {
                        *slot += ph * hv;
                    }
                }
            }
            let mut blocks = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let d = small_d_matrix(n, beta)?;
                let mut block = CMatrix::zeros(n + 1, n + 1);
                for j in 0..=n {
                    for k in 0..=n {
                        // conj(π_n(x)_{kj}) carries phases -(n-2k)/2 in α and -(n-2j)/2 in γ.
                        let p = n_max + n - 2 * k;
                        let q = n_max + n - 2 * j;
                        block[(j, k)] = g[p * width + q] * (w * d[(k, j)]);
                    }
                }
                blocks.push(block);
            }
            Ok(blocks)
        })
        .collect();

    let mut out: Vec<CMatrix> = (0..=n_max).map(|n| CMatrix::zeros(n + 1, n + 1)).collect();
    for blocks in per_beta {
        for (acc, b) in out.iter_mut().zip(blocks?) {
            *acc += b;
        }
    }
    Ok(out)
}

/// `D_N(θ) = Σ_{n ≤ N} (n+1) χ_n(θ)`, summed term by term.
pub fn dirichlet_direct(cutoff: usize, theta: f64) -> f64 {
    (0..=cutoff).map(|n| (n + 1) as f64 * char_eval(n, theta)).sum()
}

/// `D_N(θ) = -D'_{N+1}(θ) / (2 sin θ)`, where `D_m` is the classical kernel.
pub fn dirichlet_closed(cutoff: usize, theta: f64) -> f64 {
    let s = theta.sin();
    if s.abs() < POLE_THRESHOLD {
        // -D'_m(θ)/(2 sin θ) = Σ_{j=1}^m j U_{j-1}(cos θ), finite and pole-free.
        let m = cutoff + 1;
        return characters(cutoff, theta)
            .iter()
            .enumerate()
            .map(|(i, u)| (i + 1) as f64 * u)
            .take(m)
            .sum();
    }
    -classical_dirichlet_deriv(cutoff + 1, theta) / (2.0 * s)
}

/// `D_n(t) = 1 + 2 Σ_{j=1}^n cos(jt) = sin((2n+1)t/2) / sin(t/2)`.
pub fn classical_dirichlet(n: usize, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    if s.abs() < POLE_THRESHOLD {
        return 1.0 + 2.0 * (1..=n).map(|j| (j as f64 * t).cos()).sum::<f64>();
    }
    ((n as f64 + 0.5) * t).sin() / s
}

/// `D_n'(t)`.
pub fn classical_dirichlet_deriv(n: usize, t: f64) -> f64 {
    let (s, c) = (0.5 * t).sin_cos();
    if s.abs() < POLE_THRESHOLD {
        return -2.0 * (1..=n).map(|j| j as f64 * (j as f64 * t).sin()).sum::<f64>();
    }
    let u = n as f64 + 0.5;
    let (su, cu) = (u * t).sin_cos();
    (u * cu * s - 0.5 * su * c) / (s * s)
}

/// `S_N f(ω(θ))` from central coefficients.
pub fn partial_sum_central(coeffs: &[f64], cutoff: usize, mode: TruncationMode, theta: f64) -> f64 {
    let set = truncation_set(mode, cutoff);
    assert!(
        set.max_index() < coeffs.len(),
        "partial sum needs coefficients through n = {}",
        set.max_index()
    );
    let chi = characters(set.max_index(), theta);
    set.members.iter().map(|&n| coeffs[n] * chi[n]).sum()
}

/// `S_N f(x)` from matrix coefficients.
pub fn partial_sum_general(blocks: &[CMatrix], cutoff: usize, mode: TruncationMode, x: &GroupElement) -> Result<Complex64> {
    let set = truncation_set(mode, cutoff);
    if set.max_index() >= blocks.len() {
        return Err(Error::InvalidArgument(format!(
            "partial sum needs coefficient blocks through n = {}",
            set.max_index()
        )));
    }
    let mut total = Complex64::new(0.0, 0.0);
    for &n in &set.members {
        let pi = repr_matrix(n, x)?;
        total += (blocks[n].clone() * pi).trace() * (n + 1) as f64;
    }
    Ok(total)
}

/// Zeros of `D_{n+1}` on `[0, π]` plus the endpoints: `t_k = 2kπ/(2n+3)`.
pub fn kernel_cells(n: usize) -> Vec<(f64, f64)> {
    let h = 2.0 * PI / (2 * n + 3) as f64;
    let mut cells: Vec<(f64, f64)> = (0..=n).map(|k| (k as f64 * h, (k + 1) as f64 * h)).collect();
    cells.push(((n + 1) as f64 * h, PI));
    cells
}

/// `(1/π) ∫₀^π |D_{n+1}(θ)| dθ`, integrated cell by cell between the kernel's zeros.
pub fn lebesgue_constant(n: usize) -> f64 {
    let gl = gauss_legendre(8);
    let m = n + 1;
    let total: f64 = kernel_cells(n)
        .into_iter()
        .map(|(lo, hi)| {
            gauss_legendre_on(&gl, lo, hi)
                .map(|(t, w)| w * classical_dirichlet(m, t))
                .sum::<f64>()
                .abs()
        })
        .sum();
    total / PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::weyl_grid;

    #[test]
    fn characters_have_delta_coefficients() {
        let rule = weyl_grid(64);
        let chi3 = CentralFn::character(3);
        for n in 0..20 {
            let expected = if n == 3 { 1.0 } else { 0.0 };
            assert!((coeff_central(&chi3, n, &rule) - expected).abs() < 1e-11);
        }
        let one = CentralFn::constant(1.0);
        for n in 0..10 {
            let expected = if n == 0 { 1.0 } else { 0.0 };
            assert!((coeff_central(&one, n, &rule) - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn cosine_is_half_of_chi_one() {
        let rule = weyl_grid(40);
        let f = CentralFn::new("cos", f64::cos);
        let c = central_coeffs(&f, 12, &rule);
        for (n, v) in c.iter().enumerate() {
            let expected = if n == 1 { 0.5 } else { 0.0 };
            assert!((v - expected).abs() < 1e-13, "n={n} {v}");
        }
    }

    #[test]
    fn bulk_and_single_coefficients_agree() {
        let rule = weyl_grid(300);
        let f = CentralFn::new("bump", |t: f64| (2.0 * t.cos()).exp() * t.sin());
        let bulk = central_coeffs(&f, 80, &rule);
        for n in [0, 1, 7, 33, 80] {
            assert!((bulk[n] - coeff_central(&f, n, &rule)).abs() < 1e-12);
        }
    }

    #[test]
    fn piecewise_linear_coefficients_match_quadrature() {
        let pts = vec![(0.0, 1.0), (0.4, -0.3), (1.9, 0.8), (2.5, 0.1), (PI, -1.0)];
        let f = CentralFn::piecewise_linear("pl", pts.clone()).unwrap();
        let exact = piecewise_linear_coeffs(&pts, 60);
        let rule = f.adapted_rule(60);
        let quad = central_coeffs(&f, 60, &rule);
        for n in 0..=60 {
            assert!((exact[n] - quad[n]).abs() < 1e-12, "n={n}");
        }
        let norm = piecewise_linear_norm_sq(&pts);
        assert!((norm - central_norm_sq(&f, &rule)).abs() < 1e-13);
    }

    #[test]
    fn piecewise_linear_validation() {
        assert!(CentralFn::piecewise_linear("bad", vec![(0.1, 0.0), (PI, 1.0)]).is_err());
        assert!(CentralFn::piecewise_linear("bad", vec![(0.0, 0.0), (2.0, 1.0), (1.0, 0.0), (PI, 1.0)]).is_err());
        let f = CentralFn::piecewise_linear("ok", vec![(0.0, 0.0), (PI, 2.0)]).unwrap();
        assert!((f.eval(PI / 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn square_pyramidal_limit() {
        for cutoff in [0usize, 1, 5, 40] {
            let n = cutoff as f64;
            let pyramid = (n + 1.0) * (n + 2.0) * (2.0 * n + 3.0) / 6.0;
            assert!((dirichlet_direct(cutoff, 0.0) - pyramid).abs() < 1e-9 * pyramid);
            assert!((dirichlet_closed(cutoff, 0.0) - pyramid).abs() < 1e-9 * pyramid);
        }
        assert_eq!(dirichlet_direct(0, 1.3), 1.0);
        assert!((dirichlet_closed(0, 1.3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_forms_agree_at_sample_point() {
        assert!((dirichlet_direct(5, 1.1) - dirichlet_closed(5, 1.1)).abs() < 1e-10);
    }

    #[test]
    fn kernel_at_antipode_matches_direct_sum() {
        for cutoff in [1usize, 2, 9, 50] {
            let direct: f64 = (0..=cutoff)
                .map(|n| {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    sign * ((n + 1) * (n + 1)) as f64
                })
                .sum();
            assert!((dirichlet_closed(cutoff, PI) - direct).abs() < 1e-9);
            assert!((dirichlet_direct(cutoff, PI) - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn classical_kernel_values() {
        for n in [0usize, 3, 50] {
            assert!((classical_dirichlet(n, 0.0) - (2 * n + 1) as f64).abs() < 1e-12);
        }
        for n in [2usize, 10, 1000] {
            let t = PI / (2 * n + 3) as f64;
            let expected = 1.0 / (PI / (2.0 * (2 * n + 3) as f64)).sin();
            let got = classical_dirichlet(n + 1, t);
            assert!((got - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn classical_derivative_against_finite_difference() {
        let h = 1e-6;
        for &(n, t) in &[(3usize, 0.7), (10, 2.2), (40, 0.05), (7, 3.0)] {
            let fd = (classical_dirichlet(n, t + h) - classical_dirichlet(n, t - h)) / (2.0 * h);
            let an = classical_dirichlet_deriv(n, t);
            assert!((fd - an).abs() <= 1e-6 * an.abs().max(1.0), "n={n} t={t}");
        }
    }

    #[test]
    fn lebesgue_constant_at_zero_is_exact() {
        let exact = 1.0 / 3.0 + 2.0 * 3f64.sqrt() / PI;
        assert!((lebesgue_constant(0) - exact).abs() < 1e-12);
    }

    #[test]
    fn spherical_sum_is_shifted_polyhedral_sum() {
        let coeffs: Vec<f64> = (0..40).map(|n| 1.0 / (n as f64 + 1.5)).collect();
        for cutoff in 1..38 {
            for t in [0.0, 0.4, 2.0] {
                let s = partial_sum_central(&coeffs, cutoff, TruncationMode::Spherical, t);
                let p = partial_sum_central(&coeffs, cutoff + 1, TruncationMode::Polyhedral, t);
                assert_eq!(s, p);
            }
        }
    }

    #[test]
    fn band_limited_reproduction() {
        let coeffs = vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0];
        for t in [0.0, 0.3, 1.7, PI] {
            let s = partial_sum_central(&coeffs, 4, TruncationMode::Polyhedral, t);
            assert!((s - char_eval(2, t)).abs() < 1e-12);
            assert_eq!(partial_sum_central(&coeffs, 1, TruncationMode::Polyhedral, t), 0.0);
        }
    }

    #[test]
    fn single_entry_coefficient() {
        // F_2 = ∫ f π_2* has its only entry 1/3 at the transposed position (1, 0).
        let rule = crate::quadrature::haar_grid(8);
        let f = |x: &GroupElement| repr_matrix(2, x).unwrap()[(0, 1)];
        let direct = coeff_matrix(f, 2, &rule).unwrap();
        let fast = matrix_coeffs(f, 2, &rule).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let want = if (j, k) == (1, 0) { 1.0 / 3.0 } else { 0.0 };
                assert!((direct[(j, k)] - want).norm() < 1e-8, "({j},{k})");
                assert!((fast[2][(j, k)] - direct[(j, k)]).norm() < 1e-12);
            }
        }
        assert!(fast[0].iter().chain(fast[1].iter()).all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn separable_transform_matches_direct() {
        let rule = crate::quadrature::haar_grid(9);
        let f = |x: &GroupElement| Complex64::new(x.a().re.powi(3), x.b().im) * x.b();
        let fast = matrix_coeffs(f, 5, &rule).unwrap();
        for (n, block) in fast.iter().enumerate() {
            let direct = coeff_matrix(f, n, &rule).unwrap();
            assert!((block - direct).iter().all(|z| z.norm() < 1e-12), "n={n}");
        }
    }
}
