//! Quantities in the almost-everywhere convergence criterion: integral modulus of
//! continuity, the Dini-type integral, best approximation, Jackson ratios and the
//! log-weighted block energies. Also a probe of uniform convergence away from `±e`
//! for central functions.
//!
//! On SU(2) each shell `Γ_j` holds the single representation `π_j`, so the block
//! energy of a central `f = Σ c_n χ_n` is `c_j²`.
//!
//! For central `f` the translation norm has a closed form. `L_h χ_n` has inner
//! product `χ_n(h)/(n+1)` with `χ_n`, hence
//!
//! ```text
//! ‖δ_h f‖² = 2 Σ c_n² (1 - χ_n(θ_h)/(n+1)),   θ_h = conj_angle(h) = ‖X‖ for h = exp(X).
//! ```

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{central_coeffs, central_norm_sq, partial_sum_central, piecewise_linear_norm_sq, CentralFn};
use crate::group::{GroupElement, LieVector};
use crate::quadrature::HaarRule;
use crate::repr::{characters, TruncationMode};

/// `x ↦ f(x) - f(h⁻¹x)`.
pub fn delta_translate<F>(f: F, h: &GroupElement) -> impl Fn(&GroupElement) -> f64
where
    F: Fn(&GroupElement) -> f64,
{
    let h_inv = h.inverse();
    move |x| f(x) - f(&(h_inv * *x))
}

/// `‖δ_h f‖_{L²}` by quadrature on a Haar rule.
pub fn translation_norm_haar<F>(f: F, h: &GroupElement, rule: &HaarRule) -> f64
where
    F: Fn(&GroupElement) -> f64 + Sync,
{
    let d = delta_translate(f, h);
    rule.integrate(|x| {
        let v = d(x);
        v * v
    })
    .max(0.0)
    .sqrt()
}

/// Coefficients `c_0..=c_J` of a central function together with `‖f‖²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub label: String,
    pub coeffs: Vec<f64>,
    pub norm_sq: f64,
}

impl Spectrum {
    pub fn new(label: impl Into<String>, coeffs: Vec<f64>, norm_sq: f64) -> Self {
        Spectrum {
            label: label.into(),
            coeffs,
            norm_sq,
        }
    }

    /// Coefficients through `j_max` by quadrature on the function's adapted rule.
    pub fn from_central(f: &CentralFn, j_max: usize) -> Self {
        let rule = f.adapted_rule(j_max);
        let coeffs = central_coeffs(f, j_max, &rule);
        let norm_sq = match f.breakpoints() {
            Some(points) => piecewise_linear_norm_sq(points),
            None => central_norm_sq(f, &rule),
        };
        Spectrum::new(f.label(), coeffs, norm_sq)
    }

    pub fn max_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `‖f‖² - Σ_{n ≤ J} c_n²`, the energy not represented in `coeffs`.
    pub fn tail_energy(&self) -> f64 {
        (self.norm_sq - self.coeffs.iter().map(|c| c * c).sum::<f64>()).max(0.0)
    }

    /// `‖δ_h f‖_{L²}` for `θ_h = theta`, from the retained coefficients.
    ///
    /// The discarded tail changes the squared norm by at most `4 · tail_energy`.
    pub fn translation_norm(&self, theta: f64) -> f64 {
        let chi = characters(self.max_index(), theta);
        let sum: f64 = self
            .coeffs
            .iter()
            .zip(&chi)
            .enumerate()
            .map(|(n, (c, x))| c * c * (1.0 - x / (n + 1) as f64))
            .sum();
        (2.0 * sum).max(0.0).sqrt()
    }
}

/// Radii per decade used to resolve the sup over `0 < ‖X‖ ≤ t` in [`modulus_central`].
const SUP_POINTS_PER_DECADE: usize = 64;

/// Decades below `t` scanned by [`modulus_central`].
const SUP_DECADES: usize = 8;

/// `Ω(f,t)` for a central `f` from its spectrum.
///
/// `‖δ_h f‖` depends on `h = exp(X)` only through `‖X‖`, so the sup over the ball is a
/// sup over radii, taken on a log grid reaching eight decades below `t`.
pub fn modulus_central(spec: &Spectrum, t: f64) -> Result<f64> {
    check_radius(t)?;
    let steps = SUP_POINTS_PER_DECADE * SUP_DECADES;
    let best = (0..=steps)
        .map(|i| {
            let s = t * 10f64.powf(-(i as f64) / SUP_POINTS_PER_DECADE as f64);
            spec.translation_norm(s)
        })
        .fold(0.0, f64::max);
    Ok(best)
}

fn check_radius(t: f64) -> Result<()> {
    if t > 0.0 && t <= PI {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("radius {t} outside (0, π]")))
    }
}

/// Sampled lower estimate of `Ω(f,t)`.
///
/// Sample `i` draws a uniform direction from its own ChaCha stream `i` and uses
/// radius `t`, `t/2` or `t/4` in turn; `‖δ_h f‖` is integrated on `rule`.
pub fn modulus<F>(f: F, t: f64, samples: usize, seed: u64, rule: &HaarRule) -> Result<f64>
where
    F: Fn(&GroupElement) -> f64 + Sync,
{
    check_radius(t)?;
    let best = (0..samples)
        .into_par_iter()
        .map(|i| {
            let h = sample_translation(seed, i, t);
            translation_norm_haar(&f, &h, rule)
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

fn sample_translation(seed: u64, i: usize, t: f64) -> GroupElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    let radius = t / f64::from(1u32 << (i % 3));
    LieVector::random_direction(&mut rng, radius).exp()
}

/// `Ω(f,t)` on a decreasing list of radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusProfile {
    pub t_values: Vec<f64>,
    pub omega_values: Vec<f64>,
    /// Directions per radius; 0 for the spectral path.
    pub sample_count: usize,
    pub seed: u64,
}

impl ModulusProfile {
    /// Builds a profile from raw values, replacing each value by the max over all
    /// smaller radii so that the profile is a sup over nested balls.
    pub fn from_raw(t_values: Vec<f64>, raw: Vec<f64>, sample_count: usize, seed: u64) -> Result<Self> {
        if t_values.len() != raw.len() || t_values.is_empty() {
            return Err(Error::InvalidArgument("profile needs matching, nonempty radii and values".into()));
        }
        if t_values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument("profile radii must strictly decrease".into()));
        }
        let mut omega_values = raw;
        for i in (0..omega_values.len() - 1).rev() {
            omega_values[i] = omega_values[i].max(omega_values[i + 1]);
        }
        Ok(ModulusProfile {
            t_values,
            omega_values,
            sample_count,
            seed,
        })
    }

    pub fn is_monotone(&self) -> bool {
        self.omega_values.windows(2).all(|w| w[0] >= w[1])
    }
}

/// `per_decade` log-spaced radii from `t_max` down to `t_min`, both included.
pub fn log_radii(t_max: f64, t_min: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_min < t_max && per_decade > 0) {
        return Err(Error::InvalidArgument(format!("bad radius range [{t_min}, {t_max}]")));
    }
    let decades = (t_max / t_min).log10();
    let steps = (decades * per_decade as f64).ceil() as usize;
    Ok((0..=steps)
        .map(|i| t_max * (t_min / t_max).powf(i as f64 / steps as f64))
        .collect())
}

/// Spectral modulus profile on `[t_min, t_max]`.
pub fn modulus_profile_central(spec: &Spectrum, t_max: f64, t_min: f64, per_decade: usize) -> Result<ModulusProfile> {
    let radii = log_radii(t_max, t_min, per_decade)?;
    let raw = radii
        .iter()
        .map(|&t| modulus_central(spec, t))
        .collect::<Result<Vec<_>>>()?;
    ModulusProfile::from_raw(radii, raw, 0, 0)
}

/// Sampled modulus profile; row `i` uses seed `seed + i`.
pub fn modulus_profile_sampled<F>(
    f: F,
    radii: Vec<f64>,
    samples: usize,
    seed: u64,
    rule: &HaarRule,
) -> Result<ModulusProfile>
where
    F: Fn(&GroupElement) -> f64 + Sync,
{
    let raw = radii
        .iter()
        .enumerate()
        .map(|(i, &t)| modulus(&f, t, samples, seed.wrapping_add(i as u64), rule))
        .collect::<Result<Vec<_>>>()?;
    ModulusProfile::from_raw(radii, raw, samples, seed)
}

/// Minimum density of the profile grid accepted by [`dini_integral`].
pub const DINI_MIN_PER_DECADE: f64 = 16.0;

/// `∫_{t_min}^{t_0} Ω(f,t)²/t dt` by the trapezoid rule in `log t`, where `t_0` is the
/// largest radius of the profile. `Ω²` is interpolated linearly in `log t` when
/// `t_min` falls between grid radii.
pub fn dini_integral(profile: &ModulusProfile, t_min: f64) -> Result<f64> {
    let t = &profile.t_values;
    let last = *t.last().expect("profiles are nonempty");
    if t_min < last * (1.0 - 1e-12) || t_min > t[0] {
        return Err(Error::InvalidArgument(format!(
            "t_min = {t_min} outside the profile range [{last}, {}]",
            t[0]
        )));
    }
    let density = (t.len() - 1) as f64 / (t[0] / last).log10().max(f64::MIN_POSITIVE);
    if t.len() > 1 && density < DINI_MIN_PER_DECADE * (1.0 - 1e-9) {
        return Err(Error::InvalidArgument(format!(
            "profile has {density:.1} radii per decade, need {DINI_MIN_PER_DECADE}"
        )));
    }
    let sq: Vec<f64> = profile.omega_values.iter().map(|w| w * w).collect();
    let mut total = 0.0;
    for i in 0..t.len() - 1 {
        let (hi, lo) = (t[i], t[i + 1]);
        if hi <= t_min {
            break;
        }
        let (lo_t, lo_v) = if lo >= t_min {
            (lo, sq[i + 1])
        } else {
            let frac = (hi / t_min).ln() / (hi / lo).ln();
            (t_min, sq[i] + frac * (sq[i + 1] - sq[i]))
        };
        total += 0.5 * (sq[i] + lo_v) * (hi / lo_t).ln();
    }
    Ok(total)
}

/// Points per decade used for the Dini integrals of the criterion experiments.
pub const DINI_PER_DECADE: usize = 32;

/// `E_M(f) = sqrt(‖f‖² - Σ_{n ≤ M} c_n²)`, clipped at 0.
pub fn best_approx(spec: &Spectrum, m: usize) -> Result<f64> {
    if m > spec.max_index() {
        return Err(Error::InvalidArgument(format!(
            "coefficients known through {}, need {m}",
            spec.max_index()
        )));
    }
    let kept: f64 = spec.coeffs[..=m].iter().map(|c| c * c).sum();
    Ok((spec.norm_sq - kept).max(0.0).sqrt())
}

/// `E_{2^k}(f) / Ω(f, 2^{-k})`.
pub fn jackson_ratio(spec: &Spectrum, k: u32) -> Result<f64> {
    let t = 0.5f64.powi(k as i32);
    let omega = modulus_central(spec, t)?;
    if omega == 0.0 {
        return Err(Error::DegenerateModulus { t });
    }
    Ok(best_approx(spec, 1usize << k)? / omega)
}

/// Recorded bound on `E_{2^k}(f)/Ω(f, 2^{-k})` for `k = 1..=6`. The theory gives no
/// value. The largest ratio observed is about 1.25, for the sawtooth `f_9` at `k = 3`
/// where `2^k` is still below its oscillation index; the Hölder test functions stay
/// under 0.7.
pub const JACKSON_CONSTANT: f64 = 2.0;

/// `Σ_{j=2}^{J} log(j) c_j²`.
pub fn rm_weighted_sum(spec: &Spectrum, j_max: usize) -> Result<f64> {
    if j_max > spec.max_index() {
        return Err(Error::InvalidArgument(format!(
            "coefficients known through {}, need {j_max}",
            spec.max_index()
        )));
    }
    Ok(spec
        .coeffs
        .iter()
        .enumerate()
        .take(j_max + 1)
        .skip(2)
        .map(|(j, c)| (j as f64).ln() * c * c)
        .sum())
}

/// `max |S_N f(ω(θ)) - f(ω(θ))|` over `grid_points` equally spaced `θ ∈ [δ, π-δ]`.
pub fn uniform_error_central(f: &CentralFn, spec: &Spectrum, cutoff: usize, delta: f64, grid_points: usize) -> Result<f64> {
    if !(0.0..PI / 2.0).contains(&delta) {
        return Err(Error::InvalidArgument(format!("δ = {delta} outside [0, π/2)")));
    }
    if cutoff > spec.max_index() || grid_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "need coefficients through {cutoff} and at least two grid points"
        )));
    }
    let span = PI - 2.0 * delta;
    let errs: Vec<f64> = (0..grid_points)
        .into_par_iter()
        .map(|i| {
            let theta = delta + span * i as f64 / (grid_points - 1) as f64;
            (partial_sum_central(&spec.coeffs, cutoff, TruncationMode::Polyhedral, theta) - f.eval(theta)).abs()
        })
        .collect();
    Ok(errs.into_iter().fold(0.0, f64::max))
}

/// `d(e, x)^α = (2 sin(θ/2))^α`: Hölder of order exactly `α`, with the singular
/// point at the identity.
pub fn distance_power(alpha: f64) -> Result<CentralFn> {
    check_alpha(alpha)?;
    Ok(CentralFn::new(format!("dist_pow_{alpha}"), move |t| (2.0 * (0.5 * t).sin()).powf(alpha)).with_singular(vec![0.0]))
}

/// `|cos θ|^α`: Hölder of order `α`, singular on the conjugacy class of angle `π/2`.
pub fn cos_power(alpha: f64) -> Result<CentralFn> {
    check_alpha(alpha)?;
    Ok(CentralFn::new(format!("cos_pow_{alpha}"), move |t| t.cos().abs().powf(alpha)).with_singular(vec![PI / 2.0]))
}

/// `|θ - π/2|^α`, the profile used for the uniform-convergence probe.
pub fn centered_power(alpha: f64) -> Result<CentralFn> {
    check_alpha(alpha)?;
    Ok(CentralFn::new(format!("centered_pow_{alpha}"), move |t| (t - PI / 2.0).abs().powf(alpha)).with_singular(vec![PI / 2.0]))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::HolderExponent(alpha))
    }
}

/// Exponents of the criterion test functions.
pub const CRITERION_ALPHAS: [f64; 3] = [0.3, 0.5, 0.8];

/// Coefficients kept for the criterion experiments, enough for `J = 2^12`.
pub const CRITERION_J_MAX: usize = 1 << 12;

/// `∫_{t_min}^{1} Ω²/t dt` for a spectrum, on a fresh profile.
pub fn dini_central(spec: &Spectrum, t_min: f64) -> Result<f64> {
    let profile = modulus_profile_central(spec, 1.0, t_min, DINI_PER_DECADE)?;
    dini_integral(&profile, t_min)
}
