//! Irreducible representations of SU(2).
//!
//! `π_n` acts on homogeneous polynomials of degree `n` in two variables by
//! `(π_n(g) P)(v) = P(gᵀ v)`. In the orthonormal basis
//! `e_k = x^{n-k} y^k / sqrt((n-k)! k!)` the action is unitary and `π_1(g) = g`.
//! The character is `χ_n(ω(θ)) = sin((n+1)θ) / sin θ = U_n(cos θ)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::GroupElement;

pub type CMatrix = DMatrix<Complex64>;

/// Largest `n` accepted by [`repr_matrix`]; beyond this the binomial expansion
/// loses too many digits in double precision.
pub const MAX_MATRIX_DEGREE: usize = 64;

/// Below this value of `|sin θ|` characters are evaluated by recurrence.
pub const POLE_THRESHOLD: f64 = 1e-4;

/// `d_n = n + 1`.
pub fn degree(n: usize) -> usize {
    n + 1
}

/// `χ_n(ω(θ))`, including the limits `n+1` at `θ = 0` and `(-1)^n (n+1)` at `θ = π`.
pub fn char_eval(n: usize, theta: f64) -> f64 {
    let s = theta.sin();
    if s.abs() < POLE_THRESHOLD {
        chebyshev_u(n, theta.cos())
    } else {
        ((n + 1) as f64 * theta).sin() / s
    }
}

/// `U_n(x)` by the three-term recurrence.
pub fn chebyshev_u(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `[χ_0(θ), …, χ_{n_max}(θ)]` by the Chebyshev recurrence.
pub fn characters(n_max: usize, theta: f64) -> Vec<f64> {
    let x2 = 2.0 * theta.cos();
    let mut out = Vec::with_capacity(n_max + 1);
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..=n_max {
        out.push(cur);
        let next = x2 * cur - prev;
        prev = cur;
        cur = next;
    }
    out
}

fn factorials() -> &'static [f64; MAX_MATRIX_DEGREE + 1] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[f64; MAX_MATRIX_DEGREE + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [1.0; MAX_MATRIX_DEGREE + 1];
        for i in 1..=MAX_MATRIX_DEGREE {
            t[i] = t[i - 1] * i as f64;
        }
        t
    })
}

fn binomial(f: &[f64], n: usize, k: usize) -> f64 {
    f[n] / (f[k] * f[n - k])
}

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..=n {
        out.push(p);
        p *= z;
    }
    out
}

/// The `(n+1)×(n+1)` unitary matrix `π_n(x)`.
pub fn repr_matrix(n: usize, x: &GroupElement) -> Result<CMatrix> {
    if n > MAX_MATRIX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let f = factorials();
    let (a, b) = (x.a(), x.b());
    let pa = powers(a, n);
    let pa_bar = powers(a.conj(), n);
    let pb = powers(b, n);
    let pmb_bar = powers(-b.conj(), n);

    let mut m = CMatrix::zeros(n + 1, n + 1);
    for k in 0..=n {
        let col_norm = (f[n - k] * f[k]).sqrt();
        for j in 0..=n {
            // y-degree j = s + r with s ≤ n-k from the first factor, r ≤ k from the second.
            let s_lo = j.saturating_sub(k);
            let s_hi = j.min(n - k);
            let mut acc = Complex64::new(0.0, 0.0);
            for s in s_lo..=s_hi {
                let r = j - s;
                let coeff = binomial(f, n - k, s) * binomial(f, k, r);
                acc += pa[n - k - s] * pmb_bar[s] * pb[k - r] * pa_bar[r] * coeff;
            }
            m[(j, k)] = acc * ((f[n - j] * f[j]).sqrt() / col_norm);
        }
    }
    Ok(m)
}

/// `R_n(β) = π_n(x(0, β, 0))`, real. For Euler angles,
/// `π_n(x(α,β,γ))_{jk} = e^{iα(n-2j)/2} R_n(β)_{jk} e^{iγ(n-2k)/2}`.
pub fn small_d_matrix(n: usize, beta: f64) -> Result<DMatrix<f64>> {
    let x = GroupElement::from_euler(0.0, beta, 0.0);
    Ok(repr_matrix(n, &x)?.map(|z| z.re))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TruncationMode {
    Polyhedral,
    Spherical,
}

impl std::str::FromStr for TruncationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polyhedral" => Ok(TruncationMode::Polyhedral),
            "spherical" => Ok(TruncationMode::Spherical),
            other => Err(Error::InvalidArgument(format!("unknown truncation mode `{other}`"))),
        }
    }
}

/// The representations kept by the `N`-th partial sum.
///
/// With `ω` the fundamental weight, `λ_m = m ω` and `ρ = ω`. The norm on the
/// weight space is scaled so that `‖λ_m - ρ‖ = |m - 1|`, which gives
///
/// * polyhedral: `{m : m ≤ N} = {0, …, N}`
/// * spherical: `{m : |m - 1| ≤ N}`, i.e. `{1}` for `N = 0` and `{0, …, N+1}` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationSet {
    pub mode: TruncationMode,
    pub cutoff: usize,
    pub members: Vec<usize>,
}

impl TruncationSet {
    pub fn max_index(&self) -> usize {
        *self.members.last().expect("truncation sets are never empty")
    }

    pub fn contains(&self, n: usize) -> bool {
        self.members.binary_search(&n).is_ok()
    }

    /// The shells `Γ_j`, `j = 0..=cutoff`, whose union is the set.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        (0..=self.cutoff).map(|j| block(self.mode, j)).collect()
    }
}

/// Representations in the shell `Γ_j` (polyhedral: `(j-1)ω < λ ≤ jω`;
/// spherical: `j-1 < ‖λ - ρ‖ ≤ j`).
pub fn block(mode: TruncationMode, j: usize) -> Vec<usize> {
    match (mode, j) {
        (TruncationMode::Polyhedral, j) => vec![j],
        (TruncationMode::Spherical, 0) => vec![1],
        (TruncationMode::Spherical, 1) => vec![0, 2],
        (TruncationMode::Spherical, j) => vec![j + 1],
    }
}

pub fn truncation_set(mode: TruncationMode, cutoff: usize) -> TruncationSet {
    let members = match mode {
        TruncationMode::Polyhedral => (0..=cutoff).collect(),
        TruncationMode::Spherical if cutoff == 0 => vec![1],
        TruncationMode::Spherical => (0..=cutoff + 1).collect(),
    };
    TruncationSet {
        mode,
        cutoff,
        members,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trivial_character() {
        for t in [0.0, 0.3, PI / 2.0, 3.0, PI] {
            assert_eq!(char_eval(0, t), 1.0);
        }
    }

    #[test]
    fn character_limits_at_poles() {
        for n in 0..40 {
            assert!((char_eval(n, 0.0) - (n + 1) as f64).abs() < 1e-12);
            assert!((char_eval(n, 1e-9) - (n + 1) as f64).abs() < 1e-9);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((char_eval(n, PI) - sign * (n + 1) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn character_recurrence_at_generic_angle() {
        let t: f64 = 0.9;
        let lhs = char_eval(7, t);
        let rhs = 2.0 * t.cos() * char_eval(6, t) - char_eval(5, t);
        assert!((lhs - rhs).abs() < 1e-13);
    }

    #[test]
    fn recurrence_table_matches_closed_form() {
        for t in [1e-5, 0.2, 1.4, 2.9, PI - 1e-6] {
            let table = characters(300, t);
            for (n, v) in table.iter().enumerate() {
                assert!((v - char_eval(n, t)).abs() < 1e-9 * (n + 1) as f64, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn defining_representation_is_identity_map() {
        let x = GroupElement::from_euler(0.7, 2.1, 5.5);
        let m = repr_matrix(1, &x).unwrap();
        let g = x.matrix();
        for i in 0..2 {
            for j in 0..2 {
                assert!((m[(i, j)] - g[i][j]).norm() < 1e-15);
            }
        }
        let m0 = repr_matrix(0, &x).unwrap();
        assert_eq!(m0.shape(), (1, 1));
        assert!((m0[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn degree_cap_is_enforced() {
        assert_eq!(
            repr_matrix(65, &GroupElement::IDENTITY),
            Err(Error::DegreeTooLarge(65))
        );
    }

    #[test]
    fn euler_phase_factorization() {
        let (al, be, ga) = (1.2, 0.8, 3.7);
        let n = 5;
        let full = repr_matrix(n, &GroupElement::from_euler(al, be, ga)).unwrap();
        let d = small_d_matrix(n, be).unwrap();
        for j in 0..=n {
            for k in 0..=n {
                let phase = Complex64::from_polar(
                    1.0,
                    0.5 * (al * (n as f64 - 2.0 * j as f64) + ga * (n as f64 - 2.0 * k as f64)),
                );
                assert!((full[(j, k)] - phase * d[(j, k)]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn truncation_examples() {
        use TruncationMode::*;
        assert_eq!(truncation_set(Polyhedral, 3).members, vec![0, 1, 2, 3]);
        assert_eq!(truncation_set(Spherical, 0).members, vec![1]);
        assert_eq!(truncation_set(Spherical, 3).members, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn spherical_membership_by_brute_force() {
        for cutoff in 0..30usize {
            let set = truncation_set(TruncationMode::Spherical, cutoff);
            let brute: Vec<usize> = (0..200usize)
                .filter(|&m| (m as i64 - 1).unsigned_abs() as usize <= cutoff)
                .collect();
            assert_eq!(set.members, brute);
        }
    }

    #[test]
    fn blocks_partition_the_set() {
        for mode in [TruncationMode::Polyhedral, TruncationMode::Spherical] {
            for cutoff in 0..20 {
                let set = truncation_set(mode, cutoff);
                let mut union: Vec<usize> = set.blocks().into_iter().flatten().collect();
                union.sort_unstable();
                assert_eq!(union, set.members, "{mode:?} N={cutoff}");
            }
        }
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("spherical".parse::<TruncationMode>(), Ok(TruncationMode::Spherical));
        assert!("cubic".parse::<TruncationMode>().is_err());
    }
}
