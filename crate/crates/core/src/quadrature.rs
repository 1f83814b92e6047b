//! Quadrature for the two probability measures used throughout the crate.
//!
//! * [`WeylRule`] integrates central functions against `(2/π) sin²θ dθ` on `[0, π]`.
//! * [`HaarRule`] integrates arbitrary functions against Haar measure via Euler angles.
//!
//! All sums run in a fixed order, so results do not depend on thread scheduling.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::group::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    Weyl1d,
    HaarEuler3d,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(points: usize) -> Vec<(f64, f64)> {
    let points = NonZeroUsize::new(points).expect("Gauss–Legendre rule needs at least one node");
    let mut pairs = GaussLegendre::new(points).as_node_weight_pairs().to_vec();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs
}

/// Gauss–Legendre rule mapped to `[lo, hi]`.
pub fn gauss_legendre_on(nodes: &[(f64, f64)], lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    nodes.iter().map(move |&(x, w)| (mid + half * x, half * w))
}

/// `∫_lo^hi f` by a fixed Gauss–Legendre rule.
pub fn integrate_gl<F: FnMut(f64) -> f64>(nodes: &[(f64, f64)], lo: f64, hi: f64, mut f: F) -> f64 {
    gauss_legendre_on(nodes, lo, hi).map(|(x, w)| w * f(x)).sum()
}

/// Nodes and weights for the Weyl measure `(2/π) sin²θ dθ` on `[0, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl WeylRule {
    pub fn kind(&self) -> RuleKind {
        RuleKind::Weyl1d
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }
}

/// The Gauss rule of the Weyl measure.
///
/// With `x = cos θ` the measure becomes `(2/π) sqrt(1 - x²) dx`, whose Gauss rule
/// is Gauss–Chebyshev of the second kind: `θ_j = jπ/(m+1)`,
/// `w_j = (2/(m+1)) sin²θ_j`. It integrates `p(cos θ)` exactly for polynomials of
/// degree `≤ 2m - 1`; in particular `⟨χ_n, χ_k⟩` is exact for `n + k ≤ 2m - 1`.
pub fn weyl_grid(order: usize) -> WeylRule {
    assert!(order >= 2, "weyl_grid needs order >= 2");
    let h = PI / (order + 1) as f64;
    let scale = 2.0 / (order + 1) as f64;
    let (nodes, weights) = (1..=order)
        .map(|j| {
            let t = j as f64 * h;
            let s = t.sin();
            (t, scale * s * s)
        })
        .unzip();
    WeylRule { nodes, weights }
}

/// Composite Gauss–Legendre rule for the Weyl measure.
///
/// The interval `[0, π]` is cut at every point of `breaks` and each piece is
/// further split into equal cells no wider than `max_cell`. Cells touching a
/// point listed in `graded` are refined geometrically toward it, which keeps
/// spectral accuracy for integrands with algebraic singularities there.
pub fn weyl_composite(breaks: &[f64], max_cell: f64, nodes_per_cell: usize, graded: &[f64]) -> WeylRule {
    let gl = gauss_legendre(nodes_per_cell);
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .chain(graded.iter().copied())
        .filter(|t| *t > 0.0 && *t < PI)
        .chain([0.0, PI])
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-15);

    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut push_cell = |lo: f64, hi: f64| {
        for (t, w) in gauss_legendre_on(&gl, lo, hi) {
            let s = t.sin();
            nodes.push(t);
            weights.push(w * 2.0 / PI * s * s);
        }
    };

    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let cells = ((hi - lo) / max_cell).ceil().max(1.0) as usize;
        let h = (hi - lo) / cells as f64;
        for i in 0..cells {
            let a = lo + i as f64 * h;
            let b = if i + 1 == cells { hi } else { a + h };
            let near_lo = graded.iter().any(|g| (g - a).abs() < 1e-15);
            let near_hi = graded.iter().any(|g| (g - b).abs() < 1e-15);
            for (x, y) in graded_cells(a, b, near_lo, near_hi) {
                push_cell(x, y);
            }
        }
    }
    WeylRule { nodes, weights }
}

const GRADING_RATIO: f64 = 0.5;
const GRADING_LEVELS: usize = 56;

fn graded_cells(a: f64, b: f64, toward_lo: bool, toward_hi: bool) -> Vec<(f64, f64)> {
    match (toward_lo, toward_hi) {
        (false, false) => vec![(a, b)],
        (true, true) => {
            let m = 0.5 * (a + b);
            let mut v = graded_cells(a, m, true, false);
            v.extend(graded_cells(m, b, false, true));
            v
        }
        (true, false) => {
            let mut out = Vec::with_capacity(GRADING_LEVELS + 1);
            let mut edge = b;
            for _ in 0..GRADING_LEVELS {
                let inner = a + GRADING_RATIO * (edge - a);
                out.push((inner, edge));
                edge = inner;
            }
            out.push((a, edge));
            out.reverse();
            out
        }
        (false, true) => graded_cells(-b, -a, true, false)
            .into_iter()
            .rev()
            .map(|(x, y)| (-y, -x))
            .collect(),
    }
}

/// Product rule for Haar measure in Euler angles `(α, β, γ)`.
///
/// `α` and `γ` use the same spacing `2π/m` over `[0, 2π)` and `[0, 4π)`. That node
/// set is a lattice rule on the torus traced out by `(α, γ)`, so it is exact for
/// every phase `e^{i(pα + qγ)/2}` with `|p|, |q| < 2m`. In `β` the rule is
/// Gauss–Legendre in `cos β`, which absorbs the `sin β` density.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarRule {
    order: usize,
    alpha: Vec<f64>,
    gamma: Vec<f64>,
    /// `(β, weight)` with the weight already including the `α, γ` normalization.
    beta: Vec<(f64, f64)>,
}

impl HaarRule {
    pub fn kind(&self) -> RuleKind {
        RuleKind::HaarEuler3d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn beta(&self) -> &[(f64, f64)] {
        &self.beta
    }

    pub fn len(&self) -> usize {
        self.alpha.len() * self.beta.len() * self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every node as `((α, β, γ), weight)`, `β` outermost then `α` then `γ`.
    pub fn nodes(&self) -> impl Iterator<Item = ((f64, f64, f64), f64)> + '_ {
        self.beta.iter().flat_map(move |&(b, w)| {
            self.alpha
                .iter()
                .flat_map(move |&a| self.gamma.iter().map(move |&g| ((a, b, g), w)))
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = (GroupElement, f64)> + '_ {
        self.nodes()
            .map(|((a, b, g), w)| (GroupElement::from_euler(a, b, g), w))
    }

    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&GroupElement) -> f64 + Sync,
    {
        let partial: Vec<f64> = self
            .beta
            .par_iter()
            .map(|&(b, w)| {
                let mut acc = 0.0;
                for &a in &self.alpha {
                    for &g in &self.gamma {
                        acc += f(&GroupElement::from_euler(a, b, g));
                    }
                }
                w * acc
            })
            .collect();
        partial.iter().sum()
    }

    pub fn integrate_complex<F>(&self, f: F) -> Complex64
    where
        F: Fn(&GroupElement) -> Complex64 + Sync,
    {
        let partial: Vec<Complex64> = self
            .beta
            .par_iter()
            .map(|&(b, w)| {
                let mut acc = Complex64::new(0.0, 0.0);
                for &a in &self.alpha {
                    for &g in &self.gamma {
                        acc += f(&GroupElement::from_euler(a, b, g));
                    }
                }
                acc * w
            })
            .collect();
        partial.iter().sum()
    }
}

pub fn haar_grid(order: usize) -> HaarRule {
    assert!(order >= 2, "haar_grid needs order >= 2");
    let h = 2.0 * PI / order as f64;
    let alpha = (0..order).map(|i| i as f64 * h).collect();
    let gamma = (0..2 * order).map(|i| i as f64 * h).collect();
    let angular = 1.0 / (2 * order * order) as f64;
    let beta = gauss_legendre(order)
        .into_iter()
        .map(|(u, w)| (u.clamp(-1.0, 1.0).acos(), 0.5 * w * angular))
        .collect();
    HaarRule {
        order,
        alpha,
        gamma,
        beta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::char_eval;

    #[test]
    fn weyl_grid_is_probability_measure() {
        for m in [2, 3, 17, 200] {
            let total: f64 = weyl_grid(m).weights().iter().sum();
            assert!((total - 1.0).abs() < 1e-14, "m={m} total={total}");
        }
    }

    #[test]
    fn weyl_grid_character_products() {
        let rule = weyl_grid(32);
        let chi1_sq = rule.integrate(|t| {
            let v = 2.0 * t.cos();
            v * v
        });
        assert!((chi1_sq - 1.0).abs() < 1e-12);
        let cross = rule.integrate(|t| char_eval(5, t) * char_eval(7, t));
        assert!(cross.abs() < 1e-12);
    }

    #[test]
    fn weyl_grid_exact_for_cosines() {
        for m in [4, 9, 30] {
            let rule = weyl_grid(m);
            for k in 0..=(2 * m - 4) {
                let got = rule.integrate(|t| (k as f64 * t).cos());
                // (2/π)∫ cos(kθ) sin²θ dθ = δ_{k0} - ½ δ_{k2}
                let exact = match k {
                    0 => 1.0,
                    2 => -0.5,
                    _ => 0.0,
                };
                assert!((got - exact).abs() < 1e-13, "m={m} k={k} got={got}");
            }
        }
    }

    #[test]
    fn composite_rule_matches_gauss_rule_on_smooth_input() {
        let comp = weyl_composite(&[1.0, 2.0], 0.3, 12, &[]);
        let total: f64 = comp.weights().iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
        let f = |t: f64| (3.0 * t).cos().exp();
        let g = weyl_grid(64).integrate(f);
        assert!((comp.integrate(f) - g).abs() < 1e-13);
    }

    #[test]
    fn composite_grading_resolves_algebraic_singularity() {
        let mid = PI / 2.0;
        let rule = weyl_composite(&[], 0.25, 12, &[mid]);
        let fine = weyl_composite(&[], 0.05, 20, &[mid]);
        let f = |t: f64| (t - mid).abs().powf(0.3);
        assert!((rule.integrate(f) - fine.integrate(f)).abs() < 1e-12);
    }

    #[test]
    fn haar_grid_total_mass() {
        for m in [2, 5, 16] {
            let total = haar_grid(m).integrate(|_| 1.0);
            assert!((total - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn haar_grid_low_moments() {
        let rule = haar_grid(12);
        assert!(rule.integrate(|x| x.trace()).abs() < 1e-10);
        assert!((rule.integrate(|x| x.a().norm_sqr()) - 0.5).abs() < 1e-10);
        assert!(rule.integrate_complex(|x| x.a() * x.b()).norm() < 1e-12);
    }

    #[test]
    fn haar_grid_matches_monte_carlo_for_a_squared() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let n = 200_000;
        let mc: f64 = (0..n)
            .map(|_| GroupElement::random(&mut rng).a().norm_sqr())
            .sum::<f64>()
            / n as f64;
        // |a|² is uniform on [0,1] under Haar measure; standard error ≈ 6.5e-4.
        assert!((mc - 0.5).abs() < 4e-3);
    }

    #[test]
    fn haar_grid_is_invariant_under_left_translation() {
        let rule = haar_grid(20);
        let z = GroupElement::from_euler(0.4, 1.3, 2.2);
        let f = |x: &GroupElement| (x.a().re * 3.0).cos() + x.b().im.powi(2);
        let plain = rule.integrate(f);
        let shifted = rule.integrate(|x| f(&(z * *x)));
        assert!((plain - shifted).abs() < 1e-10);
    }
}
