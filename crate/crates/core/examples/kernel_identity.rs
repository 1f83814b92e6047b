//! Direct sum of characters against the closed form of the Dirichlet kernel.

use std::f64::consts::PI;

use su2_fourier::fourier::{dirichlet_closed, dirichlet_direct};

fn main() {
    println!("{:>5} {:>14} {:>14}", "N", "max |diff|", "1e-8 (N+1)^3");
    for n in [0usize, 1, 5, 20, 50, 100, 200] {
        let worst = (0..2000)
            .map(|j| 1e-3 + (PI - 2e-3) * j as f64 / 1999.0)
            .map(|t| (dirichlet_direct(n, t) - dirichlet_closed(n, t)).abs())
            .fold(0.0, f64::max);
        println!("{n:>5} {worst:>14.3e} {:>14.3e}", 1e-8 * ((n + 1) as f64).powi(3));
    }
    // At the identity the kernel is Σ (n+1)², with no pole.
    let n = 10;
    println!("D_{n}(0) = {} (sum of squares {})", dirichlet_closed(n, 0.0), (1..=n + 1).map(|k| k * k).sum::<usize>());
}
