//! `(1/π)∫|D_{n+1}|` grows like `(4/π²) log(n+1)` plus a constant near 1.27.

use std::f64::consts::PI;

use su2_fourier::fourier::lebesgue_constant;

fn main() {
    println!("n = 0: {:.15} (exact {:.15})", lebesgue_constant(0), 1.0 / 3.0 + 2.0 * 3f64.sqrt() / PI);
    for n in [1usize, 10, 100, 1000, 10_000, 100_000] {
        let l = lebesgue_constant(n);
        let main_term = 4.0 / (PI * PI) * ((n + 1) as f64).ln();
        println!("n = {n:>6}: L = {l:.10}  gap = {:.10}", l - main_term);
    }
}
