//! Polyhedral and spherical partial sums of a sawtooth witness.

use su2_fourier::divergence::sawtooth;
use su2_fourier::fourier::partial_sum_central;
use su2_fourier::repr::TruncationMode;

fn main() {
    let saw = sawtooth(6).unwrap();
    let coeffs = saw.coefficients(65);
    for theta in [0.0, 0.9, 2.5] {
        println!("θ = {theta}: f = {:.6}", saw.eval(theta));
        for n in [2usize, 6, 16, 64] {
            let poly = partial_sum_central(&coeffs, n, TruncationMode::Polyhedral, theta);
            let sph = partial_sum_central(&coeffs, n - 1, TruncationMode::Spherical, theta);
            println!("  S_{n:<2} = {poly:+.6}   spherical S~_{:<2} = {sph:+.6}", n - 1);
        }
    }
}
