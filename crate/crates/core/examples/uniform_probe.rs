//! Uniform error of partial sums of a central Hölder function, near and away
//! from the poles `±e`.

use su2_fourier::convergence::{centered_power, uniform_error_central, Spectrum};

fn main() {
    let f = centered_power(0.5).unwrap();
    let spec = Spectrum::from_central(&f, 512);
    for n in [32usize, 64, 128, 256, 512] {
        let away = uniform_error_central(&f, &spec, n, 0.3, 4001).unwrap();
        let all = uniform_error_central(&f, &spec, n, 0.0, 4001).unwrap();
        println!("N = {n:>3}: max error on [0.3, π-0.3] {away:.3e}, on [0, π] {all:.3e}");
    }
}
