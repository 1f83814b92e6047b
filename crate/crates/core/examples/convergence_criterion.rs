//! Dini integral, log-weighted block energies and Jackson ratios for Hölder
//! test functions.

use su2_fourier::convergence::{
    cos_power, dini_central, distance_power, jackson_ratio, rm_weighted_sum, Spectrum, CRITERION_ALPHAS,
};

fn main() {
    for alpha in CRITERION_ALPHAS {
        for f in [distance_power(alpha).unwrap(), cos_power(alpha).unwrap()] {
            let spec = Spectrum::from_central(&f, 4096);
            let dini = [1e-2, 1e-3, 1e-4].map(|t| dini_central(&spec, t).unwrap());
            let rm = [1 << 8, 1 << 10, 1 << 12].map(|j| rm_weighted_sum(&spec, j).unwrap());
            let jackson: Vec<String> = (1..=6).map(|k| format!("{:.3}", jackson_ratio(&spec, k).unwrap())).collect();
            println!("{}", spec.label);
            println!("  dini   {:.8} {:.8} {:.8}", dini[0], dini[1], dini[2]);
            println!("  rm     {:.10} {:.10} {:.10}", rm[0], rm[1], rm[2]);
            println!("  jackson {}", jackson.join(" "));
        }
    }
}
