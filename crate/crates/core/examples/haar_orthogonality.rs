//! Schur orthogonality of representation matrix entries on the Haar grid.

use su2_fourier::quadrature::haar_grid;
use su2_fourier::repr::repr_matrix;

fn main() {
    let rule = haar_grid(10);
    println!("{} nodes", rule.len());
    for (n, m) in [(1usize, 1usize), (2, 2), (3, 1), (4, 4)] {
        let v = rule.integrate_complex(|x| repr_matrix(n, x).unwrap()[(0, 1)] * repr_matrix(m, x).unwrap()[(0, 1)].conj());
        println!("∫ π_{n}[0,1] conj(π_{m}[0,1]) = {:+.3e}{:+.3e}i", v.re, v.im);
    }
}
