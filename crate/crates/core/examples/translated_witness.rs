//! `S_n(L_{z⁻¹} f_n)(z)` from 3D matrix coefficients equals `S_n f_n(e)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use su2_fourier::divergence::{divergence_table, DEFAULT_DIVERGENCE_ORDER};
use su2_fourier::group::GroupElement;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut points = vec![GroupElement::IDENTITY];
    points.extend((0..2).map(|_| GroupElement::random(&mut rng)));
    let rows = divergence_table(&points, &[4, 8, 16], DEFAULT_DIVERGENCE_ORDER).unwrap();
    for r in rows {
        println!(
            "z = ({:+.3}{:+.3}i, {:+.3}{:+.3}i) n = {:>2}: translated {:.8} at e {:.8} gap {:.1e}",
            r.point[0], r.point[1], r.point[2], r.point[3], r.n, r.translated, r.at_identity, r.relative_gap
        );
    }
}
