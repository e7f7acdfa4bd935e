//! Koszul model bases for torus knots, with their Poincaré polynomials.

use std::time::Instant;

use torus_homology::daha::TorusKnot;
use torus_homology::koszul::graded_basis;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, n, r) in [
        (2, 3, 1),
        (2, 3, 2),
        (3, 4, 1),
        (2, 5, 1),
        (3, 5, 1),
        (4, 5, 1),
        (2, 3, 3),
        (3, 4, 2),
    ] {
        let t = Instant::now();
        let b = graded_basis(&TorusKnot::new(m, n)?, r, true)?;
        println!("T({m},{n}) r={r} dim {} [{:.2?}]", b.dim(), t.elapsed());
        println!("  basis: {}", b.labels().join(", "));
        println!("  character: {}", b.normalized_character());
    }
    Ok(())
}
