//! Reduced superpolynomials of small torus knots in homological variables.

use std::time::Instant;

use torus_homology::daha::{homological_reduced, TorusKnot};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, n) in [(2, 3), (3, 2), (2, 5), (3, 4), (4, 3), (3, 5), (4, 5)] {
        let t = Instant::now();
        let p = homological_reduced(TorusKnot::new(m, n)?)?;
        println!("T({m},{n}) [{:.2?}, {} terms]: {p}", t.elapsed(), p.len());
    }
    Ok(())
}
