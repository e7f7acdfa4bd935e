//! HOMFLY polynomials of torus knots from nested Hilbert schemes of x^m = y^n.

use std::time::Instant;

use torus_homology::daha::TorusKnot;
use torus_homology::hilbert::{os_reduced, semigroup};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, n) in [(2, 3), (2, 5), (3, 4), (3, 5), (2, 7)] {
        let k = TorusKnot::new(m, n)?;
        let s = semigroup(m, n)?;
        let q_order = 2 * k.milnor() as usize + 10;
        let t = Instant::now();
        let p = os_reduced(k, q_order)?;
        println!(
            "{k}: {} gaps, Frobenius {} [{:.2?}]",
            s.gaps.len(),
            s.frobenius(),
            t.elapsed()
        );
        println!("  {p}");
    }
    Ok(())
}
