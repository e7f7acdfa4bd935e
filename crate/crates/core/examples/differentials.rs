//! Differentials on Koszul models and their homology.

use torus_homology::daha::TorusKnot;
use torus_homology::koszul::{apply_differential, graded_basis, Differential};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let runs = [
        (2, 3, 1, "cancel:2"),
        (2, 3, 2, "colored+:1"),
        (3, 4, 1, "dN:2"),
        (3, 4, 1, "dN:0"),
    ];
    for (m, n, r, d) in runs {
        let mut b = graded_basis(&TorusKnot::new(m, n)?, r, true)?;
        let h = apply_differential(&mut b, Differential::parse(d)?)?;
        println!(
            "T({m},{n}) r={r} {d}: dim {} -> homology {} (rank {})",
            b.dim(),
            h.total,
            h.rank
        );
        for ((a, q), k) in &h.dims {
            println!("  a^{a} q^{q}: {k}");
        }
    }
    Ok(())
}
