//! Characters of finite-dimensional rational Cherednik modules and the
//! comparison with Hilbert-scheme Euler characteristics.

use torus_homology::cherednik::{check_quasis, irreducible_character};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (m, n) in [(3, 2), (5, 2), (2, 3), (4, 3), (5, 3), (3, 4)] {
        let ch = irreducible_character(m, n, 40)?;
        println!(
            "L({m}/{n}): dim {} q-character {}",
            ch.total_dim(),
            ch.q_character()
        );
        for p in &ch.pieces {
            println!(
                "  degree {:2}: dim {:3} exterior multiplicities {:?} other {}",
                p.degree, p.dim, p.mult, p.other
            );
        }
    }
    for (m, n, order) in [(3, 2, 20), (5, 2, 24), (2, 3, 20), (4, 3, 24), (5, 3, 24)] {
        let r = check_quasis(m, n, order)?;
        println!(
            "T({m},{n}) through q^{order}: Hilbert / Cherednik = {}",
            r.ratio
        );
    }
    Ok(())
}
