//! Every route on a few torus knots, reconciled through the normalization registry.

use torus_homology::crosscheck::{crosscheck, default_q_order, NormalizationRegistry};
use torus_homology::emit::{emit, Format};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut registry = NormalizationRegistry::embedded();
    for (m, n, r) in [(2, 3, 1), (3, 2, 1), (3, 4, 1), (2, 3, 2)] {
        let report = crosscheck(m, n, r, default_q_order(m, n), &mut registry)?;
        println!(
            "T({m},{n}) r={r}: {}",
            if report.passed() { "pass" } else { "FAIL" }
        );
        print!("{}", String::from_utf8(emit(&report, Format::Table))?);
    }
    if registry.is_dirty() {
        println!("new registry keys:\n{}", registry.to_json());
    }
    Ok(())
}
