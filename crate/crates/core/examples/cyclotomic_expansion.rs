//! Cyclotomic expansion of the colored 6_2 and 6_3 superpolynomials.

use torus_homology::algebra::Poly;
use torus_homology::homstruct::{
    closed_form_coefficient, colored_superpoly_poly, cyclotomic_extract, divisibility_check,
    habiro_coefficients, predict, TwistFamilyKnot,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for knot in [TwistFamilyKnot::K62, TwistFamilyKnot::K63] {
        let values: Vec<(usize, Poly)> = (0..=2)
            .map(|r| (r, colored_superpoly_poly(knot, r)))
            .collect();
        let mut data = cyclotomic_extract(knot.name(), &values)?;
        println!("{}: prefactor {}", knot.name(), data.prefactor);
        for (k, c) in data.coefficients.iter().enumerate() {
            println!("  C_{k} = {c}");
            println!(
                "  closed form agrees: {}",
                *c == closed_form_coefficient(knot, k)
            );
        }
        for n in 1..=3 {
            for k in 1..=2 {
                let rep = divisibility_check(&data, n, k)?;
                println!("  a = q^{n}, k = {k}: divisible {}", rep.pass);
            }
        }
        println!(
            "  Habiro coefficients at a = q^2: {}",
            habiro_coefficients(&data, 2)?.len()
        );
        data.coefficients.push(closed_form_coefficient(knot, 3));
        println!(
            "  color 3 re-predicted: {}",
            predict(&data, 3)? == colored_superpoly_poly(knot, 3)
        );
    }
    Ok(())
}
