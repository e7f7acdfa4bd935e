//! Self-symmetry, thinness, exponential growth and Q-regrading of colored superpolynomials.

use torus_homology::daha::TorusKnot;
use torus_homology::homstruct::{
    colored_superpoly_62_63, verify_growth, verify_self_symmetry, verify_thin, QuadGradedSpace,
    TwistFamilyKnot, Variant,
};
use torus_homology::koszul::graded_basis;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = TorusKnot::new(2, 3)?;
    let r1 = QuadGradedSpace::from_koszul(&graded_basis(&k, 1, true)?)?.regrade(Variant::Tilde)?;
    let r2 = QuadGradedSpace::from_koszul(&graded_basis(&k, 2, true)?)?.regrade(Variant::Tilde)?;
    for rep in [
        verify_self_symmetry(&r2),
        verify_thin(&r2),
        verify_growth(&r2, &r1),
    ] {
        println!(
            "trefoil r=2 {}: {} {}",
            rep.property,
            if rep.pass { "pass" } else { "fail" },
            rep.detail
        );
    }
    let back = r2.regrade(Variant::Plain)?.regrade(Variant::Tilde)?;
    println!("Q-regrading round trip: {}", back == r2);

    for knot in [TwistFamilyKnot::K62, TwistFamilyKnot::K63] {
        let base = colored_superpoly_62_63(knot, 1)?;
        for r in 2..=3 {
            let s = colored_superpoly_62_63(knot, r)?;
            let sym = verify_self_symmetry(&s);
            let growth = verify_growth(&s, &base);
            println!(
                "{} r={r}: dim {}, self-symmetry {}, growth {}",
                knot.name(),
                s.dim(),
                sym.pass,
                growth.pass
            );
        }
    }
    Ok(())
}
