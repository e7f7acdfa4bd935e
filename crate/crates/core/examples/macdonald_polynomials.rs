//! Macdonald polynomials by Gram-Schmidt, their norms and the refined S and T matrices.

use torus_homology::macdonald::sym::gram_schmidt_norm;
use torus_homology::macdonald::{macdonald_norm, macdonald_poly, refined_st, Basis};
use torus_homology::tableaux::{partitions_of, Partition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=3 {
        for lambda in partitions_of(n) {
            let m = macdonald_poly(&lambda)?;
            println!("M{lambda} = {m}");
            let gs = gram_schmidt_norm(&lambda)?;
            let closed = macdonald_norm(&lambda);
            println!("  <M,M> = {closed} (agrees: {})", gs.sub(&closed).is_zero());
        }
    }
    let p = macdonald_poly(&Partition::parse("2")?)?.to_basis(Basis::Powersum)?;
    println!("M(2) in power sums: {p}");

    let st = refined_st(2, 2)?;
    for (i, l) in st.index.iter().enumerate() {
        let row: Vec<String> = st.s[i].iter().map(|x| x.to_string()).collect();
        println!("T{l} = {}; S row: {}", st.t[i], row.join(", "));
    }
    Ok(())
}
