//! Partitions, hook lengths and standard Young tableaux.

use torus_homology::tableaux::{partitions_of, syt_of, Partition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=6 {
        let total: usize = partitions_of(n).iter().map(|p| syt_of(p).count()).sum();
        println!(
            "n = {n}: {} partitions, {total} standard tableaux",
            partitions_of(n).len()
        );
    }
    let shape = Partition::parse("3,2")?;
    println!(
        "{shape}: hook product {}, f = {}",
        shape.hook_product(),
        shape.syt_count()
    );
    for t in syt_of(&shape) {
        println!("  {:?}", t.rows());
    }
    Ok(())
}
