//! Laurent polynomials, exact division and truncated power series.

use torus_homology::algebra::series::series_pow;
use torus_homology::algebra::{int, rat, Poly, TruncatedSeries};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vars = ["a", "q"];
    let a = Poly::var(&vars, "a");
    let q = Poly::var(&vars, "q");
    let one = Poly::one(&vars);

    let f = &(&one - &(&a * &a)) * &(&q + &q.pow(3).scale(&rat(1, 2)));
    println!("f = {f}");
    println!("f / (1 - a^2) = {}", f.exact_div(&(&one - &(&a * &a)))?);
    println!("f at a = 2, q = 1/3: {}", f.eval(&[int(2), rat(1, 3)])?);
    println!("json: {}", serde_json::to_string(&f)?);

    let base = TruncatedSeries::new(
        "q",
        6,
        vec![one.clone(), a.clone()],
        &vars.map(String::from),
    );
    let root = series_pow(&base, &rat(1, 2), 6)?;
    println!(
        "(1 + a q)^(1/2) = {}",
        (0..=6)
            .map(|k| format!("[{}]q^{k}", root.coeff(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    );
    let back = root.mul(&root);
    println!("squared back: coefficient of q^1 is {}", back.coeff(1));
    Ok(())
}
