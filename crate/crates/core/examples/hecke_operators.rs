//! Demazure-Lusztig operators on Laurent polynomials and the Y-eigenvalues of Macdonald polynomials.

use torus_homology::algebra::Poly;
use torus_homology::macdonald::dl::e1_eigenvalue;
use torus_homology::macdonald::{
    dl_apply, evaluation_sub, macdonald_poly, DlOp, LaurentFunc, MAC_VARS,
};
use torus_homology::tableaux::Partition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let lambda = Partition::parse("2,1")?;
    let m = LaurentFunc::from_sym(&macdonald_poly(&lambda)?, n)?;
    let mut sum = LaurentFunc::from_poly(n, Poly::zero(&MAC_VARS))?;
    for i in 1..=n {
        sum = sum.add(&dl_apply(&[DlOp::parse(&format!("Y{i}"))?], &m)?);
    }
    let expected = e1_eigenvalue(&lambda, n);
    println!(
        "e1(Y) M{lambda} = ({expected}) M{lambda}: {}",
        sum == m.mul(&LaurentFunc::from_poly(n, expected.clone())?)
    );

    let x1 = LaurentFunc::x(n, 1);
    let t1x1 = dl_apply(&[DlOp::parse("T1")?], &x1)?;
    println!("T1 x1 = {t1x1}");
    println!("M{lambda} at x = t^(-rho): {}", evaluation_sub(&m)?);
    Ok(())
}
