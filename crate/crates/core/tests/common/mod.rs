#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use torus_homology::algebra::series::series_pow;
use torus_homology::algebra::{Poly, Rational, TruncatedSeries};
use torus_homology::hilbert::semigroup;
use torus_homology::tableaux::{partitions_of, syt_of, Partition};

pub const RING_CASES: u32 = 300;
pub const SERIES_CASES: u32 = 200;
pub const SEMIGROUP_CASES: u32 = 250;
pub const SYT_CASES: u32 = 250;

pub const VARS: [&str; 2] = ["a", "q"];

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

pub fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((-3i32..=3, -3i32..=3), rational()), 0..6).prop_map(|terms| {
        Poly::from_terms(&VARS, terms.into_iter().map(|((i, j), c)| (vec![i, j], c)))
    })
}

pub fn ring_triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    (poly(), poly(), poly())
}

/// Unit series 1 + Σ c_k z^k with polynomial coefficients, plus two exponents.
pub fn series_case() -> impl Strategy<Value = (TruncatedSeries, TruncatedSeries, Rational, Rational)>
{
    let tail = || prop::collection::vec(poly(), 1..4);
    (tail(), tail(), rational(), rational()).prop_map(|(f, g, a, b)| {
        let vars: Vec<String> = VARS.iter().map(|s| s.to_string()).collect();
        let mk = |tail: Vec<Poly>| {
            let mut c = vec![Poly::one(&VARS)];
            c.extend(tail);
            TruncatedSeries::new("z", 4, c, &vars)
        };
        (mk(f), mk(g), a, b)
    })
}

pub fn coprime_pair() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=7, 1u32..=9).prop_filter("coprime", |(m, n)| m.gcd(n) == 1)
}

pub fn small_partition() -> impl Strategy<Value = Partition> {
    (1usize..=8).prop_flat_map(|n| {
        let parts = partitions_of(n);
        (0..parts.len()).prop_map(move |i| parts[i].clone())
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

pub fn check_ring_axioms((x, y, z): (Poly, Poly, Poly)) -> Result<(), TestCaseError> {
    ensure(&(&x + &y) + &z == &x + &(&y + &z), || {
        "addition is not associative".into()
    })?;
    ensure(&x + &y == &y + &x, || "addition is not commutative".into())?;
    ensure(&(&x * &y) * &z == &x * &(&y * &z), || {
        "multiplication is not associative".into()
    })?;
    ensure(&x * &y == &y * &x, || {
        "multiplication is not commutative".into()
    })?;
    ensure(&x * &(&y + &z) == &(&x * &y) + &(&x * &z), || {
        "distributivity fails".into()
    })?;
    ensure((&x - &x).is_zero(), || "x - x is not zero".into())?;
    ensure(&x * &Poly::one(&VARS) == x, || "one is not neutral".into())?;
    if !y.is_zero() {
        let q = (&x * &y)
            .exact_div(&y)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        ensure(q == x, || format!("(x y) / y = {q}, expected {x}"))?;
    }
    Ok(())
}

fn trunc_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    f.mul(g).truncate(4)
}

pub fn check_series_pow(
    (f, g, a, b): (TruncatedSeries, TruncatedSeries, Rational, Rational),
) -> Result<(), TestCaseError> {
    let err = |e: torus_homology::error::Error| TestCaseError::fail(e.to_string());
    let fa = series_pow(&f, &a, 4).map_err(err)?;
    let fb = series_pow(&f, &b, 4).map_err(err)?;
    let fab = series_pow(&f, &(&a + &b), 4).map_err(err)?;
    ensure(trunc_mul(&fa, &fb) == fab, || "f^a f^b != f^(a+b)".into())?;
    let ga = series_pow(&g, &a, 4).map_err(err)?;
    let fga = series_pow(&trunc_mul(&f, &g), &a, 4).map_err(err)?;
    ensure(trunc_mul(&fa, &ga) == fga, || "f^a g^a != (f g)^a".into())?;
    Ok(())
}

pub fn check_semigroup_gaps((m, n): (u32, u32)) -> Result<(), TestCaseError> {
    let s = semigroup(m, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mu = (m - 1) * (n - 1);
    ensure(2 * s.gaps.len() as u32 == mu, || {
        format!("({m},{n}): {} gaps, mu = {mu}", s.gaps.len())
    })?;
    if mu > 0 {
        ensure(s.frobenius() == mu as i64 - 1, || {
            format!("({m},{n}): Frobenius {}", s.frobenius())
        })?;
    }
    Ok(())
}

pub fn check_syt_count(p: Partition) -> Result<(), TestCaseError> {
    let n = p.size();
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    let hook = &factorial / p.hook_product();
    let count = BigInt::from(syt_of(&p).count());
    ensure(count == hook, || {
        format!("{p}: {count} tableaux, hook formula {hook}")
    })?;
    ensure(p.syt_count() == hook, || {
        format!("{p}: syt_count disagrees")
    })?;
    Ok(())
}
