use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::algebra::{BinomialFactor, Poly, RatFn, Rational};
use crate::error::{Error, Result};

use super::sym::{distinct_permutations, rho_s_exponent, Basis, SymFunc, MAC_VARS};

/// A Laurent polynomial in `x1..xN` with coefficients rational in `q, s`.
#[derive(Clone, Debug)]
pub struct LaurentFunc {
    pub n: usize,
    /// Over the variables `x1..xN, q, s`; the denominator involves only `q, s`.
    pub f: RatFn,
}

pub fn laurent_vars(n: usize) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    v.push("q".into());
    v.push("s".into());
    v
}

fn lift(c: &RatFn, vars: &[String]) -> Result<RatFn> {
    let n = vars.len() - 2;
    let num = c.num.with_vars(vars)?;
    let den: BTreeMap<BinomialFactor, u32> = c
        .den
        .iter()
        .map(|(b, &k)| {
            let mut w = vec![0; n];
            w.extend_from_slice(&b.w);
            (BinomialFactor { d: b.d, w }, k)
        })
        .collect();
    Ok(RatFn { num, den })
}

impl LaurentFunc {
    pub fn from_poly(n: usize, p: Poly) -> Result<LaurentFunc> {
        let p = p.with_vars(&laurent_vars(n))?;
        Ok(LaurentFunc {
            n,
            f: RatFn::from_poly(p),
        })
    }

    pub fn one(n: usize) -> LaurentFunc {
        LaurentFunc {
            n,
            f: RatFn::one(&laurent_vars(n)),
        }
    }

    pub fn x(n: usize, j: usize) -> LaurentFunc {
        let vars = laurent_vars(n);
        LaurentFunc {
            n,
            f: RatFn::from_poly(Poly::gen(&vars, j - 1)),
        }
    }

    /// Restriction of a symmetric function to N variables.
    pub fn from_sym(f: &SymFunc, n: usize) -> Result<LaurentFunc> {
        let vars = laurent_vars(n);
        let m = f.to_basis(Basis::Monomial)?;
        let mut acc = RatFn::zero(&vars);
        for (nu, c) in &m.coords {
            if nu.len() > n {
                continue;
            }
            let mut padded = nu.parts().to_vec();
            padded.resize(n, 0);
            let mut p = Poly::zero(&vars);
            for perm in distinct_permutations(&padded) {
                let mut e: Vec<i32> = perm.iter().map(|&x| x as i32).collect();
                e.extend([0, 0]);
                p.add_term(e, Rational::one());
            }
            acc = acc.add(&lift(c, &vars)?.mul_poly(&p));
        }
        Ok(LaurentFunc { n, f: acc })
    }

    /// Embeds a coefficient in `q, s`.
    pub fn constant(n: usize, c: &RatFn) -> Result<LaurentFunc> {
        Ok(LaurentFunc {
            n,
            f: lift(c, &laurent_vars(n))?,
        })
    }

    fn map(&self, op: impl Fn(&Poly) -> Poly) -> LaurentFunc {
        LaurentFunc {
            n: self.n,
            f: RatFn {
                num: op(&self.f.num),
                den: self.f.den.clone(),
            }
            .reduce(),
        }
    }

    pub fn add(&self, o: &LaurentFunc) -> LaurentFunc {
        LaurentFunc {
            n: self.n,
            f: self.f.add(&o.f),
        }
    }

    pub fn sub(&self, o: &LaurentFunc) -> LaurentFunc {
        LaurentFunc {
            n: self.n,
            f: self.f.sub(&o.f),
        }
    }

    pub fn mul(&self, o: &LaurentFunc) -> LaurentFunc {
        LaurentFunc {
            n: self.n,
            f: self.f.mul(&o.f),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }
}

impl PartialEq for LaurentFunc {
    fn eq(&self, o: &LaurentFunc) -> bool {
        self.n == o.n && self.f == o.f
    }
}

impl fmt::Display for LaurentFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// Generators of the polynomial representation; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlOp {
    T(usize),
    TInv(usize),
    X(usize),
    Y(usize),
}

impl DlOp {
    /// Parses `T1`, `T1^-1`, `X2`, `Y3`.
    pub fn parse(s: &str) -> Result<DlOp> {
        let s = s.trim();
        let (head, inv) = match s.strip_suffix("^-1") {
            Some(h) => (h, true),
            None => (s, false),
        };
        let bad = || Error::Parse(format!("unknown operator {s}"));
        let mut chars = head.chars();
        let kind = chars.next().ok_or_else(bad)?;
        let i: usize = chars.as_str().parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match (kind, inv) {
            ('T', false) => Ok(DlOp::T(i)),
            ('T', true) => Ok(DlOp::TInv(i)),
            ('X', false) => Ok(DlOp::X(i)),
            ('Y', false) => Ok(DlOp::Y(i)),
            _ => Err(bad()),
        }
    }
}

fn s_pow(n: usize, k: i32) -> Vec<i32> {
    let mut e = vec![0; n + 2];
    e[n + 1] = k;
    e
}

/// Swaps x_i and x_{i+1} (0-based i).
fn swap(p: &Poly, i: usize) -> Poly {
    Poly::from_terms(
        p.vars(),
        p.terms().map(|(e, c)| {
            let mut e = e.clone();
            e.swap(i, i + 1);
            (e, c.clone())
        }),
    )
}

/// (s_i − 1) p / (x_i/x_{i+1} − 1), exact on Laurent polynomials (0-based i).
fn divided(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::zero(p.vars());
    for (e, c) in p.terms() {
        let k = e[i + 1] - e[i];
        let (range, sign) = if k > 0 {
            (0..k, Rational::one())
        } else {
            (k..0, -Rational::one())
        };
        for j in range {
            let mut f = e.clone();
            f[i] += j;
            f[i + 1] -= j;
            out.add_term(f, c * &sign);
        }
    }
    out
}

fn hecke(p: &Poly, n: usize, i: usize) -> Poly {
    let s = s_pow(n, 1);
    let s_inv = s_pow(n, -1);
    let d = divided(p, i);
    let one = Rational::one();
    &(&swap(p, i).mul_monomial(&s, &one) + &d.mul_monomial(&s, &one))
        - &d.mul_monomial(&s_inv, &one)
}

fn hecke_inv(p: &Poly, n: usize, i: usize) -> Poly {
    let one = Rational::one();
    &(&hecke(p, n, i) - &p.mul_monomial(&s_pow(n, 1), &one)) + &p.mul_monomial(&s_pow(n, -1), &one)
}

/// x_1 ↦ q x_1 followed by s_1, …, s_{N−1}.
fn rotate(p: &Poly, n: usize) -> Poly {
    let mut out = Poly::from_terms(
        p.vars(),
        p.terms().map(|(e, c)| {
            let mut e = e.clone();
            e[n] += e[0];
            (e, c.clone())
        }),
    );
    for i in 0..n - 1 {
        out = swap(&out, i);
    }
    out
}

fn y_op(p: &Poly, n: usize, i: usize) -> Poly {
    let mut out = p.clone();
    for k in (1..i).rev() {
        out = hecke_inv(&out, n, k - 1);
    }
    out = rotate(&out, n);
    for k in (i..n).rev() {
        out = hecke(&out, n, k - 1);
    }
    out
}

fn check_index(i: usize, max: usize) -> Result<()> {
    if i == 0 || i > max {
        return Err(Error::Index { index: i, max });
    }
    Ok(())
}

/// Applies a word of operators, the first letter acting first.
pub fn dl_apply(word: &[DlOp], f: &LaurentFunc) -> Result<LaurentFunc> {
    let n = f.n;
    let mut out = f.clone();
    for &op in word {
        out = match op {
            DlOp::T(i) => {
                check_index(i, n - 1)?;
                out.map(|p| hecke(p, n, i - 1))
            }
            DlOp::TInv(i) => {
                check_index(i, n - 1)?;
                out.map(|p| hecke_inv(p, n, i - 1))
            }
            DlOp::X(j) => {
                check_index(j, n)?;
                let mut e = vec![0; n + 2];
                e[j - 1] = 1;
                out.map(|p| p.mul_monomial(&e, &Rational::one()))
            }
            DlOp::Y(i) => {
                check_index(i, n)?;
                out.map(|p| y_op(p, n, i))
            }
        };
    }
    Ok(out)
}

/// Substitutes x_i ↦ t^{−ρ_i}.
pub fn evaluation_sub(f: &LaurentFunc) -> Result<RatFn> {
    let n = f.n;
    let mut images: Vec<(Rational, Vec<i32>)> = (1..=n)
        .map(|i| (Rational::one(), vec![0, -rho_s_exponent(n, i)]))
        .collect();
    images.push((Rational::one(), vec![1, 0]));
    images.push((Rational::one(), vec![0, 1]));
    f.f.subs_monomial(&MAC_VARS, &images)
}

/// Σ_i t^{ρ_i} q^{λ_i}, the expected e₁(Y) eigenvalue of M_λ.
pub fn e1_eigenvalue(lambda: &crate::tableaux::Partition, n: usize) -> Poly {
    let mut p = Poly::zero(&MAC_VARS);
    for i in 1..=n {
        p.add_term(
            vec![lambda.part(i - 1) as i32, rho_s_exponent(n, i)],
            Rational::one(),
        );
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::sym::macdonald_poly;
    use crate::tableaux::{partitions_of, Partition};
    use rand::{Rng, SeedableRng};

    fn random_laurent(n: usize, seed: u64) -> LaurentFunc {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let vars = laurent_vars(n);
        let mut p = Poly::zero(&vars);
        for _ in 0..4 {
            let mut e: Vec<i32> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            e.push(rng.gen_range(0..=1));
            e.push(rng.gen_range(-1..=1));
            p.add_term(e, Rational::from_integer(rng.gen_range(-3i64..=3).into()));
        }
        LaurentFunc {
            n,
            f: RatFn::from_poly(p),
        }
    }

    fn word(s: &str) -> Vec<DlOp> {
        s.split_whitespace()
            .map(|w| DlOp::parse(w).unwrap())
            .collect()
    }

    #[test]
    fn symmetric_input_scales_by_s() {
        let m = LaurentFunc::from_sym(&macdonald_poly(&Partition::new(vec![2, 1])).unwrap(), 3)
            .unwrap();
        let s = LaurentFunc::constant(3, &RatFn::from_poly(Poly::var(&MAC_VARS, "s"))).unwrap();
        assert_eq!(dl_apply(&word("T1"), &m).unwrap(), m.mul(&s));
    }

    #[test]
    fn hecke_quadratic_and_inverse() {
        for seed in 0..5 {
            let f = random_laurent(3, seed);
            for i in 1..=2 {
                let t = format!("T{i}");
                let ti = format!("T{i}^-1");
                assert_eq!(dl_apply(&word(&format!("{t} {ti}")), &f).unwrap(), f);
                assert_eq!(dl_apply(&word(&format!("{ti} {t}")), &f).unwrap(), f);
                let s =
                    LaurentFunc::constant(3, &RatFn::from_poly(Poly::var(&MAC_VARS, "s"))).unwrap();
                let s_inv = LaurentFunc::constant(
                    3,
                    &RatFn::from_poly(Poly::monomial(&MAC_VARS, vec![0, -1], Rational::one())),
                )
                .unwrap();
                let tf = dl_apply(&word(&t), &f).unwrap();
                let g = tf.add(&f.mul(&s_inv));
                let h = dl_apply(&word(&t), &g).unwrap().sub(&g.mul(&s));
                assert!(h.is_zero());
            }
        }
    }

    #[test]
    fn braid_relations() {
        for n in [3, 4] {
            for seed in 0..3 {
                let f = random_laurent(n, seed + 10);
                for i in 1..n - 1 {
                    let a = dl_apply(&word(&format!("T{} T{} T{}", i, i + 1, i)), &f).unwrap();
                    let b = dl_apply(&word(&format!("T{} T{} T{}", i + 1, i, i + 1)), &f).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn y_operators_commute() {
        for seed in 0..3 {
            let f = random_laurent(3, seed + 20);
            for (i, j) in [(1, 2), (1, 3), (2, 3)] {
                let a = dl_apply(&word(&format!("Y{i} Y{j}")), &f).unwrap();
                let b = dl_apply(&word(&format!("Y{j} Y{i}")), &f).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn macdonald_polynomials_are_eigenfunctions() {
        for n in 1..=3 {
            for k in 1..=3 {
                for l in partitions_of(k).into_iter().filter(|l| l.len() <= n) {
                    let m = LaurentFunc::from_sym(&macdonald_poly(&l).unwrap(), n).unwrap();
                    let mut lhs = LaurentFunc {
                        n,
                        f: RatFn::zero(&laurent_vars(n)),
                    };
                    for i in 1..=n {
                        lhs = lhs.add(&dl_apply(&[DlOp::Y(i)], &m).unwrap());
                    }
                    let ev =
                        LaurentFunc::constant(n, &RatFn::from_poly(e1_eigenvalue(&l, n))).unwrap();
                    assert_eq!(lhs, m.mul(&ev), "{l} N={n}");
                }
            }
        }
    }

    #[test]
    fn evaluation_substitution() {
        assert_eq!(
            evaluation_sub(&LaurentFunc::one(2)).unwrap(),
            RatFn::one(&MAC_VARS)
        );
        let prod = dl_apply(&word("X1 X2 X3"), &LaurentFunc::one(3)).unwrap();
        assert_eq!(evaluation_sub(&prod).unwrap(), RatFn::one(&MAC_VARS));
        let m1 =
            LaurentFunc::from_sym(&macdonald_poly(&Partition::new(vec![1])).unwrap(), 2).unwrap();
        let expect = &Poly::monomial(&MAC_VARS, vec![0, 1], Rational::one())
            + &Poly::monomial(&MAC_VARS, vec![0, -1], Rational::one());
        assert_eq!(evaluation_sub(&m1).unwrap(), RatFn::from_poly(expect));
    }
}
