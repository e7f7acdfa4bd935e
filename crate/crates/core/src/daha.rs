//! Localization formula for the unreduced DAHA superpolynomial of a torus
//! knot, summed over standard Young tableaux.
//!
//! Variables are `aa, qq, tt` for 𝔞, 𝔮, 𝔱.

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::factored::sum_factored;
use crate::algebra::{int, Factored, Poly, Rational};
use crate::error::{Error, Result};
use crate::tableaux::{box_weight_exp, partitions_of, syt_of, Partition, StandardTableau};

pub const DAHA_VARS: [&str; 3] = ["aa", "qq", "tt"];
pub const HOMOLOGICAL_VARS: [&str; 3] = ["a", "q", "t"];
pub const DEFAULT_SYMBOLIC_LIMIT: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusKnot {
    pub m: u32,
    pub n: u32,
}

impl TorusKnot {
    pub fn new(m: u32, n: u32) -> Result<TorusKnot> {
        if m == 0 || n == 0 || m.gcd(&n) != 1 {
            return Err(Error::Input(format!(
                "T({m},{n}) needs coprime positive m, n"
            )));
        }
        Ok(TorusKnot { m, n })
    }

    pub fn transpose(&self) -> TorusKnot {
        TorusKnot {
            m: self.n,
            n: self.m,
        }
    }

    /// μ = (m−1)(n−1).
    pub fn milnor(&self) -> u32 {
        (self.m - 1) * (self.n - 1)
    }
}

impl std::fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T({},{})", self.m, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuperPolynomial {
    pub value: Poly,
    pub normalization: String,
}

/// S_{m/n}(i) = ⌊im/n⌋ − ⌊(i−1)m/n⌋.
pub fn s_fraction(m: u32, n: u32, i: u32) -> Result<i32> {
    if i == 0 || i > n {
        return Err(Error::Index {
            index: i as usize,
            max: n as usize,
        });
    }
    Ok(((i * m) / n - ((i - 1) * m) / n) as i32)
}

fn mono(exp: [i32; 3]) -> Poly {
    Poly::monomial(&DAHA_VARS, exp.to_vec(), Rational::one())
}

fn binom(c1: i64, e1: [i32; 3], c2: i64, e2: [i32; 3]) -> Option<Factored> {
    let p = &mono(e1).scale(&int(c1)) + &mono(e2).scale(&int(c2));
    Factored::from_binomial(&p).expect("binomial with unit ratio")
}

/// γ̃ = (𝔱−1)(𝔮−1)/(𝔮−𝔱) and g̃_μ = ∏(1−𝔮^a𝔱^{l+1})(1−𝔮^{−a−1}𝔱^{−l}).
pub fn theorem13_constants(mu: &Partition) -> (Factored, Factored) {
    let gamma = binom(1, [0, 0, 1], -1, [0, 0, 0])
        .unwrap()
        .mul(&binom(1, [0, 1, 0], -1, [0, 0, 0]).unwrap())
        .div(&binom(1, [0, 1, 0], -1, [0, 0, 1]).unwrap());
    let mut g = Factored::one(&DAHA_VARS);
    for b in mu.box_stats() {
        let (a, l) = (b.arm as i32, b.leg as i32);
        g = g
            .mul(&binom(1, [0, 0, 0], -1, [0, a, l + 1]).unwrap())
            .mul(&binom(1, [0, 0, 0], -1, [0, -a - 1, -l]).unwrap());
    }
    (gamma, g)
}

/// The tableau summand without the γ̃^n / g̃_μ prefactor; `None` when it vanishes.
pub fn tableau_term(k: TorusKnot, t: &StandardTableau) -> Result<Option<Factored>> {
    let n = t.size();
    let chi: Vec<[i32; 3]> = (1..=n)
        .map(|i| box_weight_exp(t, i).map(|(a, b)| [0, a, b]))
        .collect::<Result<_>>()?;
    let add = |x: [i32; 3], y: [i32; 3]| [x[0] + y[0], x[1] + y[1], x[2] + y[2]];
    let neg = |x: [i32; 3]| [-x[0], -x[1], -x[2]];
    let mut term = Factored::one(&DAHA_VARS);
    for (i, &c) in chi.iter().enumerate() {
        let s = s_fraction(k.m, k.n, i as u32 + 1)?;
        term = term.mul(&Factored::monomial(
            &DAHA_VARS,
            Rational::one(),
            c.iter().map(|x| x * s).collect(),
        ));
        // (1 − 𝔞χ⁻¹)(𝔮𝔱⁻¹ − χ)
        let Some(f1) = binom(1, [0, 0, 0], -1, add([1, 0, 0], neg(c))) else {
            return Ok(None);
        };
        let Some(f2) = binom(1, [0, 1, -1], -1, c) else {
            return Ok(None);
        };
        term = term.mul(&f1).mul(&f2);
    }
    for i in 0..n.saturating_sub(1) {
        // 1 − 𝔮χ_{i+1}/(𝔱χ_i)
        let v = add(add([0, 1, -1], chi[i + 1]), neg(chi[i]));
        let d =
            binom(1, [0, 0, 0], -1, v).ok_or_else(|| Error::Pole("chain denominator".into()))?;
        term = term.div(&d);
    }
    for i in 0..n {
        for j in i + 1..n {
            let (ci, cj) = (chi[i], chi[j]);
            // (χ_j − 𝔮χ_i)(𝔱χ_j − χ_i) / ((χ_j − χ_i)(𝔱χ_j − 𝔮χ_i))
            let Some(n1) = binom(1, cj, -1, add([0, 1, 0], ci)) else {
                return Ok(None);
            };
            let Some(n2) = binom(1, add([0, 0, 1], cj), -1, ci) else {
                return Ok(None);
            };
            let d1 = binom(1, cj, -1, ci).ok_or_else(|| Error::Pole("cross denominator".into()))?;
            let d2 = binom(1, add([0, 0, 1], cj), -1, add([0, 1, 0], ci))
                .ok_or_else(|| Error::Pole("cross denominator".into()))?;
            term = term.mul(&n1).mul(&n2).div(&d1).div(&d2);
        }
    }
    Ok(Some(term))
}

/// All nonzero summands of the localization formula, prefactors included.
pub fn summands(k: TorusKnot) -> Result<Vec<Factored>> {
    let (gamma, _) = theorem13_constants(&Partition::empty());
    let gn = gamma.pow(k.n as i32);
    let parts = partitions_of(k.n as usize);
    let per_mu: Vec<Result<Vec<Factored>>> = parts
        .par_iter()
        .map(|mu| {
            let (_, g) = theorem13_constants(mu);
            let pre = gn.div(&g);
            let mut out = Vec::new();
            for t in syt_of(mu) {
                if let Some(term) = tableau_term(k, &t)? {
                    out.push(pre.mul(&term));
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_mu {
        all.extend(r?);
    }
    Ok(all)
}

pub fn daha_superpoly_with_limit(k: TorusKnot, limit: u32) -> Result<SuperPolynomial> {
    if k.n > limit {
        return Err(Error::Scale(format!(
            "n = {} exceeds the symbolic limit {limit}; use point evaluation",
            k.n
        )));
    }
    let terms = summands(k)?;
    let sum = sum_factored(&DAHA_VARS, &terms);
    let value = sum.to_poly().map_err(|e| {
        Error::Internal(format!(
            "localization sum for {k} is not a Laurent polynomial: {e}"
        ))
    })?;
    Ok(SuperPolynomial {
        value,
        normalization: "unreduced DAHA".into(),
    })
}

/// Exact unreduced superpolynomial in `(aa, qq, tt)`.
pub fn daha_superpoly(k: TorusKnot) -> Result<SuperPolynomial> {
    daha_superpoly_with_limit(k, DEFAULT_SYMBOLIC_LIMIT)
}

/// Exact value of the localization sum at a rational point.
pub fn daha_at_point(k: TorusKnot, a: &Rational, q: &Rational, t: &Rational) -> Result<Rational> {
    let point = [a.clone(), q.clone(), t.clone()];
    let terms = summands(k)?;
    terms
        .par_iter()
        .map(|f| f.eval(&point))
        .try_reduce(Rational::zero, |x, y| Ok(x + y))
}

/// Superpolynomial divided by the unknot value.
pub fn reduced(p: &SuperPolynomial) -> Result<Poly> {
    let unknot = daha_superpoly(TorusKnot { m: 1, n: 1 })?;
    p.value
        .exact_div(&unknot.value)
        .map_err(|e| Error::Internal(format!("not divisible by the unknot: {e}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// 𝔞 = −a²t, 𝔮 = q²t², 𝔱 = q².
    Homological,
    /// 𝔞 = 𝔱^N.
    SlN(u32),
}

pub fn specialize(p: &Poly, target: Specialization) -> Poly {
    match target {
        Specialization::Homological => p.subs_monomial(
            &HOMOLOGICAL_VARS,
            &[
                (int(-1), vec![2, 0, 1]),
                (int(1), vec![0, 2, 2]),
                (int(1), vec![0, 2, 0]),
            ],
        ),
        Specialization::SlN(n) => p.subs_monomial(
            &["qq", "tt"],
            &[
                (int(1), vec![0, n as i32]),
                (int(1), vec![1, 0]),
                (int(1), vec![0, 1]),
            ],
        ),
    }
}

/// Reduced superpolynomial in homological variables `(a, q, t)`.
pub fn homological_reduced(k: TorusKnot) -> Result<Poly> {
    Ok(specialize(
        &reduced(&daha_superpoly(k)?)?,
        Specialization::Homological,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn s_constants() {
        assert_eq!(s_fraction(3, 2, 1).unwrap(), 1);
        assert_eq!(s_fraction(3, 2, 2).unwrap(), 2);
        assert_eq!(
            (1..=7).map(|i| s_fraction(5, 7, i).unwrap()).sum::<i32>(),
            5
        );
        assert!(s_fraction(3, 2, 3).is_err());
    }

    #[test]
    fn constants_single_box() {
        let (gamma, g) = theorem13_constants(&Partition::new(vec![1]));
        let v = Poly::var(&DAHA_VARS, "tt");
        let q = Poly::var(&DAHA_VARS, "qq");
        let one = Poly::one(&DAHA_VARS);
        let qi = Poly::monomial(&DAHA_VARS, vec![0, -1, 0], int(1));
        assert_eq!(g.to_ratfn().to_poly().unwrap(), (&one - &v) * (&one - &qi));
        let (_, g2) = theorem13_constants(&Partition::new(vec![2]));
        let expected = (&one - &(&q * &v)) * (&one - &v) * (&one - &qi.pow(2)) * (&one - &qi);
        assert_eq!(g2.to_ratfn().to_poly().unwrap(), expected);
        let pt = [int(0), int(2), int(3)];
        assert_eq!(gamma.eval(&pt).unwrap(), int(-2));
    }

    #[test]
    fn unknot_value() {
        let u = daha_superpoly(TorusKnot::new(1, 1).unwrap()).unwrap().value;
        // −𝔮𝔱⁻¹(1 − 𝔞)
        let expected = Poly::from_terms(
            &DAHA_VARS,
            [(vec![0, 1, -1], int(-1)), (vec![1, 1, -1], int(1))],
        );
        assert_eq!(u, expected);
        let v = daha_at_point(TorusKnot::new(1, 1).unwrap(), &int(1), &int(2), &int(3)).unwrap();
        assert_eq!(v, int(0));
        let v = daha_at_point(TorusKnot::new(1, 1).unwrap(), &int(3), &int(2), &int(3)).unwrap();
        assert_eq!(v, rat(4, 3));
    }

    #[test]
    fn trefoil_is_positive_after_change_of_variables() {
        let p = homological_reduced(TorusKnot::new(2, 3).unwrap()).unwrap();
        assert_eq!(p.len(), 3);
        let neg = specialize(
            &reduced(&daha_superpoly(TorusKnot::new(2, 3).unwrap()).unwrap()).unwrap(),
            Specialization::Homological,
        )
        .scale(&int(-1));
        assert!(p.all_coeffs_nonneg_integers() || neg.all_coeffs_nonneg_integers());
    }

    #[test]
    fn point_mode_matches_symbolic() {
        let k = TorusKnot::new(2, 3).unwrap();
        let p = daha_superpoly(k).unwrap().value;
        let pt = [int(0), int(2), int(3)];
        assert_eq!(
            daha_at_point(k, &pt[0], &pt[1], &pt[2]).unwrap(),
            p.eval(&pt).unwrap()
        );
    }

    #[test]
    fn sln_substitution() {
        let p = Poly::one(&DAHA_VARS) - Poly::var(&DAHA_VARS, "aa");
        let expected = Poly::one(&["qq", "tt"]) - Poly::monomial(&["qq", "tt"], vec![0, 2], int(1));
        assert_eq!(specialize(&p, Specialization::SlN(2)), expected);
        let m = Poly::monomial(&DAHA_VARS, vec![1, 1, 1], int(1));
        assert_eq!(
            specialize(&m, Specialization::Homological),
            Poly::monomial(&HOMOLOGICAL_VARS, vec![2, 4, 3], int(-1))
        );
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(TorusKnot::new(2, 4).is_err());
    }
}
