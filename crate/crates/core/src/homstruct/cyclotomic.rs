use std::str::FromStr;

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{int, Poly, Rational};
use crate::error::{Error, Result};

use super::space::{decategorify_poly, QuadGradedSpace, Variant, TILDE_VARS};

fn mono(e: [i32; 4]) -> Poly {
    Poly::monomial(&TILDE_VARS, e.to_vec(), Rational::one())
}

fn signed_mono(c: i64, e: [i32; 4]) -> Poly {
    Poly::monomial(&TILDE_VARS, e.to_vec(), int(c))
}

/// (x; b)_k = ∏_{j<k} (1 − x b^j).
pub fn pochhammer(x: &Poly, base: &Poly, k: usize) -> Poly {
    let one = Poly::one(x.vars());
    let mut acc = one.clone();
    let mut term = x.clone();
    for _ in 0..k {
        acc = &acc * &(&one - &term);
        term = &term * base;
    }
    acc
}

/// Gaussian binomial [r, k] in the base `b`, via [r, k] = [r−1, k−1] + b^k [r−1, k].
pub fn gaussian_binomial(r: usize, k: usize, base: &Poly) -> Poly {
    let zero = Poly::zero(base.vars());
    if k > r {
        return zero;
    }
    let one = Poly::one(base.vars());
    let mut row = vec![one.clone()];
    for n in 1..=r {
        let mut next = vec![zero.clone(); n + 1];
        next[0] = one.clone();
        next[n] = one.clone();
        for j in 1..n {
            next[j] = &row[j - 1] + &(&base.pow(j as u32) * &row[j]);
        }
        row = next;
    }
    row[k].clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistFamilyKnot {
    #[serde(rename = "6_2")]
    K62,
    #[serde(rename = "6_3")]
    K63,
}

impl FromStr for TwistFamilyKnot {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "6_2" | "62" => Ok(TwistFamilyKnot::K62),
            "6_3" | "63" => Ok(TwistFamilyKnot::K63),
            _ => Err(Error::Input(format!(
                "unknown knot {s}; expected 6_2 or 6_3"
            ))),
        }
    }
}

impl TwistFamilyKnot {
    pub fn name(self) -> &'static str {
        match self {
            TwistFamilyKnot::K62 => "6_2",
            TwistFamilyKnot::K63 => "6_3",
        }
    }
}

fn tc2() -> Poly {
    mono([0, 0, 0, 2])
}

/// The two Pochhammer factors shared by both knots, indexed by (k, j, i).
fn shared_pochhammers(k: usize, j: usize, i: usize) -> Poly {
    let x1 = signed_mono(-1, [2, -2, 1, 1]);
    let x2 = signed_mono(-1, [2, -2, 1, 2 * i as i32 + 1]);
    &pochhammer(&x1, &tc2(), j) * &pochhammer(&x2, &tc2(), k - j)
}

/// (−a²Q²t_r³t_c^{2r+1}; t_c²)_k.
pub fn color_pochhammer(r: usize, k: usize) -> Poly {
    pochhammer(&signed_mono(-1, [2, 2, 3, 2 * r as i32 + 1]), &tc2(), k)
}

fn summand(knot: TwistFamilyKnot, r: usize, k: usize, j: usize, i: usize) -> Poly {
    let (r_, k_, j_, i_) = (r as i32, k as i32, j as i32, i as i32);
    let head = match knot {
        TwistFamilyKnot::K62 => signed_mono(
            if (r - k) % 2 == 0 { 1 } else { -1 },
            [
                0,
                2 * (i_ + j_ - k_),
                i_ + j_ - k_ - r_,
                i_ * i_ - j_ * j_ + 2 * j_ * k_ - 2 * k_ * r_ + k_ - r_,
            ],
        ),
        TwistFamilyKnot::K63 => mono([
            -2 * k_,
            2 * (i_ - 2 * j_ + k_),
            i_ - 2 * j_ - k_,
            i_ * i_ + k_ * (-2 * j_ + k_ - 2 * r_),
        ]),
    };
    let b = tc2();
    let binomials = &(&gaussian_binomial(r, k, &b) * &gaussian_binomial(k, j, &b))
        * &gaussian_binomial(j, i, &b);
    &(&(&head * &binomials) * &shared_pochhammers(k, j, i)) * &color_pochhammer(r, k)
}

/// Colored superpolynomial of 6₂ or 6₃ from the quadruple sum over r ≥ k ≥ j ≥ i ≥ 0, tilde variant.
pub fn colored_superpoly_poly(knot: TwistFamilyKnot, r: usize) -> Poly {
    (0..=r)
        .into_par_iter()
        .map(|k| {
            let mut acc = Poly::zero(&TILDE_VARS);
            for j in 0..=k {
                for i in 0..=j {
                    acc = &acc + &summand(knot, r, k, j, i);
                }
            }
            acc
        })
        .reduce(|| Poly::zero(&TILDE_VARS), |a, b| &a + &b)
}

pub fn colored_superpoly_62_63(knot: TwistFamilyKnot, r: usize) -> Result<QuadGradedSpace> {
    if r == 0 {
        return Err(Error::Input("color must be at least 1".into()));
    }
    QuadGradedSpace::from_poly(r, 1, Variant::Tilde, &colored_superpoly_poly(knot, r))
}

/// C_k read off from the quadruple sum after removing the color-dependent factors.
pub fn closed_form_coefficient(knot: TwistFamilyKnot, k: usize) -> Poly {
    let k_ = k as i32;
    let mut acc = Poly::zero(&TILDE_VARS);
    let b = tc2();
    for j in 0..=k {
        for i in 0..=j {
            let (j_, i_) = (j as i32, i as i32);
            let head = match knot {
                TwistFamilyKnot::K62 => signed_mono(
                    if k % 2 == 0 { 1 } else { -1 },
                    [
                        0,
                        2 * (i_ + j_ - k_),
                        i_ + j_ - k_,
                        i_ * i_ - j_ * j_ + 2 * j_ * k_ + k_,
                    ],
                ),
                TwistFamilyKnot::K63 => mono([
                    -2 * k_,
                    2 * (i_ - 2 * j_ + k_),
                    i_ - 2 * j_ - k_,
                    i_ * i_ - 2 * j_ * k_ + k_ * k_,
                ]),
            };
            let t = &(&head * &(&gaussian_binomial(k, j, &b) * &gaussian_binomial(j, i, &b)))
                * &shared_pochhammers(k, j, i);
            acc = &acc + &t;
        }
    }
    acc
}

/// Prefactor of the closed formulas.
pub fn closed_form_prefactor(knot: TwistFamilyKnot) -> Poly {
    match knot {
        TwistFamilyKnot::K62 => signed_mono(-1, [0, 0, -1, -1]),
        TwistFamilyKnot::K63 => mono([0, 0, 0, 0]),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclotomicData {
    pub knot: String,
    /// The monomial whose r-th power multiplies the (r)-colored expansion.
    pub prefactor: Poly,
    /// C_0, C_1, …
    pub coefficients: Vec<Poly>,
    /// More than one prefactor fits the supplied colors.
    pub ambiguous: bool,
}

/// The k-th expansion term t_c^{−2rk} (−a²Q²t_r³t_c^{2r+1}; t_c²)_k [r, k]_{t_c²}, without C_k.
pub fn expansion_term(r: usize, k: usize) -> Poly {
    let shift = mono([0, 0, 0, -2 * (r * k) as i32]);
    &(&shift * &color_pochhammer(r, k)) * &gaussian_binomial(r, k, &tc2())
}

/// pre^r Σ_k C_k t_c^{−2rk} (…)_k [r, k], using the stored coefficients.
pub fn predict(data: &CyclotomicData, r: usize) -> Result<Poly> {
    if data.coefficients.len() <= r {
        return Err(Error::Input(format!(
            "color {r} needs C_0..C_{r}; only {} coefficients known",
            data.coefficients.len()
        )));
    }
    let mut acc = Poly::zero(&TILDE_VARS);
    for (k, c) in data.coefficients.iter().enumerate().take(r + 1) {
        acc = &acc + &(c * &expansion_term(r, k));
    }
    Ok(&acc * &data.prefactor.pow(r as u32))
}

/// Reduces P̃_(1) modulo 1 + a²Q²t_r³t_c³ by a² ↦ −Q^{−2}t_r^{−3}t_c^{−3}.
fn remainder_mod_base(p: &Poly) -> Result<Poly> {
    let mut out = Poly::zero(&TILDE_VARS);
    for (e, c) in p.terms() {
        if e[0] % 2 != 0 {
            return Err(Error::NotCyclotomic(format!("odd a-degree in {p}")));
        }
        let h = e[0] / 2;
        let sign = if h % 2 == 0 { c.clone() } else { -c.clone() };
        out.add_term(vec![0, e[1] - 2 * h, e[2] - 3 * h, e[3] - 3 * h], sign);
    }
    Ok(out)
}

fn solve(values: &[(usize, Poly)], prefactor: &Poly, max_r: usize) -> Option<Vec<Poly>> {
    let mut coeffs = vec![Poly::one(&TILDE_VARS)];
    for r in 1..=max_r {
        let p = &values.iter().find(|(s, _)| *s == r)?.1;
        let scaled = p.exact_div(&prefactor.pow(r as u32)).ok()?;
        let mut rest = scaled;
        for (k, c) in coeffs.iter().enumerate() {
            rest = &rest - &(c * &expansion_term(r, k));
        }
        let ck = rest.exact_div(&expansion_term(r, r)).ok()?;
        coeffs.push(ck);
    }
    Some(coeffs)
}

/// Solves the triangular system for C_k from colors r = 0..R.
///
/// The prefactor is the remainder of the r = 1 polynomial modulo the first
/// Pochhammer factor, times a power of (−a²Q²t_r³t_c³); every power that
/// makes the whole system exactly solvable is a candidate.
pub fn cyclotomic_extract(knot: &str, values: &[(usize, Poly)]) -> Result<CyclotomicData> {
    let values: Vec<(usize, Poly)> = values
        .iter()
        .map(|(r, p)| Ok((*r, p.with_vars(&TILDE_VARS)?)))
        .collect::<Result<_>>()?;
    if let Some((_, p0)) = values.iter().find(|(r, _)| *r == 0) {
        if *p0 != Poly::one(&TILDE_VARS) {
            return Err(Error::NotCyclotomic(format!("color 0 value {p0} is not 1")));
        }
    }
    let max_r = values.iter().map(|(r, _)| *r).max().unwrap_or(0);
    if max_r == 0 {
        return Err(Error::Input("need a color r ≥ 1".into()));
    }
    let p1 = &values
        .iter()
        .find(|(r, _)| *r == 1)
        .ok_or_else(|| Error::Input("the r = 1 value is required".into()))?
        .1;
    let rem = remainder_mod_base(p1)?;
    if rem.as_monomial().is_none() {
        return Err(Error::NotCyclotomic(format!(
            "remainder {rem} of the r = 1 value is not a monomial"
        )));
    }
    let step = signed_mono(-1, [2, 2, 3, 3]);
    let inv_step = signed_mono(-1, [-2, -2, -3, -3]);
    let mut fits = Vec::new();
    for j in -3i32..=3 {
        let shift = if j >= 0 {
            step.pow(j as u32)
        } else {
            inv_step.pow((-j) as u32)
        };
        let pre = &rem * &shift;
        if let Some(c) = solve(&values, &pre, max_r) {
            fits.push((j, pre, c));
        }
    }
    if fits.is_empty() {
        return Err(Error::NotCyclotomic(format!(
            "no monomial prefactor fits colors up to {max_r}"
        )));
    }
    let ambiguous = fits.len() > 1;
    let (_, prefactor, coefficients) = fits.into_iter().min_by_key(|(j, _, _)| j.abs()).unwrap();
    Ok(CyclotomicData {
        knot: knot.to_string(),
        prefactor,
        coefficients,
        ambiguous,
    })
}

/// (q²; q²)_k in the variables `a, q`.
fn q2_pochhammer(k: usize) -> Poly {
    let v = ["a", "q"];
    let b = Poly::monomial(&v, vec![0, 2], Rational::one());
    pochhammer(&b, &b, k)
}

fn at_a_power(p: &Poly, n: i32) -> Poly {
    p.subs_monomial(
        &["a", "q"],
        &[(Rational::one(), vec![0, n]), (Rational::one(), vec![0, 1])],
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisibilityReport {
    pub n: i32,
    pub k: usize,
    pub pass: bool,
    /// C_k(a = q^N, q) / (q²; q²)_k when exact.
    pub quotient: Option<Poly>,
}

/// Exact division of the decategorified C_k at a = q^N by (q²; q²)_k.
pub fn divisibility_check(data: &CyclotomicData, n: i32, k: usize) -> Result<DivisibilityReport> {
    let c = data
        .coefficients
        .get(k)
        .ok_or_else(|| Error::Input(format!("C_{k} is not available")))?;
    let num = at_a_power(&decategorify_poly(c), n);
    let quotient = num.exact_div(&q2_pochhammer(k)).ok();
    Ok(DivisibilityReport {
        n,
        k,
        pass: quotient.is_some(),
        quotient,
    })
}

/// c_k(N) = (−1)^k q^{(1−k)k} C_k(q^N, q) / (q²; q²)_k.
pub fn habiro_coefficients(data: &CyclotomicData, n: i32) -> Result<Vec<Poly>> {
    let v = ["a", "q"];
    data.coefficients
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let num = at_a_power(&decategorify_poly(c), n);
            let q = num.exact_div(&q2_pochhammer(k)).map_err(|_| {
                Error::NotCyclotomic(format!(
                    "C_{k} at a = q^{n} is not divisible by (q²;q²)_{k}"
                ))
            })?;
            let k_ = k as i32;
            let sign = if k % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            Ok(q.mul_monomial(&[0, (1 - k_) * k_], &sign).with_vars(&v)?)
        })
        .collect()
}

/// (q^•)^r Σ_k c_k (q^{2N+2r}; q²)_k (q^{−2r}; q²)_k.
pub fn habiro_reconstruct(data: &CyclotomicData, n: i32, r: usize) -> Result<Poly> {
    let v = ["a", "q"];
    let c = habiro_coefficients(data, n)?;
    if c.len() <= r {
        return Err(Error::Input(format!("color {r} needs C_0..C_{r}")));
    }
    let b = Poly::monomial(&v, vec![0, 2], Rational::one());
    let r_ = r as i32;
    let up = Poly::monomial(&v, vec![0, 2 * n + 2 * r_], Rational::one());
    let down = Poly::monomial(&v, vec![0, -2 * r_], Rational::one());
    let mut acc = Poly::zero(&v);
    for (k, ck) in c.iter().enumerate().take(r + 1) {
        acc = &acc + &(&(ck * &pochhammer(&up, &b, k)) * &pochhammer(&down, &b, k));
    }
    let pre = at_a_power(&decategorify_poly(&data.prefactor), n).pow(r as u32);
    Ok(&acc * &pre)
}

/// Uncolored superpolynomial of 6₂ or 6₃ in (a, q, t) from its factored form.
pub fn uncolored_reference(knot: TwistFamilyKnot) -> Poly {
    let v = ["a", "q", "t"];
    let m = |c: i64, e: [i32; 3]| Poly::monomial(&v, e.to_vec(), int(c));
    let pairs = &(&m(1, [0, 0, 0]) + &m(1, [2, -2, 1])) * &(&m(1, [0, 0, 0]) + &m(1, [2, 2, 3]));
    match knot {
        TwistFamilyKnot::K62 => {
            let inner = &(&m(1, [0, -2, -2]) + &m(1, [0, 0, -1])) + &m(1, [0, 2, 0]);
            &m(-1, [0, 0, -1]) + &(&inner * &pairs)
        }
        TwistFamilyKnot::K63 => {
            let inner = &(&m(1, [0, -2, -3]) + &m(1, [0, 0, -2])) + &m(1, [0, 2, -1]);
            &m(1, [0, 0, 0]) + &(&(&m(1, [-2, 0, 0]) * &inner) * &pairs)
        }
    }
}

/// Merges t_r and t_c into one t, requiring equal degrees.
pub fn merge_homological(p: &Poly) -> Result<Poly> {
    let mut out = Poly::zero(&["a", "q", "t"]);
    for (e, c) in p.terms() {
        if e[2] != e[3] {
            return Err(Error::Grading(format!(
                "t_r-degree {} differs from t_c-degree {}",
                e[2], e[3]
            )));
        }
        out.add_term(vec![e[0], e[1], e[2]], c.clone());
    }
    Ok(out)
}

/// Sets t_c = 1.
pub fn at_tc_one(p: &Poly) -> Poly {
    let one = Rational::one();
    p.subs_monomial(
        &TILDE_VARS,
        &[
            (one.clone(), vec![1, 0, 0, 0]),
            (one.clone(), vec![0, 1, 0, 0]),
            (one.clone(), vec![0, 0, 1, 0]),
            (one, vec![0, 0, 0, 0]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Poly {
        Poly::var(&["b"], "b")
    }

    #[test]
    fn q_factors() {
        let x = Poly::var(&["b", "x"], "x");
        let bb = Poly::var(&["b", "x"], "b");
        let one = Poly::one(&["b", "x"]);
        assert_eq!(pochhammer(&x, &bb, 0), one);
        assert_eq!(pochhammer(&x, &bb, 2), &(&one - &x) * &(&one - &(&x * &bb)));
        assert_eq!(gaussian_binomial(2, 1, &b()), &Poly::one(&["b"]) + &b());
        for r in 0..=8 {
            for k in 0..=r {
                assert_eq!(
                    gaussian_binomial(r, k, &b()),
                    gaussian_binomial(r, r - k, &b())
                );
            }
        }
    }

    #[test]
    fn uncolored_values_match_reference() {
        for knot in [TwistFamilyKnot::K62, TwistFamilyKnot::K63] {
            let p = colored_superpoly_poly(knot, 1);
            assert_eq!(
                merge_homological(&p).unwrap(),
                uncolored_reference(knot),
                "{}",
                knot.name()
            );
        }
    }

    #[test]
    fn growth_and_positivity() {
        for knot in [TwistFamilyKnot::K62, TwistFamilyKnot::K63] {
            let base = at_tc_one(&colored_superpoly_poly(knot, 1));
            for r in 1..=3 {
                let s = colored_superpoly_62_63(knot, r).unwrap();
                assert_eq!(at_tc_one(&s.poincare()), base.pow(r as u32));
                assert!(super::super::space::verify_self_symmetry(&s).pass);
            }
        }
    }

    #[test]
    fn closed_form_coefficients_reassemble() {
        for knot in [TwistFamilyKnot::K62, TwistFamilyKnot::K63] {
            let data = CyclotomicData {
                knot: knot.name().into(),
                prefactor: closed_form_prefactor(knot),
                coefficients: (0..=3).map(|k| closed_form_coefficient(knot, k)).collect(),
                ambiguous: false,
            };
            for r in 1..=3 {
                assert_eq!(predict(&data, r).unwrap(), colored_superpoly_poly(knot, r));
            }
        }
    }

    #[test]
    fn extraction_from_low_colors() {
        for knot in [TwistFamilyKnot::K62, TwistFamilyKnot::K63] {
            let values: Vec<(usize, Poly)> = (0..=2)
                .map(|r| (r, colored_superpoly_poly(knot, r)))
                .collect();
            let data = cyclotomic_extract(knot.name(), &values).unwrap();
            assert!(!data.ambiguous);
            assert_eq!(data.prefactor, closed_form_prefactor(knot));
            for k in 0..=2 {
                assert_eq!(data.coefficients[k], closed_form_coefficient(knot, k));
            }
            for n in 1..=3 {
                for k in 0..=2 {
                    assert!(divisibility_check(&data, n, k).unwrap().pass);
                }
            }
        }
    }

    #[test]
    fn third_color_and_habiro_form() {
        for knot in [TwistFamilyKnot::K62, TwistFamilyKnot::K63] {
            let values: Vec<(usize, Poly)> = (0..=2)
                .map(|r| (r, colored_superpoly_poly(knot, r)))
                .collect();
            let mut data = cyclotomic_extract(knot.name(), &values).unwrap();
            data.coefficients.push(closed_form_coefficient(knot, 3));
            let p3 = colored_superpoly_poly(knot, 3);
            assert_eq!(predict(&data, 3).unwrap(), p3);
            for r in 1..=3 {
                let direct = at_a_power(&decategorify_poly(&colored_superpoly_poly(knot, r)), 2);
                assert_eq!(habiro_reconstruct(&data, 2, r).unwrap(), direct);
            }
        }
    }

    #[test]
    fn trefoil_from_low_colors() {
        use super::super::space::tests::{tilquad31, trefoil};
        let values = vec![
            (0, Poly::one(&TILDE_VARS)),
            (1, trefoil().poincare()),
            (2, tilquad31().poincare()),
        ];
        let data = cyclotomic_extract("3_1", &values).unwrap();
        assert!(!data.ambiguous);
        assert_eq!(data.prefactor, signed_mono(-1, [0, 0, -1, -1]));
        let c1 = &signed_mono(-1, [0, 0, 0, 2]) + &signed_mono(-1, [2, -2, 1, 3]);
        assert_eq!(data.coefficients[1], c1);
        assert!(divisibility_check(&data, 2, 1).unwrap().pass);
    }

    #[test]
    fn unknot_has_no_higher_terms() {
        let values: Vec<(usize, Poly)> = (0..=3).map(|r| (r, Poly::one(&TILDE_VARS))).collect();
        let data = cyclotomic_extract("0_1", &values).unwrap();
        assert!(data.coefficients[1..].iter().all(|c| c.is_zero()));
    }
}
