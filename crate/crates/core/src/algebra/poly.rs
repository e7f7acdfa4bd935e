use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{parse_rational, pow_i, Rational};
use crate::error::{Error, Result};

/// Sparse multivariate Laurent polynomial over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl Poly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Poly {
        Poly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Poly {
        let mut p = Poly::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Poly {
        Poly::constant(vars, Rational::one())
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exp: Vec<i32>, coef: Rational) -> Poly {
        let mut p = Poly::zero(vars);
        assert_eq!(exp.len(), p.vars.len(), "exponent length mismatch");
        p.add_term(exp, coef);
        p
    }

    /// The i-th variable as a polynomial.
    pub fn gen<S: AsRef<str>>(vars: &[S], i: usize) -> Poly {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Poly::monomial(vars, e, Rational::one())
    }

    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Poly {
        let i = vars
            .iter()
            .position(|v| v.as_ref() == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Poly::gen(vars, i)
    }

    pub fn from_terms<S: AsRef<str>, I>(vars: &[S], terms: I) -> Poly
    where
        I: IntoIterator<Item = (Vec<i32>, Rational)>,
    {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn add_term(&mut self, exp: Vec<i32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Returns `(exponent, coefficient)` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(Vec<i32>, Rational)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((e.clone(), c.clone()))
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Lex-largest term.
    pub fn leading(&self) -> Option<(&Vec<i32>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn min_exp(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).min()
    }

    pub fn max_exp(&self, i: usize) -> Option<i32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exp: &[i32], c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, x)| (add_exp(e, exp), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check_vars(&self, other: &Poly) {
        assert_eq!(self.vars, other.vars, "variable lists differ");
    }

    /// Exact division in the Laurent ring.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        self.check_vars(d);
        if d.is_zero() {
            return Err(Error::Division {
                remainder: "division by zero".into(),
            });
        }
        if self.is_zero() {
            return Ok(Poly::zero(&self.vars));
        }
        if let Some((e, c)) = d.as_monomial() {
            let neg: Vec<i32> = e.iter().map(|x| -x).collect();
            return Ok(self.mul_monomial(&neg, &c.recip()));
        }
        let n = self.vars.len();
        let lo: Vec<i32> = (0..n)
            .map(|i| self.min_exp(i).unwrap() - d.min_exp(i).unwrap())
            .collect();
        let hi: Vec<i32> = (0..n)
            .map(|i| self.max_exp(i).unwrap() - d.max_exp(i).unwrap())
            .collect();
        let (dl, dc) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.vars);
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = sub_exp(&re, &dl);
            if (0..n).any(|i| qe[i] < lo[i] || qe[i] > hi[i]) {
                return Err(Error::Division {
                    remainder: rem.to_string(),
                });
            }
            let qc = rc / &dc;
            for (e, c) in &d.terms {
                rem.add_term(add_exp(e, &qe), -(c * &qc));
            }
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    /// The monomial `c·x^e` with `self = c·x^e·other`, if there is one.
    pub fn monomial_ratio(&self, other: &Poly) -> Option<(Vec<i32>, Rational)> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        self.exact_div(other).ok().and_then(|q| q.as_monomial())
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    t *= pow_i(&point[i], k).ok_or_else(|| Error::Pole(self.vars[i].clone()))?;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_named(&self, assignment: &[(&str, Rational)]) -> Result<Rational> {
        let point = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, x)| x.clone())
                    .ok_or_else(|| Error::Input(format!("no value for {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eval(&point)
    }

    /// Substitutes each variable by `coef * new_vars^exp`.
    pub fn subs_monomial<S: AsRef<str>>(
        &self,
        new_vars: &[S],
        images: &[(Rational, Vec<i32>)],
    ) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let m = new_vars.len();
        let mut out = Poly::zero(new_vars);
        for (e, c) in &self.terms {
            let mut exp = vec![0; m];
            let mut coef = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let (ic, ie) = &images[i];
                coef *= pow_i(ic, k).expect("monomial image with zero coefficient");
                for j in 0..m {
                    exp[j] += ie[j] * k;
                }
            }
            out.add_term(exp, coef);
        }
        out
    }

    /// Substitutes each variable by a polynomial; negative powers require
    /// monomial images.
    pub fn subs<S: AsRef<str>>(&self, new_vars: &[S], images: &[Poly]) -> Result<Poly> {
        assert_eq!(images.len(), self.vars.len());
        let mut out = Poly::zero(new_vars);
        let mut cache: HashMap<(usize, i32), Poly> = HashMap::new();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(new_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = match cache.get(&(i, k)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = if k > 0 {
                            images[i].pow(k as u32)
                        } else {
                            let (ie, ic) = images[i].as_monomial().ok_or_else(|| {
                                Error::Input(format!(
                                    "negative power of non-monomial image for {}",
                                    self.vars[i]
                                ))
                            })?;
                            let exp: Vec<i32> = ie.iter().map(|x| x * k).collect();
                            Poly::monomial(
                                new_vars,
                                exp,
                                pow_i(&ic, k).ok_or_else(|| Error::Pole(self.vars[i].clone()))?,
                            )
                        };
                        cache.insert((i, k), p.clone());
                        p
                    }
                };
                t = &t * &p;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over another variable list, matching by name.
    pub fn with_vars<S: AsRef<str>>(&self, new_vars: &[S]) -> Result<Poly> {
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w.as_ref() == v))
            .collect();
        let mut out = Poly::zero(new_vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                match idx[i] {
                    Some(j) => ne[j] = k,
                    None if k == 0 => {}
                    None => {
                        return Err(Error::Input(format!(
                            "variable {} not available",
                            self.vars[i]
                        )))
                    }
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                out.add_term(ne, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Keeps the terms selected by `f`.
    pub fn filter<F: Fn(&[i32]) -> bool>(&self, f: F) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| f(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn all_coeffs_nonneg_integers(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Expands `self(x) = f(x_i -> x_i)` as a polynomial in one variable `i` whose
    /// coefficients are polynomials in the rest; returned as exponent -> coefficient.
    pub fn collect_in(&self, i: usize) -> BTreeMap<i32, Poly> {
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = 0;
            out.entry(e[i])
                .or_insert_with(|| Poly::zero(&self.vars))
                .add_term(ne, c.clone());
        }
        out
    }
}

pub(crate) fn add_exp(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub_exp(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_vars(rhs);
        let mut acc: HashMap<Vec<i32>, Rational> = HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = add_exp(e1, e2);
                let c = c1 * c2;
                match acc.get_mut(&e) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        Poly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", a, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exp: e.clone(),
                    coef: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let j = PolyJson::deserialize(d)?;
        let mut p = Poly::zero(&j.vars);
        for t in j.terms {
            if t.exp.len() != j.vars.len() {
                return Err(D::Error::custom("exponent length mismatch"));
            }
            let c = parse_rational(&t.coef).map_err(D::Error::custom)?;
            p.add_term(t.exp, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn q() -> Poly {
        Poly::var(&["q"], "q")
    }

    #[test]
    fn difference_of_squares() {
        let one = Poly::one(&["q"]);
        let q2 = q().pow(2);
        let p = (&one - &q2) * (&one + &q2);
        assert_eq!(p, &one - &q().pow(4));
        assert_eq!(p.exact_div(&(&one - &q2)).unwrap(), &one + &q2);
    }

    #[test]
    fn non_divisible_pair_errors() {
        let one = Poly::one(&["q"]);
        let r = (&one + &q()).exact_div(&(&one - &q()));
        assert!(matches!(r, Err(Error::Division { .. })));
    }

    #[test]
    fn laurent_division() {
        let vars = ["a", "q"];
        let a = Poly::var(&vars, "a");
        let qi = Poly::monomial(&vars, vec![0, -1], int(1));
        let d = &a - &qi;
        let h = &Poly::one(&vars) + &qi.pow(3);
        let p = &d * &h;
        assert_eq!(p.exact_div(&d).unwrap(), h);
    }

    #[test]
    fn json_round_trip() {
        let vars = ["a", "q"];
        let p = Poly::from_terms(
            &vars,
            [
                (vec![2, -2], int(1)),
                (vec![0, 3], crate::algebra::rat(-5, 2)),
            ],
        );
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["a","q"],"terms":[{"exp":[0,3],"coef":"-5/2"},{"exp":[2,-2],"coef":"1"}]}"#
        );
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let vars = ["a", "q"];
        let p = Poly::from_terms(&vars, [(vec![2, -2], int(1)), (vec![0, 0], int(-3))]);
        assert_eq!(p.to_string(), "a^2*q^-2 - 3");
    }

    #[test]
    fn monomial_substitution() {
        let vars = ["A", "Q", "T"];
        let p = Poly::monomial(&vars, vec![1, 1, 1], int(1));
        let out = p.subs_monomial(
            &["a", "q", "t"],
            &[
                (int(-1), vec![2, 0, 1]),
                (int(1), vec![0, 2, 2]),
                (int(1), vec![0, 2, 0]),
            ],
        );
        assert_eq!(
            out,
            Poly::monomial(&["a", "q", "t"], vec![2, 4, 3], int(-1))
        );
    }
}
