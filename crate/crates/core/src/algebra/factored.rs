use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::poly::{add_exp, Poly};
use super::rational::{pow_i, Rational};
use crate::error::{Error, Result};

/// Φ_d(x^w) with `w` primitive and lexicographically positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinomialFactor {
    pub d: u32,
    pub w: Vec<i32>,
}

fn cyclotomic_coeffs(d: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&d) {
        return c.clone();
    }
    // x^d - 1 divided by Φ_e for every proper divisor e.
    let mut p: Vec<BigInt> = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::from(-1);
    p[d as usize] = BigInt::one();
    for e in 1..d {
        if d % e == 0 {
            p = div_monic(&p, &cyclotomic_coeffs(e));
        }
    }
    cache.lock().unwrap().insert(d, p.clone());
    p
}

fn div_monic(p: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let mut r = p.to_vec();
    let dm = m.len() - 1;
    let dq = r.len() - 1 - dm;
    let mut q = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = r[k + dm].clone();
        for j in 0..=dm {
            r[k + j] -= &c * &m[j];
        }
        q[k] = c;
    }
    q
}

fn gcd_vec(v: &[i32]) -> i32 {
    v.iter().fold(0i32, |g, &x| g.gcd(&x))
}

fn lex_positive(v: &[i32]) -> bool {
    v.iter().find(|&&x| x != 0).map(|&x| x > 0).unwrap_or(false)
}

impl BinomialFactor {
    pub fn expand<S: AsRef<str>>(&self, vars: &[S]) -> Poly {
        let c = cyclotomic_coeffs(self.d);
        Poly::from_terms(
            vars,
            c.iter().enumerate().map(|(k, x)| {
                (
                    self.w.iter().map(|&wi| wi * k as i32).collect(),
                    Rational::from_integer(x.clone()),
                )
            }),
        )
    }

    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let mut y = Rational::one();
        for (i, &wi) in self.w.iter().enumerate() {
            if wi != 0 {
                y *= pow_i(&point[i], wi)?;
            }
        }
        let mut acc = Rational::zero();
        for x in cyclotomic_coeffs(self.d).iter().rev() {
            acc = acc * &y + Rational::from_integer(x.clone());
        }
        Some(acc)
    }

    pub fn degree(&self) -> u32 {
        (cyclotomic_coeffs(self.d).len() - 1) as u32
    }
}

/// A product `coef * x^mono * ∏ Φ_d(x^w)^k` with signed multiplicities: an
/// element of the fraction field whose factors are all cyclotomic binomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub vars: Vec<String>,
    pub coef: Rational,
    pub mono: Vec<i32>,
    pub factors: BTreeMap<BinomialFactor, i32>,
}

impl Factored {
    pub fn one<S: AsRef<str>>(vars: &[S]) -> Factored {
        Factored::monomial(vars, Rational::one(), vec![0; vars.len()])
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], coef: Rational, mono: Vec<i32>) -> Factored {
        Factored {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            coef,
            mono,
            factors: BTreeMap::new(),
        }
    }

    /// `1 - c x^v` for `c = ±1`; `None` when it is identically zero.
    pub fn one_minus<S: AsRef<str>>(vars: &[S], c: i32, v: Vec<i32>) -> Option<Factored> {
        assert!(
            c == 1 || c == -1,
            "only ±1 binomials factor over cyclotomics"
        );
        let mut out = Factored::one(vars);
        if v.iter().all(|&x| x == 0) {
            return if c == 1 {
                None
            } else {
                out.coef = Rational::from_integer(2.into());
                Some(out)
            };
        }
        if c == -1 {
            // 1 + y = (1 - y^2) / (1 - y)
            let v2: Vec<i32> = v.iter().map(|x| 2 * x).collect();
            let num = Factored::one_minus(vars, 1, v2)?;
            let den = Factored::one_minus(vars, 1, v)?;
            return Some(num.div(&den));
        }
        let mut v = v;
        if !lex_positive(&v) {
            // 1 - x^v = -x^v (1 - x^{-v})
            out.coef = -out.coef;
            out.mono = v.clone();
            v = v.iter().map(|x| -x).collect();
        }
        let g = gcd_vec(&v);
        let w: Vec<i32> = v.iter().map(|x| x / g).collect();
        // 1 - y^g = -∏_{d|g} Φ_d(y)
        out.coef = -out.coef;
        for d in 1..=g as u32 {
            if g as u32 % d == 0 {
                *out.factors
                    .entry(BinomialFactor { d, w: w.clone() })
                    .or_insert(0) += 1;
            }
        }
        Some(out)
    }

    /// `α x^e + β x^f` with `β/α = ±1`; `None` when zero.
    pub fn from_binomial(p: &Poly) -> Result<Option<Factored>> {
        let terms: Vec<_> = p.terms().collect();
        let vars = p.vars();
        match terms.len() {
            0 => Ok(None),
            1 => Ok(Some(Factored::monomial(
                vars,
                terms[0].1.clone(),
                terms[0].0.clone(),
            ))),
            2 => {
                let (e, a) = terms[0];
                let (f, b) = terms[1];
                let ratio = -(b / a);
                let c = if ratio.is_one() {
                    1
                } else if (-&ratio).is_one() {
                    -1
                } else {
                    return Err(Error::Input(format!("{p} is not a ±1 binomial")));
                };
                let v: Vec<i32> = f.iter().zip(e).map(|(x, y)| x - y).collect();
                let mut out = Factored::one_minus(vars, c, v).expect("nonzero binomial");
                out.coef *= a;
                out.mono = add_exp(&out.mono, e);
                Ok(Some(out))
            }
            _ => Err(Error::Input(format!("{p} is not a binomial"))),
        }
    }

    pub fn mul(&self, o: &Factored) -> Factored {
        let mut out = self.clone();
        out.coef *= &o.coef;
        out.mono = add_exp(&out.mono, &o.mono);
        for (f, k) in &o.factors {
            let e = out.factors.entry(f.clone()).or_insert(0);
            *e += k;
            if *e == 0 {
                out.factors.remove(f);
            }
        }
        out
    }

    pub fn inv(&self) -> Factored {
        Factored {
            vars: self.vars.clone(),
            coef: self.coef.recip(),
            mono: self.mono.iter().map(|x| -x).collect(),
            factors: self.factors.iter().map(|(f, k)| (f.clone(), -k)).collect(),
        }
    }

    pub fn div(&self, o: &Factored) -> Factored {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i32) -> Factored {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut out = Factored::one(&self.vars);
        for _ in 0..k.abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.values().all(|&k| k > 0)
    }

    pub fn numerator_poly(&self) -> Poly {
        let mut p = Poly::monomial(&self.vars, self.mono.clone(), self.coef.clone());
        for (f, &k) in &self.factors {
            if k > 0 {
                p = &p * &f.expand(&self.vars).pow(k as u32);
            }
        }
        p
    }

    pub fn denominator(&self) -> BTreeMap<BinomialFactor, u32> {
        self.factors
            .iter()
            .filter(|(_, &k)| k < 0)
            .map(|(f, &k)| (f.clone(), (-k) as u32))
            .collect()
    }

    pub fn to_ratfn(&self) -> RatFn {
        RatFn {
            num: self.numerator_poly(),
            den: self.denominator(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut acc = self.coef.clone();
        for (i, &k) in self.mono.iter().enumerate() {
            if k != 0 {
                acc *= pow_i(&point[i], k).ok_or_else(|| Error::Pole(self.vars[i].clone()))?;
            }
        }
        for (f, &k) in &self.factors {
            let v = f
                .eval(point)
                .ok_or_else(|| Error::Pole(self.factor_name(f)))?;
            acc *= pow_i(&v, k).ok_or_else(|| Error::Pole(self.factor_name(f)))?;
        }
        Ok(acc)
    }

    fn factor_name(&self, f: &BinomialFactor) -> String {
        let y = Poly::monomial(&self.vars, f.w.clone(), Rational::one());
        format!("Phi_{}({})", f.d, y)
    }
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            Poly::monomial(&self.vars, self.mono.clone(), self.coef.clone())
        )?;
        for (b, k) in &self.factors {
            write!(f, " * {}^{}", self.factor_name(b), k)?;
        }
        Ok(())
    }
}

/// Rational function `num / ∏ Φ_d(x^w)^k` with a cyclotomic-binomial denominator.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub num: Poly,
    pub den: BTreeMap<BinomialFactor, u32>,
}

fn expand_den<S: AsRef<str>>(vars: &[S], den: &BTreeMap<BinomialFactor, u32>) -> Poly {
    let mut p = Poly::one(vars);
    for (f, &k) in den {
        p = &p * &f.expand(vars).pow(k);
    }
    p
}

impl RatFn {
    pub fn from_poly(p: Poly) -> RatFn {
        RatFn {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn zero<S: AsRef<str>>(vars: &[S]) -> RatFn {
        RatFn::from_poly(Poly::zero(vars))
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> RatFn {
        RatFn::from_poly(Poly::one(vars))
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> RatFn {
        RatFn::from_poly(Poly::constant(vars, c))
    }

    pub fn vars(&self) -> &[String] {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn reduce(mut self) -> RatFn {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let vars = self.num.vars().to_vec();
        let keys: Vec<BinomialFactor> = self.den.keys().cloned().collect();
        for f in keys {
            let fp = f.expand(&vars);
            while let Some(&k) = self.den.get(&f) {
                match self.num.exact_div(&fp) {
                    Ok(q) => {
                        self.num = q;
                        if k == 1 {
                            self.den.remove(&f);
                        } else {
                            self.den.insert(f.clone(), k - 1);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
        self
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        let vars = self.vars().to_vec();
        let mut den = self.den.clone();
        for (f, &k) in &o.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |r: &RatFn| {
            let mut extra = BTreeMap::new();
            for (f, &k) in &den {
                let have = r.den.get(f).copied().unwrap_or(0);
                if k > have {
                    extra.insert(f.clone(), k - have);
                }
            }
            &r.num * &expand_den(&vars, &extra)
        };
        RatFn {
            num: &lift(self) + &lift(o),
            den,
        }
        .reduce()
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        let mut den = self.den.clone();
        for (f, &k) in &o.den {
            *den.entry(f.clone()).or_insert(0) += k;
        }
        RatFn {
            num: &self.num * &o.num,
            den,
        }
        .reduce()
    }

    pub fn scale(&self, c: &Rational) -> RatFn {
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .reduce()
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFn {
        RatFn {
            num: &self.num * p,
            den: self.den.clone(),
        }
        .reduce()
    }

    pub fn mul_factored(&self, f: &Factored) -> RatFn {
        self.mul(&f.to_ratfn())
    }

    /// Divides by a product of binomials.
    pub fn div_factored(&self, f: &Factored) -> RatFn {
        self.mul_factored(&f.inv())
    }

    /// Exact polynomial value; fails when the denominator does not divide.
    pub fn to_poly(&self) -> Result<Poly> {
        if self.den.is_empty() {
            return Ok(self.num.clone());
        }
        self.num.exact_div(&expand_den(self.vars(), &self.den))
    }

    pub fn denominator_poly(&self) -> Poly {
        expand_den(self.vars(), &self.den)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let n = self.num.eval(point)?;
        let mut d = Rational::one();
        for (f, &k) in &self.den {
            let v = f
                .eval(point)
                .ok_or_else(|| Error::Pole(format!("Phi_{}", f.d)))?;
            if v.is_zero() {
                let y = Poly::monomial(self.vars(), f.w.clone(), Rational::one());
                return Err(Error::Pole(format!("Phi_{}({})", f.d, y)));
            }
            d *= pow_i(&v, k as i32).unwrap();
        }
        Ok(n / d)
    }

    /// Substitutes monomials; each denominator factor must map to a binomial.
    pub fn subs_monomial<S: AsRef<str>>(
        &self,
        new_vars: &[S],
        images: &[(Rational, Vec<i32>)],
    ) -> Result<RatFn> {
        let num = self.num.subs_monomial(new_vars, images);
        let mut out = RatFn::from_poly(num);
        for (f, &k) in &self.den {
            let y = Poly::monomial(&self.num.vars().to_vec(), f.w.clone(), Rational::one());
            let ym = y.subs_monomial(new_vars, images);
            let (e, c) = ym.as_monomial().unwrap();
            // Φ_d(c x^e): expand and factor as a binomial product
            let img = BinomialFactor { d: f.d, w: vec![1] }.expand(&["y"]);
            let img = img.subs_monomial(new_vars, &[(c, e)]);
            let fac = factor_binomials(&img, None)?;
            out = out.div_factored(&fac.pow(k as i32));
        }
        Ok(out)
    }
}

impl PartialEq for RatFn {
    fn eq(&self, o: &RatFn) -> bool {
        let vars = self.vars().to_vec();
        let mut den = self.den.clone();
        for (f, &k) in &o.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(k);
        }
        let lift = |r: &RatFn| {
            let mut extra = BTreeMap::new();
            for (f, &k) in &den {
                let have = r.den.get(f).copied().unwrap_or(0);
                if k > have {
                    extra.insert(f.clone(), k - have);
                }
            }
            &r.num * &expand_den(&vars, &extra)
        };
        lift(self) == lift(o)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})", self.num)?;
        for (b, k) in &self.den {
            let y = Poly::monomial(self.vars(), b.w.clone(), Rational::one());
            write!(f, " / Phi_{}({})^{}", b.d, y, k)?;
        }
        Ok(())
    }
}

/// Sums binomial products over the least common multiple of their denominators.
pub fn sum_factored<S: AsRef<str> + Sync>(vars: &[S], terms: &[Factored]) -> RatFn {
    let mut den: BTreeMap<BinomialFactor, u32> = BTreeMap::new();
    for t in terms {
        for (f, k) in t.denominator() {
            let e = den.entry(f).or_insert(0);
            *e = (*e).max(k);
        }
    }
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let expanded: HashMap<BinomialFactor, Poly> =
        den.keys().map(|f| (f.clone(), f.expand(&vars))).collect();
    let num = terms
        .par_iter()
        .map(|t| {
            let mut p = Poly::monomial(&vars, t.mono.clone(), t.coef.clone());
            for (f, &k) in &t.factors {
                if k > 0 {
                    let fp = expanded.get(f).cloned().unwrap_or_else(|| f.expand(&vars));
                    p = &p * &fp.pow(k as u32);
                }
            }
            for (f, &k) in &den {
                let have = t.factors.get(f).map(|&x| (-x).max(0) as u32).unwrap_or(0);
                if k > have {
                    p = &p * &expanded[f].pow(k - have);
                }
            }
            p
        })
        .reduce(|| Poly::zero(&vars), |a, b| &a + &b);
    RatFn { num, den }
}

/// Factors a polynomial into a monomial times cyclotomic binomials, trying the
/// given candidate factors (or all primitive directions within the Newton box).
pub fn factor_binomials(p: &Poly, candidates: Option<&[BinomialFactor]>) -> Result<Factored> {
    let vars = p.vars().to_vec();
    let n = vars.len();
    if p.is_zero() {
        return Err(Error::Input("cannot factor zero".into()));
    }
    let mut rest = p.clone();
    let mut out = Factored::one(&vars);
    let owned;
    let cands: &[BinomialFactor] = match candidates {
        Some(c) => c,
        None => {
            owned = box_candidates(p);
            &owned
        }
    };
    loop {
        if let Some((e, c)) = rest.as_monomial() {
            out.coef *= c;
            out.mono = add_exp(&out.mono, &e);
            return Ok(out);
        }
        let mut found = false;
        for f in cands {
            let span: Vec<i32> = (0..n)
                .map(|i| rest.max_exp(i).unwrap() - rest.min_exp(i).unwrap())
                .collect();
            let deg = f.degree() as i32;
            if (0..n).any(|i| f.w[i].abs() * deg > span[i]) {
                continue;
            }
            if let Ok(q) = rest.exact_div(&f.expand(&vars)) {
                rest = q;
                *out.factors.entry(f.clone()).or_insert(0) += 1;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Input(format!(
                "{p} is not a product of cyclotomic binomials"
            )));
        }
    }
}

fn box_candidates(p: &Poly) -> Vec<BinomialFactor> {
    let n = p.nvars();
    let span: Vec<i32> = (0..n)
        .map(|i| p.max_exp(i).unwrap() - p.min_exp(i).unwrap())
        .collect();
    let mut ws: Vec<Vec<i32>> = vec![vec![]];
    for i in 0..n {
        let mut next = Vec::new();
        for w in &ws {
            for x in -span[i]..=span[i] {
                let mut w2 = w.clone();
                w2.push(x);
                next.push(w2);
            }
        }
        ws = next;
    }
    let mut out = Vec::new();
    for w in ws {
        if !lex_positive(&w) || gcd_vec(&w) != 1 {
            continue;
        }
        let maxd = (0..n)
            .filter(|&i| w[i] != 0)
            .map(|i| span[i] / w[i].abs())
            .min()
            .unwrap_or(0);
        for d in 1..=(4 * maxd.max(0) as u32 + 2) {
            let f = BinomialFactor { d, w: w.clone() };
            if (0..n).all(|i| f.w[i].abs() * f.degree() as i32 <= span[i]) {
                out.push(f);
            }
        }
    }
    out.sort_by_key(|f| (f.degree(), f.w.iter().map(|x| x.abs()).sum::<i32>()));
    out
}

impl Factored {
    /// Whether the value is a nonzero constant or monomial with no factors.
    pub fn is_monomial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn sign(&self) -> i32 {
        if self.coef.is_negative() {
            -1
        } else {
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    const V: [&str; 2] = ["q", "t"];

    #[test]
    fn cyclotomic_polynomials() {
        let c: Vec<i64> = cyclotomic_coeffs(6)
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(c, vec![1, -1, 1]);
        let c: Vec<i64> = cyclotomic_coeffs(12)
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(c, vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn one_minus_expands_back() {
        for v in [vec![2, -3], vec![-4, 0], vec![6, 2], vec![0, 1]] {
            for c in [1, -1] {
                let f = Factored::one_minus(&V, c, v.clone()).unwrap();
                let expected = &Poly::one(&V) - &Poly::monomial(&V, v.clone(), int(c as i64));
                assert_eq!(f.to_ratfn().to_poly().unwrap(), expected, "v={v:?} c={c}");
            }
        }
        assert!(Factored::one_minus(&V, 1, vec![0, 0]).is_none());
    }

    #[test]
    fn rational_function_sum() {
        // 1/(1-q) + q/(1-q) = (1+q)/(1-q)
        let a = Factored::one_minus(&V, 1, vec![1, 0]).unwrap().inv();
        let b = a.mul(&Factored::monomial(&V, int(1), vec![1, 0]));
        let s = sum_factored(&V, &[a.clone(), b]);
        let expected = RatFn::from_poly(&Poly::one(&V) + &Poly::gen(&V, 0)).mul(&a.to_ratfn());
        assert_eq!(s, expected);
    }

    #[test]
    fn factoring_recovers_binomials() {
        let f = Factored::one_minus(&V, 1, vec![2, 1])
            .unwrap()
            .mul(&Factored::one_minus(&V, 1, vec![0, 3]).unwrap())
            .mul(&Factored::monomial(&V, int(-2), vec![1, -1]));
        let p = f.numerator_poly();
        let g = factor_binomials(&p, None).unwrap();
        assert_eq!(g.numerator_poly(), p);
    }

    #[test]
    fn pole_reported() {
        let a = Factored::one_minus(&V, 1, vec![1, 0]).unwrap().inv();
        assert!(matches!(a.eval(&[int(1), int(2)]), Err(Error::Pole(_))));
    }
}
