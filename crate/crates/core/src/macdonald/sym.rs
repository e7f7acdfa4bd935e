use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::factored::factor_binomials;
use crate::algebra::linalg::{inverse, Matrix};
use crate::algebra::{BinomialFactor, Factored, Poly, RatFn, Rational};
use crate::error::{Error, Result};
use crate::tableaux::{partitions_in_box, partitions_of, Partition};

/// Coefficient variables: `q` and `s`, where `s^2 = t`.
pub const MAC_VARS: [&str; 2] = ["q", "s"];

/// Largest degree for which Macdonald polynomials are built.
pub const MAX_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    Powersum,
    Macdonald,
}

/// A symmetric function as a finitely supported combination of basis elements.
#[derive(Clone, Debug)]
pub struct SymFunc {
    pub basis: Basis,
    pub coords: BTreeMap<Partition, RatFn>,
}

fn qs(a: i32, b: i32) -> Poly {
    Poly::monomial(&MAC_VARS, vec![a, b], Rational::one())
}

fn one_minus(a: i32, b: i32) -> Factored {
    Factored::one_minus(&MAC_VARS, 1, vec![a, b]).expect("nonzero exponent")
}

fn constant(c: Rational) -> RatFn {
    RatFn::constant(&MAC_VARS, c)
}

/// Coefficient of `m_λ` in `p_ρ`: ways to distribute the parts of ρ into rows of λ.
fn p_in_m(rho: &Partition, lambda: &Partition) -> Rational {
    fn go(parts: &[usize], room: &mut [usize]) -> u64 {
        let Some((&p, rest)) = parts.split_first() else {
            return room.iter().all(|&r| r == 0) as u64;
        };
        let mut n = 0;
        for i in 0..room.len() {
            if room[i] >= p {
                room[i] -= p;
                n += go(rest, room);
                room[i] += p;
            }
        }
        n
    }
    let mut room = lambda.parts().to_vec();
    Rational::from_integer(go(rho.parts(), &mut room).into())
}

struct DegreeTable {
    /// Partitions in increasing lexicographic order.
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `p_m[ρ][λ]`: coefficient of m_λ in p_ρ.
    p_m: Matrix,
    /// `m_p[λ][ρ]`: coefficient of p_ρ in m_λ.
    m_p: Matrix,
    /// ⟨p_ρ, p_ρ⟩.
    weights: Vec<RatFn>,
    /// Macdonald polynomials in the monomial basis, rows indexed like `parts`.
    mac: Vec<Vec<RatFn>>,
    norms: Vec<RatFn>,
}

fn power_weight(rho: &Partition) -> RatFn {
    let mut f = Factored::monomial(&MAC_VARS, Rational::from_integer(rho.z()), vec![0, 0]);
    for &k in rho.parts() {
        let k = k as i32;
        f = f.mul(&one_minus(k, 0)).div(&one_minus(0, 2 * k));
    }
    f.to_ratfn()
}

fn norm_candidates(n: usize) -> Vec<BinomialFactor> {
    let n = n as i32;
    let mut out = Vec::new();
    for a in 0..=n {
        for b in -2 * n..=2 * n {
            if (a == 0 && b <= 0) || num_integer::Integer::gcd(&a, &b) != 1 {
                continue;
            }
            for d in 1..=(2 * n) as u32 {
                out.push(BinomialFactor { d, w: vec![a, b] });
            }
        }
    }
    out.sort_by_key(|f| (f.degree(), f.w[0] + f.w[1].abs()));
    out
}

/// Rewrites `num / den` as a binomial product.
fn factor_ratfn(r: &RatFn, candidates: &[BinomialFactor]) -> Result<Factored> {
    let mut f = factor_binomials(&r.num, Some(candidates))?;
    for (b, &k) in &r.den {
        *f.factors.entry(b.clone()).or_insert(0) -= k as i32;
    }
    f.factors.retain(|_, k| *k != 0);
    Ok(f)
}

impl DegreeTable {
    fn build(n: usize) -> Result<DegreeTable> {
        let mut parts = partitions_of(n);
        parts.reverse();
        let k = parts.len();
        let index = parts
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let p_m: Matrix = parts
            .iter()
            .map(|rho| parts.iter().map(|lam| p_in_m(rho, lam)).collect())
            .collect();
        let m_p =
            inverse(&p_m).ok_or_else(|| Error::Internal("power sums are not a basis".into()))?;
        let weights: Vec<RatFn> = parts.iter().map(power_weight).collect();
        let candidates = norm_candidates(n);
        let to_p = |v: &[RatFn]| -> Vec<RatFn> {
            (0..k)
                .map(|r| {
                    let mut acc = RatFn::zero(&MAC_VARS);
                    for (l, c) in v.iter().enumerate() {
                        if !c.is_zero() && !m_p[l][r].is_zero() {
                            acc = acc.add(&c.scale(&m_p[l][r]));
                        }
                    }
                    acc
                })
                .collect()
        };
        let mut mac: Vec<Vec<RatFn>> = Vec::with_capacity(k);
        let mut weighted: Vec<Vec<RatFn>> = Vec::with_capacity(k);
        let mut norms: Vec<RatFn> = Vec::with_capacity(k);
        let mut norm_factors: Vec<Factored> = Vec::with_capacity(k);
        for i in 0..k {
            let mut v: Vec<RatFn> = (0..k)
                .map(|j| {
                    constant(if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    })
                })
                .collect();
            for j in 0..i {
                let mut pair = RatFn::zero(&MAC_VARS);
                for r in 0..k {
                    if !m_p[i][r].is_zero() && !weighted[j][r].is_zero() {
                        pair = pair.add(&weighted[j][r].scale(&m_p[i][r]));
                    }
                }
                if pair.is_zero() {
                    continue;
                }
                let c = pair.div_factored(&norm_factors[j]).neg();
                for (l, x) in mac[j].iter().enumerate().take(j + 1) {
                    if !x.is_zero() {
                        v[l] = v[l].add(&x.mul(&c));
                    }
                }
            }
            let vp = to_p(&v);
            let w: Vec<RatFn> = vp.iter().zip(&weights).map(|(a, b)| a.mul(b)).collect();
            let mut norm = RatFn::zero(&MAC_VARS);
            for (a, b) in vp.iter().zip(&w) {
                if !a.is_zero() {
                    norm = norm.add(&a.mul(b));
                }
            }
            norm_factors.push(factor_ratfn(&norm, &candidates)?);
            norms.push(norm);
            weighted.push(w);
            mac.push(v);
        }
        Ok(DegreeTable {
            parts,
            index,
            p_m,
            m_p,
            weights,
            mac,
            norms,
        })
    }

    fn get(n: usize) -> Result<Arc<DegreeTable>> {
        if n > MAX_DEGREE {
            return Err(Error::Scale(format!(
                "Macdonald polynomials are built up to degree {MAX_DEGREE}"
            )));
        }
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<DegreeTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().unwrap().get(&n) {
            return Ok(t.clone());
        }
        let t = Arc::new(DegreeTable::build(n)?);
        cache.lock().unwrap().insert(n, t.clone());
        Ok(t)
    }
}

impl SymFunc {
    pub fn zero(basis: Basis) -> SymFunc {
        SymFunc {
            basis,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> SymFunc {
        let mut f = SymFunc::zero(basis);
        f.coords.insert(lambda, RatFn::one(&MAC_VARS));
        f
    }

    pub fn monomial(lambda: Partition) -> SymFunc {
        SymFunc::basis_element(Basis::Monomial, lambda)
    }

    pub fn power(lambda: Partition) -> SymFunc {
        SymFunc::basis_element(Basis::Powersum, lambda)
    }

    pub fn coeff(&self, lambda: &Partition) -> RatFn {
        self.coords
            .get(lambda)
            .cloned()
            .unwrap_or_else(|| RatFn::zero(&MAC_VARS))
    }

    fn add_term(&mut self, lambda: Partition, c: &RatFn) {
        if c.is_zero() {
            return;
        }
        let e = self
            .coords
            .entry(lambda.clone())
            .or_insert_with(|| RatFn::zero(&MAC_VARS));
        *e = e.add(c);
        if e.is_zero() {
            self.coords.remove(&lambda);
        }
    }

    pub fn add(&self, o: &SymFunc) -> Result<SymFunc> {
        let o = o.to_basis(self.basis)?;
        let mut out = self.clone();
        for (l, c) in o.coords {
            out.add_term(l, &c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFn) -> SymFunc {
        let mut out = SymFunc::zero(self.basis);
        for (l, x) in &self.coords {
            out.add_term(l.clone(), &x.mul(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn by_degree(&self) -> BTreeMap<usize, Vec<(&Partition, &RatFn)>> {
        let mut out: BTreeMap<usize, Vec<_>> = BTreeMap::new();
        for (l, c) in &self.coords {
            out.entry(l.size()).or_default().push((l, c));
        }
        out
    }

    /// Exact change of basis.
    pub fn to_basis(&self, target: Basis) -> Result<SymFunc> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut out = SymFunc::zero(target);
        for (n, terms) in self.by_degree() {
            let t = DegreeTable::get(n)?;
            let k = t.parts.len();
            let mut v = vec![RatFn::zero(&MAC_VARS); k];
            for (l, c) in terms {
                v[t.index[l]] = c.clone();
            }
            let m = match self.basis {
                Basis::Monomial => v,
                Basis::Powersum => combine(&v, &t.p_m),
                Basis::Macdonald => {
                    let mut m = vec![RatFn::zero(&MAC_VARS); k];
                    for (i, c) in v.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (l, x) in t.mac[i].iter().enumerate() {
                            if !x.is_zero() {
                                m[l] = m[l].add(&x.mul(c));
                            }
                        }
                    }
                    m
                }
            };
            let w = match target {
                Basis::Monomial => m,
                Basis::Powersum => combine(&m, &t.m_p),
                Basis::Macdonald => {
                    let mut m = m;
                    let mut w = vec![RatFn::zero(&MAC_VARS); k];
                    for i in (0..k).rev() {
                        let c = m[i].clone();
                        if c.is_zero() {
                            continue;
                        }
                        for (l, x) in t.mac[i].iter().enumerate() {
                            if !x.is_zero() {
                                m[l] = m[l].sub(&x.mul(&c));
                            }
                        }
                        w[i] = c;
                    }
                    w
                }
            };
            for (i, c) in w.into_iter().enumerate() {
                out.add_term(t.parts[i].clone(), &c);
            }
        }
        Ok(out)
    }

    /// Specializes `q = t`, returning rational coefficients in the monomial basis.
    pub fn at_q_equals_t(&self) -> Result<BTreeMap<Partition, Rational>> {
        let m = self.to_basis(Basis::Monomial)?;
        let images = [(Rational::one(), vec![2]), (Rational::one(), vec![1])];
        let mut out = BTreeMap::new();
        for (l, c) in m.coords {
            let p = c.subs_monomial(&["s"], &images)?.to_poly()?;
            if !p.is_constant() {
                return Err(Error::Consistency(format!(
                    "coefficient of m_{l} depends on t at q = t: {p}"
                )));
            }
            let v = p.constant_term();
            if !v.is_zero() {
                out.insert(l, v);
            }
        }
        Ok(out)
    }
}

fn combine(v: &[RatFn], m: &Matrix) -> Vec<RatFn> {
    let k = v.len();
    (0..k)
        .map(|j| {
            let mut acc = RatFn::zero(&MAC_VARS);
            for (i, c) in v.iter().enumerate() {
                if !c.is_zero() && !m[i][j].is_zero() {
                    acc = acc.add(&c.scale(&m[i][j]));
                }
            }
            acc
        })
        .collect()
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let sym = match self.basis {
            Basis::Monomial => "m",
            Basis::Powersum => "p",
            Basis::Macdonald => "M",
        };
        for (i, (l, c)) in self.coords.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]*{sym}_{l}")?;
        }
        Ok(())
    }
}

/// The (q,t)-deformed Hall pairing, ⟨p_λ,p_λ⟩ = z_λ ∏(1−q^{λ_i})/(1−t^{λ_i}).
pub fn hall_pairing(f: &SymFunc, g: &SymFunc) -> Result<RatFn> {
    let f = f.to_basis(Basis::Powersum)?;
    let g = g.to_basis(Basis::Powersum)?;
    let mut acc = RatFn::zero(&MAC_VARS);
    for (l, c) in &f.coords {
        if let Some(d) = g.coords.get(l) {
            let t = DegreeTable::get(l.size())?;
            acc = acc.add(&c.mul(d).mul(&t.weights[t.index[l]]));
        }
    }
    Ok(acc)
}

/// M_λ expanded in the monomial basis, by Gram–Schmidt along lexicographic order.
pub fn macdonald_poly(lambda: &Partition) -> Result<SymFunc> {
    let t = DegreeTable::get(lambda.size())?;
    let i = t.index[lambda];
    let mut out = SymFunc::zero(Basis::Monomial);
    for (l, c) in t.mac[i].iter().enumerate() {
        out.add_term(t.parts[l].clone(), c);
    }
    Ok(out)
}

/// ⟨M_λ, M_λ⟩ as computed by Gram–Schmidt.
pub fn gram_schmidt_norm(lambda: &Partition) -> Result<RatFn> {
    let t = DegreeTable::get(lambda.size())?;
    Ok(t.norms[t.index[lambda]].clone())
}

/// Box product ∏ (1 − q^{a+1} t^{l}) / (1 − q^{a} t^{l+1}).
pub fn macdonald_norm(lambda: &Partition) -> RatFn {
    let conj = lambda.conjugate();
    let mut f = Factored::one(&MAC_VARS);
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let a = (row - j - 1) as i32;
            let l = (conj.part(j) - i - 1) as i32;
            f = f
                .mul(&one_minus(a + 1, 2 * l))
                .div(&one_minus(a, 2 * l + 2));
        }
    }
    f.to_ratfn()
}

/// All distinct rearrangements of `v`.
pub(crate) fn distinct_permutations(v: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Exponent of `s` in t^{ρ_i} for the balanced ρ_i = (N+1−2i)/2, with i 1-based.
pub fn rho_s_exponent(n: usize, i: usize) -> i32 {
    n as i32 + 1 - 2 * i as i32
}

/// M_λ at x_i = t^{ρ_i} q^{μ_i}, i = 1..N.
pub fn principal_eval(lambda: &Partition, n: usize, mu: &Partition) -> Result<RatFn> {
    if lambda.len() > n || mu.len() > n {
        return Ok(RatFn::zero(&MAC_VARS));
    }
    let point: Vec<(i32, i32)> = (1..=n)
        .map(|i| (mu.part(i - 1) as i32, rho_s_exponent(n, i)))
        .collect();
    let m = macdonald_poly(lambda)?;
    let mut acc = RatFn::zero(&MAC_VARS);
    for (nu, c) in &m.coords {
        if nu.len() > n {
            continue;
        }
        let mut padded = nu.parts().to_vec();
        padded.resize(n, 0);
        let mut val = Poly::zero(&MAC_VARS);
        for perm in distinct_permutations(&padded) {
            let (a, b) = perm
                .iter()
                .zip(&point)
                .fold((0, 0), |(a, b), (&e, &(x, y))| {
                    (a + e as i32 * x, b + e as i32 * y)
                });
            val = &val + &qs(a, b);
        }
        acc = acc.add(&c.mul_poly(&val));
    }
    Ok(acc)
}

/// Refined S and T matrices on partitions with at most N rows and parts at most `cutoff`.
#[derive(Clone, Debug)]
pub struct RefinedST {
    pub index: Vec<Partition>,
    /// S_{λμ}/S_{00} = M_λ(t^ρ q^μ) M_μ(t^ρ).
    pub s: Vec<Vec<RatFn>>,
    /// Diagonal of T: q^{½Σλ_i(λ_i−1)} t^{Σ(i−1)λ_i}.
    pub t: Vec<Poly>,
}

pub fn t_entry(lambda: &Partition) -> Poly {
    let p = lambda.parts();
    let qe: usize = p.iter().map(|&x| x * (x.max(1) - 1) / 2).sum();
    let te: usize = p.iter().enumerate().map(|(i, &x)| i * x).sum();
    qs(qe as i32, 2 * te as i32)
}

pub fn refined_st(n: usize, cutoff: usize) -> Result<RefinedST> {
    let index = partitions_in_box(n, cutoff);
    let empty = Partition::empty();
    let dims: Vec<RatFn> = index
        .iter()
        .map(|l| principal_eval(l, n, &empty))
        .collect::<Result<_>>()?;
    let mut s = Vec::with_capacity(index.len());
    for l in &index {
        let row: Vec<RatFn> = index
            .iter()
            .zip(&dims)
            .map(|(m, d)| Ok(principal_eval(l, n, m)?.mul(d)))
            .collect::<Result<_>>()?;
        s.push(row);
    }
    let t = index.iter().map(t_entry).collect();
    Ok(RefinedST { index, s, t })
}

fn h_in_p(k: usize) -> BTreeMap<Partition, Rational> {
    partitions_of(k)
        .into_iter()
        .map(|rho| {
            let z = Rational::from_integer(rho.z());
            (rho, Rational::one() / z)
        })
        .collect()
}

fn p_product(
    a: &BTreeMap<Partition, Rational>,
    b: &BTreeMap<Partition, Rational>,
) -> BTreeMap<Partition, Rational> {
    let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
    for (x, c) in a {
        for (y, d) in b {
            let mut parts = x.parts().to_vec();
            parts.extend_from_slice(y.parts());
            *out.entry(Partition::new(parts))
                .or_insert_with(Rational::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Schur function s_λ from the Jacobi–Trudi determinant, in the monomial basis.
pub fn schur_oracle(lambda: &Partition) -> Result<BTreeMap<Partition, Rational>> {
    let l = lambda.len();
    let entry = |i: usize, j: usize| -> Option<usize> {
        let k = lambda.part(i) as i64 - i as i64 + j as i64;
        (k >= 0).then_some(k as usize)
    };
    let mut det: BTreeMap<Partition, Rational> = BTreeMap::new();
    let idx: Vec<usize> = (0..l).collect();
    for perm in permutations(&idx) {
        let inversions = (0..l)
            .flat_map(|a| (a + 1..l).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let mut term: BTreeMap<Partition, Rational> =
            [(Partition::empty(), Rational::one())].into();
        let mut vanish = false;
        for (i, &j) in perm.iter().enumerate() {
            match entry(i, j) {
                Some(k) => term = p_product(&term, &h_in_p(k)),
                None => {
                    vanish = true;
                    break;
                }
            }
        }
        if vanish {
            continue;
        }
        let sign = if inversions % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        for (p, c) in term {
            *det.entry(p).or_insert_with(Rational::zero) += c * &sign;
        }
    }
    let mut out = BTreeMap::new();
    for nu in partitions_of(lambda.size()) {
        let c: Rational = det.iter().map(|(rho, c)| c * p_in_m(rho, &nu)).sum();
        if !c.is_zero() {
            out.insert(nu, c);
        }
    }
    Ok(out)
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    distinct_permutations(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn pairing_on_power_sums() {
        let one = hall_pairing(&SymFunc::power(p(&[1])), &SymFunc::power(p(&[1]))).unwrap();
        let expect = one_minus(1, 0).div(&one_minus(0, 2)).to_ratfn();
        assert_eq!(one, expect);
        let cross = hall_pairing(&SymFunc::power(p(&[2])), &SymFunc::power(p(&[1, 1]))).unwrap();
        assert!(cross.is_zero());
    }

    #[test]
    fn two_box_polynomial() {
        let m2 = macdonald_poly(&p(&[2])).unwrap();
        assert_eq!(m2.coeff(&p(&[2])), RatFn::one(&MAC_VARS));
        let c = Factored::monomial(&MAC_VARS, Rational::one(), vec![0, 0])
            .mul(&one_minus(2, 0))
            .div(&one_minus(1, 0))
            .mul(&one_minus(0, 2))
            .div(&one_minus(1, 2));
        assert_eq!(m2.coeff(&p(&[1, 1])), c.to_ratfn());
        assert_eq!(macdonald_poly(&p(&[1, 1])).unwrap().coords.len(), 1);
    }

    #[test]
    fn norms_match_box_product() {
        for n in 0..=5 {
            for l in partitions_of(n) {
                assert_eq!(gram_schmidt_norm(&l).unwrap(), macdonald_norm(&l), "{l}");
            }
        }
    }

    #[test]
    fn basis_round_trip() {
        let f = macdonald_poly(&p(&[2, 1])).unwrap();
        for b in [Basis::Powersum, Basis::Macdonald] {
            let g = f.to_basis(b).unwrap().to_basis(Basis::Monomial).unwrap();
            assert!(g
                .add(&f.scale(&RatFn::constant(&MAC_VARS, -Rational::one())))
                .unwrap()
                .is_zero());
        }
        let mac = f.to_basis(Basis::Macdonald).unwrap();
        assert_eq!(mac.coords.len(), 1);
    }

    #[test]
    fn q_equals_t_gives_schur() {
        for n in 1..=4 {
            for l in partitions_of(n) {
                let m = macdonald_poly(&l).unwrap().at_q_equals_t().unwrap();
                assert_eq!(m, schur_oracle(&l).unwrap(), "{l}");
            }
        }
    }

    #[test]
    fn orthogonal_and_dominance_triangular() {
        for n in 0..=6 {
            let parts = partitions_of(n);
            let polys: Vec<SymFunc> = parts.iter().map(|l| macdonald_poly(l).unwrap()).collect();
            for (i, l) in parts.iter().enumerate() {
                for mu in polys[i].coords.keys() {
                    assert!(matches!(
                        mu.dominance(l),
                        Some(std::cmp::Ordering::Less | std::cmp::Ordering::Equal)
                    ));
                }
                for j in 0..i {
                    assert!(
                        hall_pairing(&polys[i], &polys[j]).unwrap().is_zero(),
                        "{l} {}",
                        parts[j]
                    );
                }
                assert_eq!(
                    hall_pairing(&polys[i], &polys[i]).unwrap(),
                    macdonald_norm(l)
                );
            }
        }
    }

    #[test]
    fn t_matrix_entries() {
        assert_eq!(t_entry(&p(&[2])), qs(1, 0));
        assert_eq!(t_entry(&p(&[1, 1])), qs(0, 2));
    }

    #[test]
    fn principal_evaluation() {
        let v = principal_eval(&p(&[1]), 2, &Partition::empty()).unwrap();
        assert_eq!(v, RatFn::from_poly(&qs(0, 1) + &qs(0, -1)));
        assert!(principal_eval(&p(&[1, 1]), 1, &Partition::empty())
            .unwrap()
            .is_zero());
        let (a, b) = (p(&[2]), p(&[1, 1]));
        let e = Partition::empty();
        let lhs = principal_eval(&a, 3, &b)
            .unwrap()
            .mul(&principal_eval(&b, 3, &e).unwrap());
        let rhs = principal_eval(&b, 3, &a)
            .unwrap()
            .mul(&principal_eval(&a, 3, &e).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn s_matrix_is_symmetric() {
        let st = refined_st(2, 2).unwrap();
        for i in 0..st.index.len() {
            for j in 0..i {
                assert_eq!(st.s[i][j], st.s[j][i], "{} {}", st.index[i], st.index[j]);
            }
        }
    }
}
