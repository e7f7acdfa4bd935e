//! Torus-fixed points of punctual Hilbert schemes of x^m = y^n as ideals of
//! the numerical semigroup ⟨m, n⟩, and the HOMFLY generating function built
//! from their nested pairs.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{int, Poly, Rational};
use crate::daha::TorusKnot;
use crate::error::{Error, Result};

pub const VARS: [&str; 2] = ["a", "q"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semigroup {
    pub m: u32,
    pub n: u32,
    pub gaps: Vec<u32>,
    pub milnor: u32,
}

impl Semigroup {
    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && self.gaps.binary_search(&(x as u32)).is_err()
    }

    /// Largest gap, −1 when there is none.
    pub fn frobenius(&self) -> i64 {
        self.gaps.last().map(|&g| g as i64).unwrap_or(-1)
    }
}

pub fn semigroup(m: u32, n: u32) -> Result<Semigroup> {
    if m == 0 || n == 0 || m.gcd(&n) != 1 {
        return Err(Error::Input(format!(
            "⟨{m},{n}⟩ needs coprime positive generators"
        )));
    }
    let milnor = (m - 1) * (n - 1);
    let bound = milnor as i64;
    let mut member = vec![false; bound as usize + 1];
    member[0] = true;
    for x in 1..=bound as usize {
        member[x] = (x >= m as usize && member[x - m as usize])
            || (x >= n as usize && member[x - n as usize]);
    }
    let gaps: Vec<u32> = (0..bound as u32).filter(|&x| !member[x as usize]).collect();
    if 2 * gaps.len() as u32 != milnor {
        return Err(Error::Internal(format!(
            "gap count {} does not match μ = {milnor}",
            gaps.len()
        )));
    }
    Ok(Semigroup { m, n, gaps, milnor })
}

/// A co-finite semigroup ideal Δ, stored through the finite set S ∖ Δ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SemigroupIdeal {
    pub missing: Vec<u32>,
}

impl SemigroupIdeal {
    pub fn colength(&self) -> usize {
        self.missing.len()
    }

    pub fn contains(&self, s: &Semigroup, x: i64) -> bool {
        s.contains(x) && self.missing.binary_search(&(x as u32)).is_err()
    }

    /// Minimal generators: elements of Δ not in Δ + (S ∖ {0}).
    pub fn generators(&self, s: &Semigroup) -> Vec<u32> {
        let top = self
            .missing
            .last()
            .map(|&x| x as i64)
            .unwrap_or(0)
            .max(s.frobenius())
            + (s.m + s.n) as i64;
        (0..=top)
            .filter(|&x| {
                self.contains(s, x)
                    && !self.contains(s, x - s.m as i64)
                    && !self.contains(s, x - s.n as i64)
            })
            .map(|x| x as u32)
            .collect()
    }
}

/// Pair Δ′ ⊆ Δ with Δ + (S ∖ {0}) ⊆ Δ′.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedPair {
    pub outer: SemigroupIdeal,
    pub inner: SemigroupIdeal,
}

impl NestedPair {
    pub fn jump(&self) -> usize {
        self.inner.colength() - self.outer.colength()
    }
}

/// Every ideal of the given colength; S ∖ Δ lies in [0, l + F + μ/2].
pub fn ideals_of_colength(s: &Semigroup, l: usize) -> Vec<SemigroupIdeal> {
    let bound = l as i64 + s.frobenius() + (s.milnor / 2) as i64;
    let elems: Vec<u32> = (0..=bound.max(0))
        .filter(|&x| s.contains(x))
        .map(|x| x as u32)
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn go(
        s: &Semigroup,
        elems: &[u32],
        start: usize,
        l: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<SemigroupIdeal>,
    ) {
        if cur.len() == l {
            out.push(SemigroupIdeal {
                missing: cur.clone(),
            });
            return;
        }
        for idx in start..elems.len() {
            let x = elems[idx] as i64;
            let ok = [s.m as i64, s.n as i64]
                .iter()
                .all(|&g| !s.contains(x - g) || cur.binary_search(&((x - g) as u32)).is_ok());
            if ok {
                cur.push(x as u32);
                go(s, elems, idx + 1, l, cur, out);
                cur.pop();
            }
        }
    }
    go(s, &elems, 0, l, &mut cur, &mut out);
    out
}

/// Nested pairs over a fixed outer ideal with the given jump.
pub fn nested_pairs(s: &Semigroup, outer: &SemigroupIdeal, jump: usize) -> Vec<NestedPair> {
    let gens = outer.generators(s);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << gens.len()) {
        if mask.count_ones() as usize != jump {
            continue;
        }
        let mut missing = outer.missing.clone();
        for (i, &g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                missing.push(g);
            }
        }
        missing.sort_unstable();
        out.push(NestedPair {
            outer: outer.clone(),
            inner: SemigroupIdeal { missing },
        });
    }
    out
}

fn choose(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// Number of nested pairs with colength(Δ) = l and the given jump.
pub fn nested_count(s: &Semigroup, l: usize, jump: usize) -> BigInt {
    ideals_of_colength(s, l)
        .iter()
        .map(|d| choose(d.generators(s).len(), jump))
        .sum()
}

/// `(l, jump) → count` for 2l ≤ q_order.
pub fn nested_table(s: &Semigroup, q_order: usize) -> BTreeMap<(usize, usize), BigInt> {
    let rows: Vec<Vec<((usize, usize), BigInt)>> = (0..=q_order / 2)
        .into_par_iter()
        .map(|l| {
            let mut counts: BTreeMap<usize, BigInt> = BTreeMap::new();
            for d in ideals_of_colength(s, l) {
                let g = d.generators(s).len();
                for j in 0..=g {
                    *counts.entry(j).or_insert_with(BigInt::zero) += choose(g, j);
                }
            }
            counts.into_iter().map(|(j, c)| ((l, j), c)).collect()
        })
        .collect();
    rows.into_iter().flatten().collect()
}

/// Σ_{l, j} q^{2l} (−a²)^j χ(C^{[l,l+j]}) for 2l ≤ q_order.
pub fn nested_series(k: TorusKnot, q_order: usize) -> Result<Poly> {
    let s = semigroup(k.m, k.n)?;
    let mut p = Poly::zero(&VARS);
    for ((l, j), c) in nested_table(&s, q_order) {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        p.add_term(
            vec![2 * j as i32, 2 * l as i32],
            Rational::from_integer(c * sign),
        );
    }
    Ok(p)
}

/// Unreduced HOMFLY invariant as a q-series: (a/q)^{μ−1} times the nested series.
pub fn os_homfly(k: TorusKnot, q_order: usize) -> Result<Poly> {
    let mu = k.milnor() as i32;
    Ok(nested_series(k, q_order)?.mul_monomial(&[mu - 1, -(mu - 1)], &int(1)))
}

/// The unknot value q(1−a²)/(a(1−q²)) as a q-series.
pub fn unknot_series(q_order: usize) -> Poly {
    let mut p = Poly::zero(&VARS);
    for l in 0..=(q_order / 2) as i32 {
        p.add_term(vec![-1, 2 * l + 1], int(1));
        p.add_term(vec![1, 2 * l + 1], int(-1));
    }
    p
}

/// Reduced HOMFLY polynomial: a^μ q^{−μ}(1−q²)Σ/(1−a²), exact once the
/// q-order covers the polynomial's degree.
pub fn os_reduced(k: TorusKnot, q_order: usize) -> Result<Poly> {
    let mu = k.milnor() as i32;
    let series = nested_series(k, q_order)?;
    let one = Poly::one(&VARS);
    let q2 = Poly::monomial(&VARS, vec![0, 2], int(1));
    let a2 = Poly::monomial(&VARS, vec![2, 0], int(1));
    let trunc = (&series * &(&one - &q2)).filter(|e| e[1] as usize <= q_order);
    let top = trunc.max_exp(1).unwrap_or(0);
    if top as usize + 2 > q_order {
        return Err(Error::Cutoff(q_order));
    }
    Ok(trunc
        .exact_div(&(&one - &a2))?
        .mul_monomial(&[mu, -mu], &int(1)))
}

/// Z(a, q) = ∏_{i>0} (1 − a²q^{2i})^{−i} truncated at q-degree `q_order`.
pub fn z_product(q_order: usize) -> Poly {
    let mut z = Poly::one(&VARS);
    for i in 1..=(q_order / 2) as i32 {
        // (1 − x)^{−i} = Σ_k C(i+k−1, k) x^k, x = a²q^{2i}
        let mut f = Poly::zero(&VARS);
        let mut k = 0;
        while 2 * i * k <= q_order as i32 {
            f.add_term(
                vec![2 * k, 2 * i * k],
                Rational::from_integer(choose((i + k - 1) as usize, k as usize)),
            );
            k += 1;
        }
        z = (&z * &f).filter(|e| e[1] as usize <= q_order);
    }
    z
}

/// Left side of the stable-pairs identity: Z times the nested series.
pub fn pt_series_check(k: TorusKnot, q_order: usize) -> Result<Poly> {
    let series = nested_series(k, q_order)?;
    Ok((&z_product(q_order) * &series).filter(|e| e[1] as usize <= q_order))
}

/// Gap sets closed under +m, +n inside [0, window), found by brute force.
pub fn brute_force_ideals(s: &Semigroup, l: usize, window: u32) -> BTreeSet<Vec<u32>> {
    let elems: Vec<u32> = (0..window).filter(|&x| s.contains(x as i64)).collect();
    let mut out = BTreeSet::new();
    let count = elems.len();
    for mask in 0u64..(1u64 << count) {
        if mask.count_ones() as usize != l {
            continue;
        }
        let missing: Vec<u32> = (0..count)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| elems[i])
            .collect();
        // Δ = S ∖ missing must be closed under adding m and n.
        let ok = elems.iter().enumerate().all(|(i, &x)| {
            mask >> i & 1 == 1
                || [s.m, s.n]
                    .iter()
                    .all(|&g| x + g >= window || !missing.contains(&(x + g)))
        });
        if ok {
            out.insert(missing);
        }
    }
    out
}
