use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, Poly, Rational};

/// Supercommutative ring on even `u_i` and odd `ξ_i` for the listed indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperRing {
    pub indices: Vec<usize>,
    pub u_weights: Vec<i32>,
    pub xi_weights: Vec<i32>,
    pub has_odd: bool,
}

impl SuperRing {
    /// q-degrees 2i for u_i and 2i−2 for ξ_i.
    pub fn koszul(indices: Vec<usize>) -> SuperRing {
        let u_weights = indices.iter().map(|&i| 2 * i as i32).collect();
        let xi_weights = indices.iter().map(|&i| 2 * i as i32 - 2).collect();
        SuperRing {
            indices,
            u_weights,
            xi_weights,
            has_odd: true,
        }
    }

    /// Purely even ring with the given weights.
    pub fn even(indices: Vec<usize>, weights: Vec<i32>) -> SuperRing {
        let n = indices.len();
        SuperRing {
            indices,
            u_weights: weights,
            xi_weights: vec![0; n],
            has_odd: false,
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, index: usize) -> Option<usize> {
        self.indices.iter().position(|&i| i == index)
    }

    pub fn degree(&self, m: &Mono) -> i32 {
        let mut d = 0;
        for (k, &e) in m.u.iter().enumerate() {
            d += self.u_weights[k] * e as i32;
        }
        for k in 0..self.len() {
            if m.xi >> k & 1 == 1 {
                d += self.xi_weights[k];
            }
        }
        d
    }

    pub fn one(&self) -> Element {
        Element::monomial(Mono::one(self.len()), Rational::one())
    }

    pub fn u(&self, index: usize) -> Element {
        let mut m = Mono::one(self.len());
        m.u[self.position(index).expect("index in ring")] = 1;
        Element::monomial(m, Rational::one())
    }

    pub fn xi(&self, index: usize) -> Element {
        let mut m = Mono::one(self.len());
        m.xi = 1 << self.position(index).expect("index in ring");
        Element::monomial(m, Rational::one())
    }

    /// Converts a polynomial in `u1..uN` (ring variables named `u{i}`),
    /// sending variables outside the ring to zero.
    pub fn from_poly(&self, p: &Poly) -> Element {
        let map: Vec<Option<usize>> = p
            .vars()
            .iter()
            .map(|v| {
                v.strip_prefix('u')
                    .and_then(|s| s.parse::<usize>().ok())
                    .and_then(|i| self.position(i))
            })
            .collect();
        let mut out = Element::zero();
        'terms: for (e, c) in p.terms() {
            let mut m = Mono::one(self.len());
            for (j, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[j] {
                    Some(pos) if k > 0 => m.u[pos] = k as u16,
                    _ => continue 'terms,
                }
            }
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn label(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (k, &e) in m.u.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("u{}", self.indices[k])),
                _ => parts.push(format!("u{}^{}", self.indices[k], e)),
            }
        }
        for k in 0..self.len() {
            if m.xi >> k & 1 == 1 {
                parts.push(format!("xi{}", self.indices[k]));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Monomial u^e ξ_S with S stored as a bitmask over ring positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mono {
    pub u: Vec<u16>,
    pub xi: u64,
}

impl Mono {
    pub fn one(n: usize) -> Mono {
        Mono {
            u: vec![0; n],
            xi: 0,
        }
    }

    pub fn xi_count(&self) -> usize {
        self.xi.count_ones() as usize
    }

    pub fn is_pure_power(&self) -> Option<usize> {
        if self.xi != 0 {
            return None;
        }
        let nz: Vec<usize> = (0..self.u.len()).filter(|&k| self.u[k] > 0).collect();
        if nz.len() == 1 {
            Some(nz[0])
        } else {
            None
        }
    }

    /// Product with sign; `None` when an odd generator repeats.
    pub fn mul(&self, o: &Mono) -> Option<(Mono, i32)> {
        if self.xi & o.xi != 0 {
            return None;
        }
        let u = self.u.iter().zip(&o.u).map(|(a, b)| a + b).collect();
        // sign of moving o's odd generators past the larger ones of self
        let mut swaps = 0;
        let mut bits = o.xi;
        while bits != 0 {
            let k = bits.trailing_zeros();
            swaps += (self.xi >> (k + 1)).count_ones();
            bits &= bits - 1;
        }
        Some((
            Mono {
                u,
                xi: self.xi | o.xi,
            },
            if swaps % 2 == 0 { 1 } else { -1 },
        ))
    }

    /// Removes odd generator at `pos`, returning the Koszul sign.
    pub fn remove_xi(&self, pos: usize) -> Option<(Mono, i32)> {
        if self.xi >> pos & 1 == 0 {
            return None;
        }
        let before = (self.xi & ((1u64 << pos) - 1)).count_ones();
        Some((
            Mono {
                u: self.u.clone(),
                xi: self.xi & !(1u64 << pos),
            },
            if before % 2 == 0 { 1 } else { -1 },
        ))
    }
}

impl Ord for Mono {
    /// u-exponents compared from the highest index down, then odd parts.
    fn cmp(&self, o: &Mono) -> Ordering {
        for k in (0..self.u.len()).rev() {
            match self.u[k].cmp(&o.u[k]) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        self.xi.cmp(&o.xi)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Element of the super ring.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    pub terms: BTreeMap<Mono, Rational>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn monomial(m: Mono, c: Rational) -> Element {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Element) -> Element {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Element {
        let mut out = Element::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, o: &Element) -> Element {
        let mut out = Element::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                if let Some((m, s)) = m1.mul(m2) {
                    out.add_term(m, c1 * c2 * int(s as i64));
                }
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> Element {
        Element::monomial(m.clone(), Rational::one()).mul(self)
    }

    pub fn leading(&self) -> Option<&Mono> {
        self.terms.keys().next_back()
    }

    pub fn display(&self, ring: &SuperRing) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| format!("({c})*{}", ring.label(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Whether all terms share a q-degree and an odd count.
    pub fn homogeneous(&self, ring: &SuperRing) -> Option<(i32, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let key = (ring.degree(first), first.xi_count());
        if it.all(|m| (ring.degree(m), m.xi_count()) == key) {
            Some(key)
        } else {
            None
        }
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{:?}xi{:b}", self.u, self.xi)
    }
}
