use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};

use super::ring::{Element, Mono, SuperRing};

/// Component key: (q-degree, number of odd generators).
pub type Component = (i32, usize);

/// All monomials of a given q-degree and odd count, in descending term order.
pub fn monomials(ring: &SuperRing, degree: i32, odd: usize) -> Vec<Mono> {
    let n = ring.len();
    let mut out = Vec::new();
    let max_odd = if ring.has_odd { n } else { 0 };
    if odd > max_odd {
        return out;
    }
    for mask in 0u64..(1u64 << n) {
        if !ring.has_odd && mask != 0 {
            break;
        }
        if mask.count_ones() as usize != odd {
            continue;
        }
        let w: i32 = (0..n)
            .filter(|&k| mask >> k & 1 == 1)
            .map(|k| ring.xi_weights[k])
            .sum();
        let rest = degree - w;
        if rest < 0 {
            continue;
        }
        let mut exps = vec![0u16; n];
        even_monomials(&ring.u_weights, 0, rest, &mut exps, &mut |e| {
            out.push(Mono {
                u: e.to_vec(),
                xi: mask,
            })
        });
    }
    out.sort();
    out.reverse();
    out
}

fn even_monomials(w: &[i32], k: usize, rest: i32, exps: &mut Vec<u16>, f: &mut dyn FnMut(&[u16])) {
    if k == w.len() {
        if rest == 0 {
            f(exps);
        }
        return;
    }
    let mut e = 0;
    while e * w[k] <= rest {
        exps[k] = e as u16;
        even_monomials(w, k + 1, rest - e * w[k], exps, f);
        e += 1;
    }
    exps[k] = 0;
}

/// Reduced row echelon data for one graded component of an ideal.
#[derive(Clone, Debug, Default)]
pub struct ComponentData {
    pub monomials: Vec<Mono>,
    pub pivots: BTreeMap<Mono, Element>,
}

impl ComponentData {
    pub fn basis(&self) -> Vec<Mono> {
        self.monomials
            .iter()
            .filter(|m| !self.pivots.contains_key(m))
            .cloned()
            .collect()
    }
}

/// Reduced row echelon form of sparse rows, keyed by leading monomial.
fn echelon(rows: Vec<Element>) -> BTreeMap<Mono, Element> {
    let mut piv: BTreeMap<Mono, Element> = BTreeMap::new();
    for mut row in rows {
        while let Some(lead) = row.leading().cloned() {
            match piv.get(&lead) {
                Some(p) => {
                    let c = row.terms[&lead].clone();
                    row = row.add(&p.scale(&-c));
                }
                None => {
                    let c = row.terms[&lead].recip();
                    piv.insert(lead, row.scale(&c));
                    break;
                }
            }
        }
    }
    let keys: Vec<Mono> = piv.keys().cloned().collect();
    for (idx, key) in keys.iter().enumerate() {
        let mut row = piv[key].clone();
        for lower in keys[..idx].iter().rev() {
            if let Some(c) = row.terms.get(lower).cloned() {
                row = row.add(&piv[lower].scale(&-c));
            }
        }
        piv.insert(key.clone(), row);
    }
    piv
}

/// Quotient of a super ring by a homogeneous ideal, computed degree by degree.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ring: SuperRing,
    pub relations: Vec<Element>,
    keys: Vec<Component>,
    components: HashMap<Component, ComponentData>,
    /// Largest q-degree that can carry basis elements, when finite.
    pub top_degree: Option<i32>,
}

/// Degree beyond which a quotient is declared infinite.
pub const DEFAULT_DEGREE_CUTOFF: i32 = 400;

impl Quotient {
    pub fn new(ring: SuperRing, relations: Vec<Element>) -> Result<Quotient> {
        let mut keys = Vec::new();
        let mut kept = Vec::new();
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let key = r.homogeneous(&ring).ok_or_else(|| {
                Error::Model(format!("relation {} is not homogeneous", r.display(&ring)))
            })?;
            keys.push(key);
            kept.push(r);
        }
        Ok(Quotient {
            ring,
            relations: kept,
            keys,
            components: HashMap::new(),
            top_degree: None,
        })
    }

    pub fn component(&mut self, degree: i32, odd: usize) -> &ComponentData {
        if !self.components.contains_key(&(degree, odd)) {
            let data = if degree < 0 {
                ComponentData::default()
            } else {
                self.build(degree, odd)
            };
            self.components.insert((degree, odd), data);
        }
        &self.components[&(degree, odd)]
    }

    fn build(&mut self, degree: i32, odd: usize) -> ComponentData {
        let monos = monomials(&self.ring, degree, odd);
        if monos.is_empty() {
            return ComponentData::default();
        }
        let mut rows: Vec<Element> = self
            .relations
            .iter()
            .zip(&self.keys)
            .filter(|(_, &key)| key == (degree, odd))
            .map(|(r, _)| r.clone())
            .collect();
        // the rest of the component is spanned by generator multiples of lower components
        let n = self.ring.len();
        let mut gens = Vec::new();
        for k in 0..n {
            let mut m = Mono::one(n);
            m.u[k] = 1;
            gens.push((m, self.ring.u_weights[k], 0usize));
            if self.ring.has_odd {
                let mut m = Mono::one(n);
                m.xi = 1 << k;
                gens.push((m, self.ring.xi_weights[k], 1usize));
            }
        }
        for (g, w, o) in gens {
            if w > degree || o > odd || (w == 0 && o == 0) {
                continue;
            }
            let lower: Vec<Element> = self
                .component(degree - w, odd - o)
                .pivots
                .values()
                .cloned()
                .collect();
            rows.extend(
                lower
                    .iter()
                    .map(|r| r.mul_mono(&g))
                    .filter(|r| !r.is_zero()),
            );
        }
        ComponentData {
            monomials: monos,
            pivots: echelon(rows),
        }
    }

    /// Finds the top degree, failing past `cutoff`.
    pub fn ensure_finite(&mut self, cutoff: i32) -> Result<i32> {
        if let Some(d) = self.top_degree {
            return Ok(d);
        }
        let n = self.ring.len();
        let mut powers: Vec<Option<u16>> = vec![None; n];
        let xi_total: i32 = if self.ring.has_odd {
            self.ring.xi_weights.iter().filter(|&&w| w > 0).sum()
        } else {
            0
        };
        let mut d = 0;
        loop {
            if d > cutoff {
                return Err(Error::Finiteness(format!(
                    "no pure powers for all generators below degree {cutoff}"
                )));
            }
            let comp = self.component(d, 0);
            if d == 0 && !comp.pivots.is_empty() {
                self.top_degree = Some(-1);
                return Ok(-1);
            }
            for m in comp.pivots.keys() {
                if let Some(k) = m.is_pure_power() {
                    if powers[k].is_none() {
                        powers[k] = Some(m.u[k]);
                    }
                }
            }
            if powers.iter().all(|p| p.is_some()) {
                let top: i32 = powers
                    .iter()
                    .zip(&self.ring.u_weights)
                    .map(|(e, w)| (e.unwrap() as i32 - 1) * w)
                    .sum::<i32>()
                    + xi_total;
                self.top_degree = Some(top);
                return Ok(top);
            }
            d += 1;
        }
    }

    /// Basis monomials with their component, in increasing degree.
    pub fn basis(&mut self) -> Result<Vec<Mono>> {
        let top = self.ensure_finite(DEFAULT_DEGREE_CUTOFF)?;
        Ok(self.basis_up_to(top))
    }

    /// Basis monomials of degree at most `max_degree`, without a finiteness check.
    pub fn basis_up_to(&mut self, max_degree: i32) -> Vec<Mono> {
        let odd_max = if self.ring.has_odd {
            self.ring.len()
        } else {
            0
        };
        let mut out = Vec::new();
        for d in 0..=max_degree {
            for k in 0..=odd_max {
                let mut b = self.component(d, k).basis();
                b.reverse();
                out.extend(b);
            }
        }
        out
    }

    /// Normal form modulo the ideal.
    pub fn normal_form(&mut self, e: &Element) -> Element {
        let mut by_comp: BTreeMap<Component, Element> = BTreeMap::new();
        for (m, c) in &e.terms {
            let key = (self.ring.degree(m), m.xi_count());
            by_comp
                .entry(key)
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        let mut out = Element::zero();
        for ((d, k), part) in by_comp {
            let comp = self.component(d, k);
            let mut acc = part.clone();
            for (m, c) in &part.terms {
                if let Some(row) = comp.pivots.get(m) {
                    acc = acc.add(&row.scale(&-c.clone()));
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Membership test for the ideal.
    pub fn contains(&mut self, e: &Element) -> bool {
        self.normal_form(e).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn single_variable_truncation() {
        let ring = SuperRing::even(vec![1], vec![1]);
        let rel = ring.u(1).mul(&ring.u(1)).mul(&ring.u(1));
        let mut q = Quotient::new(ring, vec![rel]).unwrap();
        assert_eq!(q.basis().unwrap().len(), 3);
        assert_eq!(q.top_degree, Some(2));
    }

    #[test]
    fn normal_form_reduces_to_basis() {
        let ring = SuperRing::even(vec![1, 2], vec![1, 1]);
        let x = ring.u(1);
        let y = ring.u(2);
        let rels = vec![x.mul(&x).add(&y.mul(&y).scale(&int(-1))), x.mul(&y)];
        let mut q = Quotient::new(ring, rels).unwrap();
        assert_eq!(q.basis().unwrap().len(), 4);
        let nf = q.normal_form(&y.mul(&y));
        assert_eq!(nf, x.mul(&x));
        assert!(q.contains(&x.mul(&x).mul(&x)));
    }

    #[test]
    fn infinite_quotient_is_reported() {
        let ring = SuperRing::even(vec![1, 2], vec![1, 1]);
        let rel = ring.u(1).mul(&ring.u(2));
        let mut q = Quotient::new(ring, vec![rel]).unwrap();
        assert!(matches!(q.ensure_finite(30), Err(Error::Finiteness(_))));
    }
}
