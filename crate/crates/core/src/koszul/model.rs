use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{int, rat, Poly, TruncatedSeries};
use crate::daha::TorusKnot;
use crate::error::{Error, Result};

use super::quotient::{Quotient, DEFAULT_DEGREE_CUTOFF};
use super::ring::{Element, Mono, SuperRing};

pub const GRADING_VARS: [&str; 4] = ["a", "q", "tr", "tc"];

pub fn u_vars(count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("u{i}")).collect()
}

fn shorter_side(k: &TorusKnot) -> (u32, u32) {
    (k.m.min(k.n), k.m.max(k.n))
}

fn base_series(vars: &[String], order: usize, zero_below: usize) -> TruncatedSeries {
    let mut coeffs = vec![Poly::one(vars)];
    for i in 1..=vars.len() {
        coeffs.push(if i <= zero_below {
            Poly::zero(vars)
        } else {
            Poly::gen(vars, i - 1)
        });
    }
    TruncatedSeries::new("z", order, coeffs, vars)
}

/// Superpotential in `u1..u_{m'r}` with `m' = min(m, n)`.
pub fn potential(k: &TorusKnot, r: usize) -> Result<Poly> {
    if r == 0 {
        return Err(Error::Input("color must be at least 1".into()));
    }
    let (ms, ns) = shorter_side(k);
    let vars = u_vars(ms as usize * r);
    let order = (ms + ns) as usize * r + 1;
    let f = base_series(&vars, order, 0);
    let g = f.pow(&rat((ms + ns) as i64, ms as i64), order)?;
    Ok(g.coeff(order).clone())
}

/// Even and odd relations of the moduli space.
#[derive(Clone, Debug)]
pub struct Relations {
    pub ring: SuperRing,
    pub even: Vec<Element>,
    pub odd: Vec<Element>,
}

impl Relations {
    pub fn all(&self) -> Vec<Element> {
        self.even.iter().chain(&self.odd).cloned().collect()
    }
}

fn ring_for(k: &TorusKnot, r: usize, reduced: bool) -> SuperRing {
    let (ms, _) = shorter_side(k);
    let lo = if reduced { r + 1 } else { 1 };
    SuperRing::koszul((lo..=ms as usize * r).collect())
}

/// Odd element Σ_j ∂f/∂u_j ξ_j in the ring.
fn exterior_derivative(ring: &SuperRing, f: &Poly) -> Element {
    let mut out = Element::zero();
    for (j, &idx) in ring.indices.iter().enumerate() {
        let Some(v) = f.var_index(&format!("u{idx}")) else {
            continue;
        };
        let mut xi = Mono::one(ring.len());
        xi.xi = 1 << j;
        out = out.add(&ring.from_poly(&f.derivative(v)).mul_mono(&xi));
    }
    out
}

/// Relations from the superpotential: first derivatives and their exterior derivatives.
pub fn moduli_relations(k: &TorusKnot, r: usize, reduced: bool) -> Result<Relations> {
    let w = potential(k, r)?;
    let ring = ring_for(k, r, reduced);
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 0..w.nvars() {
        let dw = w.derivative(i);
        even.push(ring.from_poly(&dw));
        odd.push(exterior_derivative(&ring, &dw));
    }
    Ok(Relations { ring, even, odd })
}

/// Relations from matching the `z`-expansion `(1+Σu_i z^i)^{n'/m'}` against a polynomial of degree `n'r`.
pub fn equation_relations(k: &TorusKnot, r: usize, reduced: bool) -> Result<Relations> {
    let (ms, ns) = shorter_side(k);
    let ring = ring_for(k, r, reduced);
    let vars = u_vars(ms as usize * r);
    let top = (ms + ns) as usize * r;
    let f = base_series(&vars, top, if reduced { r } else { 0 });
    let g = f.pow(&rat(ns as i64, ms as i64), top)?;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for j in ns as usize * r + 1..=top {
        let c = g.coeff(j);
        even.push(ring.from_poly(c));
        odd.push(exterior_derivative(&ring, c));
    }
    Ok(Relations { ring, even, odd })
}

/// Quadruple degree (a, q, t_r, t_c) of a monomial for color `r`.
pub fn grading(ring: &SuperRing, m: &Mono, r: usize) -> [i32; 4] {
    let mut g = [0i32; 4];
    for (k, &e) in m.u.iter().enumerate() {
        let i = ring.indices[k] as i32;
        let e = e as i32;
        g[1] += 2 * i * e;
        g[2] += 2 * ((i - 1) / r as i32) * e;
        g[3] += (2 * i - 2) * e;
    }
    for k in 0..ring.len() {
        if m.xi >> k & 1 == 1 {
            let i = ring.indices[k] as i32;
            g[0] += 2;
            g[1] += 2 * i - 2;
            g[2] += 2 * ((i - 1) / r as i32) + 1;
            g[3] += 2 * i - 1;
        }
    }
    g
}

/// A basis element with its label and degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub mono: Mono,
    pub a: i32,
    pub q: i32,
    pub tr: i32,
    pub tc: i32,
}

/// Monomial basis of a Koszul model.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub knot: TorusKnot,
    pub color: usize,
    pub reduced: bool,
    pub elements: Vec<BasisElement>,
    pub quotient: Quotient,
    /// Set when the basis was cut off in q-degree.
    pub truncated_at: Option<i32>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn ring(&self) -> &SuperRing {
        &self.quotient.ring
    }

    /// Poincaré polynomial in (a, q, tr, tc).
    pub fn character(&self) -> Poly {
        let mut p = Poly::zero(&GRADING_VARS);
        for e in &self.elements {
            p.add_term(vec![e.a, e.q, e.tr, e.tc], int(1));
        }
        p
    }

    /// Character shifted by a^{2r} q^{−2r}, the normalization of the reduced colored homology.
    pub fn normalized_character(&self) -> Poly {
        let r = self.color as i32;
        self.character()
            .mul_monomial(&[2 * r, -2 * r, 0, 0], &int(1))
    }

    /// Dimensions per (a, q) bidegree.
    pub fn bidegree_dims(&self) -> BTreeMap<(i32, i32), usize> {
        let mut out = BTreeMap::new();
        for e in &self.elements {
            *out.entry((e.a, e.q)).or_insert(0) += 1;
        }
        out
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.label.clone()).collect()
    }
}

fn assemble(
    k: &TorusKnot,
    r: usize,
    reduced: bool,
    mut quotient: Quotient,
    max_q: Option<i32>,
) -> Result<GradedBasis> {
    let monos = match max_q {
        Some(d) => quotient.basis_up_to(d),
        None => quotient.basis()?,
    };
    let ring = quotient.ring.clone();
    let elements = monos
        .into_iter()
        .map(|m| {
            let [a, q, tr, tc] = grading(&ring, &m, r);
            BasisElement {
                label: ring.label(&m),
                mono: m,
                a,
                q,
                tr,
                tc,
            }
        })
        .collect();
    Ok(GradedBasis {
        knot: *k,
        color: r,
        reduced,
        elements,
        quotient,
        truncated_at: max_q,
    })
}

/// Finite monomial basis of the Koszul model.
pub fn graded_basis(k: &TorusKnot, r: usize, reduced: bool) -> Result<GradedBasis> {
    let rel = moduli_relations(k, r, reduced)?;
    let mut quotient = Quotient::new(rel.ring.clone(), rel.all())?;
    quotient.ensure_finite(DEFAULT_DEGREE_CUTOFF)?;
    assemble(k, r, reduced, quotient, None)
}

/// Basis enumerated up to q-degree `max_q`, for models that are not finite.
pub fn graded_basis_truncated(
    k: &TorusKnot,
    r: usize,
    reduced: bool,
    max_q: i32,
) -> Result<GradedBasis> {
    let rel = moduli_relations(k, r, reduced)?;
    let quotient = Quotient::new(rel.ring.clone(), rel.all())?;
    assemble(k, r, reduced, quotient, Some(max_q))
}

/// Quotient dimension per q-degree for a relation set, up to its top degree.
pub fn quotient_profile(rel: &Relations) -> Result<BTreeMap<i32, usize>> {
    let mut q = Quotient::new(rel.ring.clone(), rel.all())?;
    let monos = q.basis()?;
    let mut out = BTreeMap::new();
    for m in monos {
        *out.entry(rel.ring.degree(&m)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Compares the superpotential and equation routes degree by degree.
pub fn routes_agree(k: &TorusKnot, r: usize, reduced: bool) -> Result<bool> {
    Ok(quotient_profile(&moduli_relations(k, r, reduced)?)?
        == quotient_profile(&equation_relations(k, r, reduced)?)?)
}

/// Scales a polynomial so that its leading coefficient is one.
pub fn monic(p: &Poly) -> Poly {
    match p.leading() {
        Some((_, c)) => p.scale(&c.recip()),
        None => p.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn knot(m: u32, n: u32) -> TorusKnot {
        TorusKnot::new(m, n).unwrap()
    }

    #[test]
    fn t34_potential_derivatives() {
        let w = potential(&knot(3, 4), 1).unwrap();
        let v = u_vars(3);
        let restrict = |p: &Poly| p.filter(|e| e[0] == 0);
        let d2 = restrict(&w.derivative(1));
        let d3 = restrict(&w.derivative(2));
        let u2 = Poly::var(&v, "u2");
        let u3 = Poly::var(&v, "u3");
        let e2 = &u2.pow(3).scale(&rat(-28, 243)) + &u3.pow(2).scale(&rat(14, 27));
        let e3 = (&u2 * &u3).scale(&rat(28, 27));
        assert_eq!(d2, e2);
        assert_eq!(d3, e3);
    }

    #[test]
    fn unknot_potential_vanishes() {
        let w = potential(&knot(1, 1), 2).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn trefoil_bases() {
        let b = graded_basis(&knot(2, 3), 1, true).unwrap();
        assert_eq!(b.labels(), vec!["1", "xi2", "u2"]);
        let degs: Vec<_> = b.elements.iter().map(|e| (e.a, e.q, e.tc)).collect();
        assert_eq!(degs, vec![(0, 0, 0), (2, 2, 3), (0, 4, 2)]);
        let b2 = graded_basis(&knot(3, 2), 2, true).unwrap();
        let mut l = b2.labels();
        l.sort();
        let mut want = vec![
            "1", "u3", "u4", "u3^2", "xi3", "xi4", "u3*xi3", "u3*xi4", "xi3*xi4",
        ];
        want.sort();
        assert_eq!(l, want);
    }

    #[test]
    fn routes_match() {
        assert!(routes_agree(&knot(2, 3), 1, true).unwrap());
        assert!(routes_agree(&knot(2, 3), 2, true).unwrap());
        assert!(routes_agree(&knot(3, 4), 1, true).unwrap());
    }
}
