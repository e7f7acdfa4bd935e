use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::rref;
use crate::algebra::{int, Rational};
use crate::error::{Error, Result};

use super::model::GradedBasis;
use super::ring::{Element, Mono, SuperRing};

/// Odd differentials specified by their action on the ξ_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Differential {
    /// d_N; N ≤ 0 gives the canceling and d₀ variants.
    D(i32),
    /// d⁺ from color (r) to color (k).
    ColoredPlus(usize),
    /// d⁻ from color (r) to color (k).
    ColoredMinus(usize),
    /// Sends one chosen ξ_i to 1 and the others to 0.
    Cancel(usize),
}

impl Differential {
    /// Parses `d:N`, `colored+:K`, `colored-:K` or `cancel:I`.
    pub fn parse(s: &str) -> Result<Differential> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("differential {s:?} needs KIND:VALUE")))?;
        let bad = |_| Error::Parse(format!("bad differential argument in {s:?}"));
        match kind {
            "dN" | "d" => Ok(Differential::D(arg.parse().map_err(bad)?)),
            "colored+" => Ok(Differential::ColoredPlus(arg.parse().map_err(bad)?)),
            "colored-" => Ok(Differential::ColoredMinus(arg.parse().map_err(bad)?)),
            "cancel" => Ok(Differential::Cancel(arg.parse().map_err(bad)?)),
            _ => Err(Error::Parse(format!("unknown differential kind {kind:?}"))),
        }
    }
}

/// u_j as a ring element, zero when u_j is not a generator; u_0 = 1.
fn u_or_zero(ring: &SuperRing, j: i64) -> Element {
    if j == 0 {
        ring.one()
    } else if j > 0 && ring.position(j as usize).is_some() {
        ring.u(j as usize)
    } else {
        Element::zero()
    }
}

/// Sum over ordered tuples of `parts` positive integers with the given total.
fn compositions(total: i64, parts: usize, f: &mut dyn FnMut(&[i64])) {
    fn go(total: i64, parts: usize, acc: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
        if parts == 0 {
            if total == 0 {
                f(acc);
            }
            return;
        }
        for j in 1..=total - (parts as i64 - 1) {
            acc.push(j);
            go(total - j, parts - 1, acc, f);
            acc.pop();
        }
    }
    if parts > 0 && total >= parts as i64 {
        go(total, parts, &mut Vec::new(), f);
    }
}

/// Image of ξ_i under the differential, for a model of color `r`.
pub fn xi_image(d: Differential, ring: &SuperRing, r: usize, i: usize) -> Element {
    let i = i as i64;
    match d {
        Differential::D(n) if n > 0 => {
            let mut out = Element::zero();
            compositions(n as i64 + i - 1, n as usize, &mut |js| {
                let mut term = ring.one();
                for &j in js {
                    term = term.mul(&u_or_zero(ring, j));
                    if term.is_zero() {
                        return;
                    }
                }
                out = out.add(&term);
            });
            out
        }
        Differential::D(n) if n < 0 => {
            if n as i64 + i - 1 == 0 {
                ring.one()
            } else {
                Element::zero()
            }
        }
        Differential::D(_) => u_or_zero(ring, i - 1),
        Differential::ColoredPlus(k) => u_or_zero(ring, i - k as i64),
        Differential::ColoredMinus(k) => {
            if i == (r + k + 1) as i64 {
                ring.one()
            } else {
                Element::zero()
            }
        }
        Differential::Cancel(j) => {
            if i == j as i64 {
                ring.one()
            } else {
                Element::zero()
            }
        }
    }
}

/// Applies the odd derivation determined by `images` (indexed by ring position).
pub fn apply(images: &[Element], e: &Element) -> Element {
    let mut out = Element::zero();
    for (m, c) in &e.terms {
        for (pos, img) in images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            if let Some((rest, sign)) = m.remove_xi(pos) {
                let rest = Element::monomial(rest, c * int(sign as i64));
                out = out.add(&img.mul(&rest));
            }
        }
    }
    out
}

/// Homology of a differential on a Koszul basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub total: usize,
    pub rank: usize,
    /// Dimensions per (a, q) bidegree.
    pub dims: BTreeMap<(i32, i32), usize>,
    /// Bidegree shift (a, q) of the differential, when it acts nontrivially.
    pub shift: Option<(i32, i32)>,
}

/// Matrix of the differential on the basis: column j is the image of basis element j.
pub fn differential_matrix(basis: &mut GradedBasis, d: Differential) -> Result<Vec<Vec<Rational>>> {
    let ring = basis.ring().clone();
    let images: Vec<Element> = ring
        .indices
        .iter()
        .map(|&i| xi_image(d, &ring, basis.color, i))
        .collect();
    let index: HashMap<Mono, usize> = basis
        .elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.mono.clone(), i))
        .collect();
    let n = basis.elements.len();
    let mut cols = Vec::with_capacity(n);
    for e in basis.elements.clone() {
        let img = apply(&images, &Element::monomial(e.mono, int(1)));
        let nf = basis.quotient.normal_form(&img);
        let mut col = vec![Rational::zero(); n];
        for (m, c) in nf.terms {
            let j = *index.get(&m).ok_or_else(|| {
                Error::Model(format!(
                    "image term {} lies outside the computed basis",
                    ring.label(&m)
                ))
            })?;
            col[j] = c;
        }
        cols.push(col);
    }
    Ok(cols)
}

/// Computes homology, checking d∘d = 0 and homogeneity in (a, q).
pub fn apply_differential(basis: &mut GradedBasis, d: Differential) -> Result<Homology> {
    let cols = differential_matrix(basis, d)?;
    let n = cols.len();
    for j in 0..n {
        let mut sq = vec![Rational::zero(); n];
        for (k, c) in cols[j].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, x) in cols[k].iter().enumerate() {
                if !x.is_zero() {
                    sq[i] += c * x;
                }
            }
        }
        if sq.iter().any(|x| !x.is_zero()) {
            return Err(Error::Model(format!(
                "d∘d is nonzero on {} for {:?}",
                basis.elements[j].label, d
            )));
        }
    }
    let bideg: Vec<(i32, i32)> = basis.elements.iter().map(|e| (e.a, e.q)).collect();
    let mut shift = None;
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = (bideg[i].0 - bideg[j].0, bideg[i].1 - bideg[j].1);
            match shift {
                None => shift = Some(s),
                Some(t) if t != s => {
                    return Err(Error::Grading(format!("{d:?} is not homogeneous in (a,q)")));
                }
                _ => {}
            }
        }
    }
    let mut blocks: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
    for (j, b) in bideg.iter().enumerate() {
        blocks.entry(*b).or_default().push(j);
    }
    let mut dims: BTreeMap<(i32, i32), usize> = blocks.iter().map(|(b, v)| (*b, v.len())).collect();
    let mut rank = 0;
    if let Some((sa, sq)) = shift {
        for (b, js) in &blocks {
            let target = (b.0 + sa, b.1 + sq);
            let Some(rows) = blocks.get(&target) else {
                continue;
            };
            let mut m: Vec<Vec<Rational>> = js
                .iter()
                .map(|&j| rows.iter().map(|&i| cols[j][i].clone()).collect())
                .collect();
            let rk = rref(&mut m).len();
            rank += rk;
            *dims.get_mut(b).unwrap() -= rk;
            *dims.get_mut(&target).unwrap() -= rk;
        }
    }
    dims.retain(|_, v| *v > 0);
    Ok(Homology {
        total: n - 2 * rank,
        rank,
        dims,
        shift,
    })
}
