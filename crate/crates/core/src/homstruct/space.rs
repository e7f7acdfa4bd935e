use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::{int, Poly, Rational};
use crate::error::{Error, Result};
use crate::koszul::GradedBasis;

pub const TILDE_VARS: [&str; 4] = ["a", "Q", "tr", "tc"];
pub const PLAIN_VARS: [&str; 4] = ["a", "q", "tr", "tc"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Tilde,
    Plain,
}

impl Variant {
    pub fn vars(self) -> [&'static str; 4] {
        match self {
            Variant::Tilde => TILDE_VARS,
            Variant::Plain => PLAIN_VARS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub a: i32,
    /// q-degree in the plain variant, Q-degree in the tilde variant.
    pub q: i32,
    pub tr: i32,
    pub tc: i32,
    pub mult: u32,
}

/// Generators of quadruply-graded homology colored by the rectangle (r^ρ);
/// the symmetric color (r) has ρ = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadGradedSpace {
    pub r: usize,
    pub rho: usize,
    pub variant: Variant,
    pub generators: Vec<Generator>,
}

pub type Degree = [i32; 4];

impl QuadGradedSpace {
    pub fn from_multiset(
        r: usize,
        rho: usize,
        variant: Variant,
        gens: BTreeMap<Degree, u32>,
    ) -> QuadGradedSpace {
        let generators = gens
            .into_iter()
            .filter(|(_, m)| *m > 0)
            .map(|([a, q, tr, tc], mult)| Generator { a, q, tr, tc, mult })
            .collect();
        QuadGradedSpace {
            r,
            rho,
            variant,
            generators,
        }
    }

    /// Reads a Poincaré polynomial; every coefficient must be a positive integer.
    pub fn from_poly(r: usize, rho: usize, variant: Variant, p: &Poly) -> Result<QuadGradedSpace> {
        let p = p.with_vars(&variant.vars())?;
        let mut gens = BTreeMap::new();
        for (e, c) in p.terms() {
            let m = if c.is_integer() && c.is_positive() {
                c.to_integer().to_u32()
            } else {
                None
            };
            let m = m.ok_or_else(|| {
                Error::Formula(format!(
                    "coefficient {c} at {e:?} is not a positive multiplicity"
                ))
            })?;
            gens.insert([e[0], e[1], e[2], e[3]], m);
        }
        Ok(QuadGradedSpace::from_multiset(r, rho, variant, gens))
    }

    /// Plain data from a Koszul model, shifted by its normalization monomial.
    pub fn from_koszul(b: &GradedBasis) -> Result<QuadGradedSpace> {
        QuadGradedSpace::from_poly(b.color, 1, Variant::Plain, &b.normalized_character())
    }

    pub fn multiset(&self) -> BTreeMap<Degree, u32> {
        let mut out = BTreeMap::new();
        for g in &self.generators {
            *out.entry([g.a, g.q, g.tr, g.tc]).or_insert(0) += g.mult;
        }
        out
    }

    pub fn dim(&self) -> u64 {
        self.generators.iter().map(|g| g.mult as u64).sum()
    }

    pub fn poincare(&self) -> Poly {
        Poly::from_terms(
            &self.variant.vars(),
            self.generators
                .iter()
                .map(|g| (vec![g.a, g.q, g.tr, g.tc], int(g.mult as i64))),
        )
    }

    fn map_degrees(
        &self,
        variant: Variant,
        f: impl Fn(Degree) -> Result<Degree>,
    ) -> Result<QuadGradedSpace> {
        let mut gens = BTreeMap::new();
        for (d, m) in self.multiset() {
            *gens.entry(f(d)?).or_insert(0) += m;
        }
        Ok(QuadGradedSpace::from_multiset(
            self.r, self.rho, variant, gens,
        ))
    }

    /// Switches between the q-grading and Q = (q + t_r − t_c)/ρ.
    pub fn regrade(&self, to: Variant) -> Result<QuadGradedSpace> {
        let rho = self.rho as i32;
        match (self.variant, to) {
            (a, b) if a == b => Ok(self.clone()),
            (Variant::Plain, Variant::Tilde) => self.map_degrees(to, |[a, q, tr, tc]| {
                let num = q + tr - tc;
                if num % rho != 0 {
                    return Err(Error::Grading(format!("Q = {num}/{rho} is not integral")));
                }
                Ok([a, num / rho, tr, tc])
            }),
            _ => self.map_degrees(to, |[a, q, tr, tc]| Ok([a, rho * q - tr + tc, tr, tc])),
        }
    }

    /// Twice the δ-grading of each generator.
    pub fn doubled_deltas(&self) -> Vec<(Degree, i32)> {
        self.multiset()
            .into_keys()
            .map(|d @ [a, q, tr, tc]| {
                let v = match self.variant {
                    Variant::Tilde => 2 * a + q - 2 * tr,
                    Variant::Plain => 2 * a + q - tr - tc,
                };
                (d, v)
            })
            .collect()
    }

    /// Substitutes Q = q, t_r = −q^{−1}, t_c = q.
    pub fn decategorify(&self) -> Result<Poly> {
        if self.variant != Variant::Tilde {
            return Err(Error::Input(
                "decategorification expects the tilde variant".into(),
            ));
        }
        Ok(decategorify_poly(&self.poincare()))
    }
}

/// Q = q, t_r = −q^{−1}, t_c = q on a polynomial in `a, Q, tr, tc`.
pub fn decategorify_poly(p: &Poly) -> Poly {
    let one = Rational::one();
    p.subs_monomial(
        &["a", "q"],
        &[
            (one.clone(), vec![1, 0]),
            (one.clone(), vec![0, 1]),
            (-one.clone(), vec![0, -1]),
            (one, vec![0, 1]),
        ],
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub property: String,
    pub pass: bool,
    pub detail: String,
    /// Generators without a partner, or with a differing value.
    pub offending: Vec<Degree>,
}

impl Report {
    fn new(property: &str, offending: Vec<Degree>, detail: String) -> Report {
        Report {
            property: property.into(),
            pass: offending.is_empty() && detail.is_empty(),
            detail,
            offending,
        }
    }
}

fn multiset_difference(a: &BTreeMap<Degree, u32>, b: &BTreeMap<Degree, u32>) -> Vec<Degree> {
    let mut out = Vec::new();
    for (d, m) in a {
        if b.get(d) != Some(m) {
            out.push(*d);
        }
    }
    for d in b.keys() {
        if !a.contains_key(d) {
            out.push(*d);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn require_tilde(s: &QuadGradedSpace, property: &str) -> Option<Report> {
    (s.variant != Variant::Tilde).then(|| {
        Report::new(
            property,
            vec![],
            "input must be in the tilde variant".into(),
        )
    })
}

/// (i, j, k, ℓ) ↦ (i, −j, k − ρj, ℓ − rj) preserves the multiset.
pub fn verify_self_symmetry(s: &QuadGradedSpace) -> Report {
    if let Some(r) = require_tilde(s, "self-symmetry") {
        return r;
    }
    let (r, rho) = (s.r as i32, s.rho as i32);
    let m = s.multiset();
    let image: BTreeMap<Degree, u32> = m
        .iter()
        .map(|(&[a, q, tr, tc], &k)| ([a, -q, tr - rho * q, tc - r * q], k))
        .collect();
    Report::new(
        "self-symmetry",
        multiset_difference(&m, &image),
        String::new(),
    )
}

/// The (ρ^r) space equals the (r^ρ) space with t_r and t_c exchanged.
pub fn verify_mirror(s: &QuadGradedSpace, other: &QuadGradedSpace) -> Report {
    if let Some(r) = require_tilde(s, "mirror").or_else(|| require_tilde(other, "mirror")) {
        return r;
    }
    if (s.r, s.rho) != (other.rho, other.r) {
        return Report::new(
            "mirror",
            vec![],
            format!(
                "colors ({}^{}) and ({}^{}) are not transposes",
                s.r, s.rho, other.r, other.rho
            ),
        );
    }
    let swapped: BTreeMap<Degree, u32> = other
        .multiset()
        .into_iter()
        .map(|([a, q, tr, tc], k)| ([a, q, tc, tr], k))
        .collect();
    Report::new(
        "mirror",
        multiset_difference(&s.multiset(), &swapped),
        String::new(),
    )
}

/// At t_c = 1 the Poincaré polynomial is the r-th power of the base color's.
pub fn verify_growth(s: &QuadGradedSpace, base: &QuadGradedSpace) -> Report {
    if let Some(r) = require_tilde(s, "growth").or_else(|| require_tilde(base, "growth")) {
        return r;
    }
    let at_one = |p: &Poly| {
        p.subs_monomial(
            &["a", "Q", "tr"],
            &[
                (Rational::one(), vec![1, 0, 0]),
                (Rational::one(), vec![0, 1, 0]),
                (Rational::one(), vec![0, 0, 1]),
                (Rational::one(), vec![0, 0, 0]),
            ],
        )
    };
    let lhs = at_one(&s.poincare());
    let rhs = at_one(&base.poincare()).pow(s.r as u32);
    let diff = &lhs - &rhs;
    let offending: Vec<Degree> = diff.terms().map(|(e, _)| [e[0], e[1], e[2], 0]).collect();
    Report::new("growth", offending, String::new())
}

/// All δ-gradings agree.
pub fn verify_thin(s: &QuadGradedSpace) -> Report {
    let deltas = s.doubled_deltas();
    let Some(&(_, first)) = deltas.first() else {
        return Report::new("thin", vec![], String::new());
    };
    let offending: Vec<Degree> = deltas
        .iter()
        .filter(|(_, d)| *d != first)
        .map(|(g, _)| *g)
        .collect();
    let mut report = Report::new("thin", offending, String::new());
    if report.pass {
        report.detail = format!("delta = {}", Rational::new(first.into(), 2.into()));
    }
    report
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn tilquad31() -> QuadGradedSpace {
        let gens = [
            [4, -4, 0, 0],
            [4, 0, 2, 4],
            [4, 0, 2, 6],
            [4, 4, 4, 8],
            [6, -2, 3, 5],
            [6, -2, 3, 7],
            [6, 2, 5, 9],
            [6, 2, 5, 11],
            [8, 0, 6, 12],
        ];
        QuadGradedSpace::from_multiset(2, 1, Variant::Tilde, gens.iter().map(|&d| (d, 1)).collect())
    }

    pub(crate) fn quad31() -> QuadGradedSpace {
        let gens = [
            [4, -4, 0, 0],
            [4, 2, 2, 4],
            [4, 4, 2, 6],
            [4, 8, 4, 8],
            [6, 0, 3, 5],
            [6, 2, 3, 7],
            [6, 6, 5, 9],
            [6, 8, 5, 11],
            [8, 6, 6, 12],
        ];
        QuadGradedSpace::from_multiset(2, 1, Variant::Plain, gens.iter().map(|&d| (d, 1)).collect())
    }

    pub(crate) fn trefoil() -> QuadGradedSpace {
        let gens = [[2, -2, 0, 0], [2, 2, 2, 2], [4, 0, 3, 3]];
        QuadGradedSpace::from_multiset(1, 1, Variant::Tilde, gens.iter().map(|&d| (d, 1)).collect())
    }

    #[test]
    fn regrading_colored_trefoil() {
        assert_eq!(quad31().regrade(Variant::Tilde).unwrap(), tilquad31());
        assert_eq!(tilquad31().regrade(Variant::Plain).unwrap(), quad31());
        let t = trefoil();
        assert_eq!(t.regrade(Variant::Plain).unwrap().multiset(), t.multiset());
    }

    #[test]
    fn structural_properties_of_trefoil() {
        assert!(verify_self_symmetry(&tilquad31()).pass);
        assert!(verify_self_symmetry(&trefoil()).pass);
        let thin = verify_thin(&trefoil());
        assert!(thin.pass);
        assert_eq!(thin.detail, "delta = 1");
        assert!(verify_growth(&tilquad31(), &trefoil()).pass);
        assert!(verify_mirror(&trefoil(), &trefoil()).pass);
        assert!(!verify_self_symmetry(&quad31()).pass);
    }

    #[test]
    fn broken_symmetry_is_reported() {
        let mut s = tilquad31();
        s.generators.remove(0);
        let r = verify_self_symmetry(&s);
        assert!(!r.pass);
        assert_eq!(r.offending, vec![[4, -4, 0, 0], [4, 4, 4, 8]]);
    }

    #[test]
    fn decategorified_trefoil() {
        let p = trefoil().decategorify().unwrap();
        let v = ["a", "q"];
        let expect = Poly::from_terms(
            &v,
            [
                (vec![2, -2], int(1)),
                (vec![2, 2], int(1)),
                (vec![4, 0], int(-1)),
            ],
        );
        assert_eq!(p, expect);
        let empty = QuadGradedSpace::from_multiset(1, 1, Variant::Tilde, BTreeMap::new());
        assert!(empty.decategorify().unwrap().is_zero());
    }

    #[test]
    fn non_integral_regrading_fails() {
        let s = QuadGradedSpace::from_multiset(1, 2, Variant::Plain, [([0, 1, 0, 0], 1)].into());
        assert!(matches!(s.regrade(Variant::Tilde), Err(Error::Grading(_))));
    }
}
