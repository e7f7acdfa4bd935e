//! Deterministic JSON and plain-table rendering of module outputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, RatFn};
use crate::cherednik::{GradedCharacter, QuasisReport};
use crate::crosscheck::CrossCheckReport;
use crate::daha::TorusKnot;
use crate::homstruct::{CyclotomicData, QuadGradedSpace, Report};
use crate::koszul::{BasisElement, GradedBasis, Homology};
use crate::macdonald::SymFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            _ => Err(format!("unknown format {s}, expected json or table")),
        }
    }
}

/// Rows for the table format. The first row is the header.
pub trait Tabular {
    fn table(&self) -> Vec<Vec<String>>;
}

pub fn emit<T: Serialize + Tabular>(obj: &T, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(obj).expect("module outputs serialize");
            v.push(b'\n');
            v
        }
        Format::Table => render(&obj.table()).into_bytes(),
    }
}

fn render(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut width = vec![0; cols];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            width[i] = width[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = width[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn exp_string(vars: &[String], e: &[i32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &x)| x != 0)
        .map(|(v, &x)| {
            if x == 1 {
                v.clone()
            } else {
                format!("{v}^{x}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl Tabular for Poly {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = vec![header(&["monomial", "coefficient"])];
        for (e, c) in self.terms() {
            rows.push(vec![exp_string(self.vars(), e), c.to_string()]);
        }
        rows
    }
}

/// A Koszul basis with its characters, detached from the quotient ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KoszulOutput {
    pub knot: TorusKnot,
    pub color: usize,
    pub reduced: bool,
    pub elements: Vec<BasisElement>,
    pub character: Poly,
    pub normalized_character: Poly,
}

impl From<&GradedBasis> for KoszulOutput {
    fn from(b: &GradedBasis) -> KoszulOutput {
        KoszulOutput {
            knot: b.knot,
            color: b.color,
            reduced: b.reduced,
            elements: b.elements.clone(),
            character: b.character(),
            normalized_character: b.normalized_character(),
        }
    }
}

impl Tabular for KoszulOutput {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = vec![header(&["element", "a", "q", "tr", "tc"])];
        for e in &self.elements {
            rows.push(vec![
                e.label.clone(),
                e.a.to_string(),
                e.q.to_string(),
                e.tr.to_string(),
                e.tc.to_string(),
            ]);
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatFnJson {
    pub num: Poly,
    pub den: Poly,
}

impl From<&RatFn> for RatFnJson {
    fn from(r: &RatFn) -> RatFnJson {
        RatFnJson {
            num: r.num.clone(),
            den: r.denominator_poly(),
        }
    }
}

/// A symmetric function with rational-function coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymOutput {
    pub label: String,
    pub basis: String,
    pub coords: BTreeMap<String, RatFnJson>,
    #[serde(skip)]
    display: Vec<(String, String)>,
}

impl SymOutput {
    pub fn new(label: &str, f: &SymFunc) -> SymOutput {
        SymOutput {
            label: label.into(),
            basis: format!("{:?}", f.basis).to_lowercase(),
            coords: f
                .coords
                .iter()
                .map(|(p, c)| (p.to_string(), c.into()))
                .collect(),
            display: f
                .coords
                .iter()
                .map(|(p, c)| (p.to_string(), c.to_string()))
                .collect(),
        }
    }
}

impl Tabular for SymOutput {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = vec![header(&["partition", "coefficient"])];
        for (p, c) in &self.display {
            rows.push(vec![p.clone(), c.clone()]);
        }
        rows
    }
}

impl Tabular for GradedCharacter {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = vec![header(&[
            "degree",
            "dim",
            "exterior multiplicities",
            "other",
        ])];
        for p in &self.pieces {
            let mult: Vec<String> = p.mult.iter().map(|x| x.to_string()).collect();
            rows.push(vec![
                p.degree.to_string(),
                p.dim.to_string(),
                mult.join(","),
                p.other.to_string(),
            ]);
        }
        rows
    }
}

impl Tabular for QuasisReport {
    fn table(&self) -> Vec<Vec<String>> {
        vec![
            header(&["field", "value"]),
            vec!["knot".into(), format!("T({},{})", self.m, self.n)],
            vec!["q_order".into(), self.q_order.to_string()],
            vec!["ratio".into(), self.ratio.to_string()],
        ]
    }
}

impl Tabular for QuadGradedSpace {
    fn table(&self) -> Vec<Vec<String>> {
        let names: &[&str] = match self.variant {
            crate::homstruct::Variant::Tilde => &["a", "Q", "tr", "tc", "mult"],
            crate::homstruct::Variant::Plain => &["a", "q", "tr", "tc", "mult"],
        };
        let mut rows = vec![header(names)];
        for (d, m) in self.multiset() {
            let mut row: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            row.push(m.to_string());
            rows.push(row);
        }
        rows
    }
}

impl Tabular for Report {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = vec![
            header(&["property", "result", "detail"]),
            vec![
                self.property.clone(),
                if self.pass { "pass" } else { "fail" }.into(),
                self.detail.clone(),
            ],
        ];
        for d in &self.offending {
            rows.push(vec![String::new(), "offending".into(), format!("{d:?}")]);
        }
        rows
    }
}

impl Tabular for CyclotomicData {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = vec![
            header(&["term", "value"]),
            vec!["prefactor".into(), self.prefactor.to_string()],
        ];
        for (k, c) in self.coefficients.iter().enumerate() {
            rows.push(vec![format!("C_{k}"), c.to_string()]);
        }
        rows
    }
}

impl Tabular for CrossCheckReport {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = vec![header(&["pair", "status", "monomial", "reason"])];
        for r in &self.reconciliations {
            rows.push(vec![
                r.pair.clone(),
                format!("{:?}", r.status).to_lowercase(),
                r.monomial
                    .as_ref()
                    .map(|m| m.to_string())
                    .unwrap_or_else(|| "-".into()),
                r.reason.clone().unwrap_or_default(),
            ]);
        }
        rows
    }
}

/// Homology of one differential, with bidegrees flattened for JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyOutput {
    pub differential: String,
    pub total: usize,
    pub rank: usize,
    /// (a, q, dimension) triples.
    pub dims: Vec<(i32, i32, usize)>,
    pub shift: Option<(i32, i32)>,
}

impl HomologyOutput {
    pub fn new(differential: &str, h: &Homology) -> HomologyOutput {
        HomologyOutput {
            differential: differential.into(),
            total: h.total,
            rank: h.rank,
            dims: h.dims.iter().map(|(&(a, q), &d)| (a, q, d)).collect(),
            shift: h.shift,
        }
    }
}

impl Tabular for HomologyOutput {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = vec![header(&["a", "q", "dim"])];
        for (a, q, d) in &self.dims {
            rows.push(vec![a.to_string(), q.to_string(), d.to_string()]);
        }
        rows.push(vec!["total".into(), String::new(), self.total.to_string()]);
        rows
    }
}

impl<T: Tabular> Tabular for Vec<T> {
    fn table(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for (i, x) in self.iter().enumerate() {
            let t = x.table();
            rows.extend(if i == 0 {
                t
            } else {
                t.into_iter().skip(1).collect()
            });
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::graded_basis;

    fn trefoil() -> KoszulOutput {
        let b = graded_basis(&TorusKnot::new(2, 3).unwrap(), 1, true).unwrap();
        KoszulOutput::from(&b)
    }

    #[test]
    fn trefoil_table_has_three_rows() {
        let s = String::from_utf8(emit(&trefoil(), Format::Table)).unwrap();
        assert_eq!(s.lines().count(), 4);
    }

    #[test]
    fn output_is_deterministic() {
        assert_eq!(
            emit(&trefoil(), Format::Json),
            emit(&trefoil(), Format::Json)
        );
        assert_eq!(
            emit(&trefoil(), Format::Table),
            emit(&trefoil(), Format::Table)
        );
    }

    #[test]
    fn json_round_trip() {
        let k = trefoil();
        let back: KoszulOutput = serde_json::from_slice(&emit(&k, Format::Json)).unwrap();
        assert_eq!(back, k);
    }
}
