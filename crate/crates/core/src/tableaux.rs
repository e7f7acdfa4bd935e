//! Partitions, standard Young tableaux and box statistics.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition(
            (0..w)
                .map(|c| self.0.iter().filter(|&&p| p > c).count())
                .collect(),
        )
    }

    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (0..p).map(move |c| (r, c)))
    }

    pub fn box_stats(&self) -> Vec<BoxStat> {
        let conj = self.conjugate();
        self.boxes()
            .map(|(row, col)| BoxStat {
                row,
                col,
                arm: self.0[row] - col - 1,
                leg: conj.0[col] - row - 1,
                coarm: col,
                coleg: row,
            })
            .collect()
    }

    pub fn hook_product(&self) -> BigInt {
        self.box_stats().iter().fold(BigInt::one(), |acc, b| {
            acc * BigInt::from(b.arm + b.leg + 1)
        })
    }

    /// n! / ∏ hooks.
    pub fn syt_count(&self) -> BigInt {
        let fact = (1..=self.size()).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
        fact / self.hook_product()
    }

    /// z_λ = ∏ i^{m_i} m_i!.
    pub fn z(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let m = self.0[i..].iter().take_while(|&&x| x == p).count();
            for k in 1..=m {
                acc *= BigInt::from(p) * BigInt::from(k);
            }
            i += m;
        }
        acc
    }

    /// Dominance order; `None` when incomparable.
    pub fn dominance(&self, o: &Partition) -> Option<Ordering> {
        if self.size() != o.size() {
            return None;
        }
        let (mut a, mut b) = (0usize, 0usize);
        let (mut ge, mut le) = (true, true);
        for i in 0..self.len().max(o.len()) {
            a += self.part(i);
            b += o.part(i);
            ge &= a >= b;
            le &= a <= b;
        }
        match (ge, le) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Greater),
            (false, true) => Some(Ordering::Less),
            _ => None,
        }
    }

    /// Σ (i−1) λ_i.
    pub fn n_stat(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &p)| i * p).sum()
    }

    pub fn parse(s: &str) -> Result<Partition> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxStat {
    pub row: usize,
    pub col: usize,
    pub arm: usize,
    pub leg: usize,
    pub coarm: usize,
    pub coleg: usize,
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut vec![], &mut out);
    out
}

/// Partitions with at most `rows` parts, each at most `cols`.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    (0..=rows * cols)
        .flat_map(partitions_of)
        .filter(|p| p.len() <= rows && p.part(0) <= cols)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    /// `cells[i]` is the (row, col) of label i+1.
    cells: Vec<(usize, usize)>,
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<StandardTableau> {
        let shape = Partition(rows.iter().map(|r| r.len()).collect());
        if shape.0.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Input("rows are not weakly decreasing".into()));
        }
        let n = shape.size();
        let mut cells = vec![(usize::MAX, 0); n];
        for (r, row) in rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                if x == 0 || x > n || cells[x - 1].0 != usize::MAX {
                    return Err(Error::Input("entries must be a permutation of 1..n".into()));
                }
                cells[x - 1] = (r, c);
                if (c > 0 && row[c - 1] > x) || (r > 0 && rows[r - 1][c] > x) {
                    return Err(Error::Input(
                        "entries must increase along rows and columns".into(),
                    ));
                }
            }
        }
        Ok(StandardTableau { shape, cells })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Position of label `i` (1-based).
    pub fn cell(&self, i: usize) -> Result<(usize, usize)> {
        if i == 0 || i > self.cells.len() {
            return Err(Error::Index {
                index: i,
                max: self.cells.len(),
            });
        }
        Ok(self.cells[i - 1])
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = self.shape.0.iter().map(|&p| vec![0; p]).collect();
        for (i, &(r, c)) in self.cells.iter().enumerate() {
            rows[r][c] = i + 1;
        }
        rows
    }
}

/// Streams every standard tableau of the given shape exactly once.
pub fn syt_of(shape: &Partition) -> SytIter {
    SytIter {
        shape: shape.clone(),
        lens: vec![0; shape.len()],
        path: Vec::new(),
        started: false,
        done: false,
    }
}

pub struct SytIter {
    shape: Partition,
    lens: Vec<usize>,
    path: Vec<usize>,
    started: bool,
    done: bool,
}

impl SytIter {
    fn addable(&self, r: usize) -> bool {
        self.lens[r] < self.shape.0[r] && (r == 0 || self.lens[r] < self.lens[r - 1])
    }

    fn next_row_from(&self, start: usize) -> Option<usize> {
        (start..self.shape.len()).find(|&r| self.addable(r))
    }

    fn descend(&mut self) {
        let n = self.shape.size();
        while self.path.len() < n {
            let r = self.next_row_from(0).expect("an addable corner exists");
            self.lens[r] += 1;
            self.path.push(r);
        }
    }

    fn current(&self) -> StandardTableau {
        let mut lens = vec![0; self.shape.len()];
        let cells = self
            .path
            .iter()
            .map(|&r| {
                lens[r] += 1;
                (r, lens[r] - 1)
            })
            .collect();
        StandardTableau {
            shape: self.shape.clone(),
            cells,
        }
    }
}

impl Iterator for SytIter {
    type Item = StandardTableau;

    fn next(&mut self) -> Option<StandardTableau> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
            return Some(self.current());
        }
        while let Some(r) = self.path.pop() {
            self.lens[r] -= 1;
            if let Some(r2) = self.next_row_from(r + 1) {
                self.lens[r2] += 1;
                self.path.push(r2);
                self.descend();
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}

/// Exponents `(q, t)` of the box weight χ_i = 𝔮^{−col} 𝔱^{row}.
pub fn box_weight_exp(t: &StandardTableau, i: usize) -> Result<(i32, i32)> {
    let (r, c) = t.cell(i)?;
    Ok((-(c as i32), r as i32))
}

/// χ_i as a monomial in the variables `(qq, tt)`.
pub fn box_weight(t: &StandardTableau, i: usize) -> Result<Poly> {
    let (a, b) = box_weight_exp(t, i)?;
    Ok(Poly::monomial(&["qq", "tt"], vec![a, b], Rational::one()))
}
