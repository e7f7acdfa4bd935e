//! Rational Cherednik algebra of S_n in its polynomial representation:
//! Dunkl operators, the contravariant form and characters of L_{m/n}.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::{inverse, rref, Matrix};
use crate::algebra::{int, rat, Poly, Rational};
use crate::daha::TorusKnot;
use crate::error::{Error, Result};
use crate::hilbert;

/// Largest n handled by the character computations.
pub const MAX_RANK: u32 = 4;

pub fn x_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn y_vars(n: usize) -> Vec<String> {
    (1..n).map(|i| format!("y{i}")).collect()
}

/// Applies x_k ↦ x_{perm[k]} (0-based).
pub fn permute(f: &Poly, perm: &[usize]) -> Poly {
    let mut out = Poly::zero(f.vars());
    for (e, c) in f.terms() {
        let mut ne = vec![0; e.len()];
        for (k, &x) in e.iter().enumerate() {
            ne[perm[k]] = x;
        }
        out.add_term(ne, c.clone());
    }
    out
}

/// (f − s_ij f)/(x_i − x_j), computed monomial by monomial.
pub fn divided_difference(f: &Poly, i: usize, j: usize) -> Poly {
    let mut out = Poly::zero(f.vars());
    for (e, c) in f.terms() {
        let (a, b) = (e[i], e[j]);
        if a == b {
            continue;
        }
        let (hi, lo, sign) = if a > b {
            (a, b, c.clone())
        } else {
            (b, a, -c.clone())
        };
        // x_i^a x_j^b − x_i^b x_j^a = ±(x_i − x_j)·(x_i x_j)^lo·Σ_k x_i^{hi−lo−1−k} x_j^k
        for k in 0..hi - lo {
            let mut ne = e.clone();
            ne[i] = lo + (hi - lo - 1 - k);
            ne[j] = lo + k;
            out.add_term(ne, sign.clone());
        }
    }
    out
}

/// Dunkl operator D_i f = ∂f/∂x_i + c Σ_{j≠i} (s_ij f − f)/(x_i − x_j), with 1-based `i`.
pub fn dunkl_apply(c: &Rational, n: usize, i: usize, f: &Poly) -> Result<Poly> {
    if i == 0 || i > n {
        return Err(Error::Index { index: i, max: n });
    }
    let i = i - 1;
    let mut out = f.derivative(i);
    for j in 0..n {
        if j != i {
            out = &out - &divided_difference(f, i, j).scale(c);
        }
    }
    Ok(out)
}

/// y^α expanded in x, with y_k = x_k − x_{k+1}.
pub fn y_monomial(n: usize, alpha: &[i32]) -> Poly {
    let xv = x_vars(n);
    let mut p = Poly::one(&xv);
    for (k, &e) in alpha.iter().enumerate() {
        let y = &Poly::gen(&xv, k) - &Poly::gen(&xv, k + 1);
        p = &p * &y.pow(e as u32);
    }
    p
}

/// Exponent vectors of degree `d` in `vars` variables.
pub fn exponents(vars: usize, d: i32) -> Vec<Vec<i32>> {
    if vars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents(vars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Rewrites a translation-invariant polynomial in the y variables.
pub fn to_y(f: &Poly, n: usize) -> Result<Poly> {
    let yv = y_vars(n);
    let images: Vec<Poly> = (0..n)
        .map(|k| (k..n - 1).fold(Poly::zero(&yv), |acc, j| &acc + &Poly::gen(&yv, j)))
        .collect();
    f.subs(&yv, &images)
}

/// Matrices of y_k(D) = D_k − D_{k+1} between degree pieces of the y-slice,
/// and the Gram rows built from them.
#[derive(Clone, Debug)]
pub struct DunklTower {
    pub c: Rational,
    pub n: usize,
    /// `ops[d][k]` maps degree d+1 to degree d.
    ops: Vec<Vec<Matrix>>,
    /// `rows[d]`: α ↦ the linear form β ↦ (y^α, y^β) on degree d.
    rows: Vec<BTreeMap<Vec<i32>, Vec<Rational>>>,
}

impl DunklTower {
    pub fn new(c: Rational, n: usize) -> Result<DunklTower> {
        if n < 2 {
            return Err(Error::Input("n must be at least 2".into()));
        }
        let mut first = BTreeMap::new();
        first.insert(vec![0; n - 1], vec![Rational::one()]);
        Ok(DunklTower {
            c,
            n,
            ops: Vec::new(),
            rows: vec![first],
        })
    }

    fn op_matrix(&self, d: i32, k: usize) -> Result<Matrix> {
        let src = exponents(self.n - 1, d + 1);
        let dst = exponents(self.n - 1, d);
        let mut m = vec![vec![Rational::zero(); src.len()]; dst.len()];
        for (j, beta) in src.iter().enumerate() {
            let f = y_monomial(self.n, beta);
            let img = &dunkl_apply(&self.c, self.n, k + 1, &f)?
                - &dunkl_apply(&self.c, self.n, k + 2, &f)?;
            let img = to_y(&img, self.n)?;
            for (i, alpha) in dst.iter().enumerate() {
                m[i][j] = img.coeff(alpha);
            }
        }
        Ok(m)
    }

    fn extend_to(&mut self, d: i32) -> Result<()> {
        while (self.rows.len() as i32) <= d {
            let cur = self.rows.len() as i32 - 1;
            let mats: Vec<Matrix> = (0..self.n - 1)
                .map(|k| self.op_matrix(cur, k))
                .collect::<Result<_>>()?;
            let width = exponents(self.n - 1, cur + 1).len();
            let mut next: BTreeMap<Vec<i32>, Vec<Rational>> = BTreeMap::new();
            for (alpha, row) in &self.rows[cur as usize] {
                for (k, mat) in mats.iter().enumerate() {
                    let mut na = alpha.clone();
                    na[k] += 1;
                    if next.contains_key(&na) {
                        continue;
                    }
                    let mut v = vec![Rational::zero(); width];
                    for (i, x) in row.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in mat[i].iter().enumerate() {
                            if !y.is_zero() {
                                v[j] += x * y;
                            }
                        }
                    }
                    next.insert(na, v);
                }
            }
            self.ops.push(mats);
            self.rows.push(next);
        }
        Ok(())
    }

    /// Matrix of y_k(D) from degree d+1 to degree d.
    pub fn operator(&mut self, d: i32, k: usize) -> Result<&Matrix> {
        self.extend_to(d + 1)?;
        Ok(&self.ops[d as usize][k])
    }

    /// Gram matrix in degree d; row α, column β is (y^α, y^β).
    pub fn gram(&mut self, d: i32) -> Result<Matrix> {
        self.extend_to(d)?;
        let basis = exponents(self.n - 1, d);
        Ok(basis
            .iter()
            .map(|a| self.rows[d as usize][a].clone())
            .collect())
    }
}

/// Gram matrix of the degree-d monomials in y_k = x_k − x_{k+1} under (f, g) = [f(D) g](0).
pub fn contravariant_gram(c: &Rational, n: usize, d: i32) -> Result<Matrix> {
    DunklTower::new(c.clone(), n)?.gram(d)
}

/// Matrix of σ on the degree-d y-monomials; column β is σ(y^β).
pub fn permutation_matrix(n: usize, d: i32, perm: &[usize]) -> Result<Matrix> {
    let basis = exponents(n - 1, d);
    let mut cols = Vec::new();
    for beta in &basis {
        let img = to_y(&permute(&y_monomial(n, beta), perm), n)?;
        cols.push(basis.iter().map(|a| img.coeff(a)).collect::<Vec<_>>());
    }
    Ok((0..basis.len())
        .map(|i| cols.iter().map(|col| col[i].clone()).collect())
        .collect())
}

/// Cycle types of S_n with one representative each and class sizes.
pub fn conjugacy_classes(n: usize) -> Vec<(Vec<usize>, Vec<usize>, u64)> {
    let mut out = Vec::new();
    for shape in crate::tableaux::partitions_of(n) {
        let parts = shape.parts().to_vec();
        let mut perm = vec![0; n];
        let mut start = 0;
        for &l in &parts {
            for k in 0..l {
                perm[start + k] = start + (k + 1) % l;
            }
            start += l;
        }
        let mut centralizer: u64 = 1;
        let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
        for &l in &parts {
            *counts.entry(l).or_insert(0) += 1;
        }
        for (&l, &m) in &counts {
            centralizer *= (l as u64).pow(m as u32) * (1..=m).product::<u64>();
        }
        let order: u64 = (1..=n as u64).product();
        out.push((parts, perm, order / centralizer));
    }
    out
}

/// χ of Λ^i of the reflection representation at a permutation with the given cycle lengths, i = 0..n−1.
pub fn exterior_characters(cycles: &[usize]) -> Vec<i64> {
    let n: usize = cycles.iter().sum();
    // ∏ (1 − (−t)^ℓ) / (1 + t)
    let mut p = vec![1i64];
    for &l in cycles {
        let mut q = vec![0i64; p.len() + l];
        for (k, &x) in p.iter().enumerate() {
            q[k] += x;
            q[k + l] -= if l % 2 == 0 { x } else { -x };
        }
        p = q;
    }
    let mut out = vec![0i64; n];
    let mut carry = 0i64;
    for k in 0..n {
        carry = p[k] - carry;
        out[k] = carry;
    }
    out
}

fn choose(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// One degree of an L_{m/n} character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreePiece {
    pub degree: i32,
    pub dim: usize,
    /// Multiplicity of Λ^i of the reflection representation, i = 0..n−1.
    pub mult: Vec<i64>,
    /// Dimension not accounted for by exterior powers (n ≥ 4).
    pub other: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedCharacter {
    pub m: u32,
    pub n: u32,
    pub pieces: Vec<DegreePiece>,
}

impl GradedCharacter {
    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(|p| p.dim).sum()
    }

    pub fn top_degree(&self) -> i32 {
        self.pieces.last().map(|p| p.degree).unwrap_or(0)
    }

    /// Σ_d dim L(d) q^{2d − top}.
    pub fn q_character(&self) -> Poly {
        let top = self.top_degree();
        let mut p = Poly::zero(&["q"]);
        for piece in &self.pieces {
            p.add_term(vec![2 * piece.degree - top], int(piece.dim as i64));
        }
        p
    }
}

fn trace_on_quotient(g: &Matrix, p: &Matrix, pivots: &[usize]) -> Result<Rational> {
    let r = pivots.len();
    if r == 0 {
        return Ok(Rational::zero());
    }
    let nrows = g.len();
    let a: Matrix = (0..nrows)
        .map(|i| pivots.iter().map(|&j| g[i][j].clone()).collect())
        .collect();
    let mut at: Matrix = (0..r)
        .map(|j| (0..nrows).map(|i| a[i][j].clone()).collect())
        .collect();
    let rows = rref(&mut at);
    let sq: Matrix = rows.iter().map(|&i| a[i].clone()).collect();
    let inv = inverse(&sq).ok_or_else(|| Error::Internal("singular pivot block".into()))?;
    let mut tr = Rational::zero();
    for (jj, &j) in pivots.iter().enumerate() {
        // G·σ(e_j), restricted to the chosen rows
        let rhs: Vec<Rational> = rows
            .iter()
            .map(|&i| (0..g.len()).fold(Rational::zero(), |acc, k| acc + &g[i][k] * &p[k][j]))
            .collect();
        tr += (0..r).fold(Rational::zero(), |acc, k| acc + &inv[jj][k] * &rhs[k]);
    }
    Ok(tr)
}

fn check_scope(m: u32, n: u32) -> Result<()> {
    if n < 2 || n > MAX_RANK {
        return Err(Error::Scale(format!("n = {n} outside 2..={MAX_RANK}")));
    }
    if m.gcd(&n) != 1 {
        return Err(Error::Input(format!("m = {m} and n = {n} are not coprime")));
    }
    Ok(())
}

/// Graded S_n-character of L_{m/n}, degree by degree until it vanishes.
pub fn irreducible_character(m: u32, n: u32, d_max: i32) -> Result<GradedCharacter> {
    check_scope(m, n)?;
    let nn = n as usize;
    let c = rat(m as i64, n as i64);
    let classes = conjugacy_classes(nn);
    let order: i64 = (1..=n as i64).product();
    let mut tower = DunklTower::new(c, nn)?;
    let mut pieces = Vec::new();
    for d in 0..=d_max {
        let g = tower.gram(d)?;
        let mut red = g.clone();
        let pivots = rref(&mut red);
        if pivots.is_empty() {
            return Ok(GradedCharacter { m, n, pieces });
        }
        let mut acc = vec![Rational::zero(); nn];
        for (cycles, perm, size) in &classes {
            let p = permutation_matrix(nn, d, perm)?;
            let tr = trace_on_quotient(&g, &p, &pivots)?;
            for (i, chi) in exterior_characters(cycles).iter().enumerate() {
                acc[i] += &tr * int(*chi) * int(*size as i64);
            }
        }
        let mut mult = Vec::new();
        for a in acc {
            let v = a / int(order);
            if !v.is_integer() {
                return Err(Error::Internal(format!("non-integral multiplicity {v}")));
            }
            mult.push(v.to_integer().try_into().unwrap_or(i64::MAX));
        }
        let covered: i64 = mult
            .iter()
            .enumerate()
            .map(|(i, &k)| k * choose(nn - 1, i))
            .sum();
        pieces.push(DegreePiece {
            degree: d,
            dim: pivots.len(),
            other: pivots.len() as i64 - covered,
            mult,
        });
    }
    Err(Error::Cutoff(d_max as usize))
}

/// Per-element filtration data for L_{m/n}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationEntry {
    pub label: String,
    pub degree: i32,
    pub h_degree: i32,
    /// Largest i with the element in F_i.
    pub lower_index: i32,
    /// Smallest i with the element in F^i = (F_i)^⊥.
    pub upper_index: i32,
}

/// The filtration F_i L = Σ_{0≤j≤j_max} (𝔪^i ∩ ⊕_{k<2j−i} L(k)) and its orthogonal complement,
/// evaluated on a monomial basis of L_{m/n}.
pub fn filtration_grading(m: u32, n: u32, j_max: Option<i32>) -> Result<Vec<FiltrationEntry>> {
    if n > 3 {
        return Err(Error::Scale(format!(
            "filtration is limited to n ≤ 3, got {n}"
        )));
    }
    let ch = irreducible_character(m, n, 4 * (m as i32) * (n as i32))?;
    let top = ch.top_degree();
    let j_max = j_max.unwrap_or(2 * top + 2);
    let h = |d: i32| 2 * d - top;
    // degree d lies in F_i iff d ≥ i and h(d) < 2 j_max − i
    let in_lower = |d: i32, i: i32| d >= i && h(d) < 2 * j_max - i;
    let nn = n as usize;
    let mut tower = DunklTower::new(rat(m as i64, n as i64), nn)?;
    let yv = y_vars(nn);
    let mut out = Vec::new();
    for piece in &ch.pieces {
        let d = piece.degree;
        let mut g = tower.gram(d)?;
        let pivots = rref(&mut g);
        let basis = exponents(nn - 1, d);
        let lower_index = (0..=top + 1)
            .filter(|&i| in_lower(d, i))
            .max()
            .unwrap_or(-1);
        // the pairing is nondegenerate and degree-preserving on L, so F^i is the sum of the other degrees
        let upper_index = (0..=top + 2).find(|&i| !in_lower(d, i)).unwrap_or(top + 2);
        for &p in &pivots {
            let label = Poly::monomial(&yv, basis[p].clone(), Rational::one()).to_string();
            out.push(FiltrationEntry {
                label,
                degree: d,
                h_degree: h(d),
                lower_index,
                upper_index,
            });
        }
    }
    Ok(out)
}

/// Multiplication by u and the Dunkl operator D_1 on L_{m/2} = ℚ[u]/(u^m), as matrices.
pub fn lm2_operators(m: u32) -> Result<(Matrix, Matrix)> {
    if m % 2 == 0 {
        return Err(Error::Input("m must be odd".into()));
    }
    let c = rat(m as i64, 2);
    let m = m as usize;
    let mut mult = vec![vec![Rational::zero(); m]; m];
    let mut dunkl = vec![vec![Rational::zero(); m]; m];
    for k in 0..m {
        if k + 1 < m {
            mult[k + 1][k] = Rational::one();
        }
        let img = dunkl_apply(&c, 2, 1, &y_monomial(2, &[k as i32]))?;
        let img = to_y(&img, 2)?;
        if k > 0 {
            dunkl[k - 1][k] = img.coeff(&[k as i32 - 1]);
        }
    }
    Ok((mult, dunkl))
}

/// Outcome of comparing the Cherednik character with the Hilbert-scheme series.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasisReport {
    pub m: u32,
    pub n: u32,
    pub q_order: usize,
    pub cherednik_side: Poly,
    pub hilbert_side: Poly,
    /// Monomial c·a^i q^j with hilbert = ratio · cherednik.
    pub ratio: Poly,
}

/// Σ_i a^{2i} mult_i q^{2d−top}, times (1 + a²) and the free-variable factor 1/(1 − q²), up to q-degree `q_top`.
pub fn cherednik_series(ch: &GradedCharacter, q_top: i32) -> Poly {
    let vars = hilbert::VARS;
    let top = ch.top_degree();
    let mut base = Poly::zero(&vars);
    for piece in &ch.pieces {
        for (i, &k) in piece.mult.iter().enumerate() {
            base.add_term(vec![2 * i as i32, 2 * piece.degree - top], int(k));
        }
    }
    let one_a2 = &Poly::one(&vars) + &Poly::monomial(&vars, vec![2, 0], int(1));
    let base = &base * &one_a2;
    let mut out = Poly::zero(&vars);
    for (e, c) in base.terms() {
        let mut q = e[1];
        while q <= q_top {
            out.add_term(vec![e[0], q], c.clone());
            q += 2;
        }
    }
    out
}

/// Compares the Cherednik character with the nested Hilbert series (a² ↦ −a²) up to a monomial.
pub fn check_quasis(m: u32, n: u32, q_order: usize) -> Result<QuasisReport> {
    if n > 3 {
        return Err(Error::Scale(format!(
            "check_quasis is limited to n ≤ 3, got {n}"
        )));
    }
    let ch = irreducible_character(m, n, 4 * (m as i32) * (n as i32))?;
    let k = TorusKnot::new(m, n)?;
    let nested = hilbert::nested_series(k, q_order)?;
    let twisted = {
        let mut p = Poly::zero(nested.vars());
        for (e, c) in nested.terms() {
            let s = if (e[0] / 2) % 2 == 0 {
                c.clone()
            } else {
                -c.clone()
            };
            p.add_term(e.clone(), s);
        }
        p
    };
    let top = ch.top_degree();
    let cher = cherednik_series(&ch, q_order as i32 - top);
    let lowest = |p: &Poly| {
        let lo = p.min_exp(1).unwrap_or(0);
        (lo, p.filter(|e| e[1] == lo))
    };
    let (lc, c0) = lowest(&cher);
    let (lh, h0) = lowest(&twisted);
    let (e0, coef) = h0.monomial_ratio(&c0).ok_or_else(|| {
        Error::Consistency(format!(
            "lowest terms {h0} and {c0} differ by more than a monomial"
        ))
    })?;
    let shift = lh - lc;
    let ratio = Poly::monomial(&hilbert::VARS, e0.clone(), coef.clone());
    let predicted = (&cher * &ratio).filter(|e| e[1] <= q_order as i32);
    let observed =
        twisted.filter(|e| e[1] <= q_order as i32 && e[1] - shift <= q_order as i32 - top);
    let predicted = predicted.filter(|e| e[1] - shift <= q_order as i32 - top);
    if predicted != observed {
        let residual = &observed - &predicted;
        return Err(Error::Consistency(format!("residual {residual}")));
    }
    Ok(QuasisReport {
        m,
        n,
        q_order,
        cherednik_side: cher,
        hilbert_side: twisted,
        ratio,
    })
}
