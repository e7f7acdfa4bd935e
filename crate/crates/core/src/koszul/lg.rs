use serde::{Deserialize, Serialize};

use crate::algebra::{int, Poly, TruncatedSeries};
use crate::error::{Error, Result};

use super::model::u_vars;
use super::quotient::{Quotient, DEFAULT_DEGREE_CUTOFF};
use super::ring::{Element, Mono, SuperRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepKind {
    Symmetric,
    Antisymmetric,
}

/// sl(N) Landau–Ginzburg potential for the (r) or (1^r) representation, in `u1..ur`.
pub fn sl_n_potential(n: u32, r: usize, kind: RepKind) -> Result<Poly> {
    if n == 0 || r == 0 {
        return Err(Error::Input("N and r must be positive".into()));
    }
    let vars = u_vars(r);
    let order = n as usize + r;
    let mut coeffs = vec![Poly::one(&vars)];
    coeffs.extend((0..r).map(|i| Poly::gen(&vars, i)));
    let f = TruncatedSeries::new("t", order, coeffs, &vars);
    let log = f.log(order)?;
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let c = match kind {
        RepKind::Antisymmetric => log.coeff(n as usize + 1).clone(),
        RepKind::Symmetric => f.mul(&log).coeff(n as usize + r).clone(),
    };
    Ok(c.scale(&sign))
}

fn weights_homogeneous(p: &Poly, w: &[i32]) -> bool {
    let mut deg = None;
    for (e, _) in p.terms() {
        let d: i32 = e.iter().zip(w).map(|(a, b)| a * b).sum();
        if *deg.get_or_insert(d) != d {
            return false;
        }
    }
    true
}

/// Dimension of the Jacobi ring of `w`.
///
/// The grading uses weight i for a variable named `u{i}`, falling back to
/// the standard grading; a potential homogeneous in neither is rejected.
pub fn jacobi_dim(w: &Poly) -> Result<usize> {
    let n = w.nvars();
    let derivs: Vec<Poly> = (0..n).map(|i| w.derivative(i)).collect();
    let indexed: Vec<i32> = w
        .vars()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            v.strip_prefix('u')
                .and_then(|s| s.parse().ok())
                .unwrap_or(k as i32 + 1)
        })
        .collect();
    let weights = [indexed, vec![1; n]]
        .into_iter()
        .find(|wt| derivs.iter().all(|d| weights_homogeneous(d, wt)))
        .ok_or_else(|| Error::Model("potential is not quasi-homogeneous".into()))?;
    let ring = SuperRing::even((0..n).collect(), weights);
    let rels = derivs
        .iter()
        .map(|d| {
            let mut e = Element::zero();
            for (exp, c) in d.terms() {
                let u = exp.iter().map(|&x| x as u16).collect();
                e.add_term(Mono { u, xi: 0 }, c.clone());
            }
            e
        })
        .collect();
    let mut q = Quotient::new(ring, rels)?;
    q.ensure_finite(DEFAULT_DEGREE_CUTOFF)?;
    Ok(q.basis()?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn fundamental_potential_is_a_power() {
        for n in 1..5 {
            let w = sl_n_potential(n, 1, RepKind::Antisymmetric).unwrap();
            let s = sl_n_potential(n, 1, RepKind::Symmetric).unwrap();
            let u = Poly::var(&u_vars(1), "u1");
            assert_eq!(w, u.pow(n + 1).scale(&rat(1, n as i64 + 1)));
            assert_eq!(s, w.scale(&rat(-1, n as i64)));
            assert_eq!(jacobi_dim(&w).unwrap(), n as usize);
        }
    }

    #[test]
    fn grassmannian_and_symmetric_square() {
        assert_eq!(
            jacobi_dim(&sl_n_potential(4, 2, RepKind::Antisymmetric).unwrap()).unwrap(),
            6
        );
        assert_eq!(
            jacobi_dim(&sl_n_potential(3, 2, RepKind::Symmetric).unwrap()).unwrap(),
            6
        );
    }

    #[test]
    fn morse_point() {
        let v = vec!["x", "y"];
        let w = &Poly::var(&v, "x").pow(2) + &Poly::var(&v, "y").pow(2);
        assert_eq!(jacobi_dim(&w).unwrap(), 1);
    }
}
