use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Power series in `z` truncated after `order`, with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    pub variable: String,
    pub order: usize,
    pub coeffs: Vec<Poly>,
}

impl TruncatedSeries {
    pub fn new(
        variable: &str,
        order: usize,
        mut coeffs: Vec<Poly>,
        vars: &[String],
    ) -> TruncatedSeries {
        coeffs.truncate(order + 1);
        while coeffs.len() < order + 1 {
            coeffs.push(Poly::zero(vars));
        }
        TruncatedSeries {
            variable: variable.to_string(),
            order,
            coeffs,
        }
    }

    pub fn vars(&self) -> &[String] {
        self.coeffs[0].vars()
    }

    pub fn coeff(&self, k: usize) -> &Poly {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        let order = order.min(self.order);
        TruncatedSeries::new(
            &self.variable,
            order,
            self.coeffs[..=order].to_vec(),
            self.vars(),
        )
    }

    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(o.order);
        let vars = self.vars().to_vec();
        let mut c = vec![Poly::zero(&vars); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !o.coeffs[j].is_zero() {
                    c[i + j] = &c[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        TruncatedSeries::new(&self.variable, order, c, &vars)
    }

    fn check_unit(&self) -> Result<()> {
        let c0 = &self.coeffs[0];
        if c0.is_constant() && c0.constant_term().is_one() {
            Ok(())
        } else {
            Err(Error::SeriesBase(c0.to_string()))
        }
    }

    /// Formal binomial power `(1 + g)^alpha` truncated at `order`.
    pub fn pow(&self, alpha: &Rational, order: usize) -> Result<TruncatedSeries> {
        self.check_unit()?;
        let order = order.min(self.order);
        let vars = self.vars().to_vec();
        // n g_n = Σ_{k=1}^n ((α+1)k − n) f_k g_{n−k}
        let mut g = vec![Poly::one(&vars)];
        for n in 1..=order {
            let mut acc = Poly::zero(&vars);
            for k in 1..=n {
                if self.coeffs[k].is_zero() || g[n - k].is_zero() {
                    continue;
                }
                let w = (alpha + Rational::one()) * int(k as i64) - int(n as i64);
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[k] * &g[n - k]).scale(&w);
            }
            g.push(acc.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(TruncatedSeries::new(&self.variable, order, g, &vars))
    }

    /// `log(f)` for `f` with constant term 1.
    pub fn log(&self, order: usize) -> Result<TruncatedSeries> {
        self.check_unit()?;
        let order = order.min(self.order);
        let vars = self.vars().to_vec();
        // n L_n = n f_n − Σ_{k=1}^{n−1} k L_k f_{n−k}
        let mut l = vec![Poly::zero(&vars)];
        for n in 1..=order {
            let mut acc = self.coeffs[n].scale(&int(n as i64));
            for k in 1..n {
                if l[k].is_zero() || self.coeffs[n - k].is_zero() {
                    continue;
                }
                acc = &acc - &(&l[k] * &self.coeffs[n - k]).scale(&int(k as i64));
            }
            l.push(acc.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(TruncatedSeries::new(&self.variable, order, l, &vars))
    }
}

pub fn series_pow(f: &TruncatedSeries, alpha: &Rational, order: usize) -> Result<TruncatedSeries> {
    f.pow(alpha, order)
}
