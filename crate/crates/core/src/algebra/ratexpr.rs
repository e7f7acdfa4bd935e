use std::fmt;

use num_traits::Zero;

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials, reduced only by exact division.
#[derive(Clone, Debug)]
pub struct RationalExpression {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl RationalExpression {
    pub fn new(numerator: Poly, denominator: Poly) -> Result<RationalExpression> {
        if denominator.is_zero() {
            return Err(Error::Pole("zero denominator".into()));
        }
        Ok(RationalExpression {
            numerator,
            denominator,
        })
    }

    pub fn from_poly(p: Poly) -> RationalExpression {
        let d = Poly::one(p.vars());
        RationalExpression {
            numerator: p,
            denominator: d,
        }
    }

    pub fn add(&self, o: &RationalExpression) -> RationalExpression {
        if self.denominator == o.denominator {
            return RationalExpression {
                numerator: &self.numerator + &o.numerator,
                denominator: self.denominator.clone(),
            };
        }
        RationalExpression {
            numerator: &(&self.numerator * &o.denominator) + &(&o.numerator * &self.denominator),
            denominator: &self.denominator * &o.denominator,
        }
    }

    pub fn mul(&self, o: &RationalExpression) -> RationalExpression {
        RationalExpression {
            numerator: &self.numerator * &o.numerator,
            denominator: &self.denominator * &o.denominator,
        }
    }

    pub fn to_poly(&self) -> Result<Poly> {
        self.numerator.exact_div(&self.denominator)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.denominator.eval(point)?;
        if d.is_zero() {
            return Err(Error::Pole(self.denominator.to_string()));
        }
        Ok(self.numerator.eval(point)? / d)
    }

    pub fn eval_named(&self, assignment: &[(&str, Rational)]) -> Result<Rational> {
        let d = self.denominator.eval_named(assignment)?;
        if d.is_zero() {
            return Err(Error::Pole(self.denominator.to_string()));
        }
        Ok(self.numerator.eval_named(assignment)? / d)
    }
}

impl fmt::Display for RationalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    #[test]
    fn point_values() {
        let q = Poly::var(&["q"], "q");
        let one = Poly::one(&["q"]);
        let e = RationalExpression::new(&one - &q.pow(2), &one - &q).unwrap();
        assert_eq!(e.eval(&[int(3)]).unwrap(), int(4));
        let e = RationalExpression::new(&one - &q, &one - &q).unwrap();
        assert_eq!(e.eval(&[int(2)]).unwrap(), int(1));
        assert!(matches!(e.eval(&[int(1)]), Err(Error::Pole(_))));
    }
}
