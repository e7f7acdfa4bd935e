//! Exact arithmetic: rationals, sparse Laurent polynomials, binomial-factored
//! rational functions, truncated power series and rational linear algebra.

pub mod factored;
pub mod linalg;
pub mod poly;
pub mod ratexpr;
pub mod rational;
pub mod series;

pub use factored::{BinomialFactor, Factored, RatFn};
pub use poly::Poly;
pub use ratexpr::RationalExpression;
pub use rational::{int, parse_rational, rat, Rational};
pub use series::TruncatedSeries;
