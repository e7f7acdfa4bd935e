//! Exact computations of torus knot superpolynomials and colored HOMFLY
//! homology characters along several independent routes.

pub mod algebra;
pub mod cherednik;
pub mod crosscheck;
pub mod daha;
pub mod emit;
pub mod error;
pub mod hilbert;
pub mod homstruct;
pub mod koszul;
pub mod macdonald;
pub mod tableaux;
