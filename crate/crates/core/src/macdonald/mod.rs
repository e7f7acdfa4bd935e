//! Macdonald symmetric functions in the variables `q` and `s = t^{1/2}`,
//! their pairing, principal evaluations, refined S/T matrices and the
//! Demazure–Lusztig polynomial representation.

pub mod dl;
pub mod sym;

pub use dl::{dl_apply, evaluation_sub, DlOp, LaurentFunc};
pub use sym::{
    hall_pairing, macdonald_norm, macdonald_poly, principal_eval, refined_st, schur_oracle, Basis,
    RefinedST, SymFunc, MAC_VARS, MAX_DEGREE,
};
