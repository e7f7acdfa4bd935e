//! Koszul models: superpotentials, moduli relations, monomial bases of the
//! quotient super ring and the differentials acting on them.

pub mod diff;
pub mod lg;
pub mod model;
pub mod quotient;
pub mod ring;

pub use diff::{apply_differential, Differential, Homology};
pub use lg::{jacobi_dim, sl_n_potential, RepKind};
pub use model::{
    equation_relations, graded_basis, graded_basis_truncated, moduli_relations, potential,
    routes_agree, BasisElement, GradedBasis, Relations,
};
pub use quotient::Quotient;
pub use ring::{Element, Mono, SuperRing};
