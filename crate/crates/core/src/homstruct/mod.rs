//! Quadruply-graded homology data: regrading, δ-gradings, the structural
//! symmetries, decategorification, and cyclotomic expansions of colored
//! superpolynomials.

pub mod cyclotomic;
pub mod space;

pub use cyclotomic::{
    closed_form_coefficient, colored_superpoly_62_63, colored_superpoly_poly, cyclotomic_extract,
    divisibility_check, gaussian_binomial, habiro_coefficients, habiro_reconstruct, pochhammer,
    predict, CyclotomicData, DivisibilityReport, TwistFamilyKnot,
};
pub use space::{
    decategorify_poly, verify_growth, verify_mirror, verify_self_symmetry, verify_thin, Generator,
    QuadGradedSpace, Report, Variant, PLAIN_VARS, TILDE_VARS,
};
