//! Exact computation of degree invariants of polynomial systems over prime
//! fields: degree of regularity, Gröbner basis degree, solving degree and
//! last fall degree, together with checks of the bounds relating them.

pub mod error;
pub mod field;
pub mod groebner;
pub mod harness;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod vspace;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use groebner::{buchberger_reduced, gbd, ideal_dim_le, mutantxl_gb, normal_form, GroebnerBasis};
pub use invariants::{
    degree_of_regularity, last_fall_degree, solving_degree, verify_bounds, Certificate, DegreeReport, Dreg, Verdict,
};
pub use linalg::RowBasis;
pub use monomial::{Monomial, TermOrder};
pub use poly::{PolySystem, Polynomial, Ring};
pub use vspace::{construct_top_representatives, interreduce_tops, reduce_against_tops, v_space_closure, VSpaceBasis};
