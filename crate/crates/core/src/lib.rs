//! Exact computations for homogeneous ideals in a polynomial ring over `Q`
//! or a prime field: graded pieces, colon ideals, socles, Pfaffians,
//! Macaulay inverse systems and graded Betti tables.

pub mod apolarity;
pub mod error;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod par;
pub mod params;
pub mod parse;
pub mod pfaffian;
pub mod poly;
pub mod resolution;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use ideal::{ColonIdeal, GradedIdeal, ReductionReport, SocleReport, VirtualDatum};
pub use linalg::{ExactMatrix, Subspace};
pub use monomial::{default_vars, GradedMonomialBasis, Monomial};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::MultiPoly;
pub use pfaffian::{generic_power_model, GenericModel, SkewPolyMatrix};
pub use apolarity::{annihilator, contract, directrix_form, macaulay_inverse, newton_dual, socle_newton_dual, InverseForm};
pub use params::{five_quadrics_certificate, is_equigen_linres, linres_matrix, spans_target};
pub use resolution::{betti_table, has_linear_resolution, socle_decomposition_from_betti, BettiTable};
