//! Exact fields, polynomials, quadrics and linear algebra.

pub mod det;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod quad;

pub use det::{det_poly, is_scaled_power_of_linear};
pub use field::{Field, FieldElement};
pub use linalg::{rank, rref, EchelonBasis, Rref};
pub use poly::{indexed_names, Monomial, MultiPoly};
pub use quad::{quad_to_sym, sym_rank, LinForm, QuadForm, SymMatrix};
