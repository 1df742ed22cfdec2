//! Symmetric {a, 1} matrices, their exact characteristic polynomials and
//! ranks, and the closed-form spread bounds.

mod bounds;
mod charpoly;
mod matrix;

pub use bounds::{
    a_in_range, breakpoints, breen_bound_sq, build_fallat_xing, conjectured_max_sq,
    conjectured_spread_sq, conjectured_spread_sq_poly, is_mirsky_matrix_case, mirsky_bound_sq,
    optimal_k, zhan_bound_sq, OptimalK,
};
pub use charpoly::{berkowitz, integer_rank};
pub use matrix::{parse_rational, upper_index, AValue, MatrixParseError, Sym, SymBohemian, MAX_DIM};
