//! Exact integer/rational polynomial machinery.
//!
//! Everything here works on arbitrary-precision integers (`num-bigint`) and
//! reduced rationals (`num-rational`); nothing touches floating point.
//! The pieces are:
//!
//! * [`Poly`] — dense univariate polynomials over any [`Ring`], with
//!   [`UniPoly`] (over ℤ) and [`ZaPoly`] (over ℤ[a]) as the working types;
//! * [`BiPoly`] — sparse bivariate interchange form;
//! * resultants (Bareiss on the Sylvester matrix), gcd / square-free parts;
//! * the spread resultant and its deflation to ρ(τ);
//! * Descartes real-root isolation and Sturm counting.

mod bipoly;
mod gcd;
mod poly;
mod resultant;
mod ring;
mod roots;
mod spread;
mod sturm;
mod text;

use thiserror::Error;

pub use bipoly::BiPoly;
pub use gcd::{poly_gcd, poly_gcd_za, primitive, squarefree_mod_prime, squarefree_part, squarefree_part_za, GcdRing};
pub use poly::{Poly, UniPoly, ZaPoly};
pub use resultant::{determinant, resultant, resultant_bipoly, spread_resultant_sylvester};
pub use ring::Ring;
pub use roots::{
    isolate_real_roots, largest_real_root, rat_to_f64, root_bound_pow2, IsolatedRoots, RatInterval,
};
pub use spread::{
    deflate_even, deflated_spread_poly, deflated_spread_poly_symbolic, eval_bipoly_at,
    remove_power, shift_compose, shift_compose_nested, spread_rho,
};
pub use sturm::{deflate_rational_root, sturm_count, sturm_count_open, sturm_sequence};
pub use text::{parse_poly_text, poly_to_text};

pub type BigInt = num_bigint::BigInt;
pub type BigRat = num_rational::BigRational;

/// Variable tags used when polynomials are printed or parsed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Lambda,
    T,
    Tau,
    A,
}

impl Var {
    pub fn tag(self) -> &'static str {
        match self {
            Var::Lambda => "lambda",
            Var::T => "T",
            Var::Tau => "tau",
            Var::A => "a",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Var> {
        Some(match tag {
            "lambda" | "λ" => Var::Lambda,
            "T" => Var::T,
            "tau" | "τ" => Var::Tau,
            "a" => Var::A,
            _ => return None,
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("both polynomials are constant in the elimination variable")]
    BothConstant,
    #[error("division is not exact")]
    NotDivisible,
    #[error("x^{0} does not divide the polynomial")]
    PowerDoesNotDivide(usize),
    #[error("odd-degree monomial of degree {0} present")]
    OddPowerPresent(usize),
    #[error("interval endpoint {0} is a root; factor it out before counting")]
    EndpointRoot(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("variable {found:?} does not match expected {expected:?}")]
    VariableMismatch { expected: Var, found: Var },
    #[error("malformed polynomial text: {0}")]
    Parse(String),
}
