//! Closed-form spread bounds and the conjectured rank-two maximum.
//!
//! Everything is on the squared scale so that comparisons stay rational.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{AValue, Sym, SymBohemian};
use crate::exactpoly::UniPoly;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest integer to `m/(a+3)`; both neighbours at an exact half.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptimalK {
    Unique(usize),
    Tie(usize, usize),
}

impl OptimalK {
    pub fn values(self) -> Vec<usize> {
        match self {
            OptimalK::Unique(k) => vec![k],
            OptimalK::Tie(k, l) => vec![k, l],
        }
    }

    pub fn first(self) -> usize {
        match self {
            OptimalK::Unique(k) | OptimalK::Tie(k, _) => k,
        }
    }
}

pub fn optimal_k(m: usize, a: &BigRational) -> OptimalK {
    let x = rat(m as i64) / (a + rat(3));
    let f = x.floor();
    let twice_frac = (&x - &f) * rat(2);
    let f = f.to_integer();
    let fk: usize = f.try_into().expect("block size fits in usize");
    match twice_frac.cmp(&BigRational::one()) {
        std::cmp::Ordering::Less => OptimalK::Unique(fk.max(1)),
        std::cmp::Ordering::Greater => OptimalK::Unique(fk + 1),
        std::cmp::Ordering::Equal => OptimalK::Tie(fk, fk + 1),
    }
}

/// `(a²+2a−3)k² + 2m(1−a)k + m²` at a fixed `a`.
pub fn conjectured_spread_sq(m: usize, k: usize, a: &BigRational) -> BigRational {
    conjectured_spread_sq_poly(m, k).coeffs().iter().rev().fold(BigRational::zero(), |acc, c| {
        acc * a + BigRational::from_integer(c.clone())
    })
}

/// The same expression as a polynomial in `a`.
pub fn conjectured_spread_sq_poly(m: usize, k: usize) -> UniPoly {
    let (m, k) = (m as i64, k as i64);
    UniPoly::from_i64s(&[m * m + 2 * m * k - 3 * k * k, 2 * k * k - 2 * m * k, k * k])
}

/// Conjectured maximal squared spread over symmetric {a,1} matrices of size `m`.
pub fn conjectured_max_sq(m: usize, a: &BigRational) -> BigRational {
    optimal_k(m, a)
        .values()
        .into_iter()
        .map(|k| conjectured_spread_sq(m, k, a))
        .max()
        .unwrap()
}

/// Values of `a` in (−1, 1) where the optimal block size changes, ascending.
pub fn breakpoints(m: usize) -> Vec<BigRational> {
    let mm = m as i64;
    let lo = (mm - 2 + 3).div_euclid(4); // ⌈(m−2)/4⌉
    let hi = (mm - 1).div_euclid(2);
    let mut out: Vec<BigRational> = (lo..=hi)
        .map(|l| BigRational::new(BigInt::from(2 * mm), BigInt::from(2 * l + 1)) - rat(3))
        .filter(|x| x > &rat(-1) && x < &rat(1))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Squared Zhan bound for entries in [−a, a]: `2a²m²` (m even) or `a²(2m²−1)` (m odd).
pub fn zhan_bound_sq(m: usize, a: &BigRational) -> BigRational {
    let m = m as i64;
    let base = if m.is_even() { 2 * m * m } else { 2 * m * m - 1 };
    a * a * rat(base)
}

/// Squared bound `4m²/3` for matrices with entries in [0, 1].
pub fn breen_bound_sq(m: usize) -> BigRational {
    let m = m as i64;
    BigRational::new(BigInt::from(4 * m * m), BigInt::from(3))
}

/// `2‖A‖²_F − (2/m)·tr(A)²`; needs a fixed `a`.
pub fn mirsky_bound_sq(s: &SymBohemian) -> BigRational {
    let a = s.a().fixed().expect("mirsky bound needs a fixed a");
    let m = s.dim() as i64;
    let n_a = s.count_a() as i64;
    let d_one = s.diag_bits().count_ones() as i64;
    let frob = rat(m * m - n_a) + a * a * rat(n_a);
    let trace = rat(d_one) + a * rat(m - d_one);
    frob * rat(2) - &trace * &trace * BigRational::new(BigInt::from(2), BigInt::from(m))
}

/// Leading k×k block all `a`, everything else 1.
pub fn build_fallat_xing(m: usize, k: usize, a: AValue) -> SymBohemian {
    assert!(k >= 1 && k < m, "block size {k} outside 1..{m}");
    SymBohemian::from_fn(m, a, |i, j| if i < k && j < k { Sym::A } else { Sym::One })
}

/// Whether the conjectured maximiser attains the Mirsky bound: `m = (1−a)·k`.
pub fn is_mirsky_matrix_case(m: usize, a: &BigRational) -> bool {
    optimal_k(m, a)
        .values()
        .into_iter()
        .any(|k| (BigRational::one() - a) * rat(k as i64) == rat(m as i64))
}

/// True when the rational `a` lies in the range the conjecture covers.
pub fn a_in_range(a: &BigRational) -> bool {
    a >= &rat(-1) && a < &BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn k_values() {
        assert_eq!(optimal_k(4, &q(0, 1)), OptimalK::Unique(1));
        assert_eq!(optimal_k(4, &q(-1, 2)), OptimalK::Unique(2));
        assert_eq!(optimal_k(6, &q(0, 1)), OptimalK::Unique(2));
        // 4/(8/3) = 3/2
        assert_eq!(optimal_k(4, &q(-1, 3)), OptimalK::Tie(1, 2));
    }

    #[test]
    fn conjectured_values() {
        assert_eq!(conjectured_spread_sq(4, 1, &q(0, 1)), q(21, 1));
        for qq in 1..=4usize {
            assert_eq!(conjectured_spread_sq(3 * qq, qq, &q(0, 1)), rat(12 * (qq * qq) as i64));
        }
        assert_eq!(conjectured_spread_sq_poly(4, 1), UniPoly::from_i64s(&[21, -6, 1]));
        assert_eq!(conjectured_spread_sq_poly(4, 2), UniPoly::from_i64s(&[20, -8, 4]));
        assert_eq!(conjectured_spread_sq(4, 1, &q(-1, 3)), q(208, 9));
        assert_eq!(conjectured_spread_sq(4, 2, &q(-1, 3)), q(208, 9));
    }

    #[test]
    fn breakpoint_lists() {
        assert_eq!(breakpoints(4), vec![q(-1, 3)]);
        assert_eq!(breakpoints(3), Vec::<BigRational>::new());
        assert_eq!(breakpoints(6), vec![q(-3, 5)]);
        assert_eq!(breakpoints(2), Vec::<BigRational>::new());
    }

    #[test]
    fn closed_form_bounds() {
        assert_eq!(zhan_bound_sq(4, &q(1, 1)), rat(32));
        assert_eq!(zhan_bound_sq(3, &q(1, 1)), rat(17));
        assert_eq!(zhan_bound_sq(2, &q(0, 1)), rat(0));
        assert_eq!(breen_bound_sq(6), rat(48));
        assert_eq!(breen_bound_sq(3), rat(12));
        assert_eq!(breen_bound_sq(1), q(4, 3));
    }

    #[test]
    fn mirsky_examples() {
        let ones = SymBohemian::ones(3, AValue::zero());
        assert_eq!(mirsky_bound_sq(&ones), rat(12));
        let eye = SymBohemian::from_rows(&["1a", "a1"], AValue::zero()).unwrap();
        assert_eq!(mirsky_bound_sq(&eye), rat(0));
        let swap = SymBohemian::from_rows(&["a1", "1a"], AValue::zero()).unwrap();
        assert_eq!(mirsky_bound_sq(&swap), rat(4));
    }

    #[test]
    fn mirsky_matrix_case() {
        assert!(is_mirsky_matrix_case(4, &q(-1, 1)));
        assert!(!is_mirsky_matrix_case(4, &q(0, 1)));
        assert!(!is_mirsky_matrix_case(5, &q(-1, 1)));
    }

    #[test]
    fn fallat_xing_shapes() {
        let s = build_fallat_xing(4, 1, AValue::zero());
        assert_eq!(s.rows_compact(), ["a111", "1111", "1111", "1111"]);
        let s = build_fallat_xing(4, 2, AValue::zero());
        assert_eq!(s.rows_compact(), ["aa11", "aa11", "1111", "1111"]);
        assert_eq!(s.rank_exact(), 2);
        let s = build_fallat_xing(2, 1, AValue::Symbolic);
        assert_eq!(s.rows_compact(), ["a1", "11"]);
    }
}
