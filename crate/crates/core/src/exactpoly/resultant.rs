//! Resultants as Sylvester determinants, evaluated with fraction-free
//! Bareiss elimination so that every intermediate stays in the coefficient
//! ring.

use super::bipoly::BiPoly;
use super::poly::{Poly, UniPoly};
use super::ring::Ring;
use super::spread::shift_compose_nested;
use super::{PolyError, Var};

/// Determinant of a square matrix over an integral domain (Bareiss).
pub fn determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut sign_flip = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return R::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].times(&m[k][k]).minus(&m[i][k].times(&m[k][j]));
                m[i][j] = num
                    .try_div(&prev)
                    .expect("Bareiss step must divide exactly in an integral domain");
            }
            m[i][k] = R::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.negate()
    } else {
        det
    }
}

/// Sylvester matrix of `p` (degree n) and `q` (degree d), size n+d.
fn sylvester<R: Ring>(p: &Poly<R>, q: &Poly<R>) -> Vec<Vec<R>> {
    let n = p.degree().unwrap();
    let d = q.degree().unwrap();
    let size = n + d;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..d {
        let mut row = vec![R::zero(); size];
        for (k, c) in p.coeffs().iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..n {
        let mut row = vec![R::zero(); size];
        for (k, c) in q.coeffs().iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `res(p, q)` with respect to the polynomials' own variable.
pub fn resultant<R: Ring>(p: &Poly<R>, q: &Poly<R>) -> Result<R, PolyError> {
    let (Some(n), Some(d)) = (p.degree(), q.degree()) else {
        return Err(PolyError::ZeroPolynomial);
    };
    if n == 0 && d == 0 {
        return Err(PolyError::BothConstant);
    }
    Ok(determinant(sylvester(p, q)))
}

/// Resultant of two bivariate polynomials eliminating `var`.
///
/// The result is a polynomial in the remaining variable.
pub fn resultant_bipoly(p: &BiPoly, q: &BiPoly, var: Var) -> Result<UniPoly, PolyError> {
    let orient = |b: &BiPoly| -> Result<BiPoly, PolyError> {
        if b.primary() == var {
            Ok(b.clone())
        } else if b.secondary() == var {
            Ok(b.swap_vars())
        } else {
            Err(PolyError::VariableMismatch { expected: var, found: b.primary() })
        }
    };
    let (p, q) = (orient(p)?, orient(q)?);
    if p.secondary() != q.secondary() {
        return Err(PolyError::VariableMismatch { expected: p.secondary(), found: q.secondary() });
    }
    resultant(&p.to_nested(), &q.to_nested())
}

/// `res_λ(p(λ), p(λ+T))` through the Sylvester determinant over `R[T]`.
///
/// This is the textbook route; [`super::spread_rho`] computes the same
/// polynomial (after deflation) much faster and the two are cross-checked in
/// the tests.
pub fn spread_resultant_sylvester<R: Ring>(p: &Poly<R>) -> Result<Poly<R>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let lifted: Poly<Poly<R>> = Poly::new(p.coeffs().iter().cloned().map(Poly::constant).collect());
    let shifted = shift_compose_nested(p);
    resultant(&lifted, &shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::exactpoly::shift_compose;
    use proptest::prelude::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        assert_eq!(determinant(m), int(1));
        // needs a row swap
        let m = vec![
            vec![int(0), int(1), int(2)],
            vec![int(1), int(0), int(3)],
            vec![int(4), int(-3), int(8)],
        ];
        assert_eq!(determinant(m), int(-2));
    }

    #[test]
    fn integer_resultants() {
        // res(x^2 - 1, x - 2) = (1-2)(-1-2)... = q(1) q(-1) with lc(p)=1: (−1)(−3) = 3
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-2, 1])).unwrap(), int(3));
        // common root ⇒ zero
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), int(0));
        assert_eq!(resultant(&p(&[3]), &p(&[1, 1])), Ok(int(3)));
        assert_eq!(resultant(&p(&[3]), &p(&[5])), Err(PolyError::BothConstant));
        assert_eq!(resultant(&p(&[]), &p(&[5, 1])), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn spread_resultant_of_x2_minus_1() {
        let r = spread_resultant_sylvester(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(r, p(&[0, 0, -4, 0, 1]));
    }

    #[test]
    fn spread_resultant_of_lambda() {
        let r = spread_resultant_sylvester(&p(&[0, 1])).unwrap();
        assert_eq!(r, p(&[0, 1]));
    }

    #[test]
    fn bipoly_resultant_eliminates_named_variable() {
        let lam = p(&[-1, 0, 1]);
        let q = shift_compose(&lam).unwrap();
        let pl = BiPoly::from_nested(
            &Poly::new(lam.coeffs().iter().cloned().map(Poly::constant).collect()),
            Var::Lambda,
            Var::T,
        );
        let r = resultant_bipoly(&pl, &q, Var::Lambda).unwrap();
        assert_eq!(r, p(&[0, 0, -4, 0, 1]));
        assert!(resultant_bipoly(&pl, &q, Var::Tau).is_err());
    }

    proptest! {
        // Product identity on factored monic polynomials with small integer roots.
        #[test]
        fn resultant_product_identity(roots in proptest::collection::vec(-4i64..=4, 1..=5)) {
            let mut pol = p(&[1]);
            for &r in &roots {
                pol = &pol * &p(&[-r, 1]);
            }
            let got = spread_resultant_sylvester(&pol).unwrap();
            let mut want = p(&[1]);
            for &ri in &roots {
                for &rj in &roots {
                    want = &want * &p(&[-(rj - ri), 1]);
                }
            }
            prop_assert_eq!(got, want);
        }
    }
}
