//! The spread resultant `R(T) = res_λ(p(λ), p(λ+T))` and its deflation
//! `ρ(τ)` with `R(T) = T^m · ρ(T²)`.
//!
//! [`spread_rho`] builds ρ directly from power sums: with `P_r = Σ λ_i^r`
//! (Newton's identities on the coefficients of `p`) the squared differences
//! `d_ij = (λ_i − λ_j)²`, `i < j`, have power sums
//!
//! ```text
//! Q_k = ½ Σ_r C(2k, r) (−1)^r P_r P_{2k−r}
//! ```
//!
//! and a second pass of Newton's identities turns those into the
//! coefficients of `ρ(τ) = Π_{i<j} (τ − d_ij)`. Every division in the second
//! pass is exact in the coefficient ring, so this works over ℤ and ℤ[a].

use num_bigint::BigInt;

use super::bipoly::BiPoly;
use super::poly::{Poly, UniPoly, ZaPoly};
use super::ring::Ring;
use super::{PolyError, Var};

/// `p(λ+T)` as a bivariate polynomial in (λ, T).
pub fn shift_compose(p: &UniPoly) -> Result<BiPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(BiPoly::from_nested(&shift_compose_nested(p), Var::Lambda, Var::T))
}

/// `p(λ+T)` as a polynomial in λ with coefficients in `R[T]`.
pub fn shift_compose_nested<R: Ring>(p: &Poly<R>) -> Poly<Poly<R>> {
    let n = p.coeffs().len();
    let binom = pascal_row_table(n);
    let mut out: Vec<Vec<R>> = vec![vec![R::zero(); n]; n];
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // c (λ+T)^i = Σ_j C(i,j) c λ^j T^(i-j)
        for j in 0..=i {
            let term = c.times(&R::from_bigint(&binom[i][j]));
            out[j][i - j] = out[j][i - j].plus(&term);
        }
    }
    Poly::new(out.into_iter().map(Poly::new).collect())
}

fn pascal_row_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![BigInt::from(1); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `p / T^m`, requiring exact divisibility.
pub fn remove_power<R: Ring>(p: &Poly<R>, m: usize) -> Result<Poly<R>, PolyError> {
    let cs = p.coeffs();
    if cs.len() <= m && !p.is_zero() || cs.iter().take(m).any(|c| !c.is_zero()) {
        return Err(PolyError::PowerDoesNotDivide(m));
    }
    Ok(Poly::new(cs.iter().skip(m).cloned().collect()))
}

/// `p'(τ)` with `p'(T²) = p(T)`; every monomial of `p` must be even.
pub fn deflate_even<R: Ring>(p: &Poly<R>) -> Result<Poly<R>, PolyError> {
    if let Some(odd) = p.coeffs().iter().enumerate().find(|(i, c)| i % 2 == 1 && !c.is_zero()) {
        return Err(PolyError::OddPowerPresent(odd.0));
    }
    Ok(Poly::new(p.coeffs().iter().step_by(2).cloned().collect()))
}

/// ρ(τ) for a monic polynomial `p`, via power sums.
///
/// For `p = λ^m` the result is `τ^C(m,2)`; for `m = 1` it is the constant 1.
pub fn spread_rho<R: Ring>(p: &Poly<R>) -> Result<Poly<R>, PolyError> {
    let m = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if !p.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let pairs = m * (m.saturating_sub(1)) / 2;
    let top = 2 * pairs;
    let c = p.coeffs();

    let mut psum: Vec<R> = Vec::with_capacity(top + 1);
    psum.push(R::from_i64(m as i64));
    for r in 1..=top {
        let mut acc = R::zero();
        for i in 1..=(r - 1).min(m) {
            let ci = &c[m - i];
            if !ci.is_zero() {
                acc = acc.plus(&ci.times(&psum[r - i]));
            }
        }
        if r <= m {
            acc = acc.plus(&c[m - r].times(&R::from_i64(r as i64)));
        }
        psum.push(acc.negate());
    }

    let binom = pascal_row_table(top + 1);
    let mut qsum: Vec<R> = vec![R::zero(); pairs + 1];
    for k in 1..=pairs {
        let row = &binom[2 * k];
        let mut acc = R::zero();
        for r in 0..k {
            let t = psum[r].times(&psum[2 * k - r]).times(&R::from_bigint(&row[r]));
            acc = if r % 2 == 0 { acc.plus(&t) } else { acc.minus(&t) };
        }
        let half_mid = &row[k] / BigInt::from(2);
        let mid = psum[k].times(&psum[k]).times(&R::from_bigint(&half_mid));
        acc = if k % 2 == 0 { acc.plus(&mid) } else { acc.minus(&mid) };
        qsum[k] = acc;
    }

    let mut elem: Vec<R> = Vec::with_capacity(pairs + 1);
    elem.push(R::one());
    for k in 1..=pairs {
        let mut acc = R::zero();
        for i in 1..=k {
            let t = elem[k - i].times(&qsum[i]);
            acc = if i % 2 == 1 { acc.plus(&t) } else { acc.minus(&t) };
        }
        let e = acc
            .try_div(&R::from_i64(k as i64))
            .expect("Newton identity division must be exact");
        elem.push(e);
    }

    let mut coeffs = vec![R::zero(); pairs + 1];
    for (k, e) in elem.into_iter().enumerate() {
        coeffs[pairs - k] = if k % 2 == 0 { e } else { e.negate() };
    }
    Ok(Poly::new(coeffs))
}

/// Deflated spread polynomial ρ(τ) of an integer characteristic polynomial.
pub fn deflated_spread_poly(p: &UniPoly) -> Result<UniPoly, PolyError> {
    spread_rho(p)
}

/// Deflated spread polynomial ρ(τ; a) of a characteristic polynomial over ℤ[a].
pub fn deflated_spread_poly_symbolic(p: &ZaPoly) -> Result<ZaPoly, PolyError> {
    spread_rho(p)
}

/// Substitute `τ ← c(a)` into ρ(τ; a).
pub fn eval_bipoly_at(rho: &BiPoly, c: &UniPoly) -> UniPoly {
    let oriented = if rho.secondary() == Var::A || rho.primary() != Var::A {
        rho.clone()
    } else {
        rho.swap_vars()
    };
    oriented.to_nested().eval(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::spread_resultant_sylvester;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn shift_compose_examples() {
        // λ² → λ² + 2λT + T²
        let s = shift_compose(&p(&[0, 0, 1])).unwrap();
        assert_eq!(s.coeff(2, 0), 1.into());
        assert_eq!(s.coeff(1, 1), 2.into());
        assert_eq!(s.coeff(0, 2), 1.into());
        assert_eq!(s.terms().count(), 3);
        // λ − 1 → λ + T − 1
        let s = shift_compose(&p(&[-1, 1])).unwrap();
        assert_eq!(s.coeff(0, 0), (-1).into());
        assert_eq!(s.coeff(1, 0), 1.into());
        assert_eq!(s.coeff(0, 1), 1.into());
        // λ² − 1
        let s = shift_compose(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(s.terms().count(), 4);
        assert_eq!(s.degree_primary(), Some(2));
        assert_eq!(s.degree_secondary(), Some(2));
        assert_eq!(shift_compose(&UniPoly::zero()), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn remove_power_examples() {
        assert_eq!(remove_power(&p(&[0, 0, -4, 0, 1]), 2).unwrap(), p(&[-4, 0, 1]));
        assert_eq!(remove_power(&p(&[0, 0, 0, 1]), 3).unwrap(), p(&[1]));
        assert_eq!(
            remove_power(&p(&[0, 0, -4, 0, 1]), 3),
            Err(PolyError::PowerDoesNotDivide(3))
        );
    }

    #[test]
    fn deflate_even_examples() {
        assert_eq!(deflate_even(&p(&[-4, 0, 1])).unwrap(), p(&[-4, 1]));
        let sextic = p(&[729, 0, -4374, 0, 5265, 0, -2358, 0, 450, 0, -36, 0, 1]);
        assert_eq!(
            deflate_even(&sextic).unwrap(),
            p(&[729, -4374, 5265, -2358, 450, -36, 1])
        );
        assert_eq!(deflate_even(&p(&[0, 1, 0, 1])), Err(PolyError::OddPowerPresent(1)));
    }

    #[test]
    fn eval_bipoly_examples() {
        let a2 = p(&[0, 0, 1]);
        // ρ = τ − a², c = a² → 0
        let rho = BiPoly::from_terms(Var::Tau, Var::A, [((1, 0), 1.into()), ((0, 2), (-1).into())]);
        assert!(eval_bipoly_at(&rho, &a2).is_zero());
        // ρ = τ², c = a + 1
        let rho = BiPoly::from_terms(Var::Tau, Var::A, [((2, 0), 1.into())]);
        assert_eq!(eval_bipoly_at(&rho, &p(&[1, 1])), p(&[1, 2, 1]));
        // ρ = τ − 5, c = 1
        let rho = BiPoly::from_terms(Var::Tau, Var::A, [((1, 0), 1.into()), ((0, 0), (-5).into())]);
        assert_eq!(eval_bipoly_at(&rho, &p(&[1])), p(&[-4]));
    }

    #[test]
    fn rho_of_degenerate_polynomials() {
        assert_eq!(spread_rho(&p(&[0, 0, 0, 1])).unwrap(), p(&[0, 0, 0, 1]));
        assert_eq!(spread_rho(&p(&[7, 1])).unwrap(), p(&[1]));
        assert_eq!(spread_rho(&p(&[1, 2])), Err(PolyError::NotMonic));
    }

    proptest! {
        #[test]
        fn power_sum_route_matches_sylvester(cs in proptest::collection::vec(-3i64..=3, 1..=5)) {
            let mut coeffs = cs.clone();
            coeffs.push(1);
            let pol = p(&coeffs);
            let m = pol.degree().unwrap();
            let sylvester = spread_resultant_sylvester(&pol).unwrap();
            let via_sylvester = deflate_even(&remove_power(&sylvester, m).unwrap()).unwrap();
            prop_assert_eq!(spread_rho(&pol).unwrap(), via_sylvester);
        }
    }
}
