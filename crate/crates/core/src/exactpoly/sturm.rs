//! Sturm sequences and exact root counting on rational intervals.

use num_rational::BigRational;
use num_traits::Signed;

use super::poly::{sign_of, UniPoly};
use super::PolyError;

/// Sturm sequence `p, p', −rem, …`, each term scaled by a positive constant.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone()];
    if p.degree().unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(p.derivative());
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let mut r = a.pseudo_rem(b);
        if r.is_zero() {
            break;
        }
        // pseudo_rem multiplies by lead(b)^(delta+1); undo a negative factor.
        if b.leading().unwrap().is_negative() && delta % 2 == 0 {
            r = -r;
        }
        let c = r.content();
        let next = UniPoly::new(r.coeffs().iter().map(|x| -(x / &c)).collect());
        let done = next.degree() == Some(0);
        seq.push(next);
        if done {
            break;
        }
    }
    seq
}

fn variations_at(seq: &[UniPoly], x: &BigRational) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in seq.iter().map(|q| q.sign_at(x)) {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
///
/// Errors if either endpoint is itself a root.
pub fn sturm_count(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for e in [lo, hi] {
        if p.sign_at(e) == 0 {
            return Err(PolyError::EndpointRoot(e.to_string()));
        }
    }
    if lo >= hi {
        return Ok(0);
    }
    let seq = sturm_sequence(p);
    Ok(variations_at(&seq, lo) - variations_at(&seq, hi))
}

/// Divide out every power of `(den·x − num)`; returns the quotient and the multiplicity.
pub fn deflate_rational_root(p: &UniPoly, r: &BigRational) -> (UniPoly, usize) {
    let lin = UniPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
    let mut q = p.clone();
    let mut mult = 0;
    while !q.is_zero() && sign_of(&q.eval_homogeneous(r.numer(), r.denom())) == 0 {
        q = q.div_exact(&lin).expect("linear factor of a rational root divides");
        mult += 1;
    }
    (q, mult)
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_count_open(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (q, _) = deflate_rational_root(p, lo);
    let (q, _) = deflate_rational_root(&q, hi);
    sturm_count(&q, lo, hi)
}
