//! Decimal brackets for √τ and the compact `3.8 789/829` shorthand.

use num_bigint::BigInt;
use num_rational::BigRational;

use bohemian_spread::exactpoly::RatInterval;

/// Decimal places that a width of 2^-exp can support.
pub fn digits_for(tolerance_exp: u32) -> usize {
    ((tolerance_exp as f64 * std::f64::consts::LOG10_2).floor() as usize + 1).max(2)
}

fn decimal(v: &BigInt, digits: usize) -> String {
    let s = v.to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    if digits == 0 {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

fn scaled(x: &BigRational, digits: usize) -> BigRational {
    x * BigRational::from_integer(BigInt::from(10).pow(2 * digits as u32))
}

/// `(⌊√lo⌋, ⌈√hi⌉)` at `digits` decimal places; needs `lo ≥ 0`.
pub fn sqrt_bracket(iv: &RatInterval, digits: usize) -> (String, String) {
    let lo = scaled(&iv.lo, digits).floor().to_integer().sqrt();
    let c = scaled(&iv.hi, digits).ceil().to_integer();
    let mut hi = c.sqrt();
    if &hi * &hi < c {
        hi += 1;
    }
    (decimal(&lo, digits), decimal(&hi, digits))
}

/// `√x` when the interval is a single rational square.
pub fn exact_sqrt(iv: &RatInterval) -> Option<BigRational> {
    if iv.lo != iv.hi {
        return None;
    }
    let (n, d) = (iv.lo.numer().sqrt(), iv.lo.denom().sqrt());
    (&n * &n == *iv.lo.numer() && &d * &d == *iv.lo.denom()).then(|| BigRational::new(n, d))
}

/// Shared leading digits once, then both tails: `3.8 789/829`.
pub fn shorthand(lo: &str, hi: &str) -> String {
    if lo == hi {
        return lo.to_string();
    }
    let common = lo.bytes().zip(hi.bytes()).take_while(|(a, b)| a == b).count();
    if common == 0 {
        return format!("{lo}/{hi}");
    }
    format!("{} {}/{}", &lo[..common], &lo[common..], &hi[common..])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn brackets() {
        let (lo, hi) = sqrt_bracket(&RatInterval::new(q(20, 1), q(22, 1)), 3);
        assert_eq!((lo.as_str(), hi.as_str()), ("4.472", "4.691"));
        let (lo, hi) = sqrt_bracket(&RatInterval::point(q(4, 1)), 4);
        assert_eq!((lo.as_str(), hi.as_str()), ("2.0000", "2.0000"));
        let (lo, _) = sqrt_bracket(&RatInterval::point(q(1, 100)), 2);
        assert_eq!(lo, "0.10");
        assert_eq!(exact_sqrt(&RatInterval::point(q(9, 4))), Some(q(3, 2)));
        assert_eq!(exact_sqrt(&RatInterval::point(q(21, 1))), None);
    }

    #[test]
    fn shorthands() {
        assert_eq!(shorthand("3.8789", "3.8829"), "3.8 789/829");
        assert_eq!(shorthand("2.00", "2.00"), "2.00");
        assert_eq!(shorthand("9.99", "10.01"), "9.99/10.01");
        assert_eq!(digits_for(10), 4);
        assert_eq!(digits_for(20), 7);
    }
}
