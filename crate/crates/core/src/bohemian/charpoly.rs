use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::SymBohemian;
use crate::exactpoly::{Poly, Ring, UniPoly, ZaPoly};

/// Characteristic polynomial `det(λI − A)` by Berkowitz's division-free
/// algorithm; valid over any commutative ring.
pub fn berkowitz<R: Ring>(a: &[Vec<R>]) -> Poly<R> {
    let n = a.len();
    if n == 0 {
        return Poly::one();
    }
    // descending coefficients of the leading r×r block
    let mut v: Vec<R> = vec![R::one(), a[0][0].negate()];
    for r in 1..n {
        let mut t: Vec<R> = Vec::with_capacity(r + 2);
        t.push(R::one());
        t.push(a[r][r].negate());
        let mut w: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            let dot = (0..r).fold(R::zero(), |acc, j| acc.plus(&a[r][j].times(&w[j])));
            t.push(dot.negate());
            if k + 1 < r {
                w = (0..r)
                    .map(|i| (0..r).fold(R::zero(), |acc, j| acc.plus(&a[i][j].times(&w[j]))))
                    .collect();
            }
        }
        let mut next = vec![R::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                *slot = slot.plus(&t[i - j].times(vj));
            }
        }
        v = next;
    }
    v.reverse();
    Poly::new(v)
}

impl SymBohemian {
    /// Characteristic polynomial over ℚ; needs a fixed `a`.
    pub fn charpoly_rational(&self) -> Poly<BigRational> {
        berkowitz(&self.rational_matrix())
    }

    /// Integer characteristic polynomial, when `a` is a fixed integer.
    pub fn charpoly_integer(&self) -> Option<UniPoly> {
        let a = self.a().fixed()?;
        if !a.is_integer() {
            return None;
        }
        let (m, _) = self.scaled_integer_matrix();
        Some(berkowitz(&m))
    }

    /// Characteristic polynomial with coefficients in ℤ[a], ignoring any fixed value.
    pub fn charpoly_symbolic(&self) -> ZaPoly {
        berkowitz(&self.symbolic_matrix())
    }

    /// Exact rank over ℚ; needs a fixed `a`.
    pub fn rank_exact(&self) -> usize {
        let (m, _) = self.scaled_integer_matrix();
        let small = |x: &BigInt| num_traits::ToPrimitive::to_i64(x).filter(|v| v.abs() <= 1 << 20);
        if let Some(flat) = m.iter().flatten().map(small).collect::<Option<Vec<i64>>>() {
            return small_rank(flat.chunks(self.dim()).map(<[i64]>::to_vec).collect());
        }
        integer_rank(m)
    }
}

/// Rank of an integer matrix by fraction-free row reduction.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !Zero::is_zero(&m[r][c])) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if Zero::is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = &*x * &pivot_row[c] - &f * y;
            }
            let g = row.iter().fold(BigInt::from(0), |g, x| num_integer::Integer::gcd(&g, x));
            if !Zero::is_zero(&g) {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
        }
        rank += 1;
    }
    rank
}

// Same elimination on machine integers; rows are kept primitive so entries
// stay bounded by products of two original entries.
fn small_rank(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = x
                    .checked_mul(pivot_row[c])
                    .and_then(|u| u.checked_sub(f.checked_mul(*y)?))
                    .expect("rank elimination overflow");
            }
            let g = row.iter().fold(0i64, |g, &x| num_integer::Integer::gcd(&g, &x));
            if g > 1 {
                for x in row.iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bohemian::{AValue, Sym};

    fn ip(cs: &[i64]) -> UniPoly {
        UniPoly::from_i64s(cs)
    }

    #[test]
    fn two_by_two() {
        let ones = SymBohemian::ones(2, AValue::Fixed(BigRational::from_integer(1.into())));
        assert_eq!(ones.charpoly_integer().unwrap(), ip(&[0, -2, 1]));
        let s = SymBohemian::from_rows(&["a1", "11"], AValue::Symbolic).unwrap();
        // λ² − (a+1)λ + (a−1)
        let want: ZaPoly = Poly::new(vec![ip(&[-1, 1]), ip(&[-1, -1]), ip(&[1])]);
        assert_eq!(s.charpoly_symbolic(), want);
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion_3x3() {
        let a: Vec<Vec<BigInt>> = [[2, -1, 0], [-1, 3, 4], [0, 4, 5]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        // tr = 10; principal 2-minors: (6-1)+(10-0)+(15-16) = 14; det = 2(15-16) +1(-5-0) = -7
        assert_eq!(berkowitz(&a), ip(&[7, 14, -10, 1]));
    }

    #[test]
    fn ranks() {
        let ones = SymBohemian::ones(4, AValue::zero());
        assert_eq!(ones.rank_exact(), 1);
        let zero = SymBohemian::from_fn(4, AValue::zero(), |_, _| Sym::A);
        assert_eq!(zero.rank_exact(), 0);
        let half = SymBohemian::from_rows(&["aa11", "aa11", "1111", "1111"], AValue::zero()).unwrap();
        assert_eq!(half.rank_exact(), 2);
        let eye = SymBohemian::from_fn(3, AValue::zero(), |i, j| if i == j { Sym::One } else { Sym::A });
        assert_eq!(eye.rank_exact(), 3);
    }
}
