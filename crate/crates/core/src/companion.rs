//! The Kronecker companion `Sc = S⊗I − I⊗S`, whose eigenvalues are all
//! differences `λᵢ − λⱼ`, and Rayleigh-quotient lower bounds on the spread.

use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bohemian::berkowitz;
use crate::exactpoly::UniPoly;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompanionError {
    #[error("Rayleigh quotient needs nonzero vectors")]
    ZeroVector,
    #[error("vector length {found} does not match dimension {expected}")]
    Length { expected: usize, found: usize },
    #[error("matrix is not square and symmetric")]
    NotSymmetric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpreadCompanion<T> {
    m: usize,
    entries: Vec<Vec<T>>,
}

impl<T> SpreadCompanion<T> {
    /// Dimension of the source matrix; the companion is `m² × m²`.
    pub fn source_dim(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Vec<T>] {
        &self.entries
    }
}

impl<T: Clone + Zero + Add<Output = T>> SpreadCompanion<T> {
    pub fn trace(&self) -> T {
        (0..self.entries.len()).fold(T::zero(), |acc, i| acc + self.entries[i][i].clone())
    }
}

fn check_symmetric<T: PartialEq>(s: &[Vec<T>]) -> Result<(), CompanionError> {
    let m = s.len();
    if s.iter().any(|r| r.len() != m) {
        return Err(CompanionError::NotSymmetric);
    }
    for i in 0..m {
        for j in 0..i {
            if s[i][j] != s[j][i] {
                return Err(CompanionError::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// Row `(i,k)` and column `(j,l)` at index `i·m + k`, `j·m + l`.
pub fn build_companion<T>(s: &[Vec<T>]) -> Result<SpreadCompanion<T>, CompanionError>
where
    T: Clone + PartialEq + Zero + Sub<Output = T>,
{
    check_symmetric(s)?;
    let m = s.len();
    let n = m * m;
    let mut entries = vec![vec![T::zero(); n]; n];
    for i in 0..m {
        for k in 0..m {
            let row = i * m + k;
            for j in 0..m {
                for l in 0..m {
                    let mut v = T::zero();
                    if k == l {
                        v = v + s[i][j].clone();
                    }
                    if i == j {
                        v = v - s[k][l].clone();
                    }
                    entries[row][j * m + l] = v;
                }
            }
        }
    }
    Ok(SpreadCompanion { m, entries })
}

/// Exact `det(T·I − Sc)` for an integer matrix.
pub fn companion_charpoly(s: &[Vec<BigInt>]) -> Result<UniPoly, CompanionError> {
    let sc = build_companion(s)?;
    Ok(berkowitz(sc.entries()))
}

fn quad<T>(s: &[Vec<T>], x: &[T]) -> T
where
    T: Clone + Zero + Add<Output = T> + Mul<Output = T>,
{
    let mut acc = T::zero();
    for (i, row) in s.iter().enumerate() {
        for (j, sij) in row.iter().enumerate() {
            acc = acc + x[i].clone() * sij.clone() * x[j].clone();
        }
    }
    acc
}

/// Rayleigh quotient of `Sc` at `x ⊗ y`, which equals `R(x) − R(y)` for the
/// Rayleigh quotient `R` of `S`; never above the spread.
pub fn rayleigh_lower_bound<T>(s: &[Vec<T>], x: &[T], y: &[T]) -> Result<T, CompanionError>
where
    T: Clone + PartialEq + Zero + One + Sub<Output = T> + Div<Output = T>,
{
    let m = s.len();
    for v in [x, y] {
        if v.len() != m {
            return Err(CompanionError::Length { expected: m, found: v.len() });
        }
    }
    let dot = |v: &[T]| v.iter().fold(T::zero(), |acc, e| acc + e.clone() * e.clone());
    let (xx, yy) = (dot(x), dot(y));
    if xx.is_zero() || yy.is_zero() {
        return Err(CompanionError::ZeroVector);
    }
    Ok(quad(s, x) / xx - quad(s, y) / yy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::spread_resultant_sylvester;
    use crate::sampler::symmetric_eigenvalues;
    use num_rational::BigRational;

    fn f(rows: &[&[f64]]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn swap_matrix_differences() {
        let s = f(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let sc = build_companion(&s).unwrap();
        let ev = symmetric_eigenvalues(sc.entries(), 1e-14).unwrap();
        for (a, b) in ev.iter().zip([-2.0, 0.0, 0.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(sc.trace(), 0.0);
        let r = rayleigh_lower_bound(&s, &[1.0, 1.0], &[1.0, -1.0]).unwrap();
        assert!((r - 2.0).abs() < 1e-15);
    }

    #[test]
    fn identity_gives_zero() {
        let s = f(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let sc = build_companion(&s).unwrap();
        assert!(sc.entries().iter().flatten().all(|&x| x == 0.0));
    }

    #[test]
    fn equal_vectors_vanish() {
        let s = f(&[&[2.0, 1.0], &[1.0, -1.0]]);
        assert_eq!(rayleigh_lower_bound(&s, &[0.3, 0.7], &[0.3, 0.7]).unwrap(), 0.0);
        assert_eq!(rayleigh_lower_bound(&s, &[0.0, 0.0], &[1.0, 0.0]), Err(CompanionError::ZeroVector));
        assert!(matches!(rayleigh_lower_bound(&s, &[1.0], &[1.0, 0.0]), Err(CompanionError::Length { .. })));
    }

    #[test]
    fn exact_charpoly_matches_resultant() {
        let s: Vec<Vec<BigInt>> = [[1, 2, 0], [2, -1, 3], [0, 3, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let cp = companion_charpoly(&s).unwrap();
        let r = spread_resultant_sylvester(&berkowitz(&s)).unwrap();
        assert!(cp == r || cp == -r);
        let rat: Vec<Vec<BigRational>> =
            s.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        let q = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
        // R(e₂) − R(e₁) = −1 − 1
        assert_eq!(
            rayleigh_lower_bound(&rat, &q(&[0, 1, 0]), &q(&[1, 0, 0])).unwrap(),
            BigRational::from_integer((-2).into())
        );
    }

    #[test]
    fn rejects_asymmetric() {
        assert_eq!(build_companion(&f(&[&[0.0, 1.0], &[2.0, 0.0]])), Err(CompanionError::NotSymmetric));
    }
}
