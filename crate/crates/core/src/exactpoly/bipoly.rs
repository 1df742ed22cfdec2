use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Poly, UniPoly, ZaPoly};
use super::Var;

/// Sparse bivariate integer polynomial.
///
/// Keys are `(degree in primary, degree in secondary)`; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    primary: Var,
    secondary: Var,
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl BiPoly {
    pub fn new(primary: Var, secondary: Var) -> Self {
        BiPoly { primary, secondary, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        primary: Var,
        secondary: Var,
        terms: impl IntoIterator<Item = ((usize, usize), BigInt)>,
    ) -> Self {
        let mut out = Self::new(primary, secondary);
        for (k, c) in terms {
            out.add_term(k.0, k.1, c);
        }
        out
    }

    pub fn primary(&self) -> Var {
        self.primary
    }

    pub fn secondary(&self) -> Var {
        self.secondary
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_primary(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_secondary(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    /// Dense nested view: a polynomial in the primary variable whose
    /// coefficients are polynomials in the secondary one.
    pub fn to_nested(&self) -> ZaPoly {
        let Some(dp) = self.degree_primary() else {
            return Poly::zero();
        };
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); dp + 1];
        for (&(i, j), c) in &self.terms {
            let row = &mut rows[i];
            if row.len() <= j {
                row.resize(j + 1, BigInt::zero());
            }
            row[j] = c.clone();
        }
        Poly::new(rows.into_iter().map(UniPoly::new).collect())
    }

    pub fn from_nested(nested: &ZaPoly, primary: Var, secondary: Var) -> Self {
        let mut out = Self::new(primary, secondary);
        for (i, inner) in nested.coeffs().iter().enumerate() {
            for (j, c) in inner.coeffs().iter().enumerate() {
                out.add_term(i, j, c.clone());
            }
        }
        out
    }

    /// Same polynomial with the roles of the two variables exchanged.
    pub fn swap_vars(&self) -> Self {
        BiPoly {
            primary: self.secondary,
            secondary: self.primary,
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn retag(mut self, primary: Var, secondary: Var) -> Self {
        self.primary = primary;
        self.secondary = secondary;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn sparse_dense_round_trip(entries in proptest::collection::vec(((0usize..6, 0usize..6), -5i64..5), 0..20)) {
            let bp = BiPoly::from_terms(Var::Tau, Var::A, entries.into_iter().map(|(k, c)| (k, BigInt::from(c))));
            prop_assert!(bp.terms().all(|(_, c)| !c.is_zero()));
            let back = BiPoly::from_nested(&bp.to_nested(), Var::Tau, Var::A);
            prop_assert_eq!(&back, &bp);
            prop_assert_eq!(back.swap_vars().swap_vars(), bp);
        }
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let mut bp = BiPoly::new(Var::T, Var::A);
        bp.add_term(1, 2, BigInt::from(3));
        bp.add_term(1, 2, BigInt::from(-3));
        assert!(bp.is_zero());
    }
}
