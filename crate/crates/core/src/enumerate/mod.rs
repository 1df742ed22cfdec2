//! One representative per permutation-similarity class of symmetric {a,1}
//! matrices.
//!
//! Every such matrix is `E + (a−1)(D + G)` with `E` the all-ones matrix, `G`
//! the adjacency matrix of a simple graph and `D` a 0/1 diagonal. Relabelling
//! vertices acts on both, so it is enough to take one canonical `G` per
//! isomorphism class and pair it with every diagonal.
//!
//! Polarity: a set bit in a [`GraphClass`] or [`DiagonalMask`] marks an `a`
//! entry. In [`SymBohemian`] it is the other way round.

mod canon;
mod graph6;

use thiserror::Error;

use crate::bohemian::{upper_index, AValue, SymBohemian};

pub use canon::{canonical_form, canonical_labelling, is_canonical};
pub use graph6::{from_graph6, to_graph6, Graph6Error};

/// Largest vertex count the generator accepts.
pub const MAX_GRAPH_DIM: usize = 9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("m = {0} outside the supported range 1..={MAX_GRAPH_DIM}")]
    OutOfRange(usize),
}

/// Canonical representative of an isomorphism class of graphs on `m` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphClass {
    m: usize,
    adj: u64,
}

impl GraphClass {
    /// Canonicalises `adj` first.
    pub fn new(m: usize, adj: u64) -> Self {
        GraphClass { m, adj: canonical_form(m, adj) }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn bits(&self) -> u64 {
        self.adj
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj >> upper_index(i.min(j), i.max(j)) & 1 == 1
    }

    pub fn edge_count(&self) -> u32 {
        self.adj.count_ones()
    }

    /// Plain bit string in column order, e.g. `"001"` for the edge (1,2).
    pub fn bitstring(&self) -> String {
        let pairs = self.m * (self.m.saturating_sub(1)) / 2;
        (0..pairs).map(|k| if self.adj >> k & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn graph6(&self) -> String {
        to_graph6(self.m, self.adj)
    }
}

/// Diagonal pattern: bit `i` set means entry `(i,i)` is `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalMask(pub u64);

/// All isomorphism classes on `m` vertices, sorted by canonical bits.
///
/// Orderly generation: a canonical graph restricted to its first `m−1`
/// vertices is again canonical (the string of the subgraph is a prefix), so
/// extending every canonical `(m−1)`-graph by a last vertex in all ways and
/// keeping the canonical results yields each class exactly once.
pub fn nonisomorphic_graphs(m: usize) -> Result<Vec<GraphClass>, EnumError> {
    if !(1..=MAX_GRAPH_DIM).contains(&m) {
        return Err(EnumError::OutOfRange(m));
    }
    let mut level: Vec<u64> = vec![0];
    for n in 2..=m {
        let base = (n - 1) * (n - 2) / 2;
        let mut next: Vec<u64> = level
            .iter()
            .flat_map(|&g| (0..1u64 << (n - 1)).map(move |nb| g | nb << base))
            .filter(|&g| is_canonical(n, g))
            .collect();
        next.sort_unstable();
        level = next;
    }
    Ok(level.into_iter().map(|adj| GraphClass { m, adj }).collect())
}

/// The matrix `E + (a−1)(D + G)`.
pub fn assemble(g: &GraphClass, d: DiagonalMask, a: AValue) -> SymBohemian {
    let m = g.m;
    let pairs = m * (m - 1) / 2;
    let umask = if pairs == 0 { 0 } else { (1u64 << pairs) - 1 };
    SymBohemian::new(m, !d.0 & ((1u64 << m) - 1), !g.adj & umask, a)
}

/// `(2^m − 1)·U_m` matrices: every class with every diagonal except all-`a`.
pub fn candidates(m: usize, a: AValue) -> Result<impl Iterator<Item = SymBohemian>, EnumError> {
    let graphs = nonisomorphic_graphs(m)?;
    Ok(candidates_from(graphs, a))
}

/// Same as [`candidates`] over a precomputed class list.
pub fn candidates_from(graphs: Vec<GraphClass>, a: AValue) -> impl Iterator<Item = SymBohemian> {
    graphs.into_iter().flat_map(move |g| {
        let a = a.clone();
        let full = (1u64 << g.m) - 1;
        (0..full).map(move |d| assemble(&g, DiagonalMask(d), a.clone()))
    })
}

/// Every symmetric {a,1} matrix of size `m`, `2^(m(m+1)/2)` of them.
pub fn all_matrices(m: usize, a: AValue) -> impl Iterator<Item = SymBohemian> {
    let pairs = m * (m - 1) / 2;
    (0..1u64 << m).flat_map(move |d| {
        let a = a.clone();
        (0..1u64 << pairs).map(move |u| SymBohemian::new(m, d, u, a.clone()))
    })
}

/// Counts `(2^(m(m+1)/2), U_m, (2^m − 1)·U_m)`, the first as an exact integer.
pub fn enumeration_counts(m: usize) -> Result<(num_bigint::BigInt, usize, usize), EnumError> {
    let u = nonisomorphic_graphs(m)?.len();
    let raw = num_bigint::BigInt::from(1) << (m * (m + 1) / 2);
    Ok((raw, u, ((1usize << m) - 1) * u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bohemian::Sym;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(|m| nonisomorphic_graphs(m).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        assert_eq!(nonisomorphic_graphs(10), Err(EnumError::OutOfRange(10)));
        assert_eq!(nonisomorphic_graphs(0), Err(EnumError::OutOfRange(0)));
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidates(4, AValue::zero()).unwrap().count(), 165);
        assert_eq!(candidates(5, AValue::zero()).unwrap().count(), 1054);
        let (raw, u, c) = enumeration_counts(2).unwrap();
        assert_eq!((raw, u, c), (8.into(), 2, 6));
    }

    #[test]
    fn assembly_polarity() {
        let edge = GraphClass::new(2, 1);
        let s = assemble(&edge, DiagonalMask(0), AValue::Symbolic);
        assert_eq!(s.rows_compact(), ["1a", "a1"]);
        let empty = GraphClass::new(2, 0);
        let s = assemble(&empty, DiagonalMask(0), AValue::Symbolic);
        assert_eq!(s, SymBohemian::ones(2, AValue::Symbolic));
        let s = assemble(&GraphClass::new(4, 0), DiagonalMask(0b0001), AValue::zero());
        assert_eq!(s.rows_compact(), ["a111", "1111", "1111", "1111"]);
        assert_eq!(s.entry(0, 0), Sym::A);
    }

    #[test]
    fn canonical_under_random_relabelling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in 2..=7usize {
            let pairs = m * (m - 1) / 2;
            for _ in 0..50 {
                let adj = rand::Rng::random::<u64>(&mut rng) & ((1u64 << pairs) - 1);
                let form = canonical_form(m, adj);
                assert!(is_canonical(m, form));
                let s = SymBohemian::new(m, 0, adj, AValue::zero());
                for _ in 0..100 {
                    let mut perm: Vec<usize> = (0..m).collect();
                    perm.shuffle(&mut rng);
                    let p = s.permuted(&perm);
                    assert_eq!(canonical_form(m, p.upper_bits()), form);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent(m in 2usize..=8, bits in any::<u64>()) {
            let pairs = m * (m - 1) / 2;
            let adj = bits & ((1u64 << pairs) - 1);
            let f = canonical_form(m, adj);
            prop_assert_eq!(canonical_form(m, f), f);
            prop_assert!(is_canonical(m, f));
            prop_assert_eq!(is_canonical(m, adj), f == adj);
        }
    }
}
