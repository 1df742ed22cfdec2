use std::collections::BTreeMap;

use dashmap::DashMap;
use rayon::prelude::*;

use super::spread::{digest_symbolic, is_trivial_key_symbolic, rho_key_symbolic, SpreadCache};
use super::{UniqueResultants, VerifyError};
use crate::bohemian::{AValue, SymBohemian};
use crate::enumerate::{all_matrices, candidates, MAX_GRAPH_DIM};
use crate::exactpoly::{spread_rho, ZaPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniqueMode {
    /// All `2^(m(m+1)/2)` matrices; `m ≤ 5`.
    Brute,
    /// The canonical candidate stream.
    Canonical,
}

const BRUTE_MAX: usize = 5;

/// Distinct square-free deflated spread polynomials over a matrix set.
pub fn unique_resultants(m: usize, a: &AValue, mode: UniqueMode) -> Result<UniqueResultants, VerifyError> {
    let hi = if mode == UniqueMode::Brute { BRUTE_MAX } else { MAX_GRAPH_DIM };
    if !(1..=hi).contains(&m) {
        return Err(VerifyError::OutOfRange { m, lo: 1, hi });
    }
    let mats: Vec<SymBohemian> = match mode {
        UniqueMode::Brute => all_matrices(m, a.clone()).collect(),
        UniqueMode::Canonical => candidates(m, a.clone()).expect("range checked").collect(),
    };
    let keys: BTreeMap<String, bool> = match a {
        AValue::Fixed(_) => {
            let cache = SpreadCache::new();
            mats.par_iter()
                .map(|s| {
                    let e = cache.get(s);
                    (e.digest.clone(), e.trivial)
                })
                .collect::<Vec<_>>()
                .into_iter()
                .collect()
        }
        AValue::Symbolic => {
            let memo: DashMap<ZaPoly, (String, bool)> = DashMap::new();
            mats.par_iter()
                .map(|s| {
                    let cp = s.charpoly_symbolic();
                    if let Some(hit) = memo.get(&cp) {
                        return hit.clone();
                    }
                    let rho = spread_rho(&cp).expect("characteristic polynomials are monic");
                    let key = rho_key_symbolic(&rho);
                    let v = (digest_symbolic(&key), is_trivial_key_symbolic(&key));
                    memo.insert(cp, v.clone());
                    v
                })
                .collect::<Vec<_>>()
                .into_iter()
                .collect()
        }
    };
    Ok(UniqueResultants {
        inclusive: keys.len(),
        nontrivial: keys.values().filter(|&&t| !t).count(),
        digests: keys.into_keys().collect(),
    })
}
