//! Canonical labelling by lexicographically minimal adjacency string.
//!
//! The string lists the strict upper triangle column by column,
//! (0,1), (0,2), (1,2), (0,3), …; placing vertices one position at a time
//! fixes one column per step, so a partial labelling already determines a
//! prefix of the final string. Branches whose prefix is larger than the best
//! known one are cut, and of two unplaced twins (vertices whose neighbourhoods
//! agree outside each other) only the first is tried, since swapping them is an
//! automorphism fixing everything placed so far.

use crate::bohemian::upper_index;

/// Neighbour bitmasks, one per vertex.
pub(crate) fn adjacency_lists(m: usize, adj: u64) -> Vec<u32> {
    let mut nb = vec![0u32; m];
    for j in 1..m {
        for i in 0..j {
            if adj >> upper_index(i, j) & 1 == 1 {
                nb[i] |= 1 << j;
                nb[j] |= 1 << i;
            }
        }
    }
    nb
}

fn twins(nb: &[u32], u: usize, v: usize) -> bool {
    let (bu, bv) = (1u32 << u, 1u32 << v);
    (nb[u] & !bv) == (nb[v] & !bu)
}

// Column `pos` for candidate v: bit for position 0 is the most significant.
#[inline]
fn column_key(nb: &[u32], order: &[usize], v: usize) -> u32 {
    let pos = order.len();
    let mut key = 0u32;
    for (i, &w) in order.iter().enumerate() {
        if nb[v] >> w & 1 == 1 {
            key |= 1 << (pos - 1 - i);
        }
    }
    key
}

// Candidates worth trying at this level: unplaced, first of their twin class.
fn candidates(nb: &[u32], placed: u32, m: usize) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(m);
    for v in 0..m {
        if placed >> v & 1 == 1 {
            continue;
        }
        if out.iter().any(|&u| twins(nb, u, v)) {
            continue;
        }
        out.push(v);
    }
    out
}

struct MinSearch<'a> {
    nb: &'a [u32],
    m: usize,
    best: Option<Vec<u32>>,
    best_order: Vec<usize>,
}

impl MinSearch<'_> {
    fn dfs(&mut self, order: &mut Vec<usize>, cols: &mut Vec<u32>, placed: u32) {
        let pos = order.len();
        if pos == self.m {
            if self.best.as_ref().is_none_or(|b| cols.as_slice() < b.as_slice()) {
                self.best = Some(cols.clone());
                self.best_order = order.clone();
            }
            return;
        }
        let keyed: Vec<(u32, usize)> = candidates(self.nb, placed, self.m)
            .into_iter()
            .map(|v| (column_key(self.nb, order, v), v))
            .collect();
        let min = keyed.iter().map(|k| k.0).min().unwrap();
        for &(key, v) in keyed.iter().filter(|k| k.0 == min) {
            cols.push(key);
            let worse = self.best.as_ref().is_some_and(|b| cols.as_slice() > &b[..=pos]);
            if !worse {
                order.push(v);
                self.dfs(order, cols, placed | 1 << v);
                order.pop();
            }
            cols.pop();
        }
    }
}

fn columns_to_bits(m: usize, cols: &[u32]) -> u64 {
    let mut adj = 0u64;
    for (j, &key) in cols.iter().enumerate().take(m) {
        for i in 0..j {
            if key >> (j - 1 - i) & 1 == 1 {
                adj |= 1 << upper_index(i, j);
            }
        }
    }
    adj
}

/// Canonical adjacency bits together with a labelling that produces them:
/// position `i` of the canonical graph is vertex `order[i]` of the input.
pub fn canonical_labelling(m: usize, adj: u64) -> (u64, Vec<usize>) {
    if m <= 1 {
        return (0, (0..m).collect());
    }
    let nb = adjacency_lists(m, adj);
    let mut search = MinSearch { nb: &nb, m, best: None, best_order: Vec::new() };
    search.dfs(&mut Vec::with_capacity(m), &mut Vec::with_capacity(m), 0);
    let cols = search.best.expect("search visits at least one leaf");
    (columns_to_bits(m, &cols), search.best_order)
}

/// Lexicographically minimal adjacency bits over all relabellings.
pub fn canonical_form(m: usize, adj: u64) -> u64 {
    canonical_labelling(m, adj).0
}

/// Whether the identity labelling already gives the minimal string.
pub fn is_canonical(m: usize, adj: u64) -> bool {
    if m <= 1 {
        return true;
    }
    let nb = adjacency_lists(m, adj);
    let own: Vec<u32> = (0..m)
        .map(|j| {
            let order: Vec<usize> = (0..j).collect();
            column_key(&nb, &order, j)
        })
        .collect();
    // false as soon as some labelling beats the identity
    fn search(nb: &[u32], own: &[u32], m: usize, order: &mut Vec<usize>, placed: u32) -> bool {
        let pos = order.len();
        if pos == m {
            return true;
        }
        for v in candidates(nb, placed, m) {
            let key = column_key(nb, order, v);
            match key.cmp(&own[pos]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Equal => {
                    order.push(v);
                    let ok = search(nb, own, m, order, placed | 1 << v);
                    order.pop();
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
    search(&nb, &own, m, &mut Vec::with_capacity(m), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(edges: &[(usize, usize)]) -> u64 {
        edges
            .iter()
            .map(|&(i, j)| 1u64 << upper_index(i.min(j), i.max(j)))
            .fold(0, |a, b| a | b)
    }

    #[test]
    fn isomorphic_paths_agree() {
        let a = canonical_form(3, bits(&[(0, 1)]));
        let b = canonical_form(3, bits(&[(1, 2)]));
        assert_eq!(a, b);
        // minimal string puts the isolated vertex first: edge (1,2) only
        assert_eq!(a, bits(&[(1, 2)]));
    }

    #[test]
    fn empty_and_complete_are_fixed() {
        assert_eq!(canonical_form(5, 0), 0);
        let k5 = (1u64 << 10) - 1;
        assert_eq!(canonical_form(5, k5), k5);
        assert!(is_canonical(5, 0) && is_canonical(5, k5));
    }

    #[test]
    fn k4_minus_edge() {
        let all = (1u64 << 6) - 1;
        let forms: Vec<u64> = (0..6).map(|e| canonical_form(4, all & !(1 << e))).collect();
        assert!(forms.windows(2).all(|w| w[0] == w[1]));
        assert!(is_canonical(4, forms[0]));
    }

    #[test]
    fn labelling_reproduces_form() {
        let adj = bits(&[(0, 3), (3, 4), (1, 2), (2, 4)]);
        let (form, order) = canonical_labelling(5, adj);
        let nb = adjacency_lists(5, adj);
        let mut relabelled = 0u64;
        for j in 1..5 {
            for i in 0..j {
                if nb[order[i]] >> order[j] & 1 == 1 {
                    relabelled |= 1 << upper_index(i, j);
                }
            }
        }
        assert_eq!(relabelled, form);
    }
}
