//! Canonical codes for small underlying graphs.
//!
//! The code is the lexicographically least upper-triangle adjacency bit string over
//! all vertex orders that list the color-refinement cells in increasing color, found
//! by branch and bound.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::graph::SignedGraph;

/// Order byte followed by the packed upper-triangle bits, column by column.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&hex::encode(&self.0))
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Code of the underlying graph and the relabelling `old -> new` realizing it.
pub fn canonical_form(g: &SignedGraph) -> (CanonicalCode, Vec<usize>) {
    let n = g.order();
    assert!(
        n <= 64 && n <= u8::MAX as usize,
        "canonical codes support at most 64 vertices"
    );
    let rows: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &(w, _)| m | 1 << w))
        .collect();
    let colors = refine(g);
    let mut slot_color = colors.clone();
    slot_color.sort_unstable();

    let mut search = Search {
        rows: &rows,
        colors: &colors,
        slot_color: &slot_color,
        used: vec![false; n],
        order: Vec::with_capacity(n),
        bits: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.run();
    let (bits, order) = search.best.expect("at least one vertex order");

    let mut bytes = vec![n as u8];
    bytes.extend(bits.chunks(8).map(|c| {
        c.iter()
            .enumerate()
            .fold(0u8, |b, (i, &x)| b | (x as u8) << (7 - i))
    }));
    let mut relabel = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        relabel[v] = pos;
    }
    (CanonicalCode(bytes), relabel)
}

pub fn canonical_code(g: &SignedGraph) -> CanonicalCode {
    canonical_form(g).0
}

/// `g` relabelled into canonical vertex order, signs carried along.
pub fn canonical_graph(g: &SignedGraph) -> (CanonicalCode, SignedGraph) {
    let (code, relabel) = canonical_form(g);
    (code, g.relabel(&relabel))
}

/// Stable coloring by iterated (color, sorted neighbor colors) signatures.
fn refine(g: &SignedGraph) -> Vec<usize> {
    let n = g.order();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = count_distinct(&colors);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> =
                    g.neighbors(v).iter().map(|&(w, _)| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort_unstable();
        distinct.dedup();
        colors = signatures
            .iter()
            .map(|s| distinct.binary_search(s).unwrap())
            .collect();
        if distinct.len() == classes {
            return colors;
        }
        classes = distinct.len();
    }
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    rows: &'a [u64],
    colors: &'a [usize],
    slot_color: &'a [usize],
    used: Vec<bool>,
    order: Vec<usize>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl Search<'_> {
    fn prefix_vs_best(&self) -> Ordering {
        match &self.best {
            Some((best, _)) => self.bits.as_slice().cmp(&best[..self.bits.len()]),
            None => Ordering::Less,
        }
    }

    fn run(&mut self) {
        let pos = self.order.len();
        if pos == self.colors.len() {
            if self.prefix_vs_best() == Ordering::Less {
                self.best = Some((self.bits.clone(), self.order.clone()));
            }
            return;
        }
        for v in 0..self.colors.len() {
            if self.used[v] || self.colors[v] != self.slot_color[pos] {
                continue;
            }
            let start = self.bits.len();
            let row = self.rows[v];
            self.bits
                .extend(self.order.iter().map(|&u| row >> u & 1 == 1));
            if self.prefix_vs_best() != Ordering::Greater {
                self.used[v] = true;
                self.order.push(v);
                self.run();
                self.order.pop();
                self.used[v] = false;
            }
            self.bits.truncate(start);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shuffle(g: &SignedGraph, seed: u64) -> SignedGraph {
        // small LCG permutation so the test needs no RNG crate
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        g.relabel(&perm)
    }

    #[test]
    fn invariant_under_relabelling() {
        let graphs = [
            SignedGraph::unsigned(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
                .unwrap(),
            SignedGraph::unsigned(
                7,
                &[
                    (0, 1),
                    (1, 2),
                    (0, 2),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (5, 3),
                    (5, 6),
                ],
            )
            .unwrap(),
            SignedGraph::unsigned(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]).unwrap(),
        ];
        for g in &graphs {
            let code = canonical_code(g);
            for seed in 0..20 {
                assert_eq!(canonical_code(&shuffle(g, seed)), code);
            }
        }
    }

    #[test]
    fn canonical_graph_is_fixed_point() {
        let g =
            SignedGraph::unsigned(6, &[(0, 5), (5, 2), (2, 4), (4, 0), (1, 3), (3, 0)]).unwrap();
        let (code, canon) = canonical_graph(&g);
        let (again, canon2) = canonical_graph(&canon);
        assert_eq!(code, again);
        assert_eq!(canon, canon2);
    }

    #[test]
    fn separates_cospectral_pair() {
        // K_{1,4} and C4 + K1 share a spectrum but are not isomorphic
        let star = SignedGraph::unsigned(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let c4k1 = SignedGraph::unsigned(5, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_ne!(canonical_code(&star), canonical_code(&c4k1));
    }

    #[test]
    fn class_counts_match_known_values() {
        // all graphs on n vertices up to isomorphism: 1, 2, 4, 11, 34, 156
        for (n, expected) in [(1usize, 1usize), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)] {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let mut codes = std::collections::HashSet::new();
            for mask in 0u32..1 << pairs.len() {
                let chosen: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                codes.insert(canonical_code(&SignedGraph::unsigned(n, &chosen).unwrap()));
            }
            assert_eq!(codes.len(), expected, "n = {n}");
        }
    }
}
