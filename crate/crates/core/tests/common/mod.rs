//! Oracles shared by the integration tests. None of them call the crate's rank or
//! canonical-form code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use signed_nullity::{Sign, SignedGraph};

/// Rank over the rationals by textbook Gaussian elimination.
pub fn rational_rank(g: &SignedGraph) -> usize {
    let n = g.order();
    let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for e in g.edges() {
        let s = BigRational::from_integer(BigInt::from(e.sign.value()));
        m[e.u][e.v] = s.clone();
        m[e.v][e.u] = s;
    }
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = BigRational::one() / m[rank][col].clone();
        for r in 0..n {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col].clone() * inv.clone();
                let pivot_row = m[rank].clone();
                for (cell, p) in m[r].iter_mut().zip(pivot_row).skip(col) {
                    *cell -= factor.clone() * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rational_nullity(g: &SignedGraph) -> usize {
    g.order() - rational_rank(g)
}

/// Pairs `(i, j)` with `i < j`, column by column.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Every `k`-subset of `0..m` in lexicographic order.
pub fn k_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    go(0, m, k, &mut cur, &mut out);
    out
}

/// Connected all-positive graphs on `n` vertices with exactly `size` edges, labeled.
pub fn connected_with_size(n: usize, size: usize) -> Vec<SignedGraph> {
    let pairs = all_pairs(n);
    k_subsets(pairs.len(), size)
        .into_iter()
        .map(|idx| {
            SignedGraph::unsigned(n, &idx.iter().map(|&i| pairs[i]).collect::<Vec<_>>()).unwrap()
        })
        .filter(|g| g.is_connected())
        .collect()
}

/// Each pair present with probability `p`, each sign a fair coin.
pub fn random_signed_graph(rng: &mut impl Rng, n: usize, p: f64) -> SignedGraph {
    let mut edges = Vec::new();
    for (u, v) in all_pairs(n) {
        if rng.gen_bool(p) {
            edges.push((u, v, Sign::from_parity(rng.gen_bool(0.5))));
        }
    }
    SignedGraph::new(n, edges).unwrap()
}
