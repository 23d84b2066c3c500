//! Generators for labeled trees, connected graphs, bicyclic graphs and the
//! switching classes of a fixed underlying graph.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::canon::{canonical_graph, CanonicalCode};
use super::EnumerationError;
use crate::balance::SpanningForest;
use crate::graph::{Sign, SignedGraph};
use crate::recognizers::{BaseKind, BicyclicBase};

/// Number of labeled trees on `n` vertices, `n^(n-2)`.
pub fn labeled_tree_count(n: usize) -> u64 {
    match n {
        0 => 0,
        1 | 2 => 1,
        _ => (n as u64).pow(n as u32 - 2),
    }
}

/// The tree whose Prüfer sequence is `seq` over `0..seq.len() + 2`.
pub fn prufer_decode(seq: &[usize]) -> SignedGraph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a tree has a leaf");
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let last: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0], last[1]));
    SignedGraph::unsigned(n, &edges).expect("Prüfer decoding yields a simple graph")
}

/// The `index`-th labeled tree on `n` vertices, reading `index` in base `n` as the
/// Prüfer sequence.
pub fn labeled_tree(n: usize, index: u64) -> SignedGraph {
    match n {
        0 | 1 => SignedGraph::empty(n),
        2 => SignedGraph::unsigned(2, &[(0, 1)]).unwrap(),
        _ => {
            let mut seq = vec![0; n - 2];
            let mut rest = index;
            for slot in seq.iter_mut().rev() {
                *slot = (rest % n as u64) as usize;
                rest /= n as u64;
            }
            prufer_decode(&seq)
        }
    }
}

/// All labeled trees on `n` vertices, all edges positive.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = SignedGraph> {
    (0..labeled_tree_count(n)).map(move |i| labeled_tree(n, i))
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Connected graphs on `0..n` up to isomorphism, in canonical labelling, sorted by code.
pub fn connected_classes(n: usize) -> Result<Vec<(CanonicalCode, SignedGraph)>, EnumerationError> {
    if n > super::CONNECTED_SWEEP_MAX {
        return Err(EnumerationError::CeilingExceeded {
            order: n,
            ceiling: super::CONNECTED_SWEEP_MAX,
        });
    }
    let pairs = all_pairs(n);
    let min_edges = n.saturating_sub(1) as u32;
    let classes: BTreeMap<CanonicalCode, SignedGraph> = (0u64..1 << pairs.len())
        .into_par_iter()
        .filter(|mask| mask.count_ones() >= min_edges)
        .filter_map(|mask| {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = SignedGraph::unsigned(n, &chosen).unwrap();
            g.is_connected().then(|| canonical_graph(&g))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(classes.into_iter().collect())
}

/// Parameters of an ∞ or Θ base shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaseShape {
    pub kind: BaseKind,
    pub p: usize,
    pub q: usize,
    pub l: usize,
}

impl BaseShape {
    pub fn order(&self) -> usize {
        BicyclicBase::shape_order(self.kind, self.p, self.q, self.l)
    }

    /// The bare base on `0..order()`, all edges positive.
    pub fn graph(&self) -> SignedGraph {
        let mut edges = Vec::new();
        let mut next = 0;
        let mut fresh = || {
            next += 1;
            next - 1
        };
        match self.kind {
            BaseKind::Infinity => {
                let first: Vec<usize> = (0..self.p).map(|_| fresh()).collect();
                close_cycle(&first, &mut edges);
                let mut joint = first[0];
                for _ in 1..self.l {
                    let v = fresh();
                    edges.push((joint, v));
                    joint = v;
                }
                let mut second = vec![joint];
                second.extend((1..self.q).map(|_| fresh()));
                close_cycle(&second, &mut edges);
            }
            BaseKind::Theta => {
                let (a, b) = (fresh(), fresh());
                for len in [self.p, self.q, self.l] {
                    let mut prev = a;
                    for _ in 1..len {
                        let v = fresh();
                        edges.push((prev, v));
                        prev = v;
                    }
                    edges.push((prev, b));
                }
            }
        }
        SignedGraph::unsigned(self.order(), &edges).expect("base shapes are simple")
    }
}

fn close_cycle(vs: &[usize], edges: &mut Vec<(usize, usize)>) {
    for i in 0..vs.len() {
        edges.push((vs[i], vs[(i + 1) % vs.len()]));
    }
}

/// Every base shape on at most `max_order` vertices, sorted.
pub fn base_shapes(max_order: usize) -> Vec<BaseShape> {
    let mut out = Vec::new();
    for p in 3..=max_order {
        for q in p..=max_order {
            for l in 1..=max_order {
                let s = BaseShape {
                    kind: BaseKind::Infinity,
                    p,
                    q,
                    l,
                };
                if s.order() <= max_order {
                    out.push(s);
                }
            }
        }
    }
    for p in 2..=max_order {
        for q in 2..=p {
            for l in 1..=q {
                let s = BaseShape {
                    kind: BaseKind::Theta,
                    p,
                    q,
                    l,
                };
                if s.order() <= max_order {
                    out.push(s);
                }
            }
        }
    }
    out.sort();
    out
}

/// Labeled bicyclic graphs on `n` vertices grown from `shape`: each vertex
/// `i >= shape.order()` hangs off some earlier vertex. Every connected bicyclic graph on
/// `n` vertices is isomorphic to one produced by exactly the shape of its 2-core.
pub fn grow_from(shape: BaseShape, n: usize) -> impl Iterator<Item = SignedGraph> {
    let base = shape.graph();
    let b = shape.order();
    let extra = n.saturating_sub(b);
    let total: u64 = if n < b {
        0
    } else {
        (b..n).map(|i| i as u64).product()
    };
    (0..total).map(move |mut index| {
        let mut edges: Vec<(usize, usize, Sign)> =
            base.edges().iter().map(|e| (e.u, e.v, e.sign)).collect();
        for k in 0..extra {
            let i = b + k;
            edges.push(((index % i as u64) as usize, i, Sign::Positive));
            index /= i as u64;
        }
        SignedGraph::new(n, edges).expect("attachments keep the graph simple")
    })
}

/// All-positive connected bicyclic graphs on `n` vertices, every isomorphism class at
/// least once, grouped by base shape.
pub fn bicyclic_underlying(
    n: usize,
) -> Result<impl Iterator<Item = SignedGraph>, EnumerationError> {
    if n < 4 {
        return Err(EnumerationError::OrderTooSmall { order: n, min: 4 });
    }
    Ok(base_shapes(n)
        .into_iter()
        .flat_map(move |shape| grow_from(shape, n)))
}

/// Connected bicyclic graphs on `n` vertices up to isomorphism, in canonical labelling,
/// sorted by code.
pub fn bicyclic_classes(n: usize) -> Vec<(CanonicalCode, SignedGraph)> {
    let classes: BTreeMap<CanonicalCode, SignedGraph> = base_shapes(n)
        .into_par_iter()
        .flat_map_iter(|shape| {
            let mut seen = BTreeMap::new();
            for g in grow_from(shape, n) {
                let (code, canon) = canonical_graph(&g);
                seen.entry(code).or_insert(canon);
            }
            seen
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    classes.into_iter().collect()
}

/// One signature per switching class of a connected underlying graph: tree edges of
/// the canonical spanning forest positive, non-tree edges ranging over all patterns.
#[derive(Clone, Debug)]
pub struct SignatureClasses {
    underlying: SignedGraph,
    /// For each edge of `underlying`, its bit in the pattern mask.
    bit_of_edge: Vec<Option<u32>>,
    free: u32,
}

impl SignatureClasses {
    pub fn new(g: &SignedGraph) -> Result<Self, EnumerationError> {
        if !g.is_connected() {
            return Err(EnumerationError::Disconnected);
        }
        let underlying = g.underlying();
        let forest = SpanningForest::new(&underlying);
        let non_tree = forest.non_tree_edges();
        if non_tree.len() > 30 {
            return Err(EnumerationError::TooManyCycles(non_tree.len()));
        }
        let bit_of_edge = underlying
            .edges()
            .iter()
            .map(|e| non_tree.binary_search(&(e.u, e.v)).ok().map(|i| i as u32))
            .collect();
        Ok(SignatureClasses {
            underlying,
            bit_of_edge,
            free: non_tree.len() as u32,
        })
    }

    /// Number of switching classes, `2^c` for cyclomatic number `c`.
    pub fn count(&self) -> u64 {
        1 << self.free
    }

    /// Representative whose non-tree edge `i` is negative iff bit `i` of `mask` is set.
    pub fn representative(&self, mask: u64) -> SignedGraph {
        let mut k = 0;
        self.underlying.map_signs(|_| {
            let bit = self.bit_of_edge[k];
            k += 1;
            Sign::from_parity(bit.is_some_and(|b| mask >> b & 1 == 1))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, SignedGraph)> + '_ {
        (0..self.count()).map(|mask| (mask, self.representative(mask)))
    }
}

/// One signature from each switching class on the underlying graph of `g`.
pub fn signature_representatives(g: &SignedGraph) -> Result<Vec<SignedGraph>, EnumerationError> {
    let classes = SignatureClasses::new(g)?;
    Ok(classes.iter().map(|(_, h)| h).collect())
}
