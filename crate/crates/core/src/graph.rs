//! The signed-graph value type.
//!
//! Vertices are dense ids `0..order`. Edges are stored once, as `(u, v, sign)` with
//! `u < v`, sorted, so two graphs compare equal exactly when they have the same order
//! and the same signed edge set.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::IntMatrix;

/// Edge label of a signed graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn from_parity(negative: bool) -> Sign {
        if negative {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Positive),
            '-' => Some(Sign::Negative),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Negative
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Positive, Mul::mul)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("switching function has length {found}, graph has order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a cycle of the graph: {0}")]
    NotACycle(String),
    #[error("graphs have different underlying graphs")]
    UnderlyingMismatch,
}

/// A simple undirected graph with a sign on every edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedGraph {
    order: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, Sign)>>,
}

impl SignedGraph {
    /// Builds a graph from an edge list in any orientation and order.
    pub fn new<I>(order: usize, edges: I) -> Result<SignedGraph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        let mut list = Vec::new();
        for (a, b, sign) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for vertex in [a, b] {
                if vertex >= order {
                    return Err(GraphError::VertexOutOfRange { vertex, order });
                }
            }
            list.push(Edge {
                u: a.min(b),
                v: a.max(b),
                sign,
            });
        }
        list.sort_unstable();
        if let Some(w) = list
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(GraphError::DuplicateEdge(w[0].u, w[0].v));
        }
        Ok(Self::from_sorted(order, list))
    }

    /// All-positive graph on the given vertex pairs.
    pub fn unsigned(order: usize, pairs: &[(usize, usize)]) -> Result<SignedGraph, GraphError> {
        Self::new(order, pairs.iter().map(|&(u, v)| (u, v, Sign::Positive)))
    }

    pub fn empty(order: usize) -> SignedGraph {
        Self::from_sorted(order, Vec::new())
    }

    fn from_sorted(order: usize, edges: Vec<Edge>) -> SignedGraph {
        let mut adj = vec![Vec::new(); order];
        for e in &edges {
            adj[e.u].push((e.v, e.sign));
            adj[e.v].push((e.u, e.sign));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        SignedGraph { order, edges, adj }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` with the sign of the connecting edge, sorted by neighbor id.
    pub fn neighbors(&self, v: usize) -> &[(usize, Sign)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn sign_of(&self, u: usize, v: usize) -> Option<Sign> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.sign_of(u, v).is_some()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v].is_empty()
    }

    pub fn non_isolated_vertices(&self) -> Vec<usize> {
        (0..self.order).filter(|&v| !self.is_isolated(v)).collect()
    }

    pub fn negative_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    pub fn is_all_positive(&self) -> bool {
        self.negative_edge_count() == 0
    }

    /// The same graph with every sign dropped to `+`.
    pub fn underlying(&self) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                sign: Sign::Positive,
                ..*e
            })
            .collect();
        Self::from_sorted(self.order, edges)
    }

    pub fn same_underlying(&self, other: &SignedGraph) -> bool {
        self.order == other.order
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| (a.u, a.v) == (b.u, b.v))
    }

    /// Replaces each edge sign by `f(edge)`; the underlying graph is untouched.
    pub fn map_signs<F: FnMut(&Edge) -> Sign>(&self, mut f: F) -> SignedGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge { sign: f(e), ..*e })
            .collect();
        Self::from_sorted(self.order, edges)
    }

    /// Symmetric `{-1, 0, 1}` matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.order;
        let mut entries = vec![0i64; n * n];
        for e in &self.edges {
            entries[e.u * n + e.v] = e.sign.value();
            entries[e.v * n + e.u] = e.sign.value();
        }
        IntMatrix::from_vec(n, n, entries)
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()` in increasing id order.
    pub fn induced_subgraph(&self, keep: &[usize]) -> SignedGraph {
        let mut map = vec![usize::MAX; self.order];
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (new, &old) in sorted.iter().enumerate() {
            map[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e.u] != usize::MAX && map[e.v] != usize::MAX)
            .map(|e| Edge {
                u: map[e.u],
                v: map[e.v],
                sign: e.sign,
            })
            .collect();
        // order-preserving relabel keeps the edge list sorted
        Self::from_sorted(sorted.len(), edges)
    }

    /// Deletes the listed vertices and compacts the remaining ids.
    pub fn remove_vertices(&self, remove: &[usize]) -> SignedGraph {
        let keep: Vec<usize> = (0..self.order).filter(|v| !remove.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..order`.
    pub fn relabel(&self, perm: &[usize]) -> SignedGraph {
        assert_eq!(perm.len(), self.order, "permutation length mismatch");
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (perm[e.u], perm[e.v]);
                Edge {
                    u: a.min(b),
                    v: a.max(b),
                    sign: e.sign,
                }
            })
            .collect();
        edges.sort_unstable();
        Self::from_sorted(self.order, edges)
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &SignedGraph) -> SignedGraph {
        let shift = self.order;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|e| Edge {
                u: e.u + shift,
                v: e.v + shift,
                sign: e.sign,
            }))
            .collect();
        Self::from_sorted(self.order + other.order, edges)
    }

    /// Adds the given edges to a copy of the graph.
    pub fn with_edges<I>(&self, extra: I) -> Result<SignedGraph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        Self::new(
            self.order,
            self.edges.iter().map(|e| (e.u, e.v, e.sign)).chain(extra),
        )
    }

    /// Connected component index per vertex, numbered in order of lowest member.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.order];
        let mut count = 0;
        let mut stack = Vec::new();
        for root in 0..self.order {
            if label[root] != usize::MAX {
                continue;
            }
            label[root] = count;
            stack.push(root);
            while let Some(x) = stack.pop() {
                for &(y, _) in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.order > 0 && self.component_count() == 1
    }

    /// Dimension of the cycle space, `|E| - |V| + components`.
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.component_count() - self.order
    }

    pub fn is_forest(&self) -> bool {
        self.cyclomatic_number() == 0
    }

    /// Connected, `|E| = |V| + 1`.
    pub fn is_bicyclic(&self) -> bool {
        self.is_connected() && self.edges.len() == self.order + 1
    }

    /// Non-isolated part is `K_{1,k}` for some `k >= 1`.
    pub fn is_star(&self) -> bool {
        let active = self.non_isolated_vertices();
        if active.len() < 2 || self.edges.len() != active.len() - 1 {
            return false;
        }
        active.iter().any(|&c| self.degree(c) == self.edges.len())
    }
}

/// Vertex sign function `theta`; switching multiplies each edge sign by `theta` at both ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SwitchingFunction(Vec<Sign>);

impl SwitchingFunction {
    pub fn new(signs: Vec<Sign>) -> Self {
        SwitchingFunction(signs)
    }

    pub fn identity(order: usize) -> Self {
        SwitchingFunction(vec![Sign::Positive; order])
    }

    /// Negative exactly on `flipped`.
    pub fn flipping(order: usize, flipped: &[usize]) -> Self {
        let mut signs = vec![Sign::Positive; order];
        for &v in flipped {
            signs[v] = Sign::Negative;
        }
        SwitchingFunction(signs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> Sign {
        self.0[v]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|s| !s.is_negative())
    }

    /// Pointwise product; switching by the result equals switching by both in turn.
    pub fn compose(&self, other: &SwitchingFunction) -> SwitchingFunction {
        SwitchingFunction(self.0.iter().zip(&other.0).map(|(&a, &b)| a * b).collect())
    }
}

impl fmt::Display for SwitchingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for SwitchingFunction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| format!("bad sign character {c:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(SwitchingFunction)
    }
}

impl Serialize for SwitchingFunction {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A cycle `v0 v1 ... v(k-1)` traversed cyclically, `k >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    /// Checks the vertex sequence is a cycle of `g`.
    pub fn new(g: &SignedGraph, vertices: Vec<usize>) -> Result<Cycle, GraphError> {
        let cycle = Cycle(vertices);
        cycle.validate(g)?;
        Ok(cycle)
    }

    pub(crate) fn new_unchecked(vertices: Vec<usize>) -> Cycle {
        Cycle(vertices)
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<(), GraphError> {
        let fail = || GraphError::NotACycle(format!("{:?}", self.0));
        if self.0.len() < 3 || self.0.iter().any(|&v| v >= g.order()) {
            return Err(fail());
        }
        let mut seen = self.0.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.0.len() {
            return Err(fail());
        }
        if self.edge_pairs().all(|(a, b)| g.has_edge(a, b)) {
            Ok(())
        } else {
            Err(fail())
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive vertex pairs, closing edge included.
    pub fn edge_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| (self.0[i], self.0[(i + 1) % k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Negative as N, Positive as P};

    #[test]
    fn build_normalizes() {
        let g = SignedGraph::new(3, [(2, 1, N), (1, 0, P)]).unwrap();
        let e: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.sign)).collect();
        assert_eq!(e, vec![(0, 1, P), (1, 2, N)]);
        assert_eq!(g, SignedGraph::new(3, [(0, 1, P), (1, 2, N)]).unwrap());
    }

    #[test]
    fn build_examples() {
        let k2 = SignedGraph::new(2, [(0, 1, P)]).unwrap();
        assert_eq!((k2.order(), k2.size()), (2, 1));
        let empty = SignedGraph::new(3, []).unwrap();
        assert_eq!((empty.order(), empty.size()), (3, 0));
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            SignedGraph::new(3, [(0, 1, P), (1, 0, N)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            SignedGraph::new(3, [(1, 1, P)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            SignedGraph::new(3, [(0, 3, P)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        );
    }

    #[test]
    fn adjacency_examples() {
        let pos = SignedGraph::new(2, [(0, 1, P)]).unwrap().adjacency_matrix();
        assert_eq!(pos.to_rows(), vec![vec![0, 1], vec![1, 0]]);
        let neg = SignedGraph::new(2, [(0, 1, N)]).unwrap().adjacency_matrix();
        assert_eq!(neg.to_rows(), vec![vec![0, -1], vec![-1, 0]]);
        let zero = SignedGraph::empty(3).adjacency_matrix();
        assert_eq!(zero.to_rows(), vec![vec![0; 3]; 3]);
    }

    #[test]
    fn sign_group() {
        for a in [P, N] {
            assert_eq!(a * P, a);
            assert_eq!(a * a, P);
            for b in [P, N] {
                for c in [P, N] {
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
        assert_eq!(-P, N);
    }

    #[test]
    fn induced_and_relabel() {
        // path 0-1-2-3, drop 1
        let g = SignedGraph::new(4, [(0, 1, P), (1, 2, N), (2, 3, N)]).unwrap();
        let h = g.remove_vertices(&[1]);
        assert_eq!(h, SignedGraph::new(3, [(1, 2, N)]).unwrap());
        let r = g.relabel(&[3, 2, 1, 0]);
        assert_eq!(
            r,
            SignedGraph::new(4, [(3, 2, P), (2, 1, N), (1, 0, N)]).unwrap()
        );
    }

    #[test]
    fn structure_queries() {
        let star = SignedGraph::unsigned(5, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(star.is_star());
        assert!(star.is_forest());
        assert!(!star.is_connected());
        let p4 = SignedGraph::unsigned(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!p4.is_star());
        let theta = SignedGraph::unsigned(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        assert!(theta.is_bicyclic());
        assert_eq!(theta.cyclomatic_number(), 2);
    }

    #[test]
    fn cycle_validation() {
        let c4 = SignedGraph::unsigned(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(Cycle::new(&c4, vec![0, 1, 2, 3]).is_ok());
        assert!(Cycle::new(&c4, vec![0, 1, 3, 2]).is_err());
        assert!(Cycle::new(&c4, vec![0, 1]).is_err());
        assert!(Cycle::new(&c4, vec![0, 1, 2, 1]).is_err());
    }

    #[test]
    fn switching_function_text() {
        let theta: SwitchingFunction = "+-++".parse().unwrap();
        assert_eq!(theta, SwitchingFunction::flipping(4, &[1]));
        assert_eq!(theta.to_string(), "+-++");
        assert!("+x".parse::<SwitchingFunction>().is_err());
    }
}
