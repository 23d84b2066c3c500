//! Cycle signs, switching and balance.
//!
//! All traversals use the same spanning forest: breadth-first from the lowest
//! unvisited vertex, neighbors in increasing id order. Fundamental cycles are listed
//! in the sorted order of their non-tree edges.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{Cycle, GraphError, Sign, SignedGraph, SwitchingFunction};

/// Deterministic BFS spanning forest.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    parent: Vec<Option<(usize, Sign)>>,
    depth: Vec<usize>,
    /// Non-tree edges `(u, v)` with `u < v`, sorted.
    non_tree: Vec<(usize, usize)>,
}

impl SpanningForest {
    pub fn new(g: &SignedGraph) -> Self {
        let n = g.order();
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            if depth[root] != usize::MAX {
                continue;
            }
            depth[root] = 0;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for &(y, s) in g.neighbors(x) {
                    if depth[y] == usize::MAX {
                        depth[y] = depth[x] + 1;
                        parent[y] = Some((x, s));
                        queue.push_back(y);
                    }
                }
            }
        }
        let non_tree = g
            .edges()
            .iter()
            .filter(|e| {
                parent[e.v].map(|p| p.0) != Some(e.u) && parent[e.u].map(|p| p.0) != Some(e.v)
            })
            .map(|e| (e.u, e.v))
            .collect();
        SpanningForest {
            parent,
            depth,
            non_tree,
        }
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v].map(|p| p.0)
    }

    pub fn is_tree_edge(&self, u: usize, v: usize) -> bool {
        self.parent(u) == Some(v) || self.parent(v) == Some(u)
    }

    pub fn non_tree_edges(&self) -> &[(usize, usize)] {
        &self.non_tree
    }

    /// The cycle closed by the non-tree edge `(u, v)`: tree path `u .. lca .. v`.
    pub fn cycle_through(&self, u: usize, v: usize) -> Cycle {
        let (mut a, mut b) = (u, v);
        let mut left = vec![a];
        let mut right = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent(a).expect("non-root has a parent");
            left.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent(b).expect("non-root has a parent");
            right.push(b);
        }
        while a != b {
            a = self
                .parent(a)
                .expect("distinct vertices in one tree share an ancestor");
            b = self
                .parent(b)
                .expect("distinct vertices in one tree share an ancestor");
            left.push(a);
            right.push(b);
        }
        right.pop();
        left.extend(right.into_iter().rev());
        Cycle::new_unchecked(left)
    }

    /// `theta` making every tree edge positive, `+` at each root.
    pub fn tree_gauge(&self, g: &SignedGraph) -> SwitchingFunction {
        let n = g.order();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| self.depth[v]);
        let mut theta = vec![Sign::Positive; n];
        for v in order {
            if let Some((p, s)) = self.parent[v] {
                theta[v] = theta[p] * s;
            }
        }
        SwitchingFunction::new(theta)
    }
}

/// One cycle per non-tree edge of the canonical spanning forest.
pub fn fundamental_cycles(g: &SignedGraph) -> Vec<Cycle> {
    let forest = SpanningForest::new(g);
    forest
        .non_tree_edges()
        .iter()
        .map(|&(u, v)| forest.cycle_through(u, v))
        .collect()
}

/// Product of the edge signs along `c`.
pub fn cycle_sign(g: &SignedGraph, c: &Cycle) -> Result<Sign, GraphError> {
    c.validate(g)?;
    Ok(cycle_sign_unchecked(g, c))
}

pub(crate) fn cycle_sign_unchecked(g: &SignedGraph, c: &Cycle) -> Sign {
    c.edge_pairs()
        .map(|(a, b)| g.sign_of(a, b).expect("cycle edge present"))
        .product()
}

/// `sigma'(uv) = theta(u) sigma(uv) theta(v)`.
pub fn switch(g: &SignedGraph, theta: &SwitchingFunction) -> Result<SignedGraph, GraphError> {
    if theta.len() != g.order() {
        return Err(GraphError::LengthMismatch {
            expected: g.order(),
            found: theta.len(),
        });
    }
    Ok(g.map_signs(|e| theta.get(e.u) * e.sign * theta.get(e.v)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceWitness {
    /// Switching by this function makes every edge positive.
    Balanced(SwitchingFunction),
    /// A negative cycle.
    Unbalanced(Cycle),
}

impl BalanceWitness {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceWitness::Balanced(_))
    }

    /// Re-evaluates the witness against `g`.
    pub fn validates(&self, g: &SignedGraph) -> bool {
        match self {
            BalanceWitness::Balanced(theta) => switch(g, theta).is_ok_and(|h| h.is_all_positive()),
            BalanceWitness::Unbalanced(c) => cycle_sign(g, c) == Ok(Sign::Negative),
        }
    }
}

/// Balanced with a switching witness, or unbalanced with a negative fundamental cycle.
pub fn is_balanced(g: &SignedGraph) -> BalanceWitness {
    let forest = SpanningForest::new(g);
    let theta = forest.tree_gauge(g);
    for &(u, v) in forest.non_tree_edges() {
        let s = g.sign_of(u, v).expect("non-tree edge present");
        if (theta.get(u) * s * theta.get(v)).is_negative() {
            return BalanceWitness::Unbalanced(forest.cycle_through(u, v));
        }
    }
    BalanceWitness::Balanced(theta)
}

/// `theta` with `switch(g1, theta) == g2`, if the two signatures are switching equivalent.
pub fn switching_equivalent(
    g1: &SignedGraph,
    g2: &SignedGraph,
) -> Result<Option<SwitchingFunction>, GraphError> {
    if !g1.same_underlying(g2) {
        return Err(GraphError::UnderlyingMismatch);
    }
    // g2 = g1^theta  iff  (g1 * g2)^theta is all positive; fundamental cycle signs of
    // the product compare the two signatures cycle by cycle.
    let product = g1.map_signs(|e| e.sign * g2.sign_of(e.u, e.v).expect("same edge set"));
    Ok(match is_balanced(&product) {
        BalanceWitness::Balanced(theta) => Some(theta),
        BalanceWitness::Unbalanced(_) => None,
    })
}
