//! Nullity-preserving transformations.
//!
//! * deleting a pendant vertex together with its neighbor;
//! * rewiring across a special path `v1 v2 v3` whose edges are signed `(-, +)`;
//! * contracting such a path to a single vertex.
//!
//! Any special path can be brought to the `(-, +)` pattern by switching at `v1`
//! and/or `v3`, see [`normalize_special_path`].

use serde::Serialize;
use thiserror::Error;

use crate::balance::switch;
use crate::graph::{GraphError, Sign, SignedGraph, SwitchingFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("({0}, {1}) is not a pendant pair")]
    NotPendantPair(usize, usize),
    #[error("{0:?} is not a special path")]
    NotSpecialPath(SpecialPath),
    #[error("special path {path:?} is signed ({first}, {second}), expected (-, +)")]
    NotNormalized {
        path: SpecialPath,
        first: Sign,
        second: Sign,
    },
    #[error("vertex {0} is not a neighbor of v1 other than v2")]
    IneligibleVertex(usize),
    #[error("edge {0}-{1} already present")]
    EdgeExists(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A path `v1 v2 v3` with `d(v2) = 2`, `v1 v3` not an edge, and no common neighbor of
/// `v1` and `v3` besides `v2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SpecialPath {
    pub v1: usize,
    pub v2: usize,
    pub v3: usize,
}

impl SpecialPath {
    pub fn new(v1: usize, v2: usize, v3: usize) -> Self {
        SpecialPath { v1, v2, v3 }
    }

    pub fn reversed(self) -> Self {
        SpecialPath {
            v1: self.v3,
            v2: self.v2,
            v3: self.v1,
        }
    }

    pub fn is_special_in(&self, g: &SignedGraph) -> bool {
        let SpecialPath { v1, v2, v3 } = *self;
        let n = g.order();
        if v1 >= n || v2 >= n || v3 >= n || v1 == v3 {
            return false;
        }
        g.degree(v2) == 2
            && g.has_edge(v1, v2)
            && g.has_edge(v2, v3)
            && !g.has_edge(v1, v3)
            && g.neighbors(v1)
                .iter()
                .all(|&(w, _)| w == v2 || !g.has_edge(w, v3))
    }

    fn check(&self, g: &SignedGraph) -> Result<(), ReductionError> {
        if self.is_special_in(g) {
            Ok(())
        } else {
            Err(ReductionError::NotSpecialPath(*self))
        }
    }

    /// Signs of `v1 v2` and `v2 v3`.
    pub fn sign_pattern(&self, g: &SignedGraph) -> (Sign, Sign) {
        let s12 = g.sign_of(self.v1, self.v2).expect("path edge present");
        let s23 = g.sign_of(self.v2, self.v3).expect("path edge present");
        (s12, s23)
    }

    fn check_normalized(&self, g: &SignedGraph) -> Result<(), ReductionError> {
        self.check(g)?;
        match self.sign_pattern(g) {
            (Sign::Negative, Sign::Positive) => Ok(()),
            (first, second) => Err(ReductionError::NotNormalized {
                path: *self,
                first,
                second,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "step")]
pub enum ReductionStep {
    PendantDeletion {
        pendant: usize,
        neighbor: usize,
    },
    Switching {
        theta: SwitchingFunction,
    },
    /// `relabel[old]` is the id after contraction, `None` for the two freed vertices.
    PathContraction {
        path: SpecialPath,
        new_vertex: usize,
        relabel: Vec<Option<usize>>,
    },
}

/// Ordered log of reduction steps; vertex ids refer to the graph current at each step.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies every step to `initial` in order.
    pub fn replay(&self, initial: &SignedGraph) -> Result<SignedGraph, ReductionError> {
        let mut g = initial.clone();
        for step in &self.steps {
            g = match step {
                ReductionStep::PendantDeletion { pendant, neighbor } => {
                    delete_pendant_pair(&g, *pendant, *neighbor)?
                }
                ReductionStep::Switching { theta } => switch(&g, theta)?,
                ReductionStep::PathContraction { path, .. } => contract_special_path(&g, *path)?,
            };
        }
        Ok(g)
    }
}

/// Pairs `(v, u)` with `d(v) = 1` and `u` the neighbor of `v`, sorted by `v`.
pub fn find_pendants(g: &SignedGraph) -> Vec<(usize, usize)> {
    (0..g.order())
        .filter(|&v| g.degree(v) == 1)
        .map(|v| (v, g.neighbors(v)[0].0))
        .collect()
}

/// Induced subgraph on `V \ {v, u}`, ids compacted in order.
pub fn delete_pendant_pair(
    g: &SignedGraph,
    v: usize,
    u: usize,
) -> Result<SignedGraph, ReductionError> {
    if v >= g.order() || g.degree(v) != 1 || g.neighbors(v)[0].0 != u {
        return Err(ReductionError::NotPendantPair(v, u));
    }
    Ok(g.remove_vertices(&[v, u]))
}

/// Every special path, in both orientations, sorted lexicographically.
pub fn find_special_paths(g: &SignedGraph) -> Vec<SpecialPath> {
    let mut out = Vec::new();
    for v2 in (0..g.order()).filter(|&v| g.degree(v) == 2) {
        let (a, b) = (g.neighbors(v2)[0].0, g.neighbors(v2)[1].0);
        for p in [SpecialPath::new(a, v2, b), SpecialPath::new(b, v2, a)] {
            if p.is_special_in(g) {
                out.push(p);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Switches at `v1` and/or `v3` so the path reads `(-, +)`.
pub fn normalize_special_path(
    g: &SignedGraph,
    p: SpecialPath,
) -> Result<(SignedGraph, SwitchingFunction), ReductionError> {
    p.check(g)?;
    let (s12, s23) = p.sign_pattern(g);
    let mut flipped = Vec::new();
    if s12 == Sign::Positive {
        flipped.push(p.v1);
    }
    if s23 == Sign::Negative {
        flipped.push(p.v3);
    }
    let theta = SwitchingFunction::flipping(g.order(), &flipped);
    Ok((switch(g, &theta)?, theta))
}

/// Replaces the edge `v v1` by `v v3` carrying the same sign.
pub fn rewire_special_path(
    g: &SignedGraph,
    p: SpecialPath,
    v: usize,
) -> Result<SignedGraph, ReductionError> {
    p.check_normalized(g)?;
    if v == p.v2 || v >= g.order() || !g.has_edge(v, p.v1) {
        return Err(ReductionError::IneligibleVertex(v));
    }
    if g.has_edge(v, p.v3) {
        return Err(ReductionError::EdgeExists(v, p.v3));
    }
    let edges = g.edges().iter().map(|e| {
        if (e.u, e.v) == (v.min(p.v1), v.max(p.v1)) {
            (v, p.v3, e.sign)
        } else {
            (e.u, e.v, e.sign)
        }
    });
    Ok(SignedGraph::new(g.order(), edges)?)
}

/// Old-to-new ids when `v1 v2 v3` collapses onto the smallest of the three ids.
pub fn contraction_relabel(order: usize, p: SpecialPath) -> (usize, Vec<Option<usize>>) {
    let keep = p.v1.min(p.v2).min(p.v3);
    let mut relabel = vec![None; order];
    let mut next = 0;
    for (old, slot) in relabel.iter_mut().enumerate() {
        if old == keep || (old != p.v1 && old != p.v2 && old != p.v3) {
            *slot = Some(next);
            next += 1;
        }
    }
    (relabel[keep].expect("kept id survives"), relabel)
}

/// Contracts the normalized path `v1 v2 v3` to one vertex adjacent to
/// `(N(v1) ∪ N(v3)) \ {v2}` with the original signs. Order drops by 2.
pub fn contract_special_path(
    g: &SignedGraph,
    p: SpecialPath,
) -> Result<SignedGraph, ReductionError> {
    p.check_normalized(g)?;
    let (merged, relabel) = contraction_relabel(g.order(), p);
    let on_path = |x: usize| x == p.v1 || x == p.v2 || x == p.v3;
    let mut edges = Vec::with_capacity(g.size() - 2);
    for e in g.edges() {
        match (on_path(e.u), on_path(e.v)) {
            (false, false) => edges.push((relabel[e.u].unwrap(), relabel[e.v].unwrap(), e.sign)),
            (true, false) => edges.push((merged, relabel[e.v].unwrap(), e.sign)),
            (false, true) => edges.push((relabel[e.u].unwrap(), merged, e.sign)),
            (true, true) => {}
        }
    }
    Ok(SignedGraph::new(g.order() - 2, edges)?)
}

/// Normalizes `p` then contracts it, recording both steps.
pub fn contract_with_normalization(
    g: &SignedGraph,
    p: SpecialPath,
) -> Result<(SignedGraph, ReductionTrace), ReductionError> {
    let (normalized, theta) = normalize_special_path(g, p)?;
    let contracted = contract_special_path(&normalized, p)?;
    let (new_vertex, relabel) = contraction_relabel(g.order(), p);
    let mut trace = ReductionTrace::default();
    if !theta.is_identity() {
        trace.steps.push(ReductionStep::Switching { theta });
    }
    trace.steps.push(ReductionStep::PathContraction {
        path: p,
        new_vertex,
        relabel,
    });
    Ok((contracted, trace))
}

/// Deletes the least pendant pair until none remain.
pub fn reduce(g: &SignedGraph) -> (SignedGraph, ReductionTrace) {
    let mut current = g.clone();
    let mut trace = ReductionTrace::default();
    while let Some(&(pendant, neighbor)) = find_pendants(&current).first() {
        current = current.remove_vertices(&[pendant, neighbor]);
        trace
            .steps
            .push(ReductionStep::PendantDeletion { pendant, neighbor });
    }
    (current, trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nullity::nullity;
    use Sign::{Negative as N, Positive as P};

    fn path(n: usize) -> SignedGraph {
        SignedGraph::unsigned(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap()
    }

    fn cycle(n: usize, negative: &[usize]) -> SignedGraph {
        SignedGraph::new(
            n,
            (0..n).map(|i| (i, (i + 1) % n, if negative.contains(&i) { N } else { P })),
        )
        .unwrap()
    }

    fn triangle_with_pendant() -> SignedGraph {
        SignedGraph::unsigned(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap()
    }

    fn theta221() -> SignedGraph {
        SignedGraph::unsigned(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap()
    }

    #[test]
    fn pendant_examples() {
        assert!(find_pendants(&cycle(5, &[])).is_empty());
        assert_eq!(find_pendants(&path(2)), vec![(0, 1), (1, 0)]);
        assert_eq!(find_pendants(&triangle_with_pendant()), vec![(3, 0)]);
    }

    #[test]
    fn delete_pendant_examples() {
        let p4 = path(4);
        let h = delete_pendant_pair(&p4, 0, 1).unwrap();
        assert_eq!(h, path(2));
        assert_eq!((nullity(&p4), nullity(&h)), (0, 0));

        let star = SignedGraph::unsigned(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let h = delete_pendant_pair(&star, 1, 0).unwrap();
        assert_eq!(h, SignedGraph::empty(2));
        assert_eq!((nullity(&star), nullity(&h)), (2, 2));

        let t = triangle_with_pendant();
        let h = delete_pendant_pair(&t, 3, 0).unwrap();
        assert_eq!(h, path(2));
        assert_eq!((nullity(&t), nullity(&h)), (0, 0));

        assert_eq!(
            delete_pendant_pair(&t, 1, 0),
            Err(ReductionError::NotPendantPair(1, 0))
        );
        assert_eq!(
            delete_pendant_pair(&t, 3, 1),
            Err(ReductionError::NotPendantPair(3, 1))
        );
    }

    #[test]
    fn special_path_examples() {
        assert!(find_special_paths(&cycle(4, &[])).is_empty());
        let c6 = find_special_paths(&cycle(6, &[]));
        assert_eq!(c6.len(), 12);
        for v2 in 0..6 {
            let (a, b) = ((v2 + 5) % 6, (v2 + 1) % 6);
            assert!(c6.contains(&SpecialPath::new(a, v2, b)));
            assert!(c6.contains(&SpecialPath::new(b, v2, a)));
        }
        assert!(find_special_paths(&theta221()).is_empty());
    }

    #[test]
    fn normalize_examples() {
        let p = SpecialPath::new(0, 1, 2);
        let done = SignedGraph::new(3, [(0, 1, N), (1, 2, P)]).unwrap();
        let (h, theta) = normalize_special_path(&done, p).unwrap();
        assert!(theta.is_identity());
        assert_eq!(h, done);

        let pp = SignedGraph::new(3, [(0, 1, P), (1, 2, P)]).unwrap();
        let (h, theta) = normalize_special_path(&pp, p).unwrap();
        assert_eq!(theta, SwitchingFunction::flipping(3, &[0]));
        assert_eq!(p.sign_pattern(&h), (N, P));

        let nn = SignedGraph::new(3, [(0, 1, N), (1, 2, N)]).unwrap();
        let (h, theta) = normalize_special_path(&nn, p).unwrap();
        assert_eq!(theta, SwitchingFunction::flipping(3, &[2]));
        assert_eq!(p.sign_pattern(&h), (N, P));

        let pn = SignedGraph::new(3, [(0, 1, P), (1, 2, N)]).unwrap();
        let (h, theta) = normalize_special_path(&pn, p).unwrap();
        assert_eq!(theta, SwitchingFunction::flipping(3, &[0, 2]));
        assert_eq!(p.sign_pattern(&h), (N, P));

        assert!(normalize_special_path(&theta221(), SpecialPath::new(0, 1, 2)).is_err());
    }

    #[test]
    fn rewire_on_p5() {
        // 0-1-2-3-4, path 1-2-3 normalized; far neighbor of v1 = 0
        let g = SignedGraph::new(5, [(0, 1, N), (1, 2, N), (2, 3, P), (3, 4, P)]).unwrap();
        let p = SpecialPath::new(1, 2, 3);
        let h = rewire_special_path(&g, p, 0).unwrap();
        assert_eq!(
            h,
            SignedGraph::new(5, [(0, 3, N), (1, 2, N), (2, 3, P), (3, 4, P)]).unwrap()
        );
        assert_eq!(nullity(&g), nullity(&h));
        assert_eq!(nullity(&g), 1);
    }

    #[test]
    fn rewire_on_c6() {
        let g = cycle(6, &[0]); // edge 01 negative
                                // v1=0, v2=1, v3=2 reads (-, +)
        let p = SpecialPath::new(0, 1, 2);
        let h = rewire_special_path(&g, p, 5).unwrap();
        // C4 on 2-3-4-5 plus pendant path 2-1-0
        assert!(h.has_edge(5, 2) && !h.has_edge(5, 0));
        assert_eq!(h.degree(0), 1);
        assert_eq!(nullity(&g), nullity(&h));
    }

    #[test]
    fn rewire_on_infinity_graph() {
        // two triangles 0-1-2 and 5-6-7 joined by path 2-3-4-5
        let g = SignedGraph::new(
            8,
            [
                (0, 1, P),
                (1, 2, P),
                (0, 2, N),
                (2, 3, N),
                (3, 4, P),
                (4, 5, P),
                (5, 6, P),
                (6, 7, P),
                (5, 7, P),
            ],
        )
        .unwrap();
        let p = SpecialPath::new(2, 3, 4);
        assert!(find_special_paths(&g).contains(&p));
        for v in [0, 1] {
            let h = rewire_special_path(&g, p, v).unwrap();
            assert_eq!(nullity(&g), nullity(&h));
        }
        assert_eq!(
            rewire_special_path(&g, p, 5),
            Err(ReductionError::IneligibleVertex(5))
        );
        assert_eq!(
            rewire_special_path(&g, p, 3),
            Err(ReductionError::IneligibleVertex(3))
        );
        let un = switch(&g, &SwitchingFunction::flipping(8, &[2])).unwrap();
        assert!(matches!(
            rewire_special_path(&un, p, 0),
            Err(ReductionError::NotNormalized { .. })
        ));
    }

    #[test]
    fn contract_examples() {
        let p3 = SignedGraph::new(3, [(0, 1, N), (1, 2, P)]).unwrap();
        let h = contract_special_path(&p3, SpecialPath::new(0, 1, 2)).unwrap();
        assert_eq!(h, SignedGraph::empty(1));
        assert_eq!((nullity(&p3), nullity(&h)), (1, 1));

        let c6 = cycle(6, &[0]);
        let h = contract_special_path(&c6, SpecialPath::new(0, 1, 2)).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.size(), 4);
        // the negative edge sat on the contracted path: unbalanced C6 becomes balanced C4
        assert!(h.is_all_positive());
        assert_eq!(nullity(&c6), 2);
        assert_eq!(nullity(&h), 2);

        // Θ(3,2,1) has adjacent ends, so none of its paths is special
        let theta = SignedGraph::new(
            5,
            [
                (0, 1, P),
                (0, 2, P),
                (1, 2, P),
                (0, 3, N),
                (3, 4, P),
                (1, 4, P),
            ],
        )
        .unwrap();
        assert!(find_special_paths(&theta).is_empty());
        assert!(contract_special_path(&theta, SpecialPath::new(0, 3, 4)).is_err());
    }

    #[test]
    fn contract_theta_to_k112() {
        // Θ(3,2,2) with ends 0 and 1: paths 0-2-1, 0-3-1, 0-4-5-1. Contracting 4-5-1
        // (the middle vertex 5 has degree 2) leaves K4 minus an edge.
        let g = SignedGraph::new(
            6,
            [
                (0, 2, P),
                (1, 2, P),
                (0, 3, P),
                (1, 3, P),
                (0, 4, P),
                (4, 5, N),
                (5, 1, P),
            ],
        )
        .unwrap();
        let p = SpecialPath::new(4, 5, 1);
        assert!(p.is_special_in(&g));
        let h = contract_special_path(&g, p).unwrap();
        assert_eq!((h.order(), h.size()), (4, 5));
        assert_eq!(nullity(&g), nullity(&h));
    }

    #[test]
    fn rewire_then_pendant_equals_contraction() {
        let g = SignedGraph::new(
            7,
            [
                (0, 1, N),
                (0, 2, P),
                (0, 3, N),
                (3, 4, P),
                (4, 5, P),
                (5, 6, N),
                (6, 0, P),
                (2, 6, P),
            ],
        )
        .unwrap();
        for p in find_special_paths(&g) {
            let (normalized, _) = normalize_special_path(&g, p).unwrap();
            let contracted = contract_special_path(&normalized, p).unwrap();
            let mut h = normalized.clone();
            let outer: Vec<usize> = normalized
                .neighbors(p.v1)
                .iter()
                .map(|&(w, _)| w)
                .filter(|&w| w != p.v2)
                .collect();
            for v in outer {
                h = rewire_special_path(&h, p, v).unwrap();
            }
            let h = delete_pendant_pair(&h, p.v1, p.v2).unwrap();
            // h keeps v3 at its compacted slot; contraction puts the merged vertex at the min id
            let mut to_contracted = vec![0; h.order()];
            let (_, relabel) = contraction_relabel(g.order(), p);
            let merged = relabel[p.v1.min(p.v2).min(p.v3)].unwrap();
            let survivors: Vec<usize> =
                (0..g.order()).filter(|&x| x != p.v1 && x != p.v2).collect();
            for (slot, &old) in survivors.iter().enumerate() {
                to_contracted[slot] = if old == p.v3 {
                    merged
                } else {
                    relabel[old].unwrap()
                };
            }
            assert_eq!(h.relabel(&to_contracted), contracted, "path {p:?}");
            assert_eq!(nullity(&g), nullity(&contracted));
        }
    }

    #[test]
    fn reduce_examples() {
        let tree =
            SignedGraph::unsigned(7, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        let (h, trace) = reduce(&tree);
        assert_eq!(h.size(), 0);
        assert_eq!(h.order(), nullity(&tree));
        assert_eq!(trace.replay(&tree).unwrap(), h);

        let c5 = cycle(5, &[]);
        let (h, trace) = reduce(&c5);
        assert_eq!(h, c5);
        assert!(trace.is_empty());

        let t = triangle_with_pendant();
        let first = delete_pendant_pair(&t, 3, 0).unwrap();
        assert_eq!(first, path(2));
        // the leftover K2 is itself a pendant pair
        let (h, trace) = reduce(&t);
        assert_eq!(h, SignedGraph::empty(0));
        assert_eq!(
            trace.steps,
            vec![
                ReductionStep::PendantDeletion {
                    pendant: 3,
                    neighbor: 0
                },
                ReductionStep::PendantDeletion {
                    pendant: 0,
                    neighbor: 1
                },
            ]
        );
    }

    #[test]
    fn traced_contraction_replays() {
        let g = cycle(6, &[]);
        let p = SpecialPath::new(0, 1, 2);
        let (h, trace) = contract_with_normalization(&g, p).unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace.replay(&g).unwrap(), h);
        assert_eq!(nullity(&g), nullity(&h));
    }
}
