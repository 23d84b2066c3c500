//! Structural recognizers for low-rank signed graphs and bicyclic shapes.
//!
//! A signed graph has rank 2 exactly when its non-isolated part is a balanced complete
//! bipartite graph, and rank 3 exactly when its non-isolated part is complete
//! tripartite with the rows of each part equal up to sign. Equivalently, after a
//! switching every vertex of a part has the same positive and the same negative
//! neighborhood. Both recognizers return a certificate that can be re-checked
//! independently of the rank kernel.

use serde::Serialize;
use thiserror::Error;

use crate::balance::{cycle_sign_unchecked, is_balanced, switch, BalanceWitness};
use crate::graph::{Cycle, Sign, SignedGraph, SwitchingFunction};
use crate::nullity::nullity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("graph is not bicyclic")]
    NotBicyclic,
    #[error("graph is balanced")]
    Balanced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MismatchReason {
    Edgeless,
    NotCompleteMultipartite,
    WrongPartCount,
    Unbalanced,
    NeighborhoodMismatch,
}

/// Positive and negative neighbors of one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedNeighborhood {
    pub vertex: usize,
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl SignedNeighborhood {
    fn of(g: &SignedGraph, vertex: usize) -> Self {
        let pick = |s: Sign| {
            g.neighbors(vertex)
                .iter()
                .filter(|n| n.1 == s)
                .map(|n| n.0)
                .collect()
        };
        SignedNeighborhood {
            vertex,
            positive: pick(Sign::Positive),
            negative: pick(Sign::Negative),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Certificate {
    /// Two parts; switching by `theta` makes the graph all-positive.
    Bipartite {
        parts: Vec<Vec<usize>>,
        isolated: Vec<usize>,
        theta: SwitchingFunction,
    },
    /// Three parts with the raw signed neighborhoods of every part member. Switching by
    /// `theta` makes neighborhoods identical within each part.
    Tripartite {
        parts: Vec<Vec<usize>>,
        isolated: Vec<usize>,
        neighborhoods: Vec<Vec<SignedNeighborhood>>,
        theta: SwitchingFunction,
    },
}

impl Certificate {
    /// Re-checks the certificate against `g` without computing any rank.
    pub fn validates(&self, g: &SignedGraph) -> bool {
        match self {
            Certificate::Bipartite {
                parts,
                isolated,
                theta,
            } => {
                parts.len() == 2
                    && is_partition(g, parts, isolated)
                    && is_complete_multipartite_on(g, parts)
                    && switch(g, theta).is_ok_and(|h| h.is_all_positive())
            }
            Certificate::Tripartite {
                parts,
                isolated,
                neighborhoods,
                theta,
            } => {
                if parts.len() != 3
                    || !is_partition(g, parts, isolated)
                    || !is_complete_multipartite_on(g, parts)
                {
                    return false;
                }
                let raw_ok = parts.iter().zip(neighborhoods).all(|(part, hoods)| {
                    part.len() == hoods.len()
                        && part
                            .iter()
                            .zip(hoods)
                            .all(|(&v, h)| *h == SignedNeighborhood::of(g, v))
                });
                let Ok(h) = switch(g, theta) else {
                    return false;
                };
                raw_ok
                    && parts.iter().all(|part| {
                        let first = SignedNeighborhood::of(&h, part[0]);
                        part.iter().all(|&v| {
                            let other = SignedNeighborhood::of(&h, v);
                            other.positive == first.positive && other.negative == first.negative
                        })
                    })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankClassVerdict {
    pub matches: bool,
    pub certificate: Option<Certificate>,
    pub reason: Option<MismatchReason>,
}

impl RankClassVerdict {
    fn mismatch(reason: MismatchReason) -> Self {
        RankClassVerdict {
            matches: false,
            certificate: None,
            reason: Some(reason),
        }
    }

    fn matched(certificate: Certificate) -> Self {
        RankClassVerdict {
            matches: true,
            certificate: Some(certificate),
            reason: None,
        }
    }
}

fn is_partition(g: &SignedGraph, parts: &[Vec<usize>], isolated: &[usize]) -> bool {
    let mut seen = vec![false; g.order()];
    for &v in parts.iter().flatten().chain(isolated) {
        if v >= g.order() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    seen.iter().all(|&s| s)
        && parts.iter().all(|p| !p.is_empty())
        && isolated.iter().all(|&v| g.is_isolated(v))
}

fn is_complete_multipartite_on(g: &SignedGraph, parts: &[Vec<usize>]) -> bool {
    let mut part_of = vec![usize::MAX; g.order()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            part_of[v] = i;
        }
    }
    let active: Vec<usize> = parts.iter().flatten().copied().collect();
    active.iter().all(|&u| {
        active
            .iter()
            .all(|&v| u == v || g.has_edge(u, v) == (part_of[u] != part_of[v]))
    })
}

/// Parts of the non-isolated subgraph if it is complete multipartite: the connected
/// components of its complement, each sorted, ordered by least member.
pub fn multipartite_parts(g: &SignedGraph) -> Option<Vec<Vec<usize>>> {
    let active = g.non_isolated_vertices();
    let mut part_of = vec![usize::MAX; g.order()];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &root in &active {
        if part_of[root] != usize::MAX {
            continue;
        }
        let id = parts.len();
        part_of[root] = id;
        let mut members = vec![root];
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in &active {
                if y != x && part_of[y] == usize::MAX && !g.has_edge(x, y) {
                    part_of[y] = id;
                    members.push(y);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        parts.push(members);
    }
    is_complete_multipartite_on(g, &parts).then_some(parts)
}

fn isolated_vertices(g: &SignedGraph) -> Vec<usize> {
    (0..g.order()).filter(|&v| g.is_isolated(v)).collect()
}

/// Matches iff the non-isolated part is a balanced complete bipartite graph.
pub fn recognize_rank2(g: &SignedGraph) -> RankClassVerdict {
    if g.size() == 0 {
        return RankClassVerdict::mismatch(MismatchReason::Edgeless);
    }
    let Some(parts) = multipartite_parts(g) else {
        return RankClassVerdict::mismatch(MismatchReason::NotCompleteMultipartite);
    };
    if parts.len() != 2 {
        return RankClassVerdict::mismatch(MismatchReason::WrongPartCount);
    }
    match is_balanced(g) {
        BalanceWitness::Balanced(theta) => RankClassVerdict::matched(Certificate::Bipartite {
            parts,
            isolated: isolated_vertices(g),
            theta,
        }),
        BalanceWitness::Unbalanced(_) => RankClassVerdict::mismatch(MismatchReason::Unbalanced),
    }
}

/// Matches iff the non-isolated part is complete tripartite and, within each part,
/// every vertex's signed row equals the first member's row up to a global sign.
pub fn recognize_rank3(g: &SignedGraph) -> RankClassVerdict {
    if g.size() == 0 {
        return RankClassVerdict::mismatch(MismatchReason::Edgeless);
    }
    let Some(parts) = multipartite_parts(g) else {
        return RankClassVerdict::mismatch(MismatchReason::NotCompleteMultipartite);
    };
    if parts.len() != 3 {
        return RankClassVerdict::mismatch(MismatchReason::WrongPartCount);
    }
    let mut theta = vec![Sign::Positive; g.order()];
    for part in &parts {
        let lead = part[0];
        for &v in &part[1..] {
            // same neighbor set (all vertices outside the part), compare signs
            let mut relative = g
                .neighbors(v)
                .iter()
                .zip(g.neighbors(lead))
                .map(|(a, b)| a.1 * b.1);
            let first = relative.next().expect("non-isolated");
            if relative.any(|s| s != first) {
                return RankClassVerdict::mismatch(MismatchReason::NeighborhoodMismatch);
            }
            theta[v] = first;
        }
    }
    let neighborhoods = parts
        .iter()
        .map(|part| part.iter().map(|&v| SignedNeighborhood::of(g, v)).collect())
        .collect();
    RankClassVerdict::matched(Certificate::Tripartite {
        parts,
        isolated: isolated_vertices(g),
        neighborhoods,
        theta: SwitchingFunction::new(theta),
    })
}

/// With `Y = N(x)` and `X = V \ Y`: `X` is independent and every `X`-`Y` pair is
/// adjacent. Holds for every `x` whenever the rank is at most 3.
pub fn neighborhood_split_holds(g: &SignedGraph, x: usize) -> Result<bool, RecognizeError> {
    if x >= g.order() {
        return Err(RecognizeError::VertexOutOfRange(x));
    }
    if let Some(v) = (0..g.order()).find(|&v| g.is_isolated(v)) {
        return Err(RecognizeError::IsolatedVertex(v));
    }
    let in_y: Vec<bool> = (0..g.order()).map(|v| g.has_edge(x, v)).collect();
    let n = g.order();
    for a in (0..n).filter(|&a| !in_y[a]) {
        for (b, &b_in_y) in in_y.iter().enumerate() {
            if a != b && g.has_edge(a, b) == !b_in_y {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BaseKind {
    /// Two vertex-disjoint cycles joined by a path, or sharing one vertex.
    Infinity,
    /// Three internally disjoint paths with common ends.
    Theta,
}

/// Shape of the 2-core of a bicyclic graph.
///
/// `Infinity`: cycles of lengths `p <= q` joined by a path on `l` vertices (`l = 1`: the
/// cycles share a vertex). `Theta`: paths of lengths `p >= q >= l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BicyclicBase {
    pub kind: BaseKind,
    pub p: usize,
    pub q: usize,
    pub l: usize,
    pub base_vertices: Vec<usize>,
    /// `Infinity`: `[C_p, C_q]`. `Theta`: the cycles through path pairs `(p,q), (p,l), (q,l)`.
    pub cycles: Vec<Cycle>,
}

impl BicyclicBase {
    /// Vertex count of the base shape.
    pub fn shape_order(kind: BaseKind, p: usize, q: usize, l: usize) -> usize {
        match kind {
            BaseKind::Infinity => p + q + l - 2,
            BaseKind::Theta => p + q + l - 1,
        }
    }

    pub fn is_shape(&self, kind: BaseKind, p: usize, q: usize, l: usize) -> bool {
        (self.kind, self.p, self.q, self.l) == (kind, p, q, l)
    }

    /// Cycle lengths implied by the parameters, in the order of `cycles`.
    pub fn expected_cycle_lengths(&self) -> Vec<usize> {
        match self.kind {
            BaseKind::Infinity => vec![self.p, self.q],
            BaseKind::Theta => vec![self.p + self.q, self.p + self.l, self.q + self.l],
        }
    }

    /// Signs of the two base cycles and of their symmetric difference.
    pub fn balance_profile(&self, g: &SignedGraph) -> [Sign; 3] {
        let s: Vec<Sign> = self
            .cycles
            .iter()
            .map(|c| cycle_sign_unchecked(g, c))
            .collect();
        match self.kind {
            BaseKind::Infinity => [s[0], s[1], s[0] * s[1]],
            BaseKind::Theta => [s[0], s[1], s[2]],
        }
    }

    /// Short label such as `theta(2,2,1)` or `infinity(3,3,1)`.
    pub fn label(&self) -> String {
        let name = match self.kind {
            BaseKind::Infinity => "infinity",
            BaseKind::Theta => "theta",
        };
        format!("{name}({},{},{})", self.p, self.q, self.l)
    }
}

/// Walk from `start` through `first` along core vertices of degree 2 until a branch
/// vertex; returns the visited vertices including both ends.
fn walk(
    g: &SignedGraph,
    in_core: &[bool],
    core_degree: &[usize],
    start: usize,
    first: usize,
) -> Vec<usize> {
    let mut path = vec![start, first];
    let (mut prev, mut cur) = (start, first);
    while core_degree[cur] == 2 {
        let next = g
            .neighbors(cur)
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| in_core[w] && w != prev)
            .expect("core vertex of degree 2 has two core neighbors");
        path.push(next);
        (prev, cur) = (cur, next);
    }
    path
}

/// The ∞- or Θ-shaped 2-core of a bicyclic graph, `None` if `g` is not bicyclic.
pub fn bicyclic_base(g: &SignedGraph) -> Option<BicyclicBase> {
    if !g.is_bicyclic() {
        return None;
    }
    let n = g.order();
    let mut core_degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut in_core = vec![true; n];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| core_degree[v] == 1).collect();
    while let Some(v) = leaves.pop() {
        in_core[v] = false;
        for &(w, _) in g.neighbors(v) {
            if in_core[w] {
                core_degree[w] -= 1;
                if core_degree[w] == 1 {
                    leaves.push(w);
                }
            }
        }
    }
    let base_vertices: Vec<usize> = (0..n).filter(|&v| in_core[v]).collect();
    let branch: Vec<usize> = base_vertices
        .iter()
        .copied()
        .filter(|&v| core_degree[v] > 2)
        .collect();
    let core_neighbors = |v: usize| -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| in_core[w])
            .collect()
    };

    // closed walk a -> ... -> a becomes a cycle without the repeated end
    let as_cycle = |mut w: Vec<usize>| {
        w.pop();
        Cycle::new_unchecked(w)
    };
    // the two closed walks at `a` over one cycle, one per direction; keep one of each pair
    let loops_at = |a: usize| -> Vec<Vec<usize>> {
        let mut loops: Vec<Vec<usize>> = core_neighbors(a)
            .into_iter()
            .map(|x| walk(g, &in_core, &core_degree, a, x))
            .filter(|w| *w.last().unwrap() == a)
            .filter(|w| w[1] < w[w.len() - 2])
            .collect();
        loops.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
        loops
    };

    match branch.as_slice() {
        [a] => {
            let loops = loops_at(*a);
            debug_assert_eq!(loops.len(), 2);
            let (p, q) = (loops[0].len() - 1, loops[1].len() - 1);
            Some(BicyclicBase {
                kind: BaseKind::Infinity,
                p,
                q,
                l: 1,
                base_vertices,
                cycles: loops.into_iter().map(as_cycle).collect(),
            })
        }
        [a, b] => {
            let walks: Vec<Vec<usize>> = core_neighbors(*a)
                .into_iter()
                .map(|x| walk(g, &in_core, &core_degree, *a, x))
                .collect();
            if walks.iter().all(|w| *w.last().unwrap() == *b) {
                let mut walks = walks;
                walks.sort_by(|x, y| (y.len(), x).cmp(&(x.len(), y)));
                let len = |i: usize| walks[i].len() - 1;
                let join = |i: usize, j: usize| {
                    let mut c = walks[i].clone();
                    let back = &walks[j];
                    c.extend(back[1..back.len() - 1].iter().rev());
                    Cycle::new_unchecked(c)
                };
                Some(BicyclicBase {
                    kind: BaseKind::Theta,
                    p: len(0),
                    q: len(1),
                    l: len(2),
                    base_vertices,
                    cycles: vec![join(0, 1), join(0, 2), join(1, 2)],
                })
            } else {
                let bridge = walks
                    .iter()
                    .find(|w| *w.last().unwrap() == *b)
                    .expect("ends joined by a path");
                let l = bridge.len();
                let mut loops = loops_at(*a);
                loops.extend(loops_at(*b));
                loops.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
                let (p, q) = (loops[0].len() - 1, loops[1].len() - 1);
                Some(BicyclicBase {
                    kind: BaseKind::Infinity,
                    p,
                    q,
                    l,
                    base_vertices,
                    cycles: loops.into_iter().map(as_cycle).collect(),
                })
            }
        }
        _ => unreachable!("a bicyclic 2-core has one vertex of degree 4 or two of degree 3"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnbalancedBicyclicVerdict {
    pub bound_holds: bool,
    pub is_extremal: bool,
    pub nullity: usize,
    pub order: usize,
}

/// Unbalanced bicyclic graphs have nullity at most `n - 3`; equality exactly for the
/// bare `theta(2,2,1)` with both triangles negative.
pub fn unbalanced_bicyclic_verdict(
    g: &SignedGraph,
) -> Result<UnbalancedBicyclicVerdict, RecognizeError> {
    let base = bicyclic_base(g).ok_or(RecognizeError::NotBicyclic)?;
    if is_balanced(g).is_balanced() {
        return Err(RecognizeError::Balanced);
    }
    let eta = nullity(g);
    let n = g.order();
    let is_extremal = base.is_shape(BaseKind::Theta, 2, 2, 1) && base.base_vertices.len() == n && {
        let profile = base.balance_profile(g);
        // cycles[1] and cycles[2] are the two triangles
        profile[1].is_negative() && profile[2].is_negative()
    };
    Ok(UnbalancedBicyclicVerdict {
        bound_holds: eta + 3 <= n,
        is_extremal,
        nullity: eta,
        order: n,
    })
}
