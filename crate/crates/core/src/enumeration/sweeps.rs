//! Exhaustive verification sweeps.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use super::generate::{
    bicyclic_classes, connected_classes, labeled_tree, labeled_tree_count, SignatureClasses,
};
use super::{EnumerationError, SweepConfig, CONNECTED_SWEEP_MAX, CYCLE_SWEEP_MAX};
use crate::balance::{is_balanced, BalanceWitness};
use crate::format::to_graph_file;
use crate::graph::{Sign, SignedGraph};
use crate::nullity::{cycle_nullity_formula, forest_nullity_formula, nullity, rank};
use crate::recognizers::{
    neighborhood_split_holds, recognize_rank2, recognize_rank3, unbalanced_bicyclic_verdict,
};
use crate::reductions::{
    contract_special_path, contraction_relabel, delete_pendant_pair, find_pendants,
    find_special_paths, normalize_special_path, reduce, rewire_special_path, SpecialPath,
};

/// The statements that can be checked exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// Forest nullity is `n - 2 * matching number`.
    TreeNullity,
    /// Cycle nullity depends only on length mod 4 and balance.
    CycleNullity,
    /// Rank 2 iff balanced complete bipartite plus isolated vertices.
    Rank2,
    /// Rank 3 iff complete tripartite with rows equal up to sign per part.
    Rank3,
    /// A non-star graph with a pendant vertex has nullity at most `n - 4`.
    PendantBound,
    /// A bicyclic graph with a special path has nullity at most `n - 4`.
    SpecialPathBound,
    /// Unbalanced bicyclic graphs have nullity at most `n - 3`, with equality only for
    /// the doubly negative `theta(2,2,1)`.
    UnbalancedBicyclic,
    /// Pendant deletion and special-path contraction preserve nullity.
    ReductionInvariance,
}

const IDS: [(TheoremId, &str, &[&str]); 8] = [
    (
        TheoremId::TreeNullity,
        "tree-nullity",
        &["lemma2.1i", "lemma2.1(i)"],
    ),
    (
        TheoremId::CycleNullity,
        "cycle-nullity",
        &["lemma2.1ii", "lemma2.1iii", "lemma2.1(ii)", "lemma2.1(iii)"],
    ),
    (TheoremId::Rank2, "rank2", &["theorem2.3"]),
    (TheoremId::Rank3, "rank3", &["theorem2.4", "lemma2.2"]),
    (TheoremId::PendantBound, "pendant-bound", &["corollary2.6"]),
    (
        TheoremId::SpecialPathBound,
        "special-path-bound",
        &["corollary2.9"],
    ),
    (
        TheoremId::UnbalancedBicyclic,
        "unbalanced-bicyclic",
        &["theorem3.1"],
    ),
    (
        TheoremId::ReductionInvariance,
        "reduction-invariance",
        &["lemma2.5", "corollary2.8", "lemma2.7"],
    ),
];

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::TreeNullity,
        TheoremId::CycleNullity,
        TheoremId::Rank2,
        TheoremId::Rank3,
        TheoremId::PendantBound,
        TheoremId::SpecialPathBound,
        TheoremId::UnbalancedBicyclic,
        TheoremId::ReductionInvariance,
    ];

    pub fn name(self) -> &'static str {
        IDS.iter().find(|(id, _, _)| *id == self).unwrap().1
    }

    pub fn aliases(self) -> &'static [&'static str] {
        IDS.iter().find(|(id, _, _)| *id == self).unwrap().2
    }

    /// Smallest order at which the statement says anything.
    pub fn min_order(self) -> usize {
        match self {
            TheoremId::TreeNullity => 1,
            TheoremId::CycleNullity => 3,
            TheoremId::Rank2 | TheoremId::Rank3 => 1,
            TheoremId::PendantBound => 4,
            TheoremId::SpecialPathBound
            | TheoremId::UnbalancedBicyclic
            | TheoremId::ReductionInvariance => 4,
        }
    }

    /// Largest order allowed under `config`.
    pub fn max_order(self, config: &SweepConfig) -> usize {
        match self {
            TheoremId::CycleNullity => CYCLE_SWEEP_MAX,
            TheoremId::Rank2 | TheoremId::Rank3 => config.ceiling.min(CONNECTED_SWEEP_MAX),
            _ => config.ceiling,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = EnumerationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        IDS.iter()
            .find(|(_, name, aliases)| *name == key || aliases.contains(&key.as_str()))
            .map(|(id, _, _)| *id)
            .ok_or_else(|| EnumerationError::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// A counterexample, replayable from its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub order: usize,
    pub message: String,
    pub witness: Option<SignedGraph>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub orders_checked: Vec<usize>,
    pub instances_checked: u64,
    pub counters: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per-chunk accumulator; merging is commutative up to the final sort.
#[derive(Default)]
struct Tally {
    instances: u64,
    counters: BTreeMap<&'static str, u64>,
    violations: Vec<Violation>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        for (k, v) in other.counters {
            *self.counters.entry(k).or_default() += v;
        }
        self.violations.extend(other.violations);
        self
    }

    fn bump(&mut self, key: &'static str) {
        *self.counters.entry(key).or_default() += 1;
    }

    fn fail(&mut self, g: &SignedGraph, message: String) {
        self.violations.push(Violation {
            order: g.order(),
            message,
            witness: Some(g.clone()),
        });
    }

    fn check(&mut self, ok: bool, g: &SignedGraph, message: impl FnOnce() -> String) {
        if !ok {
            self.fail(g, message());
        }
    }
}

/// Runs the exhaustive check for `id` over every order in `orders`.
pub fn verify_theorem(
    id: TheoremId,
    orders: RangeInclusive<usize>,
    config: &SweepConfig,
) -> Result<TheoremReport, EnumerationError> {
    let (lo, hi) = (*orders.start(), *orders.end());
    if lo > hi {
        return Err(EnumerationError::BadParameters(format!(
            "empty order range {lo}..={hi}"
        )));
    }
    let cap = id.max_order(config);
    if hi > cap {
        return Err(EnumerationError::CeilingExceeded {
            order: hi,
            ceiling: cap,
        });
    }
    let started = Instant::now();
    let orders_checked: Vec<usize> = (lo.max(id.min_order())..=hi).collect();
    let tally = config.install(|| {
        orders_checked
            .iter()
            .fold(Tally::default(), |acc, &n| acc.merge(sweep_order(id, n)))
    })?;

    let mut violations = tally.violations;
    violations.sort_by_cached_key(|v| {
        (
            v.order,
            v.message.clone(),
            v.witness.as_ref().map(to_graph_file),
        )
    });
    Ok(TheoremReport {
        theorem: id,
        orders_checked,
        instances_checked: tally.instances,
        counters: tally
            .counters
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        violations,
        elapsed: started.elapsed(),
    })
}

/// Nullity invariance of every reduction over all bicyclic signed graphs in range.
pub fn reduction_consistency_sweep(
    orders: RangeInclusive<usize>,
    config: &SweepConfig,
) -> Result<TheoremReport, EnumerationError> {
    verify_theorem(TheoremId::ReductionInvariance, orders, config)
}

fn sweep_order(id: TheoremId, n: usize) -> Tally {
    match id {
        TheoremId::TreeNullity => (0..labeled_tree_count(n))
            .into_par_iter()
            .map(|i| check_tree(&labeled_tree(n, i)))
            .reduce(Tally::default, Tally::merge),
        TheoremId::CycleNullity => check_cycles(n),
        TheoremId::Rank2 | TheoremId::Rank3 => over_connected(n, |g, t| check_rank(id, g, t)),
        TheoremId::PendantBound => {
            let connected = if n <= CONNECTED_SWEEP_MAX {
                over_connected(n, check_pendant_bound)
            } else {
                Tally::default()
            };
            connected.merge(over_bicyclic(n, check_pendant_bound))
        }
        TheoremId::SpecialPathBound => over_bicyclic(n, check_special_path_bound),
        TheoremId::UnbalancedBicyclic => check_unbalanced_bicyclic(n),
        TheoremId::ReductionInvariance => over_bicyclic(n, check_reductions),
    }
}

fn over_signed(
    classes: Vec<SignedGraph>,
    check: impl Fn(&SignedGraph, &mut Tally) + Sync,
) -> Tally {
    classes
        .into_par_iter()
        .map(|underlying| {
            let mut tally = Tally::default();
            let reps = SignatureClasses::new(&underlying).expect("enumerated graphs are connected");
            for (_, g) in reps.iter() {
                tally.instances += 1;
                check(&g, &mut tally);
            }
            tally
        })
        .reduce(Tally::default, Tally::merge)
}

fn over_connected(n: usize, check: impl Fn(&SignedGraph, &mut Tally) + Sync) -> Tally {
    let classes = connected_classes(n).expect("order within the connected sweep cap");
    over_signed(classes.into_iter().map(|(_, g)| g).collect(), check)
}

fn over_bicyclic(n: usize, check: impl Fn(&SignedGraph, &mut Tally) + Sync) -> Tally {
    over_signed(
        bicyclic_classes(n).into_iter().map(|(_, g)| g).collect(),
        check,
    )
}

fn check_tree(t: &SignedGraph) -> Tally {
    let mut tally = Tally {
        instances: 1,
        ..Tally::default()
    };
    let formula = forest_nullity_formula(t);
    let kernel = nullity(t);
    tally.check(formula == Ok(kernel), t, || {
        format!("forest formula {formula:?} but kernel nullity {kernel}")
    });
    tally
}

fn signed_cycle(n: usize, balanced: bool) -> SignedGraph {
    SignedGraph::new(
        n,
        (0..n).map(|i| (i, (i + 1) % n, Sign::from_parity(i == 0 && !balanced))),
    )
    .expect("cycle on n >= 3 vertices")
}

fn check_cycles(n: usize) -> Tally {
    let mut tally = Tally::default();
    for balanced in [true, false] {
        let c = signed_cycle(n, balanced);
        tally.instances += 1;
        let formula = cycle_nullity_formula(n, balanced);
        let kernel = nullity(&c);
        tally.check(formula == Ok(kernel), &c, || {
            format!("cycle formula {formula:?} but kernel nullity {kernel} (balanced: {balanced})")
        });
        if kernel == 2 {
            tally.bump("nullity_two");
        }
    }
    tally
}

fn check_rank(id: TheoremId, g: &SignedGraph, tally: &mut Tally) {
    let r = rank(g);
    let (target, verdict, key) = match id {
        TheoremId::Rank2 => (2, recognize_rank2(g), "rank2_matches"),
        _ => (3, recognize_rank3(g), "rank3_matches"),
    };
    tally.check(verdict.matches == (r == target), g, || {
        format!("recognizer says {} but rank is {r}", verdict.matches)
    });
    if verdict.matches {
        tally.bump(key);
        let valid = verdict.certificate.as_ref().is_some_and(|c| c.validates(g));
        tally.check(valid, g, || "certificate does not revalidate".to_string());
    }
    if id == TheoremId::Rank3 && r <= 3 && (0..g.order()).all(|v| !g.is_isolated(v)) {
        for x in 0..g.order() {
            tally.bump("structure_checks");
            let holds = neighborhood_split_holds(g, x);
            tally.check(holds == Ok(true), g, || {
                format!("structure check at vertex {x} gave {holds:?} with rank {r}")
            });
        }
    }
}

fn check_pendant_bound(g: &SignedGraph, tally: &mut Tally) {
    let n = g.order();
    if n < 4 || find_pendants(g).is_empty() || g.is_star() {
        return;
    }
    tally.bump("applicable");
    let eta = nullity(g);
    tally.check(eta + 4 <= n, g, || {
        format!("has a pendant vertex, not a star, nullity {eta} > {n} - 4")
    });
}

fn check_special_path_bound(g: &SignedGraph, tally: &mut Tally) {
    let n = g.order();
    if find_special_paths(g).is_empty() {
        return;
    }
    tally.bump("applicable");
    let eta = nullity(g);
    tally.check(eta + 4 <= n, g, || {
        format!("has a special path, nullity {eta} > {n} - 4")
    });
}

fn check_unbalanced_bicyclic(n: usize) -> Tally {
    let mut tally = over_bicyclic(n, |g, tally| {
        if is_balanced(g).is_balanced() {
            return;
        }
        tally.bump("unbalanced");
        let verdict = unbalanced_bicyclic_verdict(g).expect("bicyclic and unbalanced");
        tally.check(verdict.bound_holds, g, || {
            format!("nullity {} > {} - 3", verdict.nullity, n)
        });
        let at_bound = verdict.nullity + 3 == n;
        tally.check(verdict.is_extremal == at_bound, g, || {
            format!(
                "extremal shape {} but nullity {} (n - 3 = {})",
                verdict.is_extremal,
                verdict.nullity,
                n - 3
            )
        });
        if at_bound {
            tally.bump("extremal");
            tally.check(n == 4, g, || format!("nullity n - 3 attained at order {n}"));
        }
    });
    if n == 4 && tally.counters.get("extremal") != Some(&1) {
        tally.violations.push(Violation {
            order: 4,
            message: format!(
                "expected exactly one extremal class at order 4, found {:?}",
                tally.counters.get("extremal")
            ),
            witness: None,
        });
    }
    tally
}

fn check_reductions(g: &SignedGraph, tally: &mut Tally) {
    let eta = nullity(g);
    let mut touched = false;
    for (pendant, neighbor) in find_pendants(g) {
        touched = true;
        tally.bump("pendant_deletions");
        let h = delete_pendant_pair(g, pendant, neighbor).expect("listed pendant pair");
        let after = nullity(&h);
        tally.check(after == eta, g, || {
            format!("deleting pendant {pendant}-{neighbor}: nullity {eta} -> {after}")
        });
    }
    for p in find_special_paths(g) {
        touched = true;
        check_special_path(g, p, eta, tally);
    }
    if !touched {
        tally.bump("vacuous");
    }
    check_residue(g, eta, tally);
}

fn check_special_path(g: &SignedGraph, p: SpecialPath, eta: usize, tally: &mut Tally) {
    let (normalized, _) = normalize_special_path(g, p).expect("listed special path");
    let describe = |what: &str, after: usize| {
        format!(
            "{what} on path {}-{}-{}: nullity {eta} -> {after}",
            p.v1, p.v2, p.v3
        )
    };
    let after = nullity(&normalized);
    tally.check(after == eta, g, || describe("normalization", after));

    let contracted = contract_special_path(&normalized, p).expect("normalized special path");
    tally.bump("contractions");
    let after = nullity(&contracted);
    tally.check(after == eta, g, || describe("contraction", after));

    // rewire every other neighbor of v1 onto v3, then drop the pendant pair v1 v2
    let mut rewired = normalized.clone();
    let movers: Vec<usize> = normalized
        .neighbors(p.v1)
        .iter()
        .map(|&(w, _)| w)
        .filter(|&w| w != p.v2)
        .collect();
    for v in movers {
        rewired =
            rewire_special_path(&rewired, p, v).expect("special path keeps neighborhoods disjoint");
        tally.bump("rewirings");
        let after = nullity(&rewired);
        tally.check(after == eta, g, || describe("rewiring", after));
    }
    let dropped = delete_pendant_pair(&rewired, p.v1, p.v2).expect("v1 is now a pendant of v2");
    let (merged, relabel) = contraction_relabel(g.order(), p);
    let survivors: Vec<usize> = (0..g.order()).filter(|&x| x != p.v1 && x != p.v2).collect();
    let perm: Vec<usize> = survivors
        .iter()
        .map(|&x| {
            if x == p.v3 {
                merged
            } else {
                relabel[x].expect("off the path")
            }
        })
        .collect();
    tally.check(dropped.relabel(&perm) == contracted, g, || {
        format!(
            "rewire-and-delete differs from contraction on path {}-{}-{}",
            p.v1, p.v2, p.v3
        )
    });
}

/// The graph left after pendant deletions must agree with the closed forms.
fn check_residue(g: &SignedGraph, eta: usize, tally: &mut Tally) {
    let (residue, _) = reduce(g);
    let after = nullity(&residue);
    tally.check(after == eta, g, || {
        format!("reduction residue has nullity {after}, expected {eta}")
    });
    if residue.is_forest() {
        tally.bump("residue_forests");
        let formula = forest_nullity_formula(&residue);
        tally.check(formula == Ok(after), g, || {
            format!("residue forest formula {formula:?} vs kernel {after}")
        });
        return;
    }
    let active = residue.non_isolated_vertices();
    let isolated = residue.order() - active.len();
    let core = residue.induced_subgraph(&active);
    if core.is_connected() && active.iter().all(|&v| residue.degree(v) == 2) {
        tally.bump("residue_cycles");
        let balanced = matches!(is_balanced(&core), BalanceWitness::Balanced(_));
        let formula = cycle_nullity_formula(core.order(), balanced).map(|k| k + isolated);
        tally.check(formula == Ok(after), g, || {
            format!("residue cycle formula {formula:?} vs kernel {after}")
        });
    }
}
