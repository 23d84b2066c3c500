//! Nullity of signed graphs, plus the closed forms for forests and cycles.

use thiserror::Error;

use crate::graph::SignedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NullityError {
    #[error("cycle length {0} is below 3")]
    CycleTooShort(usize),
    #[error("graph contains a cycle")]
    NotAForest,
}

/// Rank of the signed adjacency matrix.
pub fn rank(g: &SignedGraph) -> usize {
    g.adjacency_matrix().rank()
}

/// Multiplicity of eigenvalue zero: `order - rank`.
pub fn nullity(g: &SignedGraph) -> usize {
    g.order() - rank(g)
}

/// Nullity of a signed cycle of the given length from its balance alone.
pub fn cycle_nullity_formula(length: usize, balanced: bool) -> Result<usize, NullityError> {
    if length < 3 {
        return Err(NullityError::CycleTooShort(length));
    }
    let residue = if balanced { 0 } else { 2 };
    Ok(if length % 4 == residue { 2 } else { 0 })
}

/// Maximum matching size of a forest, by repeatedly matching a leaf to its neighbor.
pub fn matching_number(g: &SignedGraph) -> Result<usize, NullityError> {
    if !g.is_forest() {
        return Err(NullityError::NotAForest);
    }
    let n = g.order();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut matched = 0;
    while let Some(leaf) = leaves.pop() {
        if !alive[leaf] || degree[leaf] != 1 {
            continue;
        }
        let partner = g
            .neighbors(leaf)
            .iter()
            .map(|&(w, _)| w)
            .find(|&w| alive[w])
            .expect("leaf has one live neighbor");
        matched += 1;
        for v in [leaf, partner] {
            alive[v] = false;
            for &(w, _) in g.neighbors(v) {
                if alive[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        leaves.push(w);
                    }
                }
            }
        }
    }
    Ok(matched)
}

/// `order - 2 * matching_number`, valid for forests only.
pub fn forest_nullity_formula(g: &SignedGraph) -> Result<usize, NullityError> {
    Ok(g.order() - 2 * matching_number(g)?)
}
