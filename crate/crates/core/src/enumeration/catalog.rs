//! Bicyclic isomorphism classes admitting a signature of prescribed nullity.

use rayon::prelude::*;
use serde::Serialize;

use super::canon::CanonicalCode;
use super::generate::{bicyclic_classes, SignatureClasses};
use super::{EnumerationError, SweepConfig};
use crate::graph::{Sign, SignedGraph};
use crate::nullity::nullity;
use crate::recognizers::{bicyclic_base, BaseKind};

/// One switching class achieving the cataloged nullity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    /// Non-tree edge sign pattern of the representative.
    pub mask: u64,
    /// Signs of the two base cycles and their symmetric difference, e.g. `--+`.
    pub profile: String,
    pub nullity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub code: CanonicalCode,
    pub base: String,
    pub kind: BaseKind,
    pub p: usize,
    pub q: usize,
    pub l: usize,
    pub achieving_count: usize,
    pub classes: Vec<ClassRecord>,
    /// Distinct profiles among `classes`, sorted.
    pub profiles: Vec<String>,
    /// Representative of the first achieving class.
    pub witness: SignedGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NullityCatalog {
    pub order: usize,
    pub k: usize,
    pub nullity: usize,
    pub balanced_only: bool,
    pub entries: Vec<CatalogEntry>,
}

impl NullityCatalog {
    /// Recomputes every recorded nullity through the rank kernel and checks ordering.
    pub fn revalidate(&self) -> Result<(), String> {
        if !self.entries.windows(2).all(|w| w[0].code < w[1].code) {
            return Err("entries are not strictly sorted by code".into());
        }
        for e in &self.entries {
            let eta = nullity(&e.witness);
            if eta != self.nullity || e.witness.order() != self.order {
                return Err(format!(
                    "witness of {} ({}) has nullity {eta}, expected {}",
                    e.code, e.base, self.nullity
                ));
            }
            let reps = SignatureClasses::new(&e.witness).map_err(|err| err.to_string())?;
            for c in &e.classes {
                let eta = nullity(&reps.representative(c.mask));
                if eta != c.nullity || c.nullity != self.nullity {
                    return Err(format!("class {} of {} has nullity {eta}", c.mask, e.code));
                }
            }
            if e.achieving_count != e.classes.len() || e.classes.is_empty() {
                return Err(format!("entry {} has inconsistent class count", e.code));
            }
        }
        Ok(())
    }
}

fn profile_string(profile: [Sign; 3]) -> String {
    profile.iter().map(|s| s.as_char()).collect()
}

/// Bicyclic classes of order `n` with an unbalanced signature of nullity `n - k`. With
/// `balanced_only`, the all-positive signature is considered instead.
pub fn catalog_nullity_classes(
    n: usize,
    k: usize,
    balanced_only: bool,
    config: &SweepConfig,
) -> Result<NullityCatalog, EnumerationError> {
    if n < 4 {
        return Err(EnumerationError::OrderTooSmall { order: n, min: 4 });
    }
    if !(3..=n).contains(&k) {
        return Err(EnumerationError::BadParameters(format!(
            "k = {k} must lie in 3..={n}"
        )));
    }
    config.check(n, usize::MAX)?;
    let target = n - k;
    let entries = config.install(|| {
        bicyclic_classes(n)
            .into_par_iter()
            .filter_map(|(code, g)| entry_for(code, &g, target, balanced_only))
            .collect::<Vec<_>>()
    })?;
    let catalog = NullityCatalog {
        order: n,
        k,
        nullity: target,
        balanced_only,
        entries,
    };
    catalog
        .revalidate()
        .map_err(EnumerationError::BadParameters)?;
    Ok(catalog)
}

fn entry_for(
    code: CanonicalCode,
    g: &SignedGraph,
    target: usize,
    balanced_only: bool,
) -> Option<CatalogEntry> {
    let base = bicyclic_base(g).expect("generated graphs are bicyclic");
    let reps = SignatureClasses::new(g).expect("generated graphs are connected");
    // mask 0 is the all-positive class, every other mask has a negative cycle
    let masks = if balanced_only { 0..1 } else { 1..reps.count() };
    let classes: Vec<ClassRecord> = masks
        .filter_map(|mask| {
            let h = reps.representative(mask);
            let eta = nullity(&h);
            (eta == target).then(|| ClassRecord {
                mask,
                profile: profile_string(base.balance_profile(&h)),
                nullity: eta,
            })
        })
        .collect();
    let first = classes.first()?;
    let witness = reps.representative(first.mask);
    let mut profiles: Vec<String> = classes.iter().map(|c| c.profile.clone()).collect();
    profiles.sort();
    profiles.dedup();
    Some(CatalogEntry {
        code,
        base: base.label(),
        kind: base.kind,
        p: base.p,
        q: base.q,
        l: base.l,
        achieving_count: classes.len(),
        classes,
        profiles,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremal_catalog() {
        let config = SweepConfig::default();
        let c = catalog_nullity_classes(4, 3, false, &config).unwrap();
        assert_eq!(c.entries.len(), 1);
        let e = &c.entries[0];
        assert_eq!(e.base, "theta(2,2,1)");
        assert_eq!(e.achieving_count, 1);
        // the 4-cycle is the sum of the two triangles
        assert_eq!(e.profiles, vec!["+--".to_string()]);
        for n in 5..=7 {
            assert!(
                catalog_nullity_classes(n, 3, false, &config)
                    .unwrap()
                    .entries
                    .is_empty(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn parameter_errors() {
        let config = SweepConfig::default();
        assert!(matches!(
            catalog_nullity_classes(5, 2, false, &config),
            Err(EnumerationError::BadParameters(_))
        ));
        assert!(matches!(
            catalog_nullity_classes(5, 6, false, &config),
            Err(EnumerationError::BadParameters(_))
        ));
        assert_eq!(
            catalog_nullity_classes(9, 4, false, &config).unwrap_err(),
            EnumerationError::CeilingExceeded {
                order: 9,
                ceiling: 8
            }
        );
        assert!(matches!(
            catalog_nullity_classes(3, 3, false, &config),
            Err(EnumerationError::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn balanced_only_uses_all_positive_witness() {
        let c = catalog_nullity_classes(6, 5, true, &SweepConfig::default()).unwrap();
        assert!(!c.entries.is_empty());
        for e in &c.entries {
            assert!(e.witness.is_all_positive());
            assert_eq!(e.classes.len(), 1);
            assert_eq!(e.profiles, vec!["+++".to_string()]);
        }
    }
}
