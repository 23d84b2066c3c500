//! Exhaustive generation at small order, verification sweeps and nullity catalogs.

mod canon;
mod catalog;
mod generate;
mod sweeps;

use thiserror::Error;

pub use canon::{canonical_code, canonical_form, canonical_graph, CanonicalCode};
pub use catalog::{catalog_nullity_classes, CatalogEntry, ClassRecord, NullityCatalog};
pub use generate::{
    base_shapes, bicyclic_classes, bicyclic_underlying, connected_classes, grow_from, labeled_tree,
    labeled_tree_count, labeled_trees, prufer_decode, signature_representatives, BaseShape,
    SignatureClasses,
};
pub use sweeps::{
    reduction_consistency_sweep, verify_theorem, TheoremId, TheoremReport, Violation,
};

/// Default largest order for exhaustive sweeps and catalogs.
pub const DEFAULT_CEILING: usize = 8;
/// Largest ceiling that can be configured.
pub const MAX_CEILING: usize = 10;
/// Sweeps over every connected graph stop here regardless of the ceiling.
pub const CONNECTED_SWEEP_MAX: usize = 7;
/// Longest cycle checked by the cycle sweep.
pub const CYCLE_SWEEP_MAX: usize = 64;
/// Environment variable overriding the ceiling.
pub const CEILING_ENV: &str = "SIGNULL_MAX_N";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cyclomatic number {0} is too large to list every switching class")]
    TooManyCycles(usize),
    #[error("order {order} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { order: usize, ceiling: usize },
    #[error("order {order} is below the minimum {min}")]
    OrderTooSmall { order: usize, min: usize },
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("ceiling {0} is outside 1..={MAX_CEILING}")]
    BadCeiling(usize),
    #[error("could not build worker pool: {0}")]
    ThreadPool(String),
}

/// Limits and parallelism for sweeps and catalogs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub ceiling: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            ceiling: DEFAULT_CEILING,
            threads: None,
        }
    }
}

impl SweepConfig {
    pub fn with_ceiling(ceiling: usize) -> Result<Self, EnumerationError> {
        if ceiling == 0 || ceiling > MAX_CEILING {
            return Err(EnumerationError::BadCeiling(ceiling));
        }
        Ok(SweepConfig {
            ceiling,
            threads: None,
        })
    }

    pub fn threads(self, threads: usize) -> Self {
        SweepConfig {
            threads: Some(threads.max(1)),
            ..self
        }
    }

    /// Default config with the ceiling taken from [`CEILING_ENV`] when set.
    pub fn from_env() -> Result<Self, EnumerationError> {
        match std::env::var(CEILING_ENV) {
            Ok(raw) => {
                let ceiling = raw.trim().parse().map_err(|_| {
                    EnumerationError::BadParameters(format!("{CEILING_ENV}={raw} is not a count"))
                })?;
                Self::with_ceiling(ceiling)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    fn check(&self, order: usize, cap: usize) -> Result<(), EnumerationError> {
        let ceiling = self.ceiling.min(cap);
        if order > ceiling {
            return Err(EnumerationError::CeilingExceeded { order, ceiling });
        }
        Ok(())
    }

    fn install<R: Send>(&self, job: impl FnOnce() -> R + Send) -> Result<R, EnumerationError> {
        match self.threads {
            None => Ok(job()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| EnumerationError::ThreadPool(e.to_string()))?;
                Ok(pool.install(job))
            }
        }
    }
}
