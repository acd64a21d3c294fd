use crate::error::{Error, Result};

/// Environment variable that can lower (never raise) the group-order bound.
pub const MAX_ORDER_ENV: &str = "MODLAT_MAX_ORDER";

/// Size limits that keep every exact computation tractable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest field size.
    pub max_field: u64,
    /// Largest ambient dimension of a single isotypic component.
    pub max_dim: usize,
    /// Largest group order (explicit models) or `q^n` (subspace enumeration).
    pub max_order: u64,
    /// Vertex cap for the domination, coloring and clique solvers.
    pub solver_vertices: usize,
    /// Vertex cap for the planarity test.
    pub planarity_vertices: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_field: 64,
            max_dim: 6,
            max_order: 4096,
            solver_vertices: 40,
            planarity_vertices: 60,
        }
    }
}

impl Bounds {
    /// Defaults, with `MODLAT_MAX_ORDER` applied if it is set.
    pub fn from_env() -> Result<Self> {
        let b = Bounds::default();
        match std::env::var(MAX_ORDER_ENV) {
            Ok(v) => {
                let v: u64 = v.trim().parse().map_err(|_| {
                    Error::InvalidParameters(format!("{MAX_ORDER_ENV}={v:?} is not an integer"))
                })?;
                Ok(b.with_max_order(v))
            }
            Err(_) => Ok(b),
        }
    }

    /// Lowers the order bound; values above the current bound are ignored.
    pub fn with_max_order(mut self, order: u64) -> Self {
        self.max_order = self.max_order.min(order);
        self
    }
}

/// Fails with [`Error::BoundExceeded`] when `value > limit`.
pub(crate) fn check(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::BoundExceeded { what, value, limit })
    } else {
        Ok(())
    }
}
