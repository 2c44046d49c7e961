//! Size caps for enumeration-heavy operations.

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;

/// Bounds honoured by enumerations and universe construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of objects per groupoid.
    pub max_objects: usize,
    /// Maximum number of morphisms per groupoid.
    pub max_morphisms: usize,
    /// Maximum number of groupoids in a universe.
    pub max_universe_groupoids: usize,
    /// Maximum number of arrows in a universe.
    pub max_universe_arrows: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_objects: 4,
            max_morphisms: 24,
            max_universe_groupoids: 40,
            max_universe_arrows: 2000,
        }
    }
}

impl Caps {
    /// Errors unless `g` fits within the per-groupoid caps.
    pub fn check_groupoid(&self, g: &FiniteGroupoid) -> Result<()> {
        if g.n_objects() > self.max_objects {
            return Err(Error::CapExceeded {
                what: "objects".into(),
                value: g.n_objects(),
                cap: self.max_objects,
            });
        }
        if g.n_morphisms() > self.max_morphisms {
            return Err(Error::CapExceeded {
                what: "morphisms".into(),
                value: g.n_morphisms(),
                cap: self.max_morphisms,
            });
        }
        Ok(())
    }

    /// True iff `g` fits without producing an error value.
    pub fn admits_groupoid(&self, g: &FiniteGroupoid) -> bool {
        self.check_groupoid(g).is_ok()
    }
}
