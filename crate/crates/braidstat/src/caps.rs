//! Size and work limits shared by the engines.
//!
//! Every limit is a hard error when exceeded; nothing is truncated. The
//! environment variable `BRAIDSTAT_CAP` overrides the tuple, basis and work
//! limits at once (not the homology strand limit, which reflects the size
//! of the implemented resolution).

use crate::error::{Error, Result};

pub const CAP_ENV: &str = "BRAIDSTAT_CAP";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Basis elements of V⊗ⁿ for the linear coinvariant engine.
    pub linear_basis: u128,
    /// Tuples of Rⁿ explored by the orbit engine.
    pub orbit_tuples: u128,
    /// Rank of the largest chain group in braid homology computations.
    pub homology_rank: u128,
    /// Largest strand count for braid homology.
    pub homology_strands: usize,
    /// Tuples enumerated by the Hurwitz engine.
    pub nielsen_tuples: u128,
    /// q^n work units for statistics over Conf^n.
    pub stats_work: u128,
    /// Group order for subgroup enumeration.
    pub group_order: u128,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            linear_basis: 200_000,
            orbit_tuples: 20_000_000,
            homology_rank: 200_000,
            homology_strands: 6,
            nielsen_tuples: 10_000_000,
            stats_work: 100_000_000,
            group_order: 10_000,
        }
    }
}

impl Caps {
    /// Replaces the tuple, basis and work limits by one value.
    pub fn with_override(mut self, cap: u128) -> Caps {
        self.linear_basis = cap;
        self.orbit_tuples = cap;
        self.homology_rank = cap;
        self.nielsen_tuples = cap;
        self.stats_work = cap;
        self
    }

    /// Defaults, overridden by `BRAIDSTAT_CAP` when set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAP_ENV) {
            Ok(s) => {
                let cap: u128 = s
                    .trim()
                    .replace('_', "")
                    .parse()
                    .map_err(|_| Error::Invalid(format!("{CAP_ENV} must be a positive integer, got {s:?}")))?;
                if cap == 0 {
                    return Err(Error::Invalid(format!("{CAP_ENV} must be positive")));
                }
                Ok(Caps::default().with_override(cap))
            }
            Err(_) => Ok(Caps::default()),
        }
    }
}

pub(crate) fn cap_check(what: &str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::SizeCapExceeded { what: what.to_string(), size, cap })
    } else {
        Ok(())
    }
}

/// base^exp, saturating at u128::MAX.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
