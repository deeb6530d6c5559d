//! Enumeration caps shared by every bounded operation.

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::patterns`].
pub const CAP_ENV: &str = "CAGROUP_ENUM_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of group elements materialized by a disk.
    pub elements: usize,
    /// Maximum number of patterns enumerated by a single search.
    pub patterns: u128,
    /// Maximum number of subset-construction states.
    pub subsets: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            elements: 1_000_000,
            patterns: 1 << 24,
            subsets: 1 << 20,
        }
    }
}

impl Limits {
    /// Defaults, with the pattern cap taken from `CAGROUP_ENUM_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(CAP_ENV) {
            limits.patterns = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{CAP_ENV}={raw:?} is not an integer")))?;
        }
        Ok(limits)
    }

    /// Checks that `s^cells` patterns fit the cap and returns that count.
    pub fn check_patterns(&self, what: &'static str, s: u8, cells: usize) -> Result<u128> {
        match pow_checked(s as u128, cells) {
            Some(n) if n <= self.patterns => Ok(n),
            Some(n) => Err(Error::cap(what, n, self.patterns)),
            None => Err(Error::cap(what, u128::MAX, self.patterns)),
        }
    }
}

pub(crate) fn pow_checked(base: u128, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
