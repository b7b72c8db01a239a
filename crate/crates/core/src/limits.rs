use crate::error::{Error, Result};

/// Environment variable that overrides [`Limits::max_size`].
pub const MAX_SIZE_ENV: &str = "EQUILAYER_MAX_SIZE";

/// Default cap on the number of candidate matrix cells (rows × cols).
pub const DEFAULT_MAX_SIZE: u128 = 10_000_000;

/// Default cap on the degree `n` of enumerated permutation groups.
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Default cap on group order × matrix cells for brute-force constraint systems.
pub const DEFAULT_MAX_ORACLE_CELLS: u128 = 2_000_000;

/// Resource bounds applied before any combinatorially large object is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum rows × cols of any matrix, and maximum side of a ρ matrix.
    pub max_size: u128,
    /// Maximum `n` for which S_n / A_n are enumerated element by element.
    pub max_degree: usize,
    /// Maximum `|G| · rows · cols` for the brute-force oracle.
    pub max_oracle_cells: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_size: DEFAULT_MAX_SIZE,
            max_degree: DEFAULT_MAX_DEGREE,
            max_oracle_cells: DEFAULT_MAX_ORACLE_CELLS,
        }
    }
}

impl Limits {
    /// Defaults, with `max_size` taken from `EQUILAYER_MAX_SIZE` when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(size) = std::env::var(MAX_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u128>().ok())
        {
            limits.max_size = size;
        }
        limits
    }

    pub fn with_max_size(mut self, max_size: u128) -> Self {
        self.max_size = max_size;
        self
    }

    pub(crate) fn check_size(&self, what: &str, needed: Option<u128>) -> Result<u128> {
        match needed {
            Some(needed) if needed <= self.max_size => Ok(needed),
            Some(needed) => Err(Error::ResourceBound {
                what: what.to_string(),
                needed,
                limit: self.max_size,
            }),
            None => Err(Error::ResourceBound {
                what: what.to_string(),
                needed: u128::MAX,
                limit: self.max_size,
            }),
        }
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::ResourceBound {
                what: format!("enumerating a permutation group of degree {n}"),
                needed: n as u128,
                limit: self.max_degree as u128,
            });
        }
        Ok(())
    }
}

/// `base^exp` in u128, or `None` on overflow.
pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}
