//! Permutations of `[n]`, the groups S_n and A_n, and their action on
//! multi-indices and tensor power spaces.
//!
//! Conventions used throughout the crate:
//!
//! * everything mathematical is 1-based: `images[i - 1] = σ(i)`, multi-index
//!   entries lie in `1..=n`;
//! * composition is `(σ ∘ τ)(i) = σ(τ(i))`;
//! * a multi-index `(i_1, …, i_m)` linearizes row-major to the 0-based
//!   `Σ_j (i_j − 1)·n^(m−j)`, so the first entry varies slowest.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{checked_pow, Limits};
use crate::sparse::{Rational, SparseMatrix};
use num_traits::One;

/// Which permutation group acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "sn")]
    Symmetric,
    #[serde(rename = "an")]
    Alternating,
}

impl GroupKind {
    pub fn short_name(self) -> &'static str {
        match self {
            GroupKind::Symmetric => "sn",
            GroupKind::Alternating => "an",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sn" | "s" | "symmetric" => Ok(GroupKind::Symmetric),
            "an" | "a" | "alternating" => Ok(GroupKind::Alternating),
            other => Err(Error::invalid(format!(
                "unknown group {other:?}, expected sn or an"
            ))),
        }
    }
}

/// A bijection of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i - 1]` is the image of `i`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::invalid(format!(
                    "{images:?} is not a permutation of [{n}]"
                )));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The cycle `(c_1 c_2 … c_r)` on `[n]`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for (pos, &from) in cycle.iter().enumerate() {
            let to = cycle[(pos + 1) % cycle.len()];
            if from == 0 || from > n || to == 0 || to > n {
                return Err(Error::invalid(format!("cycle entry outside [1, {n}]")));
            }
            images[from - 1] = to;
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// σ(i) for `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }

    /// +1 for even permutations, −1 for odd ones (cycle parity).
    pub fn sign(&self) -> i8 {
        let n = self.degree();
        let mut visited = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.images[i] - 1;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

/// +1 or −1 according to the parity of `σ`.
pub fn sign(sigma: &Permutation) -> i8 {
    sigma.sign()
}

/// A tuple in `[n]^m`, indexing the basis vector `e_{i_1} ⊗ … ⊗ e_{i_m}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        MultiIndex { entries }
    }

    pub fn split_at(&self, pos: usize) -> (MultiIndex, MultiIndex) {
        let (a, b) = self.entries.split_at(pos);
        (MultiIndex::new(a.to_vec()), MultiIndex::new(b.to_vec()))
    }

    /// Row-major 0-based position among all of `[n]^m`.
    pub fn linearize(&self, n: usize) -> usize {
        self.entries.iter().fold(0, |acc, &i| acc * n + (i - 1))
    }

    /// Inverse of [`MultiIndex::linearize`].
    pub fn from_linear(n: usize, order: usize, mut index: usize) -> MultiIndex {
        let mut entries = vec![0; order];
        for slot in entries.iter_mut().rev() {
            *slot = index % n + 1;
            index /= n;
        }
        MultiIndex { entries }
    }

    /// Every tuple of `[n]^order`, in linearized order.
    pub fn all(n: usize, order: usize) -> impl Iterator<Item = MultiIndex> {
        let count = n.pow(order as u32);
        (0..count).map(move |i| MultiIndex::from_linear(n, order, i))
    }

    fn check_range(&self, n: usize) -> Result<()> {
        match self.entries.iter().find(|&&i| i == 0 || i > n) {
            Some(bad) => Err(Error::invalid(format!(
                "multi-index entry {bad} outside [1, {n}]"
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

/// Applies `σ` to every entry of `x`.
pub fn act(sigma: &Permutation, x: &MultiIndex) -> Result<MultiIndex> {
    x.check_range(sigma.degree())?;
    Ok(act_unchecked(sigma, x))
}

pub(crate) fn act_unchecked(sigma: &Permutation, x: &MultiIndex) -> MultiIndex {
    MultiIndex {
        entries: x.entries.iter().map(|&i| sigma.apply(i)).collect(),
    }
}

/// All elements of S_n or A_n in lexicographic order of their images,
/// bounded by the default limits (see [`enumerate_group_with`]).
pub fn enumerate_group(n: usize, which: GroupKind) -> Result<Vec<Permutation>> {
    enumerate_group_with(n, which, &Limits::from_env())
}

pub fn enumerate_group_with(n: usize, which: GroupKind, limits: &Limits) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::invalid("group degree must be at least 1"));
    }
    limits.check_degree(n)?;
    Ok((1..=n)
        .permutations(n)
        .map(|images| Permutation { images })
        .filter(|p| which == GroupKind::Symmetric || p.is_even())
        .collect())
}

/// A generating set: `(1 2)` and `(1 2 … n)` for S_n, the 3-cycles
/// `(1 2 i)` for A_n. Trivial groups are generated by the identity.
pub fn generators(n: usize, which: GroupKind) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::invalid("group degree must be at least 1"));
    }
    let gens = match which {
        GroupKind::Symmetric if n >= 2 => vec![
            Permutation::cycle(n, &[1, 2])?,
            Permutation::cycle(n, &(1..=n).collect::<Vec<_>>())?,
        ],
        GroupKind::Alternating if n >= 3 => (3..=n)
            .map(|i| Permutation::cycle(n, &[1, 2, i]))
            .collect::<Result<_>>()?,
        _ => vec![Permutation::identity(n)],
    };
    Ok(gens)
}

/// The `n^order × n^order` permutation matrix of ρ_order(σ): column
/// `linearize(I)` holds a single 1 in row `linearize(σ(I))`.
pub fn rho(sigma: &Permutation, order: usize) -> Result<SparseMatrix> {
    rho_with(sigma, order, &Limits::from_env())
}

pub fn rho_with(sigma: &Permutation, order: usize, limits: &Limits) -> Result<SparseMatrix> {
    let n = sigma.degree();
    let size = limits.check_size(
        &format!("ρ_{order} of a degree-{n} permutation"),
        checked_pow(n, order),
    )? as usize;
    SparseMatrix::from_entries(
        size,
        size,
        MultiIndex::all(n, order).map(|x| {
            let col = x.linearize(n);
            (act_unchecked(sigma, &x).linearize(n), col, Rational::one())
        }),
    )
}
