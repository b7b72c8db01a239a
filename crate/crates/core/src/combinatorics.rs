//! Set partitions of `[m]`, stored as restricted-growth strings.
//!
//! A restricted-growth string (RGS) assigns to each position `i` the label of
//! the block containing `i`, with blocks numbered in order of their smallest
//! element. That labelling is exactly the orbit representative used to build
//! basis matrices, so [`block_labelling`] is only a split of the string.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::MultiIndex;

/// A partition of `{1, …, m}` into nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    rgs: Vec<usize>,
    num_blocks: usize,
}

impl SetPartition {
    /// The partition of the empty set.
    pub fn empty() -> Self {
        SetPartition {
            rgs: Vec::new(),
            num_blocks: 0,
        }
    }

    /// Builds a partition from a restricted-growth string with 1-based labels.
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        let mut max = 0;
        for (i, &label) in rgs.iter().enumerate() {
            if label == 0 || label > max + 1 {
                return Err(Error::invalid(format!(
                    "not a restricted-growth string: label {label} at position {}",
                    i + 1
                )));
            }
            max = max.max(label);
        }
        Ok(SetPartition {
            rgs,
            num_blocks: max,
        })
    }

    /// Builds a partition of `[m]` from its blocks (elements 1-based, any order).
    pub fn from_blocks(m: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; m];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::invalid("blocks must be nonempty"));
            }
            for &x in block {
                if x == 0 || x > m {
                    return Err(Error::invalid(format!("element {x} outside [1, {m}]")));
                }
                if owner[x - 1] != usize::MAX {
                    return Err(Error::invalid(format!("element {x} appears twice")));
                }
                owner[x - 1] = b;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::invalid(format!("element {} is in no block", missing + 1)));
        }
        // relabel by first appearance
        let mut relabel = vec![0usize; blocks.len()];
        let mut next = 0;
        let rgs = owner
            .iter()
            .map(|&b| {
                if relabel[b] == 0 {
                    next += 1;
                    relabel[b] = next;
                }
                relabel[b]
            })
            .collect();
        SetPartition::from_rgs(rgs)
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    /// Size of the ground set.
    pub fn m(&self) -> usize {
        self.rgs.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    /// Blocks in label order; each block lists its elements (1-based) ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks];
        for (i, &label) in self.rgs.iter().enumerate() {
            blocks[label - 1].push(i + 1);
        }
        blocks
    }

    /// Lowest element (1-based position) of each block, in label order.
    pub fn block_minima(&self) -> Vec<usize> {
        let mut minima = Vec::with_capacity(self.num_blocks);
        for (i, &label) in self.rgs.iter().enumerate() {
            if label > minima.len() {
                minima.push(i + 1);
            }
        }
        minima
    }

    /// The labels joined by commas, e.g. `"1,1,2"`.
    pub fn rgs_string(&self) -> String {
        self.rgs
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the output of [`SetPartition::rgs_string`].
    pub fn parse_rgs(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SetPartition::empty());
        }
        let rgs = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad block label {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SetPartition::from_rgs(rgs)
    }

    /// One-line sketch of the flattened diagram: one letter per vertex,
    /// vertices sharing a letter lie in the same block. A `|` marks where the
    /// top row of `l` vertices ends.
    pub fn flattened_sketch(&self, l: usize) -> String {
        let mut out = String::new();
        for (i, &label) in self.rgs.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            if i == l && l > 0 {
                out.push_str("| ");
            }
            out.push_str(&block_letter(label));
        }
        out
    }
}

fn block_letter(label: usize) -> String {
    if label <= 26 {
        ((b'A' + (label - 1) as u8) as char).to_string()
    } else {
        format!("B{label}")
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(" | ");
        write!(f, "{{{blocks}}}")
    }
}

/// Every set partition of `[m]` with at most `max_blocks` blocks, in
/// lexicographic order of restricted-growth strings.
///
/// `m = 0` yields the single empty partition.
pub fn enumerate_partitions(m: usize, max_blocks: usize) -> Vec<SetPartition> {
    if m == 0 {
        return vec![SetPartition::empty()];
    }
    let mut out = Vec::new();
    if max_blocks == 0 {
        return out;
    }
    let mut rgs = vec![0usize; m];
    rgs[0] = 1;
    extend(&mut rgs, 1, 1, max_blocks, &mut out);
    out
}

fn extend(rgs: &mut [usize], pos: usize, max: usize, cap: usize, out: &mut Vec<SetPartition>) {
    if pos == rgs.len() {
        out.push(SetPartition {
            rgs: rgs.to_vec(),
            num_blocks: max,
        });
        return;
    }
    for label in 1..=(max + 1).min(cap) {
        rgs[pos] = label;
        extend(rgs, pos + 1, max.max(label), cap, out);
    }
}

/// Stirling number of the second kind: partitions of `[m]` into exactly `t` blocks.
pub fn stirling2(m: usize, t: usize) -> BigUint {
    if t > m {
        return BigUint::zero();
    }
    // row[j] holds S(i, j) for the current i
    let mut row = vec![BigUint::zero(); t + 1];
    row[0] = BigUint::one();
    for _ in 1..=m {
        for j in (1..=t).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[t].clone()
}

/// Number of set partitions of `[m]` with at most `n` blocks.
///
/// The sum starts at `t = 0`, so the empty partition counts once when `m = 0`.
pub fn bell_restricted(m: usize, n: usize) -> BigUint {
    (0..=n.min(m)).map(|t| stirling2(m, t)).sum()
}

/// Splits the block labelling of `partition` into its `l` output and `k`
/// input positions.
pub fn block_labelling(
    partition: &SetPartition,
    l: usize,
    k: usize,
) -> Result<(MultiIndex, MultiIndex)> {
    if partition.m() != l + k {
        return Err(Error::invalid(format!(
            "partition of [{}] cannot be split as l = {l}, k = {k}",
            partition.m()
        )));
    }
    let (out, inp) = partition.rgs.split_at(l);
    Ok((MultiIndex::new(out.to_vec()), MultiIndex::new(inp.to_vec())))
}
