//! S_n orbits on `[n]^(l+k)` attached to set partitions, and their splitting
//! into two A_n orbits.
//!
//! An S_n orbit whose partition has `t ∈ {n−1, n}` blocks splits into two
//! A_n orbits. Each member `x` of such an orbit is `σ(I_π, J_π)` for exactly
//! one `σ ∈ S_n`, and the two halves are told apart by `sign(σ)`: this is the
//! value of the determinant map after routing the lowest vertex of block `j`
//! to leg `j` of the jellyfish.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinatorics::SetPartition;
use crate::error::{Error, Result};
use crate::group::{MultiIndex, Permutation};

/// Which part of an S_n orbit a set of indices represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignClass {
    /// The whole S_n orbit.
    Unsplit,
    /// Members where the jellyfish sign is +1.
    Plus,
    /// Members where the jellyfish sign is −1.
    Minus,
}

impl SignClass {
    pub fn name(self) -> &'static str {
        match self {
            SignClass::Unsplit => "unsplit",
            SignClass::Plus => "plus",
            SignClass::Minus => "minus",
        }
    }
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SignClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unsplit" => Ok(SignClass::Unsplit),
            "plus" => Ok(SignClass::Plus),
            "minus" => Ok(SignClass::Minus),
            other => Err(Error::parse(format!("unknown sign class {other:?}"))),
        }
    }
}

/// An orbit (or half-orbit) of multi-indices in `[n]^(l+k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub partition: SetPartition,
    pub n: usize,
    pub l: usize,
    pub k: usize,
    /// Full `(I, J)` tuples, sorted by linearized index.
    pub members: Vec<MultiIndex>,
    pub sign_class: SignClass,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &MultiIndex) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

fn check_partition(partition: &SetPartition, n: usize, l: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if partition.m() != l + k {
        return Err(Error::invalid(format!(
            "partition of [{}] does not match l + k = {}",
            partition.m(),
            l + k
        )));
    }
    if partition.num_blocks() > n {
        return Err(Error::invalid(format!(
            "partition has {} blocks, more than n = {n}",
            partition.num_blocks()
        )));
    }
    Ok(())
}

/// The S_n orbit of the block labelling of `partition`.
///
/// Members are the images of the labelling under every injection
/// `[t] → [n]`, so there are `n!/(n−t)!` of them.
pub fn sn_orbit(partition: &SetPartition, n: usize, l: usize, k: usize) -> Result<Orbit> {
    check_partition(partition, n, l, k)?;
    let t = partition.num_blocks();
    let rgs = partition.rgs();
    let mut members: Vec<MultiIndex> = if t == 0 {
        vec![MultiIndex::new(Vec::new())]
    } else {
        (1..=n)
            .permutations(t)
            .map(|phi| MultiIndex::new(rgs.iter().map(|&b| phi[b - 1]).collect()))
            .collect()
    };
    // same-length tuples: lexicographic order is linearized order
    members.sort();
    Ok(Orbit {
        partition: partition.clone(),
        n,
        l,
        k,
        members,
        sign_class: SignClass::Unsplit,
    })
}

/// Whether the S_n orbit of `partition` is a union of two A_n orbits.
pub fn splits(partition: &SetPartition, n: usize) -> bool {
    let t = partition.num_blocks();
    n >= 2 && (t == n || t + 1 == n)
}

/// The unique `σ ∈ S_n` with `σ(I_π, J_π) = x`, for a partition with
/// `n − 1` or `n` blocks.
pub fn orbit_permutation(partition: &SetPartition, x: &MultiIndex, n: usize) -> Result<Permutation> {
    if !splits(partition, n) {
        return Err(Error::invalid(format!(
            "partition {partition} with {} blocks does not split for n = {n}",
            partition.num_blocks()
        )));
    }
    if x.order() != partition.m() {
        return Err(Error::invalid(format!(
            "multi-index {x} has order {}, partition is of [{}]",
            x.order(),
            partition.m()
        )));
    }
    let entries = x.entries();
    let mut images = vec![0usize; n];
    let mut used = vec![false; n + 1];
    for (j, &pos) in partition.block_minima().iter().enumerate() {
        let v = entries[pos - 1];
        if v == 0 || v > n || used[v] {
            return Err(Error::invalid(format!(
                "{x} is not in the S_{n} orbit of {partition}"
            )));
        }
        images[j] = v;
        used[v] = true;
    }
    for (pos, &label) in partition.rgs().iter().enumerate() {
        if entries[pos] != images[label - 1] {
            return Err(Error::invalid(format!(
                "{x} is not in the S_{n} orbit of {partition}"
            )));
        }
    }
    // t = n − 1: the one unused source goes to the one unused target
    let free_targets: Vec<usize> = (1..=n).filter(|&v| !used[v]).collect();
    let free_sources: Vec<usize> = (0..n).filter(|&j| images[j] == 0).collect();
    assert_eq!(free_targets.len(), free_sources.len());
    assert!(free_sources.len() <= 1, "σ is not unique for t < n − 1");
    for (src, tgt) in free_sources.into_iter().zip(free_targets) {
        images[src] = tgt;
    }
    Permutation::new(images)
}

/// The jellyfish sign `f_π(e_x) ∈ {+1, −1}` of a member `x` of a splitting orbit.
pub fn jellyfish_sign(partition: &SetPartition, x: &MultiIndex, n: usize) -> Result<i8> {
    Ok(orbit_permutation(partition, x, n)?.sign())
}

/// Splits the S_n orbit of `partition` into its plus and minus A_n orbits.
pub fn split_orbit(
    partition: &SetPartition,
    n: usize,
    l: usize,
    k: usize,
) -> Result<(Orbit, Orbit)> {
    if !splits(partition, n) {
        return Err(Error::invalid(format!(
            "the orbit of {partition} does not split for n = {n}"
        )));
    }
    let full = sn_orbit(partition, n, l, k)?;
    let mut plus = Vec::with_capacity(full.len() / 2);
    let mut minus = Vec::with_capacity(full.len() / 2);
    for x in full.members {
        match jellyfish_sign(partition, &x, n)? {
            1 => plus.push(x),
            _ => minus.push(x),
        }
    }
    let half = |members, sign_class| Orbit {
        partition: partition.clone(),
        n,
        l,
        k,
        members,
        sign_class,
    };
    Ok((half(plus, SignClass::Plus), half(minus, SignClass::Minus)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{act, enumerate_group, GroupKind};

    fn p(rgs: &[usize]) -> SetPartition {
        SetPartition::from_rgs(rgs.to_vec()).unwrap()
    }

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn falling(n: usize, t: usize) -> usize {
        (n - t + 1..=n).product()
    }

    #[test]
    fn orbit_examples() {
        let o = sn_orbit(&p(&[1, 1, 1]), 2, 1, 2).unwrap();
        assert_eq!(o.members, vec![mi(&[1, 1, 1]), mi(&[2, 2, 2])]);
        let o = sn_orbit(&p(&[1, 1, 2]), 2, 1, 2).unwrap();
        assert_eq!(o.members, vec![mi(&[1, 1, 2]), mi(&[2, 2, 1])]);
        let o = sn_orbit(&p(&[1, 1, 1]), 3, 1, 2).unwrap();
        assert_eq!(o.members, vec![mi(&[1, 1, 1]), mi(&[2, 2, 2]), mi(&[3, 3, 3])]);
        assert!(sn_orbit(&p(&[1, 2, 3]), 2, 1, 2).is_err());
        assert!(sn_orbit(&p(&[1, 2]), 2, 1, 2).is_err());
        let empty = sn_orbit(&SetPartition::empty(), 3, 0, 0).unwrap();
        assert_eq!(empty.members, vec![mi(&[])]);
    }

    #[test]
    fn splitting_rule() {
        assert!(splits(&p(&[1, 1, 1]), 2));
        assert!(!splits(&p(&[1, 2]), 4));
        assert!(!splits(&p(&[1]), 1));
        assert!(splits(&p(&[1, 2, 2]), 3));
        assert!(!splits(&SetPartition::empty(), 2));
    }

    #[test]
    fn jellyfish_examples() {
        let pi = p(&[1, 1, 1]);
        assert_eq!(jellyfish_sign(&pi, &mi(&[1, 1, 1]), 2).unwrap(), 1);
        assert_eq!(jellyfish_sign(&pi, &mi(&[2, 2, 2]), 2).unwrap(), -1);
        assert_eq!(jellyfish_sign(&p(&[1, 1, 2]), &mi(&[1, 1, 2]), 2).unwrap(), 1);
        assert!(jellyfish_sign(&pi, &mi(&[1, 1, 2]), 2).is_err());
        assert!(jellyfish_sign(&p(&[1, 2]), &mi(&[1, 2]), 4).is_err());
    }

    #[test]
    fn split_examples() {
        let (plus, minus) = split_orbit(&p(&[1, 1, 1]), 2, 1, 2).unwrap();
        assert_eq!(plus.members, vec![mi(&[1, 1, 1])]);
        assert_eq!(minus.members, vec![mi(&[2, 2, 2])]);
        let (plus, minus) = split_orbit(&p(&[1, 2, 2]), 2, 1, 2).unwrap();
        assert_eq!(plus.members, vec![mi(&[1, 2, 2])]);
        assert_eq!(minus.members, vec![mi(&[2, 1, 1])]);
        assert!(split_orbit(&p(&[1, 1]), 4, 1, 1).is_err());
    }

    #[test]
    fn orbit_sizes_and_cover() {
        for n in 1..=5 {
            for m in 0..=4 {
                let mut seen = std::collections::BTreeSet::new();
                for part in crate::combinatorics::enumerate_partitions(m, n) {
                    let o = sn_orbit(&part, n, m / 2, m - m / 2).unwrap();
                    assert_eq!(o.len(), falling(n, part.num_blocks()));
                    assert!(o.contains(&mi(part.rgs())));
                    for x in o.members {
                        assert!(seen.insert(x), "orbits overlap");
                    }
                    if splits(&part, n) {
                        let (plus, minus) = split_orbit(&part, n, m / 2, m - m / 2).unwrap();
                        assert_eq!(plus.len(), minus.len());
                        assert_eq!(plus.len() * 2, falling(n, part.num_blocks()));
                        assert!(plus.contains(&mi(part.rgs())));
                    }
                }
                assert_eq!(seen.len(), n.pow(m as u32));
            }
        }
    }

    #[test]
    fn sign_classes_transform_by_sign() {
        for n in 2..=4 {
            let group = enumerate_group(n, GroupKind::Symmetric).unwrap();
            for m in 1..=4 {
                for part in crate::combinatorics::enumerate_partitions(m, n) {
                    if !splits(&part, n) {
                        continue;
                    }
                    let o = sn_orbit(&part, n, 0, m).unwrap();
                    for x in &o.members {
                        let s = jellyfish_sign(&part, x, n).unwrap();
                        for g in &group {
                            let y = act(g, x).unwrap();
                            assert_eq!(jellyfish_sign(&part, &y, n).unwrap(), g.sign() * s);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn class_assignment_is_anchor_independent() {
        // Re-anchoring at any member y = τ(I_π, J_π) and measuring relative to y
        // must give the same partition into two classes.
        let n = 3;
        for part in crate::combinatorics::enumerate_partitions(3, n) {
            if !splits(&part, n) {
                continue;
            }
            let o = sn_orbit(&part, n, 1, 2).unwrap();
            for anchor in &o.members {
                let tau = orbit_permutation(&part, anchor, n).unwrap();
                for x in &o.members {
                    let sigma = orbit_permutation(&part, x, n).unwrap();
                    let relative = sigma.compose(&tau.inverse()).sign();
                    let same = jellyfish_sign(&part, x, n).unwrap()
                        == jellyfish_sign(&part, anchor, n).unwrap();
                    assert_eq!(relative == 1, same);
                }
            }
        }
    }
}
