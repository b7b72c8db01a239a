//! Incremental reduced row echelon form over the integers.
//!
//! Rows are sparse and kept primitive (content 1, positive pivot). Combining
//! two rows is the fraction-free step `a·x − b·y`, so no division other than
//! exact content removal ever happens.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type Row = BTreeMap<usize, BigInt>;

/// `a·x − b·y`, dropping cancelled entries.
fn combine(a: &BigInt, x: &Row, b: &BigInt, y: &Row) -> Row {
    let mut out: Row = x.iter().map(|(&c, v)| (c, a * v)).collect();
    for (&c, v) in y {
        let entry = out.entry(c).or_insert_with(BigInt::zero);
        *entry -= b * v;
        if entry.is_zero() {
            out.remove(&c);
        }
    }
    out
}

fn make_primitive(row: &mut Row) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let negate = row.values().next().is_some_and(|v| v.is_negative());
    if g.is_zero() {
        return;
    }
    if negate {
        g = -g;
    }
    if !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

/// Clears denominators of a rational row, giving a primitive integer row.
pub(crate) fn integer_row(row: impl IntoIterator<Item = (usize, BigRational)>) -> Row {
    let entries: Vec<(usize, BigRational)> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out = Row::new();
    for (c, v) in entries {
        let scaled = v * BigRational::from_integer(lcm.clone());
        let e = out.entry(c).or_insert_with(BigInt::zero);
        *e += scaled.to_integer();
        if e.is_zero() {
            out.remove(&c);
        }
    }
    make_primitive(&mut out);
    out
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Echelon {
    width: usize,
    /// pivot column -> row whose first entry sits in that column
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    pub(crate) fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: BTreeMap::new(),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: Row) -> Row {
        let present: Vec<usize> = row
            .keys()
            .copied()
            .filter(|c| self.rows.contains_key(c))
            .collect();
        // pivot rows are fully reduced, so eliminating one pivot column never
        // reintroduces another
        for c in present {
            let Some(a) = row.get(&c).cloned() else { continue };
            let pivot_row = &self.rows[&c];
            let p = &pivot_row[&c];
            row = combine(p, &row, &a, pivot_row);
            make_primitive(&mut row);
        }
        row
    }

    /// Adds a row to the span; returns whether the rank grew.
    pub(crate) fn insert(&mut self, row: Row) -> bool {
        debug_assert!(row.keys().all(|&c| c < self.width));
        let mut row = self.reduce(row);
        let Some((&pivot, _)) = row.iter().next() else {
            return false;
        };
        make_primitive(&mut row);
        let p = row[&pivot].clone();
        for other in self.rows.values_mut() {
            if let Some(b) = other.get(&pivot).cloned() {
                *other = combine(&p, other, &b, &row);
                make_primitive(other);
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub(crate) fn contains(&self, row: Row) -> bool {
        self.reduce(row).is_empty()
    }

    /// A basis of `{v : row·v = 0 for every row}`, one vector per free column,
    /// scaled to integers.
    pub(crate) fn null_space(&self) -> Vec<Row> {
        let mut out = Vec::with_capacity(self.width - self.rank());
        for free in (0..self.width).filter(|c| !self.rows.contains_key(c)) {
            // v_free = 1, v_pivot = -row[free] / row[pivot]
            let mut v: Vec<(usize, BigRational)> = vec![(free, BigRational::one())];
            for (&pivot, row) in &self.rows {
                if let Some(b) = row.get(&free) {
                    v.push((pivot, -BigRational::new(b.clone(), row[&pivot].clone())));
                }
            }
            out.push(integer_row(v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> Row {
        entries.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(row(&[(0, 2), (1, 4)])));
        assert!(!e.insert(row(&[(0, -1), (1, -2)])));
        assert!(e.insert(row(&[(1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(row(&[(0, 1), (1, 5), (2, 1)])));
        assert!(!e.contains(row(&[(2, 1)])));
        let ns = e.null_space();
        assert_eq!(ns.len(), 1);
        // orthogonal to both rows
        let v = &ns[0];
        let dot = |r: &Row| -> BigInt {
            r.iter()
                .map(|(c, x)| x * v.get(c).cloned().unwrap_or_default())
                .sum()
        };
        assert!(dot(&row(&[(0, 2), (1, 4)])).is_zero());
        assert!(dot(&row(&[(1, 3), (2, 1)])).is_zero());
    }

    #[test]
    fn integer_rows_are_primitive() {
        let r = integer_row(vec![
            (0, BigRational::new(1.into(), 2.into())),
            (3, BigRational::new((-1).into(), 3.into())),
        ]);
        assert_eq!(r, row(&[(0, 3), (3, -2)]));
    }

    #[test]
    fn rank_of_random_integer_matrices_matches_dense_oracle() {
        // dense fraction-based elimination as an independent reference
        fn dense_rank(m: &[Vec<i64>]) -> usize {
            let mut a: Vec<Vec<BigRational>> = m
                .iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect();
            let (h, w) = (a.len(), a[0].len());
            let mut rank = 0;
            for c in 0..w {
                let Some(p) = (rank..h).find(|&r| !a[r][c].is_zero()) else { continue };
                a.swap(rank, p);
                for r in 0..h {
                    if r != rank && !a[r][c].is_zero() {
                        let f = &a[r][c] / &a[rank][c];
                        for j in 0..w {
                            let d = &f * &a[rank][j];
                            a[r][j] -= d;
                        }
                    }
                }
                rank += 1;
            }
            rank
        }
        let mut seed = 12345u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 5) as i64 - 2
        };
        for _ in 0..50 {
            let m: Vec<Vec<i64>> = (0..5).map(|_| (0..6).map(|_| next()).collect()).collect();
            let mut e = Echelon::new(6);
            for r in &m {
                e.insert(r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(c, &v)| (c, BigInt::from(v))).collect());
            }
            assert_eq!(e.rank(), dense_rank(&m));
            assert_eq!(e.null_space().len(), 6 - e.rank());
        }
    }
}
