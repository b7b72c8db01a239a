//! Test-side reference implementations, written without the library's
//! group or orbit code.

#![allow(dead_code)]

use equilayer::SparseMatrix;

/// All permutations of `1..=n` as image vectors, with their parity by
/// inversion count.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, n, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n + 1], n, &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, inversions % 2 == 0)
        })
        .collect()
}

/// Group elements: all of S_n, or the even ones for A_n.
pub fn group(n: usize, alternating: bool) -> Vec<Vec<usize>> {
    permutations(n)
        .into_iter()
        .filter(|(_, even)| !alternating || *even)
        .map(|(p, _)| p)
        .collect()
}

pub fn odd_permutations(n: usize) -> Vec<Vec<usize>> {
    permutations(n).into_iter().filter(|(_, even)| !even).map(|(p, _)| p).collect()
}

/// Image of the 0-based linear index of an order-`order` multi-index over
/// `[n]` when σ acts on every entry.
pub fn permute_index(sigma: &[usize], n: usize, order: usize, index: usize) -> usize {
    let mut digits = vec![0; order];
    let mut rest = index;
    for d in digits.iter_mut().rev() {
        *d = rest % n;
        rest /= n;
    }
    digits.iter().fold(0, |acc, &d| acc * n + (sigma[d] - 1))
}

pub fn pow(n: usize, e: usize) -> usize {
    n.pow(e as u32)
}

/// `ρ_l(σ)·X·ρ_k(σ)⁻¹ = X`, checked entrywise: each entry must reappear
/// unchanged at its permuted position. Row and column maps carry feature
/// channels as the fastest index.
pub fn commutes(x: &SparseMatrix, row_map: impl Fn(usize) -> usize, col_map: impl Fn(usize) -> usize) -> bool {
    x.iter().all(|(r, c, v)| x.get(row_map(r), col_map(c)) == *v)
}

/// Equivariance of an `n^l·d_l × n^k·d_k` matrix under one permutation.
pub fn layer_commutes(x: &SparseMatrix, sigma: &[usize], n: usize, k: usize, l: usize, d_k: usize, d_l: usize) -> bool {
    commutes(
        x,
        |r| permute_index(sigma, n, l, r / d_l) * d_l + r % d_l,
        |c| permute_index(sigma, n, k, c / d_k) * d_k + c % d_k,
    )
}

/// `σ·X·σ⁻¹` under the tensor action, as a new matrix.
pub fn conjugate(x: &SparseMatrix, sigma: &[usize], n: usize, k: usize, l: usize) -> SparseMatrix {
    let entries = x
        .iter()
        .map(|(r, c, v)| (permute_index(sigma, n, l, r), permute_index(sigma, n, k, c), v.clone()));
    SparseMatrix::from_entries(x.rows(), x.cols(), entries).unwrap()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
