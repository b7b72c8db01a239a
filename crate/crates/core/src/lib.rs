//! Bases of linear maps `(ℝⁿ)^⊗k → (ℝⁿ)^⊗l` that commute with the symmetric
//! group S_n or the alternating group A_n.
//!
//! Every basis element is a sparse 0/1 matrix built from one set partition of
//! `[l + k]`: the sum of matrix units over an S_n orbit, or, when the
//! partition has `n − 1` or `n` blocks and the group is A_n, over one of the
//! two halves of that orbit. Feature channels, bias vectors and direct
//! products of groups are supported, and [`oracle`] recomputes everything by
//! brute force for checking.
//!
//! ```
//! use equilayer::{layer_basis, GroupKind};
//!
//! let basis = layer_basis(3, 2, 1, GroupKind::Alternating).unwrap();
//! assert_eq!(basis.len(), 9);
//! ```

pub mod basis;
pub mod cli;
pub mod combinatorics;
pub mod document;
pub mod error;
pub mod group;
pub mod limits;
pub mod oracle;
pub mod orbits;
pub mod sparse;

pub use basis::{
    an_dim, bias_basis, layer_basis, local_basis, matrix_from_orbit, sn_dim, weight_matrix,
    with_features, BasisElement, LayerBasis, LayerSpec, LocalBasis, LocalElement,
};
pub use combinatorics::{bell_restricted, block_labelling, enumerate_partitions, stirling2, SetPartition};
pub use error::{Error, Result};
pub use group::{act, enumerate_group, rho, sign, GroupKind, MultiIndex, Permutation};
pub use limits::Limits;
pub use oracle::{check_basis, equivariant_dimension_bruteforce, full_fpi_table, verify_equivariance, SubspaceReport};
pub use orbits::{jellyfish_sign, sn_orbit, split_orbit, splits, Orbit, SignClass};
pub use sparse::{Rational, SparseMatrix};
