//! Brute-force checks that do not rely on orbits or partitions.
//!
//! The commutant `{X : ρ_out(g)·X = X·ρ_in(g) for all g}` is computed by
//! assembling one linear constraint per matrix cell and group element and
//! taking the null space exactly. The jellyfish table is recomputed as the
//! literal composite `det ∘ g_π`, with a real integer determinant.

mod echelon;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::basis::{LayerBasis, LayerSpec, LocalBasis};
use crate::combinatorics::SetPartition;
use crate::error::{Error, Result};
use crate::group::{act, enumerate_group_with, generators, rho_with, GroupKind, MultiIndex, Permutation};
use crate::limits::Limits;
use crate::orbits::splits;
use crate::sparse::{Rational, SparseMatrix};

use echelon::{integer_row, Echelon, Row};

/// Which group elements contribute constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstraintSet {
    /// Every element of the group.
    #[default]
    FullGroup,
    /// A generating set only; gives the same commutant.
    Generators,
}

/// A group element acting on the input and output spaces of a layer.
#[derive(Debug, Clone)]
pub struct GroupAction {
    pub label: String,
    pub out: SparseMatrix,
    pub inp: SparseMatrix,
}

fn group_elements(n: usize, group: GroupKind, set: ConstraintSet, limits: &Limits) -> Result<Vec<Permutation>> {
    match set {
        ConstraintSet::FullGroup => enumerate_group_with(n, group, limits),
        ConstraintSet::Generators => generators(n, group),
    }
}

/// `ρ_l(σ) ⊗ I_{d_l}` and `ρ_k(σ) ⊗ I_{d_k}` for each chosen σ.
pub fn layer_actions(spec: &LayerSpec, set: ConstraintSet, limits: &Limits) -> Result<Vec<GroupAction>> {
    spec.check(limits)?;
    group_elements(spec.n, spec.group, set, limits)?
        .into_iter()
        .map(|sigma| {
            Ok(GroupAction {
                label: sigma.to_string(),
                out: rho_with(&sigma, spec.l, limits)?.kron(&SparseMatrix::identity(spec.d_l)),
                inp: rho_with(&sigma, spec.k, limits)?.kron(&SparseMatrix::identity(spec.d_k)),
            })
        })
        .collect()
}

/// Actions of the direct product of the factor groups on the external
/// tensor product, factor 1 slowest.
pub fn local_actions(factors: &[LayerSpec], set: ConstraintSet, limits: &Limits) -> Result<Vec<GroupAction>> {
    if factors.is_empty() {
        return Err(Error::invalid("at least one factor is required"));
    }
    let per_factor = factors
        .iter()
        .map(|f| layer_actions(f, set, limits))
        .collect::<Result<Vec<_>>>()?;
    let tuples: Vec<Vec<GroupAction>> = match set {
        ConstraintSet::FullGroup => per_factor
            .iter()
            .map(|acts| acts.iter().cloned())
            .multi_cartesian_product()
            .collect(),
        ConstraintSet::Generators => {
            // each generator of one factor, identity in every other factor
            let identities: Vec<GroupAction> = factors
                .iter()
                .map(|f| {
                    let (r, c) = f.check(limits)?;
                    Ok(GroupAction {
                        label: Permutation::identity(f.n).to_string(),
                        out: SparseMatrix::identity(r),
                        inp: SparseMatrix::identity(c),
                    })
                })
                .collect::<Result<_>>()?;
            let mut tuples = Vec::new();
            for (r, acts) in per_factor.iter().enumerate() {
                for a in acts {
                    let mut t = identities.clone();
                    t[r] = a.clone();
                    tuples.push(t);
                }
            }
            tuples
        }
    };
    Ok(tuples
        .into_iter()
        .map(|t| {
            let mut out = SparseMatrix::identity(1);
            let mut inp = SparseMatrix::identity(1);
            for a in &t {
                out = out.kron(&a.out);
                inp = inp.kron(&a.inp);
            }
            GroupAction {
                label: format!("({})", t.iter().map(|a| a.label.as_str()).join(", ")),
                out,
                inp,
            }
        })
        .collect())
}

fn check_oracle_size(actions: usize, rows: usize, cols: usize, limits: &Limits) -> Result<()> {
    let cells = (actions as u128)
        .checked_mul(rows as u128)
        .and_then(|v| v.checked_mul(cols as u128));
    match cells {
        Some(c) if c <= limits.max_oracle_cells => Ok(()),
        _ => Err(Error::ResourceBound {
            what: format!("a brute-force system over {actions} group elements and {rows}×{cols} unknowns"),
            needed: cells.unwrap_or(u128::MAX),
            limit: limits.max_oracle_cells,
        }),
    }
}

/// Row-reduced constraints `ρ_out·X − X·ρ_in = 0`, unknown `X[r][c]` at `r·cols + c`.
fn constraint_echelon(actions: &[GroupAction], rows: usize, cols: usize) -> Echelon {
    let mut echelon = Echelon::new(rows * cols);
    for action in actions {
        let mut out_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); rows];
        for (r, a, v) in action.out.iter() {
            out_rows[r].push((a, v));
        }
        let mut inp_cols: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); cols];
        for (b, c, v) in action.inp.iter() {
            inp_cols[c].push((b, v));
        }
        for r in 0..rows {
            for c in 0..cols {
                let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
                for &(a, v) in &out_rows[r] {
                    *coeffs.entry(a * cols + c).or_insert_with(Rational::zero) += v;
                }
                for &(b, v) in &inp_cols[c] {
                    *coeffs.entry(r * cols + b).or_insert_with(Rational::zero) -= v;
                }
                let row = integer_row(coeffs);
                if !row.is_empty() {
                    echelon.insert(row);
                }
            }
        }
    }
    echelon
}

fn matrix_row(m: &SparseMatrix) -> Row {
    let cols = m.cols();
    integer_row(m.iter().map(|(r, c, v)| (r * cols + c, v.clone())))
}

/// Dimension of the commutant of a list of actions on `rows × cols` matrices.
pub fn commutant_dimension(actions: &[GroupAction], rows: usize, cols: usize) -> usize {
    rows * cols - constraint_echelon(actions, rows, cols).rank()
}

/// A basis of the commutant, as integer matrices.
pub fn commutant_basis(actions: &[GroupAction], rows: usize, cols: usize) -> Vec<SparseMatrix> {
    constraint_echelon(actions, rows, cols)
        .null_space()
        .into_iter()
        .map(|v| {
            SparseMatrix::from_entries(
                rows,
                cols,
                v.into_iter()
                    .map(|(i, x)| (i / cols, i % cols, BigRational::from_integer(x))),
            )
            .expect("indices come from a rows×cols system")
        })
        .collect()
}

/// Dimension of the space of equivariant maps, found by brute force.
pub fn equivariant_dimension_bruteforce(n: usize, k: usize, l: usize, group: GroupKind) -> Result<usize> {
    equivariant_dimension_bruteforce_with(&LayerSpec::new(n, k, l, group), ConstraintSet::FullGroup, &Limits::from_env())
}

pub fn equivariant_dimension_bruteforce_with(spec: &LayerSpec, set: ConstraintSet, limits: &Limits) -> Result<usize> {
    let (rows, cols) = spec.check(limits)?;
    let actions = layer_actions(spec, set, limits)?;
    check_oracle_size(actions.len(), rows, cols, limits)?;
    Ok(commutant_dimension(&actions, rows, cols))
}

/// A group element under which a matrix fails to commute.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub group_element: String,
    pub differing_entries: usize,
    /// Largest `|(ρ_out·M − M·ρ_in)[r][c]|`, as an exact fraction.
    pub max_deviation: String,
}

/// Outcome of an equivariance check; `witness` is set exactly when it failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub ok: bool,
    pub witness: Option<Violation>,
}

/// Checks `ρ_out(g)·M = M·ρ_in(g)` for every action, stopping at the first failure.
pub fn verify_against(m: &SparseMatrix, actions: &[GroupAction]) -> Result<Verification> {
    for action in actions {
        if action.out.cols() != m.rows() || m.cols() != action.inp.rows() {
            return Err(Error::invalid(format!(
                "matrix is {}×{} but the group acts on {}×{}",
                m.rows(),
                m.cols(),
                action.out.rows(),
                action.inp.cols()
            )));
        }
        let lhs = action.out.matmul(m)?;
        let rhs = m.matmul(&action.inp)?;
        if lhs != rhs {
            let (count, max) = lhs.difference(&rhs);
            return Ok(Verification {
                ok: false,
                witness: Some(Violation {
                    group_element: action.label.clone(),
                    differing_entries: count,
                    max_deviation: max.to_string(),
                }),
            });
        }
    }
    Ok(Verification { ok: true, witness: None })
}

/// Checks `M` against every element of the layer's group.
pub fn verify_equivariance(m: &SparseMatrix, spec: &LayerSpec) -> Result<Verification> {
    verify_equivariance_with(m, spec, &Limits::from_env())
}

pub fn verify_equivariance_with(m: &SparseMatrix, spec: &LayerSpec, limits: &Limits) -> Result<Verification> {
    let (rows, cols) = spec.check(limits)?;
    if m.shape() != (rows, cols) {
        return Err(Error::invalid(format!(
            "matrix is {}×{}, expected {rows}×{cols}",
            m.rows(),
            m.cols()
        )));
    }
    verify_against(m, &layer_actions(spec, ConstraintSet::FullGroup, limits)?)
}

/// Integer determinant by fraction-free (Bareiss) elimination.
fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(e_{k_1} ⊗ … ⊗ e_{k_n})`: the determinant of the matrix whose
/// columns are `e_{k_1}, …, e_{k_n}`.
fn det_of_basis_tensor(kk: &MultiIndex, n: usize) -> BigInt {
    let mut a = vec![vec![BigInt::zero(); n]; n];
    for (col, &row) in kk.entries().iter().enumerate() {
        a[row - 1][col] = BigInt::one();
    }
    determinant(a)
}

/// `f_π(e_x)` for every `x ∈ [n]^(l+k)`, computed as `det(g_π(e_x))` with
/// `g_π = Σ E_{K,(I,J)}` over the S_n orbit of `((1, …, n), I_π, J_π)`.
pub fn full_fpi_table(
    partition: &SetPartition,
    n: usize,
    l: usize,
    k: usize,
) -> Result<BTreeMap<MultiIndex, i8>> {
    full_fpi_table_with(partition, n, l, k, &Limits::from_env())
}

pub fn full_fpi_table_with(
    partition: &SetPartition,
    n: usize,
    l: usize,
    k: usize,
    limits: &Limits,
) -> Result<BTreeMap<MultiIndex, i8>> {
    if partition.m() != l + k {
        return Err(Error::invalid("partition size does not match l + k"));
    }
    if partition.num_blocks() > n || !splits(partition, n) {
        return Err(Error::invalid(format!(
            "f_π is only defined for partitions with n − 1 or n blocks (n = {n}, t = {})",
            partition.num_blocks()
        )));
    }
    limits.check_size(
        "the f_π table",
        crate::limits::checked_pow(n, l + k),
    )?;
    let labelling = MultiIndex::new(partition.rgs().to_vec());
    let top_row = MultiIndex::new((1..=n).collect());
    let mut g_pi: BTreeMap<MultiIndex, BTreeSet<MultiIndex>> = BTreeMap::new();
    for sigma in enumerate_group_with(n, GroupKind::Symmetric, limits)? {
        g_pi.entry(act(&sigma, &labelling)?)
            .or_default()
            .insert(act(&sigma, &top_row)?);
    }
    let mut table = BTreeMap::new();
    for x in MultiIndex::all(n, l + k) {
        let value: BigInt = g_pi
            .get(&x)
            .map(|ks| ks.iter().map(|kk| det_of_basis_tensor(kk, n)).sum())
            .unwrap_or_default();
        let value = if value.is_zero() {
            0
        } else if value.is_one() {
            1
        } else if value == -BigInt::one() {
            -1
        } else {
            return Err(Error::invalid(format!("f_π({x}) = {value} is not in {{-1, 0, 1}}")));
        };
        table.insert(x, value);
    }
    Ok(table)
}

/// A single failed check inside a [`SubspaceReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub element: Option<usize>,
    pub group_element: Option<String>,
    pub detail: String,
}

/// Outcome of comparing a constructed basis with the brute-force commutant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceReport {
    /// Dimension of the brute-force commutant.
    pub dimension: usize,
    pub element_count: usize,
    pub rows: usize,
    pub cols: usize,
    /// Every element commutes with the group and supports are disjoint.
    pub basis_ok: bool,
    /// Elements are independent and span exactly the commutant.
    pub span_ok: bool,
    /// The commutant is the whole matrix space.
    pub full_space: bool,
    pub failures: Vec<Failure>,
}

/// Full comparison of `matrices` against the commutant of `actions`.
pub fn check_matrices(matrices: &[&SparseMatrix], actions: &[GroupAction], rows: usize, cols: usize) -> Result<SubspaceReport> {
    let mut failures = Vec::new();
    let mut equivariant = true;
    for (i, m) in matrices.iter().enumerate() {
        if m.shape() != (rows, cols) {
            return Err(Error::invalid(format!("element {i} has the wrong shape")));
        }
        if let Some(w) = verify_against(m, actions)?.witness {
            equivariant = false;
            failures.push(Failure {
                element: Some(i),
                group_element: Some(w.group_element),
                detail: format!(
                    "{} entries differ, max deviation {}",
                    w.differing_entries, w.max_deviation
                ),
            });
        }
    }

    let mut disjoint = true;
    let mut owner: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, m) in matrices.iter().enumerate() {
        for cell in m.support() {
            if let Some(j) = owner.insert(cell, i) {
                disjoint = false;
                failures.push(Failure {
                    element: Some(i),
                    group_element: None,
                    detail: format!("shares cell {cell:?} with element {j}"),
                });
            }
        }
    }

    let constraints = constraint_echelon(actions, rows, cols);
    let dimension = rows * cols - constraints.rank();

    let mut spanned = Echelon::new(rows * cols);
    let mut independent = true;
    for (i, m) in matrices.iter().enumerate() {
        if !spanned.insert(matrix_row(m)) {
            independent = false;
            failures.push(Failure {
                element: Some(i),
                group_element: None,
                detail: "linearly dependent on earlier elements".into(),
            });
        }
    }
    let mut contained = true;
    for (i, v) in constraints.null_space().into_iter().enumerate() {
        if !spanned.contains(v) {
            contained = false;
            failures.push(Failure {
                element: None,
                group_element: None,
                detail: format!("commutant basis vector {i} is not a combination of the elements"),
            });
        }
    }
    if matrices.len() != dimension {
        failures.push(Failure {
            element: None,
            group_element: None,
            detail: format!("{} elements but the commutant has dimension {dimension}", matrices.len()),
        });
    }

    Ok(SubspaceReport {
        dimension,
        element_count: matrices.len(),
        rows,
        cols,
        basis_ok: equivariant && disjoint,
        span_ok: independent && contained && matrices.len() == dimension,
        full_space: dimension == rows * cols,
        failures,
    })
}

/// Verifies a layer basis against the brute-force commutant.
pub fn check_basis(basis: &LayerBasis) -> Result<SubspaceReport> {
    check_basis_with(basis, ConstraintSet::FullGroup, &Limits::from_env())
}

pub fn check_basis_with(basis: &LayerBasis, set: ConstraintSet, limits: &Limits) -> Result<SubspaceReport> {
    let (rows, cols) = basis.spec.check(limits)?;
    let actions = layer_actions(&basis.spec, set, limits)?;
    check_oracle_size(actions.len(), rows, cols, limits)?;
    let matrices: Vec<&SparseMatrix> = basis.matrices().collect();
    check_matrices(&matrices, &actions, rows, cols)
}

/// Verifies a local (direct product) basis against the brute-force commutant.
pub fn check_local_basis(basis: &LocalBasis) -> Result<SubspaceReport> {
    check_local_basis_with(basis, ConstraintSet::FullGroup, &Limits::from_env())
}

pub fn check_local_basis_with(basis: &LocalBasis, set: ConstraintSet, limits: &Limits) -> Result<SubspaceReport> {
    let actions = local_actions(&basis.factors, set, limits)?;
    let (rows, cols) = (actions[0].out.rows(), actions[0].inp.rows());
    check_oracle_size(actions.len(), rows, cols, limits)?;
    let matrices: Vec<&SparseMatrix> = basis.elements.iter().map(|e| &e.matrix).collect();
    check_matrices(&matrices, &actions, rows, cols)
}

/// Rank of a set of matrices of equal shape, for tests and diagnostics.
pub fn rank_of(matrices: &[&SparseMatrix]) -> usize {
    let Some(first) = matrices.first() else { return 0 };
    let mut e = Echelon::new(first.rows() * first.cols());
    for m in matrices {
        e.insert(matrix_row(m));
    }
    e.rank()
}
