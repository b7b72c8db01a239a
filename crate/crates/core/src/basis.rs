//! Bases of equivariant linear maps `(ℝⁿ)^⊗k ⊗ ℝ^{d_k} → (ℝⁿ)^⊗l ⊗ ℝ^{d_l}`.
//!
//! Every element is a 0/1 matrix summing the matrix units `E_{I,J}` over one
//! orbit (S_n) or half-orbit (A_n) of `[n]^(l+k)`.
//!
//! Elements are ordered by partition RGS, then sign class
//! (`unsplit < plus < minus`), then feature channel `(i, j)`. That order is the
//! parameter order of [`weight_matrix`]. For `n = 2, k = 2, l = 1` under A_2,
//! parameters `λ_1 … λ_8` in this order give the weight matrix
//!
//! ```text
//!        (1,1) (1,2) (2,1) (2,2)
//!   1  [  λ1    λ3    λ5    λ7 ]
//!   2  [  λ8    λ6    λ4    λ2 ]
//! ```
//!
//! and under S_2 the rows are `(λ1, λ2, λ3, λ4)` and `(λ4, λ3, λ2, λ1)`.

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{bell_restricted, enumerate_partitions, stirling2, SetPartition};
use crate::error::{Error, Result};
use crate::group::GroupKind;
use crate::limits::{checked_pow, Limits};
use crate::orbits::{sn_orbit, split_orbit, splits, Orbit, SignClass};
use crate::sparse::{Rational, SparseMatrix};

/// Shape and symmetry of one layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayerSpec {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub group: GroupKind,
    #[serde(default = "one")]
    pub d_k: usize,
    #[serde(default = "one")]
    pub d_l: usize,
}

fn one() -> usize {
    1
}

impl LayerSpec {
    pub fn new(n: usize, k: usize, l: usize, group: GroupKind) -> Self {
        LayerSpec {
            n,
            k,
            l,
            group,
            d_k: 1,
            d_l: 1,
        }
    }

    pub fn with_features(mut self, d_k: usize, d_l: usize) -> Self {
        self.d_k = d_k;
        self.d_l = d_l;
        self
    }

    /// `(n^l·d_l, n^k·d_k)`, or `None` on overflow.
    pub fn checked_shape(&self) -> Option<(u128, u128)> {
        let rows = checked_pow(self.n, self.l)?.checked_mul(self.d_l as u128)?;
        let cols = checked_pow(self.n, self.k)?.checked_mul(self.d_k as u128)?;
        Some((rows, cols))
    }

    pub(crate) fn check(&self, limits: &Limits) -> Result<(usize, usize)> {
        if self.n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if self.d_k == 0 || self.d_l == 0 {
            return Err(Error::invalid("feature dimensions must be at least 1"));
        }
        let shape = self.checked_shape();
        limits.check_size(
            &format!(
                "a {}-layer matrix with n = {}, k = {}, l = {}",
                self.group, self.n, self.k, self.l
            ),
            shape.and_then(|(r, c)| r.checked_mul(c)),
        )?;
        let (rows, cols) = shape.expect("checked above");
        Ok((rows as usize, cols as usize))
    }

    /// The dimension predicted by the counting formulas, times `d_k·d_l`.
    pub fn dimension(&self) -> BigUint {
        let base = match self.group {
            GroupKind::Symmetric => sn_dim(self.n, self.k, self.l),
            GroupKind::Alternating => an_dim(self.n, self.k, self.l),
        };
        base * BigUint::from(self.d_k) * BigUint::from(self.d_l)
    }
}

/// One basis matrix together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub partition: SetPartition,
    pub sign_class: SignClass,
    pub matrix: SparseMatrix,
    /// `(i, j)` with `i ∈ [d_l]`, `j ∈ [d_k]`, when feature channels are present.
    pub feature: Option<(usize, usize)>,
}

/// An ordered basis of one equivariant Hom-space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerBasis {
    pub spec: LayerSpec,
    pub elements: Vec<BasisElement>,
}

impl LayerBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn matrices(&self) -> impl Iterator<Item = &SparseMatrix> + '_ {
        self.elements.iter().map(|e| &e.matrix)
    }

    /// `(rows, cols)` of every element.
    pub fn shape(&self) -> (usize, usize) {
        let s = &self.spec;
        (s.n.pow(s.l as u32) * s.d_l, s.n.pow(s.k as u32) * s.d_k)
    }
}

/// Sums the matrix units `E_{I,J}` over the members `(I, J)` of `orbit`.
pub fn matrix_from_orbit(orbit: &Orbit) -> Result<SparseMatrix> {
    matrix_from_orbit_with(orbit, &Limits::from_env())
}

pub fn matrix_from_orbit_with(orbit: &Orbit, limits: &Limits) -> Result<SparseMatrix> {
    let spec = LayerSpec::new(orbit.n, orbit.k, orbit.l, GroupKind::Symmetric);
    let (rows, cols) = spec.check(limits)?;
    let mut m = SparseMatrix::zeros(rows, cols);
    for x in &orbit.members {
        if x.order() != orbit.l + orbit.k {
            return Err(Error::invalid(format!(
                "orbit member {x} does not have order l + k = {}",
                orbit.l + orbit.k
            )));
        }
        let (out, inp) = x.split_at(orbit.l);
        m.set(out.linearize(orbit.n), inp.linearize(orbit.n), Rational::one())?;
    }
    Ok(m)
}

/// The S_n or A_n equivariant basis of `Hom((ℝⁿ)^⊗k, (ℝⁿ)^⊗l)`.
pub fn layer_basis(n: usize, k: usize, l: usize, group: GroupKind) -> Result<LayerBasis> {
    layer_basis_with(n, k, l, group, &Limits::from_env())
}

pub fn layer_basis_with(
    n: usize,
    k: usize,
    l: usize,
    group: GroupKind,
    limits: &Limits,
) -> Result<LayerBasis> {
    let spec = LayerSpec::new(n, k, l, group);
    spec.check(limits)?;
    let mut elements = Vec::new();
    for partition in enumerate_partitions(l + k, n) {
        let orbits = if group == GroupKind::Alternating && splits(&partition, n) {
            let (plus, minus) = split_orbit(&partition, n, l, k)?;
            vec![plus, minus]
        } else {
            vec![sn_orbit(&partition, n, l, k)?]
        };
        for orbit in orbits {
            elements.push(BasisElement {
                matrix: matrix_from_orbit_with(&orbit, limits)?,
                partition: orbit.partition,
                sign_class: orbit.sign_class,
                feature: None,
            });
        }
    }
    Ok(LayerBasis { spec, elements })
}

/// Dimension of the S_n-equivariant space: the `n`-restricted Bell number of `l + k`.
pub fn sn_dim(n: usize, k: usize, l: usize) -> BigUint {
    bell_restricted(l + k, n)
}

/// Dimension of the A_n-equivariant space:
/// `Σ_{t ≤ n−2} S(l+k, t) + 2·S(l+k, n−1) + 2·S(l+k, n)`, with `n = 1`
/// agreeing with S_1.
pub fn an_dim(n: usize, k: usize, l: usize) -> BigUint {
    let m = l + k;
    if n <= 1 {
        return bell_restricted(m, n);
    }
    let unsplit: BigUint = (0..=n - 2).map(|t| stirling2(m, t)).sum();
    unsplit + BigUint::from(2u32) * (stirling2(m, n - 1) + stirling2(m, n))
}

/// Contribution of the partitions with exactly `t` blocks to a dimension count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCount {
    pub t: usize,
    pub partitions: BigUint,
    pub splits: bool,
    pub contributes: BigUint,
}

/// Per-block-count breakdown whose `contributes` column sums to the dimension.
pub fn dimension_breakdown(n: usize, k: usize, l: usize, group: GroupKind) -> Vec<BlockCount> {
    let m = l + k;
    let t_min = if m == 0 { 0 } else { 1 };
    (t_min..=n.min(m))
        .map(|t| {
            let partitions = stirling2(m, t);
            let split = group == GroupKind::Alternating && n >= 2 && t + 1 >= n;
            let contributes = if split {
                &partitions * BigUint::from(2u32)
            } else {
                partitions.clone()
            };
            BlockCount {
                t,
                partitions,
                splits: split,
                contributes,
            }
        })
        .collect()
}

/// `Σ_i params[i] · basis.elements[i].matrix`.
pub fn weight_matrix(basis: &LayerBasis, params: &[Rational]) -> Result<SparseMatrix> {
    if params.len() != basis.len() {
        return Err(Error::invalid(format!(
            "expected {} parameters, got {}",
            basis.len(),
            params.len()
        )));
    }
    let (rows, cols) = basis.shape();
    let mut m = SparseMatrix::zeros(rows, cols);
    for (element, lambda) in basis.elements.iter().zip(params) {
        if lambda.is_zero() {
            continue;
        }
        m.add_scaled(&element.matrix, lambda)?;
    }
    Ok(m)
}

/// Replaces each element `X` by `X ⊗ E_{i,j}` for every feature pair
/// `(i, j) ∈ [d_l] × [d_k]`; channel indices vary fastest.
pub fn with_features(basis: &LayerBasis, d_k: usize, d_l: usize) -> Result<LayerBasis> {
    with_features_with(basis, d_k, d_l, &Limits::from_env())
}

pub fn with_features_with(
    basis: &LayerBasis,
    d_k: usize,
    d_l: usize,
    limits: &Limits,
) -> Result<LayerBasis> {
    if basis.spec.d_k != 1 || basis.spec.d_l != 1 {
        return Err(Error::invalid("basis already carries feature channels"));
    }
    let spec = basis.spec.with_features(d_k, d_l);
    spec.check(limits)?;
    let mut elements = Vec::with_capacity(basis.len() * d_k * d_l);
    for element in &basis.elements {
        for i in 1..=d_l {
            for j in 1..=d_k {
                let mut unit = SparseMatrix::zeros(d_l, d_k);
                unit.set(i - 1, j - 1, Rational::one())?;
                elements.push(BasisElement {
                    partition: element.partition.clone(),
                    sign_class: element.sign_class,
                    matrix: element.matrix.kron(&unit),
                    feature: Some((i, j)),
                });
            }
        }
    }
    Ok(LayerBasis { spec, elements })
}

/// Basis of the invariant bias vectors in `(ℝⁿ)^⊗l`, as `n^l × 1` columns.
pub fn bias_basis(n: usize, l: usize, group: GroupKind) -> Result<LayerBasis> {
    layer_basis(n, 0, l, group)
}

pub fn bias_basis_with(n: usize, l: usize, group: GroupKind, limits: &Limits) -> Result<LayerBasis> {
    layer_basis_with(n, 0, l, group, limits)
}

/// One Kronecker product of per-factor basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalElement {
    /// Index of the chosen element in each factor's basis.
    pub components: Vec<usize>,
    /// `(partition, sign class)` of each chosen element.
    pub provenance: Vec<(SetPartition, SignClass)>,
    pub matrix: SparseMatrix,
}

/// Basis for a direct product of groups acting factor-wise on an external
/// tensor product; factor 1 indexes the slowest-varying block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalBasis {
    pub factors: Vec<LayerSpec>,
    pub elements: Vec<LocalElement>,
}

impl LocalBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn local_basis(factors: &[LayerSpec]) -> Result<LocalBasis> {
    local_basis_with(factors, &Limits::from_env())
}

pub fn local_basis_with(factors: &[LayerSpec], limits: &Limits) -> Result<LocalBasis> {
    if factors.is_empty() {
        return Err(Error::invalid("at least one factor is required"));
    }
    let mut cells: Option<u128> = Some(1);
    for f in factors {
        if f.d_k != 1 || f.d_l != 1 {
            return Err(Error::invalid("local factors do not take feature channels"));
        }
        let (r, c) = f.check(limits)?;
        cells = cells.and_then(|acc| acc.checked_mul(r as u128)?.checked_mul(c as u128));
    }
    limits.check_size("the product of the factor matrices", cells)?;

    let bases = factors
        .iter()
        .map(|f| layer_basis_with(f.n, f.k, f.l, f.group, limits))
        .collect::<Result<Vec<_>>>()?;
    let elements = bases
        .iter()
        .map(|b| 0..b.len())
        .multi_cartesian_product()
        .map(|components| {
            let mut matrix = SparseMatrix::identity(1);
            let mut provenance = Vec::with_capacity(components.len());
            for (basis, &idx) in bases.iter().zip(&components) {
                let e = &basis.elements[idx];
                matrix = matrix.kron(&e.matrix);
                provenance.push((e.partition.clone(), e.sign_class));
            }
            LocalElement {
                components,
                provenance,
                matrix,
            }
        })
        .collect();
    Ok(LocalBasis {
        factors: factors.to_vec(),
        elements,
    })
}

/// Dimension of the Hom-space of a local (direct product) layer.
pub fn local_dim(factors: &[LayerSpec]) -> BigUint {
    factors.iter().map(LayerSpec::dimension).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_group, rho, Permutation};
    use crate::sparse::int;

    fn entries(m: &SparseMatrix) -> Vec<(usize, usize)> {
        m.support().collect()
    }

    #[test]
    fn matrix_from_orbit_examples() {
        let pi = SetPartition::from_rgs(vec![1, 1, 2]).unwrap();
        let o = sn_orbit(&pi, 2, 1, 2).unwrap();
        // (1 | 1,2) -> (0, 1); (2 | 2,1) -> (1, 2)
        assert_eq!(entries(&matrix_from_orbit(&o).unwrap()), vec![(0, 1), (1, 2)]);
        let (plus, _) = split_orbit(&SetPartition::from_rgs(vec![1, 1, 1]).unwrap(), 2, 1, 2).unwrap();
        assert_eq!(entries(&matrix_from_orbit(&plus).unwrap()), vec![(0, 0)]);
        let mut empty = o.clone();
        empty.members.clear();
        assert!(matrix_from_orbit(&empty).unwrap().is_zero());
    }

    #[test]
    fn counts() {
        assert_eq!(layer_basis(2, 2, 1, GroupKind::Symmetric).unwrap().len(), 4);
        assert_eq!(layer_basis(2, 2, 1, GroupKind::Alternating).unwrap().len(), 8);
        // {1|2|3} has n − 1 = 3 blocks, so it still splits under A_4
        assert_eq!(layer_basis(4, 2, 1, GroupKind::Alternating).unwrap().len(), 6);
        let a5 = layer_basis(5, 2, 1, GroupKind::Alternating).unwrap();
        let s5 = layer_basis(5, 2, 1, GroupKind::Symmetric).unwrap();
        assert_eq!(a5.len(), 5);
        assert!(a5.matrices().eq(s5.matrices()));
        assert_eq!(an_dim(3, 2, 1), BigUint::from(9u32));
        assert_eq!(an_dim(2, 2, 1), BigUint::from(8u32));
        assert_eq!(an_dim(5, 2, 1), BigUint::from(5u32));
        assert_eq!(an_dim(3, 1, 1), BigUint::from(3u32));
        assert_eq!(an_dim(1, 2, 1), BigUint::one());
        assert_eq!(an_dim(2, 1, 1), BigUint::from(4u32));
        assert_eq!(an_dim(3, 0, 0), BigUint::one());
        for n in 1..=5 {
            for m in 0..=5 {
                for group in [GroupKind::Symmetric, GroupKind::Alternating] {
                    let b = layer_basis(n, m - m / 2, m / 2, group).unwrap();
                    let spec = LayerSpec::new(n, m - m / 2, m / 2, group);
                    assert_eq!(BigUint::from(b.len()), spec.dimension());
                    let total: BigUint = dimension_breakdown(n, m - m / 2, m / 2, group)
                        .into_iter()
                        .map(|c| c.contributes)
                        .sum();
                    assert_eq!(total, spec.dimension());
                }
            }
        }
    }

    #[test]
    fn n_one_alternating_is_symmetric() {
        let a = layer_basis(1, 2, 1, GroupKind::Alternating).unwrap();
        let s = layer_basis(1, 2, 1, GroupKind::Symmetric).unwrap();
        assert_eq!(a.elements, s.elements);
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn weight_matrix_examples() {
        let basis = layer_basis(2, 2, 1, GroupKind::Alternating).unwrap();
        let zeros = vec![int(0); 8];
        assert!(weight_matrix(&basis, &zeros).unwrap().is_zero());
        for i in 0..8 {
            let mut hot = zeros.clone();
            hot[i] = int(1);
            assert_eq!(weight_matrix(&basis, &hot).unwrap(), basis.elements[i].matrix);
        }
        assert!(weight_matrix(&basis, &zeros[..7]).is_err());
        let lambdas: Vec<Rational> = (1..=8).map(int).collect();
        let m = weight_matrix(&basis, &lambdas).unwrap();
        let dense = m.to_dense();
        assert_eq!(dense[0], [1, 3, 5, 7].map(int).to_vec());
        assert_eq!(dense[1], [8, 6, 4, 2].map(int).to_vec());
    }

    #[test]
    fn feature_counts() {
        let sym = layer_basis(2, 2, 1, GroupKind::Symmetric).unwrap();
        let same = with_features(&sym, 1, 1).unwrap();
        assert!(same.matrices().eq(sym.matrices()));
        assert_eq!(with_features(&sym, 2, 1).unwrap().len(), 8);
        let alt = layer_basis(2, 2, 1, GroupKind::Alternating).unwrap();
        let f = with_features(&alt, 2, 3).unwrap();
        assert_eq!(f.len(), 48);
        assert_eq!(f.shape(), (6, 8));
        assert_eq!(f.elements[1].feature, Some((1, 2)));
        assert!(with_features(&f, 2, 2).is_err());
        // X ⊗ E_{2,1}: X+ of {1,2,3} has (0,0) -> (0*3+1, 0*2+0)
        assert_eq!(entries(&f.elements[2].matrix), vec![(1, 0)]);
    }

    #[test]
    fn bias_examples() {
        for n in 1..=4 {
            let b = bias_basis(n, 1, GroupKind::Symmetric).unwrap();
            assert_eq!(b.len(), 1);
            assert_eq!(b.elements[0].matrix.nnz(), n);
            assert_eq!(b.shape(), (n, 1));
        }
        let b = bias_basis(2, 1, GroupKind::Alternating).unwrap();
        let cols: Vec<_> = b.matrices().map(entries).collect();
        assert_eq!(cols, vec![vec![(0, 0)], vec![(1, 0)]]);
        let scalar = bias_basis(3, 0, GroupKind::Alternating).unwrap();
        assert_eq!(scalar.len(), 1);
        assert_eq!(scalar.elements[0].matrix, SparseMatrix::identity(1));
    }

    #[test]
    fn local_examples() {
        let single = local_basis(&[LayerSpec::new(2, 2, 1, GroupKind::Alternating)]).unwrap();
        let direct = layer_basis(2, 2, 1, GroupKind::Alternating).unwrap();
        assert!(single.elements.iter().map(|e| &e.matrix).eq(direct.matrices()));

        let a2 = LayerSpec::new(2, 1, 1, GroupKind::Alternating);
        let pair = local_basis(&[a2, a2]).unwrap();
        assert_eq!(pair.len(), 16);
        assert_eq!(local_dim(&[a2, a2]), BigUint::from(16u32));
        assert_eq!(pair.elements[1].components, vec![0, 1]);

        let row = LayerSpec::new(3, 1, 0, GroupKind::Symmetric);
        let col = LayerSpec::new(3, 0, 1, GroupKind::Symmetric);
        let outer = local_basis(&[row, col]).unwrap();
        assert_eq!(outer.len(), 1);
        let m = &outer.elements[0].matrix;
        assert_eq!(m.shape(), (3, 3));
        assert_eq!(m.nnz(), 9);
        assert!(local_basis(&[]).is_err());
    }

    #[test]
    fn size_guard() {
        let tight = Limits::default().with_max_size(100);
        let err = layer_basis_with(4, 2, 2, GroupKind::Symmetric, &tight).unwrap_err();
        assert!(matches!(err, Error::ResourceBound { .. }));
        assert!(layer_basis_with(3, 2, 2, GroupKind::Symmetric, &tight).is_ok());
        let a = LayerSpec::new(3, 1, 1, GroupKind::Symmetric);
        assert!(local_basis_with(&[a, a, a], &tight).is_err());
    }

    #[test]
    fn elements_commute_with_rho() {
        for n in 1..=3 {
            for group in [GroupKind::Symmetric, GroupKind::Alternating] {
                let g = enumerate_group(n, group).unwrap();
                let basis = layer_basis(n, 2, 1, group).unwrap();
                for sigma in &g {
                    let out = rho(sigma, 1).unwrap();
                    let inp = rho(sigma, 2).unwrap();
                    for x in basis.matrices() {
                        assert_eq!(out.matmul(x).unwrap(), x.matmul(&inp).unwrap());
                    }
                }
            }
        }
        // the plus element of a split orbit is not S_n-equivariant
        let basis = layer_basis(2, 2, 1, GroupKind::Alternating).unwrap();
        let swap = Permutation::new(vec![2, 1]).unwrap();
        let x = &basis.elements[0].matrix;
        assert_ne!(
            rho(&swap, 1).unwrap().matmul(x).unwrap(),
            x.matmul(&rho(&swap, 2).unwrap()).unwrap()
        );
    }
}
