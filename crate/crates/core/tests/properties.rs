mod common;

use equilayer::document::MatrixDocument;
use equilayer::{
    act, bell_restricted, block_labelling, enumerate_partitions, jellyfish_sign, layer_basis, rho, sign, sn_orbit,
    splits, stirling2, weight_matrix, GroupKind, MultiIndex, Permutation, Rational, SetPartition,
};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn multi_index(n: usize, order: usize) -> impl Strategy<Value = MultiIndex> {
    proptest::collection::vec(1..=n, order).prop_map(MultiIndex::new)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1_000_000_000_000i64..1_000_000_000_000, 1i64..1000)
        .prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
}

fn group() -> impl Strategy<Value = GroupKind> {
    prop_oneof![Just(GroupKind::Symmetric), Just(GroupKind::Alternating)]
}

/// `(n, k, l)` with `n ≤ 4`, `k + l ≤ 4`.
fn small_layer() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=4, 0usize..=4).prop_flat_map(|(n, m)| (Just(n), 0..=m, Just(m))).prop_map(|(n, k, m)| (n, k, m - k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partitions_are_distinct_canonical_and_counted(m in 0usize..=7, max_blocks in 0usize..=7) {
        let parts = enumerate_partitions(m, max_blocks);
        prop_assert_eq!(BigUint::from(parts.len()), bell_restricted(m, max_blocks));
        for w in parts.windows(2) {
            prop_assert!(w[0].rgs() < w[1].rgs());
        }
        for p in &parts {
            prop_assert!(p.num_blocks() <= max_blocks);
            prop_assert_eq!(&SetPartition::from_blocks(m, &p.blocks()).unwrap(), p);
            prop_assert_eq!(&SetPartition::parse_rgs(&p.rgs_string()).unwrap(), p);
        }
        let by_blocks: BigUint = (0..=max_blocks.min(m)).map(|t| stirling2(m, t)).sum();
        prop_assert_eq!(by_blocks, bell_restricted(m, max_blocks));
    }

    #[test]
    fn stirling_recurrence(m in 1usize..=20, t in 1usize..=20) {
        prop_assert_eq!(
            stirling2(m, t),
            BigUint::from(t) * stirling2(m - 1, t) + stirling2(m - 1, t - 1)
        );
    }

    #[test]
    fn sign_is_a_homomorphism((s, t) in (1usize..=7).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        prop_assert_eq!(sign(&s.compose(&t)), sign(&s) * sign(&t));
        prop_assert!(s.compose(&s.inverse()).is_identity());
        prop_assert_eq!(sign(&s.inverse()), sign(&s));
    }

    #[test]
    fn action_is_a_homomorphism(
        (s, t, x) in (1usize..=5, 0usize..=5)
            .prop_flat_map(|(n, m)| (permutation(n), permutation(n), multi_index(n, m)))
    ) {
        let composed = act(&s.compose(&t), &x).unwrap();
        prop_assert_eq!(composed, act(&s, &act(&t, &x).unwrap()).unwrap());
    }

    #[test]
    fn rho_is_a_homomorphism(
        (s, t, order) in (1usize..=4, 0usize..=3).prop_flat_map(|(n, m)| (permutation(n), permutation(n), Just(m)))
    ) {
        let lhs = rho(&s.compose(&t), order).unwrap();
        let rhs = rho(&s, order).unwrap().matmul(&rho(&t, order).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linearization_round_trips((n, x) in (1usize..=6, 0usize..=5).prop_flat_map(|(n, m)| (Just(n), multi_index(n, m)))) {
        let idx = x.linearize(n);
        prop_assert!(idx < common::pow(n, x.order()));
        prop_assert_eq!(MultiIndex::from_linear(n, x.order(), idx), x);
    }

    #[test]
    fn block_labelling_lies_in_its_orbit((n, k, l) in small_layer(), pick in any::<prop::sample::Index>()) {
        let parts = enumerate_partitions(l + k, n);
        let p = &parts[pick.index(parts.len())];
        let (i, j) = block_labelling(p, l, k).unwrap();
        let orbit = sn_orbit(p, n, l, k).unwrap();
        prop_assert!(orbit.contains(&i.concat(&j)));
        let t = p.num_blocks();
        prop_assert_eq!(orbit.len(), common::factorial(n) / common::factorial(n - t));
    }

    #[test]
    fn jellyfish_sign_transforms_by_sign(
        (n, m, s, pick, member) in (2usize..=5, 1usize..=5)
            .prop_flat_map(|(n, m)| (Just(n), Just(m), permutation(n), any::<prop::sample::Index>(), any::<prop::sample::Index>()))
    ) {
        let parts: Vec<SetPartition> = enumerate_partitions(m, n).into_iter().filter(|p| splits(p, n)).collect();
        prop_assume!(!parts.is_empty());
        let p = &parts[pick.index(parts.len())];
        let orbit = sn_orbit(p, n, m, 0).unwrap();
        let x = &orbit.members[member.index(orbit.len())];
        let moved = act(&s, x).unwrap();
        prop_assert_eq!(
            jellyfish_sign(p, &moved, n).unwrap(),
            sign(&s) * jellyfish_sign(p, x, n).unwrap()
        );
    }

    #[test]
    fn weight_matrices_are_equivariant(
        ((n, k, l), g, seed) in (small_layer(), group(), proptest::collection::vec(rational(), 64))
    ) {
        let basis = layer_basis(n, k, l, g).unwrap();
        let params = &seed[..basis.len()];
        let w = weight_matrix(&basis, params).unwrap();
        for sigma in common::group(n, g == GroupKind::Alternating) {
            prop_assert!(common::layer_commutes(&w, &sigma, n, k, l, 1, 1));
        }
        // each parameter reappears on its element's support
        for (e, p) in basis.elements.iter().zip(params) {
            for (r, c) in e.matrix.support() {
                prop_assert_eq!(&w.get(r, c), p);
            }
        }
    }

    #[test]
    fn documents_round_trip(
        ((n, k, l), g, seed, pick) in (small_layer(), group(), proptest::collection::vec(rational(), 64), any::<prop::sample::Index>())
    ) {
        let basis = layer_basis(n, k, l, g).unwrap();
        let params = &seed[..basis.len()];
        let w = weight_matrix(&basis, params).unwrap();
        let docs = [
            MatrixDocument::weight(&basis, params, &w),
            MatrixDocument::basis_element(&basis, pick.index(basis.len())),
        ];
        for doc in docs {
            let back = MatrixDocument::from_json(&doc.to_json()).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(back.to_json(), doc.to_json());
            let float = doc.clone().into_float();
            prop_assert_eq!(&MatrixDocument::from_json(&float.to_json()).unwrap(), &float);
        }
        prop_assert_eq!(MatrixDocument::weight(&basis, params, &w).matrix().unwrap(), w);
    }

    #[test]
    fn basis_size_matches_formula((n, k, l) in small_layer(), g in group()) {
        let basis = layer_basis(n, k, l, g).unwrap();
        let spec = equilayer::LayerSpec::new(n, k, l, g);
        prop_assert_eq!(BigUint::from(basis.len()), spec.dimension());
    }
}
