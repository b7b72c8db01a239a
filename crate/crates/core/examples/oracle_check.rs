// Compares constructed bases with the commutant computed by exact Gaussian
// elimination over all group elements.

use equilayer::oracle::equivariant_dimension_bruteforce;
use equilayer::{check_basis, layer_basis, GroupKind, LayerSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=4 {
        for (k, l) in [(1, 1), (2, 1), (0, 2)] {
            for group in [GroupKind::Symmetric, GroupKind::Alternating] {
                let basis = layer_basis(n, k, l, group)?;
                let report = check_basis(&basis)?;
                let predicted = LayerSpec::new(n, k, l, group).dimension();
                println!(
                    "n={n} k={k} l={l} {group}: formula {predicted}, brute force {}, basis ok {}, spans {}",
                    report.dimension, report.basis_ok, report.span_ok
                );
                assert!(report.basis_ok && report.span_ok);
            }
        }
    }
    assert_eq!(equivariant_dimension_bruteforce(3, 2, 1, GroupKind::Alternating)?, 9);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
