// A direct product of groups acting factor-wise: the basis is every
// Kronecker product of per-factor basis elements.

use equilayer::basis::local_dim;
use equilayer::oracle::check_local_basis;
use equilayer::{local_basis, GroupKind, LayerSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let factors = [
        LayerSpec::new(2, 1, 1, GroupKind::Alternating),
        LayerSpec::new(3, 1, 1, GroupKind::Alternating),
    ];
    let basis = local_basis(&factors)?;
    println!("A_2 × A_3 on ℝ² ⊗ ℝ³: {} elements (predicted {})", basis.len(), local_dim(&factors));
    for e in basis.elements.iter().take(4) {
        let parts: Vec<String> = e.provenance.iter().map(|(p, s)| format!("{} {s}", p.rgs_string())).collect();
        println!("  {:?} = {}", e.components, parts.join(" ⊗ "));
    }

    let report = check_local_basis(&basis)?;
    println!("brute force: dimension {}, spans: {}", report.dimension, report.span_ok);
    assert!(report.basis_ok && report.span_ok);
    assert_eq!(report.dimension, 12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
