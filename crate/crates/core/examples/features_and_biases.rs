// Feature channels multiply the basis by `d_k·d_l`; bias vectors are the
// `k = 0` case.

use equilayer::{bias_basis, layer_basis, with_features, GroupKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base = layer_basis(2, 2, 1, GroupKind::Alternating)?;
    let wide = with_features(&base, 2, 3)?;
    let (rows, cols) = wide.shape();
    println!("{} elements × 2 input × 3 output channels = {} ({rows}×{cols})", base.len(), wide.len());
    assert_eq!(wide.len(), 48);
    for e in wide.elements.iter().take(6) {
        let (i, j) = e.feature.expect("feature channels present");
        println!("  {} {} channel ({i},{j}) at {:?}", e.partition.rgs_string(), e.sign_class, e.matrix.support().collect::<Vec<_>>());
    }

    for (n, l) in [(2, 1), (3, 1), (3, 2)] {
        for group in [GroupKind::Symmetric, GroupKind::Alternating] {
            let bias = bias_basis(n, l, group)?;
            println!("bias in (ℝ^{n})^⊗{l} under {group}: {} vectors", bias.len());
        }
    }
    assert_eq!(bias_basis(2, 1, GroupKind::Alternating)?.len(), 2);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
