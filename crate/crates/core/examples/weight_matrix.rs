// Builds a weight matrix from exact rational parameters and checks that it
// commutes with every group element.

use equilayer::document::parse_params;
use equilayer::oracle::verify_equivariance;
use equilayer::{layer_basis, weight_matrix, GroupKind, LayerSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = layer_basis(3, 2, 1, GroupKind::Alternating)?;
    let params = parse_params("1/2, -3, 0.25, 7, 0, 2/3, -1, 5, 11/13")?;
    assert_eq!(params.len(), basis.len());

    let w = weight_matrix(&basis, &params)?;
    println!("{}×{} weight matrix, {} nonzero entries", w.rows(), w.cols(), w.nnz());
    for (i, (e, p)) in basis.elements.iter().zip(&params).enumerate() {
        println!("  parameter {i}: {p:>5}  rgs {} {}", e.partition.rgs_string(), e.sign_class);
    }

    let spec = LayerSpec::new(3, 2, 1, GroupKind::Alternating);
    let check = verify_equivariance(&w, &spec)?;
    println!("A_3-equivariant: {}", check.ok);
    assert!(check.ok);

    // A_3 has no odd permutations, so the weight matrix need not commute with S_3
    let under_sn = verify_equivariance(&w, &LayerSpec::new(3, 2, 1, GroupKind::Symmetric))?;
    if let Some(v) = &under_sn.witness {
        println!("S_3 breaks it: σ = {} changes {} entries", v.group_element, v.differing_entries);
    }
    assert!(!under_sn.ok);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
