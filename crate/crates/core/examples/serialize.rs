// Documents carry exact fractions as JSON integer pairs and read back
// unchanged; COO and dense text are for people.

use equilayer::document::{parse_params, MatrixDocument};
use equilayer::{layer_basis, weight_matrix, GroupKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = layer_basis(2, 1, 1, GroupKind::Alternating)?;
    let params = parse_params("1/3 -2 98765432109876543210/7 5")?;
    let w = weight_matrix(&basis, &params)?;

    let doc = MatrixDocument::weight(&basis, &params, &w);
    let json = doc.to_json();
    println!("{json}");
    let back = MatrixDocument::from_json(&json)?;
    assert_eq!(back, doc);
    assert_eq!(back.matrix()?, w);

    print!("{}", doc.to_coo());
    print!("{}", MatrixDocument::basis_element(&basis, 0).to_dense());
    println!("{}", doc.clone().into_float().to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
