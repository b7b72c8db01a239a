// The A_2 basis for maps `(ℝ²)^⊗2 → ℝ²`: eight matrices, one per half
// orbit, and the weight matrix they parameterize.

use equilayer::{layer_basis, weight_matrix, GroupKind, Rational};
use num_bigint::BigInt;

fn show(m: &[Vec<Rational>]) {
    for row in m {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        println!("    [{}]", cells.join(" "));
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let basis = layer_basis(2, 2, 1, GroupKind::Alternating)?;
    println!("A_2, k = 2, l = 1: {} elements", basis.len());
    for (i, e) in basis.elements.iter().enumerate() {
        println!("  λ{} ← {} ({})", i + 1, e.partition, e.sign_class);
        show(&e.matrix.to_dense());
    }

    let lambdas: Vec<Rational> = (1..=8).map(|i| Rational::from_integer(BigInt::from(i))).collect();
    let w = weight_matrix(&basis, &lambdas)?.to_dense();
    println!("weight matrix with λ_i = i:");
    show(&w);
    let expect = |row: [i64; 4]| row.map(|v| Rational::from_integer(v.into())).to_vec();
    assert_eq!(w, vec![expect([1, 3, 5, 7]), expect([8, 6, 4, 2])]);

    let sym = layer_basis(2, 2, 1, GroupKind::Symmetric)?;
    let w = weight_matrix(&sym, &lambdas[..4])?.to_dense();
    println!("S_2 needs only {} parameters:", sym.len());
    show(&w);
    assert_eq!(w, vec![expect([1, 2, 3, 4]), expect([4, 3, 2, 1])]);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
