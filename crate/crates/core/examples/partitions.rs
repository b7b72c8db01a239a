// Set partitions of `[l + k]` index the basis. This lists them, with the
// counts that give the basis size.

use equilayer::combinatorics::{bell_restricted, enumerate_partitions, stirling2};
use equilayer::splits;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (l, k, n) = (1, 2, 2);
    println!("partitions of [{}] with at most {n} blocks (top row has {l} vertex):", l + k);
    for p in enumerate_partitions(l + k, n) {
        println!(
            "  rgs {}  {:<12} {}  splits under A_{n}: {}",
            p.rgs_string(),
            p.to_string(),
            p.flattened_sketch(l),
            splits(&p, n)
        );
    }

    for t in 0..=3 {
        println!("S(3, {t}) = {}", stirling2(3, t));
    }
    let bell = bell_restricted(3, 3);
    println!("B(3, 3) = {bell}");
    assert_eq!(bell, 5u32.into());
    assert_eq!(enumerate_partitions(3, 3).len(), 5);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
