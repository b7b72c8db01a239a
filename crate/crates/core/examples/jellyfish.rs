// Sign of a multi-index in a splitting orbit, computed two ways: from the
// permutation that produces it, and as a determinant of a basis tensor.

use equilayer::group::MultiIndex;
use equilayer::{full_fpi_table, jellyfish_sign, split_orbit, SetPartition};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let pi = SetPartition::from_rgs(vec![1, 2, 1])?;
    println!("π = {pi}, n = {n}: {} blocks, so the orbit splits", pi.num_blocks());

    let (plus, minus) = split_orbit(&pi, n, 1, 2)?;
    let table = full_fpi_table(&pi, n, 1, 2)?;
    for x in plus.members.iter().chain(&minus.members) {
        let sign = jellyfish_sign(&pi, x, n)?;
        println!("  f({x}) = {sign:+}");
        assert_eq!(table[x], sign);
    }
    assert_eq!(plus.len(), minus.len());

    let outside = MultiIndex::new(vec![1, 1, 1]);
    println!("  f({outside}) = {} (not in the orbit)", table[&outside]);
    assert_eq!(table[&outside], 0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
