//! Permutations sorted by one quicksort pass, and the basis BiSC finds.

use pattern_forge::bisc::bisc;
use pattern_forge::named_class;
use pattern_forge::sorters::quicksort_pass;
use pattern_forge::Permutation;

fn main() -> pattern_forge::Result<()> {
    let perm: Permutation = "2413".parse()?;
    println!("one pass on {perm}: {}", quicksort_pass(&perm));

    let input = named_class("quicksort_1pass", 6)?;
    let counts: Vec<usize> = (1..=6).map(|n| input.iter().filter(|p| p.len() == n).count()).collect();
    println!("sortable counts for n = 1..6: {counts:?}");
    for p in bisc(&input, 4)? {
        println!("  {p}");
    }
    Ok(())
}
