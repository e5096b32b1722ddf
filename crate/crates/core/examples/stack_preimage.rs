//! Decorated patterns for the permutations a stack sends into Av(231),
//! checked against simulation.

use pattern_forge::preimage::{brute_force_preimage, cand_stack, preimage_basis, Device};
use pattern_forge::sorters::Depth;
use pattern_forge::{AnyPattern, Pattern, Permutation};

fn main() -> pattern_forge::Result<()> {
    let target: Permutation = "231".parse()?;
    for d in [Depth::Finite(2), Depth::Finite(3), Depth::Infinite] {
        let device = Device::Stack(d);
        let cands: Vec<String> = cand_stack(&target.as_word(), d)?.iter().map(|c| c.to_string()).collect();
        println!("{device}: candidates {}", cands.join(" "));

        let basis = preimage_basis(device, std::slice::from_ref(&target))?;
        for dp in &basis.patterns {
            println!("  {}", AnyPattern::from_decorated(dp.clone()));
        }
        let agree = (1..=7).all(|n| {
            let oracle = brute_force_preimage(device, std::slice::from_ref(&target), n).unwrap();
            Permutation::all(n).filter(|p| basis.avoided_by(p)).eq(oracle)
        });
        println!("  matches simulation up to length 7: {agree}");
    }
    Ok(())
}
