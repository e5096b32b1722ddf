//! Tableau shapes under RSK and the mesh patterns behind hook shapes.

use pattern_forge::bisc::bisc;
use pattern_forge::{named_class, rsk_shape, Permutation};

fn main() -> pattern_forge::Result<()> {
    for s in ["12345", "54321", "2143", "3412", "31524"] {
        let perm: Permutation = s.parse()?;
        let shape = rsk_shape(&perm);
        println!("{perm}: shape {shape}, hook: {}", shape.is_hook());
    }

    let hooks = named_class("hook_rsk", 5)?;
    println!("BiSC on hook-shaped permutations up to length 5, m = 4:");
    for p in bisc(&hooks, 4)? {
        println!("  {p}");
    }
    Ok(())
}
