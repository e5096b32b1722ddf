//! Mine a handful of permutations, look at the allowed shadings of 12 and
//! the minimal shadings that are never seen.

use pattern_forge::bisc::{bisc, enumerate_avoiders_up_to, mine};
use pattern_forge::patterns::minimal_blockers;
use pattern_forge::{AnyPattern, MeshPattern, Permutation};

fn main() -> pattern_forge::Result<()> {
    let seen: Vec<Permutation> = ["1", "21", "321", "2341"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let mined = mine(&seen, 2)?;
    let twelve: Permutation = "12".parse()?;
    let family = mined.get(&twelve).expect("12 is mined");

    println!("allowed shadings of 12:");
    for &s in family.shadings() {
        println!("  {}", MeshPattern::new(twelve.clone(), s)?);
    }
    println!("minimal forbidden shadings:");
    for &s in minimal_blockers(family).shadings() {
        println!("  {}", MeshPattern::new(twelve.clone(), s)?);
    }

    let class: Vec<AnyPattern> =
        ["12|{(0,0),(1,1),(2,2)}", "12|{(0,2),(1,1),(2,0)}"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let avoiders = enumerate_avoiders_up_to(&class, 4)?;
    let listed: Vec<String> = avoiders.iter().map(|p| p.to_string()).collect();
    println!("avoiders up to length 4: {}", listed.join(", "));

    println!("BiSC on those avoiders, m = 2:");
    for p in bisc(&avoiders, 2)? {
        println!("  {p}");
    }
    Ok(())
}
