//! Reading, checking and serializing patterns.

use pattern_forge::{AnyPattern, Pattern, Permutation};

fn main() -> pattern_forge::Result<()> {
    let perm: Permutation = "35241".parse()?;
    for text in [
        "231",
        "3241|{(1,4)}",
        "2143|{(2,2)}[0..0,0..0:1]",
        "231|{(2,3)}C[0..1,3..3:21|{(1,2),(2,1),(2,2)}]",
    ] {
        let pattern: AnyPattern = text.parse()?;
        let json = serde_json::to_string(&pattern.to_json()).expect("serializable");
        println!("{pattern}\n  in {perm}: {}\n  {json}", pattern.contained_in(&perm));
    }
    Ok(())
}
