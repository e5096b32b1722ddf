//! Rediscover the West-2-stack-sortable basis from the class itself.

use pattern_forge::bisc::{bisc, verify_basis_with};
use pattern_forge::corpus::NamedClass;
use pattern_forge::named_class;

fn main() -> pattern_forge::Result<()> {
    let input = named_class("west_2", 7)?;
    println!("{} West-2-sortable permutations of length <= 7", input.len());

    let basis = bisc(&input, 4)?;
    for pattern in &basis {
        println!("  {pattern}");
    }

    let member = NamedClass::West2.membership();
    let check = verify_basis_with(|p| member(p), &basis, 8)?;
    println!("Av(basis) = class up to length 8: {}", check.holds());
    Ok(())
}
