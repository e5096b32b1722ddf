//! Stacks of bounded depth: a traced example and the sortable classes.

use pattern_forge::bisc::verify_basis_with;
use pattern_forge::sorters::{stack_sort_depth, Depth};
use pattern_forge::Permutation;

fn main() -> pattern_forge::Result<()> {
    let perm: Permutation = "45321".parse()?;
    for d in [1, 2, 3, 4] {
        println!("S_{d}({perm}) = {}", stack_sort_depth(&perm, Depth::Finite(d))?);
    }
    println!("S_inf({perm}) = {}", stack_sort_depth(&perm, Depth::Infinite)?);

    for d in 1..=4 {
        let basis = vec!["231".parse::<Permutation>()?, Permutation::decreasing(d + 1)];
        let sortable = |p: &Permutation| stack_sort_depth(p, Depth::Finite(d)).is_ok_and(|s| s.is_identity());
        let check = verify_basis_with(sortable, &basis, 8)?;
        println!("depth {d}: sortable = Av(231, {}) up to length 8: {}", basis[1], check.holds());
    }
    Ok(())
}
