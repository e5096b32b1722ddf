//! Queue preimages and the linear-time 4312 test built from sorting operators.

use std::time::Instant;

use pattern_forge::patterns::contains_classical;
use pattern_forge::preimage::{preimage_basis, Device};
use pattern_forge::sorters::{avoids_4312_linear, run_pipeline, SortingPipeline};
use pattern_forge::{AnyPattern, Permutation};

fn main() -> pattern_forge::Result<()> {
    for target in ["21", "231", "312"] {
        let basis = preimage_basis(Device::Queue, &[target.parse()?])?;
        let shown: Vec<String> =
            basis.patterns.iter().map(|d| AnyPattern::from_decorated(d.clone()).to_string()).collect();
        println!("queue preimage of Av({target}): {}", shown.join("  "));
    }

    let pipeline: SortingPipeline = "queue,comp,rev,stack".parse()?;
    let four: Permutation = "4312".parse()?;
    for s in ["4312", "52413", "31524"] {
        let perm: Permutation = s.parse()?;
        println!(
            "{perm}: pipeline gives {}, avoids 4312: {} (by search: {})",
            run_pipeline(&perm, &pipeline)?,
            avoids_4312_linear(&perm),
            !contains_classical(&perm, &four)
        );
    }

    let big = Permutation::identity(1_000_000).reverse();
    let start = Instant::now();
    let answer = avoids_4312_linear(&big);
    println!("decreasing permutation of length 10^6 avoids 4312: {answer} ({:?})", start.elapsed());
    Ok(())
}
