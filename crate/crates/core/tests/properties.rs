use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pattern_forge::bisc::{bisc, enumerate_avoiders, enumerate_avoiders_up_to, mine};
use pattern_forge::patterns::{maximal_shading, minimal_blockers, occurrences_classical, shading_consequence, ShadingFamily};
use pattern_forge::perm::flatten;
use pattern_forge::preimage::{cand_stack, decorate_stack_candidate};
use pattern_forge::sorters::{queue_sort, quicksort_pass, stack_sort, stack_sort_depth, Depth};
use pattern_forge::{DecoratedPattern, MeshPattern, Pattern, Permutation, SquareSet, Word};

fn perm_strategy(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
}

fn shading_strategy(k: usize) -> impl Strategy<Value = SquareSet> {
    let mask = SquareSet::full(k).bits();
    any::<u64>().prop_map(move |b| SquareSet::from_bits(b & mask))
}

fn mesh_strategy(max: usize) -> impl Strategy<Value = MeshPattern> {
    perm_strategy(max).prop_flat_map(|p| {
        let k = p.len();
        shading_strategy(k).prop_map(move |s| MeshPattern::new(p.clone(), s).unwrap())
    })
}

/// Whether a point of `perm` lies in square `(c, r)` of the occurrence `occ`.
fn square_has_point(perm: &Permutation, occ: &[usize], c: usize, r: usize) -> bool {
    let v = perm.values();
    let mut cols = vec![0];
    cols.extend(occ.iter().map(|&i| i + 1));
    cols.push(perm.len() + 1);
    let mut rows: Vec<usize> = occ.iter().map(|&i| v[i]).collect();
    rows.sort_unstable();
    rows.insert(0, 0);
    rows.push(perm.len() + 1);
    (cols[c] + 1..cols[c + 1]).any(|pos| rows[r] < v[pos - 1] && v[pos - 1] < rows[r + 1])
}

#[test]
fn reverse_and_complement_are_involutions() {
    for perm in Permutation::all_up_to(8) {
        assert_eq!(perm.reverse().reverse(), perm);
        assert_eq!(perm.complement().complement(), perm);
    }
}

#[test]
fn inversions_of_reverse_are_complementary() {
    for perm in Permutation::all_up_to(7) {
        let n = perm.len();
        assert_eq!(perm.inversions().len() + perm.reverse().inversions().len(), n * n.saturating_sub(1) / 2);
    }
}

#[test]
fn full_length_subword_is_the_permutation() {
    for perm in Permutation::all_up_to(6).filter(|p| !p.is_empty()) {
        let full: Vec<_> = perm.subwords_leq(perm.len()).into_iter().filter(|(w, _)| w.len() == perm.len()).collect();
        assert_eq!(full.len(), 1);
        assert_eq!(flatten(&full[0].0), perm);
    }
}

#[test]
fn undecorated_patterns_agree_with_mesh() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pool: Vec<Permutation> = Permutation::all_up_to(3).collect();
    for _ in 0..200 {
        let p = pool.choose(&mut rng).unwrap().clone();
        let bits = rand::Rng::gen::<u64>(&mut rng) & SquareSet::full(p.len()).bits();
        let mesh = MeshPattern::new(p, SquareSet::from_bits(bits)).unwrap();
        let dec = DecoratedPattern::from(mesh.clone());
        for perm in Permutation::all_up_to(6) {
            assert_eq!(mesh.contained_in(&perm), dec.contained_in(&perm), "{mesh} in {perm}");
        }
    }
}

#[test]
fn mine_covers_every_occurrence() {
    let class: Vec<Permutation> = enumerate_avoiders_up_to(&[Permutation::new(vec![2, 3, 1]).unwrap()], 5).unwrap();
    for m in 1..=3 {
        let mined = mine(&class, m).unwrap();
        for perm in &class {
            for k in 1..=m.min(perm.len()) {
                for p in Permutation::all(k) {
                    let fam = mined.get(&p).unwrap();
                    for occ in occurrences_classical(perm, &p) {
                        let r = maximal_shading(&p, perm, &occ).unwrap();
                        assert!(fam.shadings().iter().any(|&t| r.is_subset(t)), "{p} {r:?} from {perm}");
                    }
                }
            }
        }
    }
}

#[test]
fn depth_sorting_only_removes_inversions() {
    let depths: Vec<Depth> = (1..=7).map(Depth::Finite).chain([Depth::Infinite]).collect();
    for perm in Permutation::all_up_to(7) {
        for &d in &depths {
            let out = stack_sort_depth(&perm, d).unwrap();
            assert!(out.inversions().is_subset(&perm.inversions()), "{perm} {d}");
        }
    }
}

#[test]
fn candidates_are_complete() {
    for d in [Depth::Finite(2), Depth::Finite(3), Depth::Infinite] {
        for lambda in Permutation::all_up_to(4) {
            let p = stack_sort_depth(&lambda, d).unwrap();
            let cands = cand_stack(&p.as_word(), d).unwrap();
            assert!(cands.contains(&lambda), "{lambda} -> {p} at {d}");
        }
    }
}

#[test]
fn candidates_stabilize() {
    for p in Permutation::all_up_to(4) {
        let unbounded = cand_stack(&p.as_word(), Depth::Infinite).unwrap();
        for d in p.len().max(1)..=p.len() + 2 {
            assert_eq!(cand_stack(&p.as_word(), Depth::Finite(d)).unwrap(), unbounded, "{p} at {d}");
        }
    }
}

#[test]
fn decorated_candidates_keep_their_pattern() {
    for p in Permutation::all_up_to(3) {
        for d in [Depth::Finite(2), Depth::Finite(3), Depth::Infinite] {
            for lambda in cand_stack(&p.as_word(), d).unwrap() {
                for dp in decorate_stack_candidate(d, &p, &lambda).unwrap() {
                    assert_eq!(*dp.pattern(), lambda);
                }
            }
        }
    }
}

#[test]
fn bisc_includes_class_and_matches_at_large_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool: Vec<Permutation> = (2..=3).flat_map(Permutation::all).collect();
    for _ in 0..12 {
        let size = rand::Rng::gen_range(&mut rng, 1..=2);
        let basis: Vec<Permutation> = pool.choose_multiple(&mut rng, size).cloned().collect();
        let k = basis.iter().map(Permutation::len).max().unwrap();
        let class = enumerate_avoiders_up_to(&basis, 6).unwrap();
        for big_n in 1..=6 {
            let input: Vec<Permutation> = class.iter().filter(|q| q.len() <= big_n).cloned().collect();
            for m in 1..=4 {
                let out = bisc(&input, m).unwrap();
                for n in 1..=big_n {
                    let described = enumerate_avoiders(&out, n).unwrap();
                    let members: Vec<Permutation> = class.iter().filter(|q| q.len() == n).cloned().collect();
                    assert!(members.iter().all(|q| described.contains(q)), "{basis:?} N={big_n} m={m} n={n}");
                    if n >= k && m >= k {
                        assert_eq!(members, described, "{basis:?} N={big_n} m={m} n={n}");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flatten_is_idempotent(
        letters in proptest::collection::btree_set(0usize..50, 0..8)
            .prop_map(|s| s.into_iter().collect::<Vec<usize>>())
            .prop_shuffle()
    ) {
        let w = Word::new(letters).unwrap();
        let once = flatten(&w);
        prop_assert_eq!(flatten(&once.as_word()), once);
    }

    #[test]
    fn less_shading_is_easier_to_contain(pat in mesh_strategy(3), drop in any::<u64>(), perm in perm_strategy(6)) {
        let smaller = SquareSet::from_bits(pat.shading().bits() & drop);
        let weaker = MeshPattern::new(pat.pattern().clone(), smaller).unwrap();
        if pat.contained_in(&perm) {
            prop_assert!(weaker.contained_in(&perm));
        }
    }

    #[test]
    fn maximal_shading_is_maximal(perm in perm_strategy(7), k in 1usize..4, seed in any::<u64>()) {
        prop_assume!(perm.len() >= k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut occ: Vec<usize> = (0..perm.len()).collect::<Vec<_>>().choose_multiple(&mut rng, k).copied().collect();
        occ.sort_unstable();
        let p = perm.pattern_at(&occ);
        let r = maximal_shading(&p, &perm, &occ).unwrap();
        for sq in SquareSet::full(k).squares() {
            prop_assert_eq!(r.contains(sq.col, sq.row), !square_has_point(&perm, &occ, sq.col, sq.row));
        }
    }

    #[test]
    fn blockers_are_minimal_transversals(k in 1usize..3, raw in proptest::collection::vec(any::<u64>(), 0..5)) {
        let grid = SquareSet::full(k);
        let p = Permutation::identity(k);
        let fam = ShadingFamily::maximal_of(p, raw.iter().map(|&b| SquareSet::from_bits(b & grid.bits())));
        let blockers = minimal_blockers(&fam);
        let blocks = |r: SquareSet| fam.shadings().iter().all(|&t| !r.is_subset(t));
        prop_assert!(blockers.is_antichain());
        for &r in blockers.shadings() {
            prop_assert!(blocks(r));
            for sq in r.squares() {
                prop_assert!(!blocks(r.difference(SquareSet::single(sq.col, sq.row))));
            }
        }
        // completeness: every blocking shading contains a blocker
        for bits in 0..(1u64 << ((k + 1) * (k + 1))) {
            let r = SquareSet::from_squares((0..(k + 1) * (k + 1)).filter(|i| bits >> i & 1 == 1).map(|i| (i / (k + 1), i % (k + 1))));
            if blocks(r) {
                prop_assert!(blockers.shadings().iter().any(|&b| b.is_subset(r)));
            }
        }
    }

    #[test]
    fn consequences_are_sound(big in mesh_strategy(4), small in mesh_strategy(3)) {
        prop_assume!(small.len() < big.len());
        if shading_consequence(big.pattern(), big.shading(), small.pattern(), small.shading()) {
            for perm in Permutation::all_up_to(7) {
                if big.contained_in(&perm) {
                    prop_assert!(small.contained_in(&perm), "{} in {} without {}", big, perm, small);
                }
            }
        }
    }

    #[test]
    fn mine_ignores_input_order(seed in any::<u64>()) {
        let class: Vec<Permutation> = enumerate_avoiders_up_to(&[Permutation::new(vec![1, 3, 2]).unwrap()], 5).unwrap();
        let mut shuffled = class.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(mine(&class, 3).unwrap(), mine(&shuffled, 3).unwrap());
    }

    #[test]
    fn operators_keep_the_values(perm in perm_strategy(12)) {
        let sorted: BTreeSet<usize> = perm.values().iter().copied().collect();
        let outs = [
            stack_sort(&perm),
            stack_sort_depth(&perm, Depth::Finite(3)).unwrap(),
            queue_sort(&perm),
            quicksort_pass(&perm),
            perm.reverse(),
            perm.complement(),
        ];
        for out in outs {
            prop_assert_eq!(out.len(), perm.len());
            prop_assert_eq!(out.values().iter().copied().collect::<BTreeSet<usize>>(), sorted.clone());
        }
    }
}
