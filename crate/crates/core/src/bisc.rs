//! Basis discovery: mine the allowed shadings of every short pattern from a
//! set of permutations, then forbid the minimal shadings never observed.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::patterns::{
    minimal_blockers, shading_consequence, Geometry, MeshPattern, Pattern, ShadingFamily, SquareSet, MAX_MESH_LEN,
};
use crate::perm::{filter_all, for_each_subset, Permutation};

/// Largest length `enumerate_avoiders` will sweep exhaustively.
pub const AVOIDER_LIMIT: usize = 10;

/// Allowed shadings `sh_p` for every classical pattern of length `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MineResult {
    m: usize,
    entries: BTreeMap<Permutation, ShadingFamily>,
}

impl MineResult {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, pattern: &Permutation) -> Option<&ShadingFamily> {
        self.entries.get(pattern)
    }

    /// Families ordered by pattern length, then lexicographically.
    pub fn families(&self) -> impl Iterator<Item = &ShadingFamily> {
        self.entries.values()
    }
}

/// Minimal forbidden shadings `forb_p`, after consequence pruning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbResult {
    entries: BTreeMap<Permutation, ShadingFamily>,
}

impl ForbResult {
    pub fn get(&self, pattern: &Permutation) -> Option<&ShadingFamily> {
        self.entries.get(pattern)
    }

    pub fn families(&self) -> impl Iterator<Item = &ShadingFamily> {
        self.entries.values()
    }

    /// Every forbidden shading as a mesh pattern, by length then lexicographically.
    pub fn patterns(&self) -> Vec<MeshPattern> {
        let mut out: Vec<MeshPattern> = self
            .entries
            .values()
            .flat_map(|fam| {
                fam.shadings()
                    .iter()
                    .map(|&r| MeshPattern::new(fam.pattern().clone(), r).expect("mined patterns fit the grid"))
            })
            .collect();
        out.sort();
        out
    }
}

fn mine_one(perm: &Permutation, m: usize, acc: &mut BTreeMap<Permutation, ShadingFamily>) {
    for k in 1..=m.min(perm.len()) {
        let full = SquareSet::full(k);
        for_each_subset(perm.len(), k, |idx| {
            let pat = perm.pattern_at(idx);
            let r = full.difference(Geometry::new(perm, idx).occupied);
            acc.entry(pat).or_insert_with_key(|p| ShadingFamily::new(p.clone())).insert_maximal(r);
        });
    }
}

fn merge(
    mut a: BTreeMap<Permutation, ShadingFamily>,
    b: BTreeMap<Permutation, ShadingFamily>,
) -> BTreeMap<Permutation, ShadingFamily> {
    for (p, fam) in b {
        match a.get_mut(&p) {
            Some(existing) => existing.merge_maximal(&fam),
            None => {
                a.insert(p, fam);
            }
        }
    }
    a
}

/// Records, for every subword of length at most `m` of every input
/// permutation, the maximal shading of its flattening that the subword
/// still realises. Duplicate inputs are ignored and the result does not
/// depend on input order or thread count.
pub fn mine<'a>(perms: impl IntoIterator<Item = &'a Permutation>, m: usize) -> Result<MineResult> {
    if m == 0 {
        return Err(Error::InvalidPattern("mining needs a pattern length bound of at least 1".into()));
    }
    if m > MAX_MESH_LEN {
        return Err(Error::ResourceLimit { what: "mined pattern length", n: m, limit: MAX_MESH_LEN });
    }
    let input: Vec<&Permutation> = perms.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let observed = input
        .par_iter()
        .fold(BTreeMap::new, |mut acc, p| {
            mine_one(p, m, &mut acc);
            acc
        })
        .reduce(BTreeMap::new, merge);
    let mut entries: BTreeMap<Permutation, ShadingFamily> =
        Permutation::all_up_to(m).skip(1).map(|p| (p.clone(), ShadingFamily::new(p))).collect();
    entries = merge(entries, observed);
    Ok(MineResult { m, entries })
}

/// Turns allowed shadings into minimal forbidden ones. Patterns are handled
/// shortest first; a forbidden shading of `p` is dropped when it is a
/// consequence of one already kept for a shorter pattern.
pub fn forb(mined: &MineResult) -> ForbResult {
    let mut done: BTreeMap<Permutation, ShadingFamily> = BTreeMap::new();
    for (p, sh) in &mined.entries {
        let shorter = || done.iter().filter(|(q, _)| q.len() < p.len());
        // a classically forbidden sub-pattern makes every shading of p redundant
        let classical_hit = shorter().any(|(q, fq)| {
            fq.contains(SquareSet::EMPTY) && crate::patterns::contains_classical(p, q)
        });
        let kept = if classical_hit {
            ShadingFamily::new(p.clone())
        } else {
            let blockers = minimal_blockers(sh);
            let survivors = blockers.shadings().iter().copied().filter(|&r| {
                !shorter().any(|(q, fq)| fq.shadings().iter().any(|&r2| shading_consequence(p, r, q, r2)))
            });
            ShadingFamily::minimal_of(p.clone(), survivors)
        };
        done.insert(p.clone(), kept);
    }
    ForbResult { entries: done }
}

/// `forb(mine(perms, m))` as a sorted list of mesh patterns.
pub fn bisc<'a>(perms: impl IntoIterator<Item = &'a Permutation>, m: usize) -> Result<Vec<MeshPattern>> {
    Ok(forb(&mine(perms, m)?).patterns())
}

/// Permutations of length exactly `n` avoiding every pattern of `basis`.
pub fn enumerate_avoiders<P: Pattern + Sync>(basis: &[P], n: usize) -> Result<Vec<Permutation>> {
    if n > AVOIDER_LIMIT {
        return Err(Error::ResourceLimit { what: "avoider enumeration length", n, limit: AVOIDER_LIMIT });
    }
    Ok(filter_all(n, |perm| basis.iter().all(|b| b.avoided_by(perm))))
}

/// Permutations of length `1..=n` avoiding every pattern of `basis`, shortest first.
pub fn enumerate_avoiders_up_to<P: Pattern + Sync>(basis: &[P], n: usize) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    for len in 1..=n {
        out.extend(enumerate_avoiders(basis, len)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// A class member that the basis excludes.
    Missing,
    /// An avoider of the basis that is not in the class.
    Extra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub perm: Permutation,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub n: usize,
    /// Shortest (then lexicographically first) disagreement, if any.
    pub counterexample: Option<Counterexample>,
    pub warnings: Vec<String>,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Compares a class, given by a membership test, with `Av(basis)` at every
/// length `1..=n`.
pub fn verify_basis_with<P: Pattern + Sync>(
    member: impl Fn(&Permutation) -> bool + Sync,
    basis: &[P],
    n: usize,
) -> Result<Verification> {
    if n > AVOIDER_LIMIT {
        return Err(Error::ResourceLimit { what: "verification length", n, limit: AVOIDER_LIMIT });
    }
    for len in 1..=n {
        let disagreements = filter_all(len, |perm| member(perm) != basis.iter().all(|b| b.avoided_by(perm)));
        if let Some(perm) = disagreements.into_iter().next() {
            let direction = if member(&perm) { Direction::Missing } else { Direction::Extra };
            return Ok(Verification { n, counterexample: Some(Counterexample { perm, direction }), warnings: vec![] });
        }
    }
    Ok(Verification { n, counterexample: None, warnings: vec![] })
}

/// Like [`verify_basis_with`] for an explicitly listed class. Members longer
/// than `n` are ignored; lengths with no member at all are reported as
/// warnings, since a listed class is usually meant to be complete.
pub fn verify_basis<P: Pattern + Sync>(class: &[Permutation], basis: &[P], n: usize) -> Result<Verification> {
    let set: BTreeSet<&Permutation> = class.iter().filter(|p| p.len() <= n).collect();
    let mut v = verify_basis_with(|p| set.contains(p), basis, n)?;
    for len in 1..=n {
        if !set.iter().any(|p| p.len() == len) {
            v.warnings.push(format!("the class has no permutation of length {len}"));
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sq(v: &[(usize, usize)]) -> SquareSet {
        SquareSet::from_squares(v.iter().copied())
    }

    fn shadings_from_2341() -> Vec<SquareSet> {
        vec![
            sq(&[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1)]),
            sq(&[(0, 0), (0, 1), (0, 2), (1, 0), (1, 2), (2, 1), (2, 2)]),
            sq(&[(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)]),
        ]
    }

    #[test]
    fn worked_example_mine() {
        // the allowed shadings of 12 seen once 2341 has been read
        let seen: Vec<Permutation> = ["1", "21", "321", "2341"].iter().map(|s| p(s)).collect();
        let res = mine(&seen, 2).unwrap();
        let sh12: Vec<SquareSet> = res.get(&p("12")).unwrap().shadings().iter().copied().collect();
        let mut want = shadings_from_2341();
        want.sort();
        assert_eq!(sh12, want);
        let blockers: Vec<SquareSet> = minimal_blockers(res.get(&p("12")).unwrap()).shadings().iter().copied().collect();
        assert_eq!(blockers, vec![sq(&[(2, 0)]), sq(&[(0, 0), (1, 1), (2, 2)])]);

        // the whole input is the short part of the class of two shaded 12s
        let all: Vec<Permutation> = ["1", "21", "321", "2341", "4123", "4321"].iter().map(|s| p(s)).collect();
        let want: Vec<MeshPattern> = vec![
            MeshPattern::new(p("12"), sq(&[(0, 0), (1, 1), (2, 2)])).unwrap(),
            MeshPattern::new(p("12"), sq(&[(0, 2), (1, 1), (2, 0)])).unwrap(),
        ];
        let found = bisc(&all, 2).unwrap();
        let from_found = enumerate_avoiders_up_to(&found, 4).unwrap();
        assert!(all.iter().all(|a| from_found.contains(a)));
        assert_eq!(enumerate_avoiders_up_to(&want, 4).unwrap(), all);
    }

    #[test]
    fn mine_empty_and_single() {
        let none: Vec<Permutation> = vec![];
        let res = mine(&none, 3).unwrap();
        assert_eq!(res.families().count(), 1 + 2 + 6);
        assert!(res.families().all(ShadingFamily::is_empty));

        let res = mine(&[p("21")], 2).unwrap();
        assert_eq!(res.get(&p("21")).unwrap().shadings().iter().copied().collect::<Vec<_>>(), vec![SquareSet::full(2)]);
        assert!(res.get(&p("12")).unwrap().is_empty());
        assert_eq!(res.get(&p("1")).unwrap().len(), 2);
    }

    #[test]
    fn mine_rejects_bad_bounds() {
        assert!(mine(&[p("1")], 0).is_err());
        assert!(matches!(mine(&[p("1")], 8), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn mine_ignores_order_and_duplicates() {
        let a: Vec<Permutation> = ["2413", "3142", "1", "21", "312"].iter().map(|s| p(s)).collect();
        let mut b = a.clone();
        b.reverse();
        b.push(p("2413"));
        assert_eq!(mine(&a, 3).unwrap(), mine(&b, 3).unwrap());
    }

    #[test]
    fn stack_sortable_basis() {
        let class: Vec<Permutation> = (1..=5).flat_map(|n| enumerate_avoiders(&[p("231")], n).unwrap()).collect();
        let basis = bisc(&class, 3).unwrap();
        assert_eq!(basis, vec![MeshPattern::classical(p("231")).unwrap()]);
    }

    #[test]
    fn full_families_forbid_nothing() {
        let all: Vec<Permutation> = Permutation::all_up_to(4).skip(1).collect();
        let res = forb(&mine(&all, 3).unwrap());
        assert!(res.families().all(ShadingFamily::is_empty));
    }

    #[test]
    fn avoider_counts() {
        assert_eq!(enumerate_avoiders::<Permutation>(&[], 3).unwrap().len(), 6);
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &c) in catalan.iter().enumerate() {
            assert_eq!(enumerate_avoiders(&[p("231")], n).unwrap().len(), c);
        }
        assert!(enumerate_avoiders(&[p("1")], 11).is_err());
    }

    #[test]
    fn verification_directions() {
        let dec: Vec<Permutation> = (1..=5).map(Permutation::decreasing).collect();
        assert!(verify_basis(&dec, &[p("12")], 5).unwrap().holds());

        let v = verify_basis(&dec, &[p("123")], 5).unwrap();
        assert_eq!(v.counterexample, Some(Counterexample { perm: p("12"), direction: Direction::Extra }));

        let ids: Vec<Permutation> = (1..=5).map(Permutation::identity).collect();
        let v = verify_basis(&ids, &[p("12")], 5).unwrap();
        assert_eq!(v.counterexample, Some(Counterexample { perm: p("12"), direction: Direction::Missing }));

        let v = verify_basis(&dec[..3], &[p("12")], 5).unwrap();
        assert_eq!(v.warnings.len(), 2);
    }
}
