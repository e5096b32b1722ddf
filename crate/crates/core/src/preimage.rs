//! Decorated-pattern descriptions of the permutations that a sorting device
//! sends into a classical avoidance class, and a brute-force oracle for them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::patterns::{contains_classical, DecoratedPattern, Decoration, Mark, MeshPattern, Pattern, SquareSet, MAX_MESH_LEN};
use crate::perm::{filter_all, flatten_slice, Permutation, Word};
use crate::sorters::{queue_sort, stack_sort_depth, Depth};

/// Largest length `brute_force_preimage` will sweep.
pub const ORACLE_LIMIT: usize = 9;

/// A one-pass sorting device with a preimage algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Device {
    Stack(Depth),
    Queue,
}

impl Device {
    pub fn apply(self, perm: &Permutation) -> Result<Permutation> {
        match self {
            Device::Stack(d) => stack_sort_depth(perm, d),
            Device::Queue => Ok(queue_sort(perm)),
        }
    }
}

impl fmt::Display for Device {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Device::Stack(Depth::Infinite) => write!(f, "stack"),
            Device::Stack(d) => write!(f, "stackd:{d}"),
            Device::Queue => write!(f, "queue"),
        }
    }
}

impl FromStr for Device {
    type Err = Error;

    /// `stack`, `stackd:<d>` (`<d>` may be `inf`) or `queue`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "stack" => Ok(Device::Stack(Depth::Infinite)),
            "queue" => Ok(Device::Queue),
            _ => match s.strip_prefix("stackd:") {
                Some(d) => Ok(Device::Stack(d.parse()?)),
                None => Err(Error::UnsupportedDevice(s.to_string())),
            },
        }
    }
}

fn staircase(d: usize, shaded: impl Fn(usize, usize) -> bool) -> Result<MeshPattern> {
    if d > MAX_MESH_LEN {
        return Err(Error::ResourceLimit { what: "staircase pattern length", n: d, limit: MAX_MESH_LEN });
    }
    let squares = (0..=d).flat_map(|i| (0..=d).map(move |j| (i, j)));
    let shading = SquareSet::from_squares(squares.filter(|&(i, j)| shaded(i, j)));
    MeshPattern::new(Permutation::decreasing(d), shading)
}

/// `V_d`: the decreasing pattern of length `d` with square `(i, j)` shaded
/// whenever `d - i > j`, the staircase below and left of the points. A word
/// contains it exactly when it has `d` left-to-right minima.
pub fn make_vd(d: usize) -> Result<MeshPattern> {
    staircase(d, |i, j| d - i > j)
}

/// The decreasing pattern of length `c` with square `(i, j)` shaded whenever
/// `i + j > c`, the staircase above and right of the points. A word contains
/// it exactly when it has `c` right-to-left maxima, which is when a stack
/// holding `c` elements is full after reading the word. This is the pattern
/// the stack preimage places left of and above an element that must bypass.
pub fn full_stack_pattern(c: usize) -> Result<MeshPattern> {
    staircase(c, |i, j| i + j > c)
}

/// Classical patterns that one pass through a stack of depth `d` can turn
/// into `p`.
pub fn cand_stack(p: &Word, d: Depth) -> Result<BTreeSet<Permutation>> {
    if d == Depth::Finite(0) {
        return Err(Error::InvalidDepth(0));
    }
    Ok(cand_words(p.letters(), d).into_iter().map(|w| flatten_slice(&w)).collect())
}

fn cand_words(w: &[usize], d: Depth) -> BTreeSet<Vec<usize>> {
    if w.is_empty() || d == Depth::Finite(1) {
        return BTreeSet::from([w.to_vec()]);
    }
    let (at, &n) = w.iter().enumerate().max_by_key(|&(_, &v)| v).expect("non-empty");
    let mut out = BTreeSet::new();
    for j in 0..=at {
        let mut rest = w[j..at].to_vec();
        rest.extend_from_slice(&w[at + 1..]);
        let deltas = cand_words(&rest, d.pred());
        for gamma in cand_words(&w[..j], d) {
            for delta in &deltas {
                let mut word = gamma.clone();
                word.push(n);
                word.extend_from_slice(delta);
                out.insert(word);
            }
        }
    }
    out
}

/// Permutations of `|p|` whose inversions include every inversion of `p`.
pub fn cand_queue(p: &Permutation) -> BTreeSet<Permutation> {
    let inv = p.inversions();
    Permutation::all(p.len()).filter(|l| inv.is_subset(&l.inversions())).collect()
}

/// How an inversion `(a, b)` of the candidate is kept or destroyed. `R1`
/// lies between `a` and `b` above `a`, `R2` left of `a` above `a`. A stack
/// marks or shades `R1` and decorates `R2`; a queue does the reverse.
/// `decoration` is the pattern the decorated region must contain to keep
/// the inversion (`None` when that is impossible and avoiding it is
/// automatic).
struct Rule {
    swap: bool,
    decoration: Option<MeshPattern>,
}

fn interior_point(lambda: &Permutation, region: SquareSet) -> bool {
    lambda.values().iter().enumerate().any(|(i, &v)| region.surrounds_point(i + 1, v))
}

/// Nothing already required by `r` sits inside `region`.
fn region_free(lambda: &Permutation, r: &DecoratedPattern, region: SquareSet) -> bool {
    !interior_point(lambda, region)
        && r.marks().iter().all(|m| !m.region.is_subset(region))
        && r.contain_decorations().iter().all(|c| !c.region.is_subset(region))
}

fn decorate(p: &Permutation, lambda: &Permutation, rule: &Rule) -> Result<BTreeSet<DecoratedPattern>> {
    if lambda.len() > MAX_MESH_LEN {
        return Err(Error::ResourceLimit { what: "candidate length", n: lambda.len(), limit: MAX_MESH_LEN });
    }
    let n = lambda.len();
    let pos = lambda.positions();
    let keep = p.inversions();
    let mut t = BTreeSet::from([DecoratedPattern::plain(lambda.clone())?]);
    for &(i, j) in lambda.inversions().pairs() {
        let r1 = SquareSet::rect(pos[i], pos[j] - 1, i, n);
        let r2 = SquareSet::rect(0, pos[i] - 1, i, n);
        let (point, other) = if rule.swap { (r2, r1) } else { (r1, r2) };
        let mut next = BTreeSet::new();
        for r in t {
            let s = r.shading();
            let free = region_free(lambda, &r, point.union(s));
            if keep.contains(i, j) {
                if !point.is_subset(s) {
                    if interior_point(lambda, point) {
                        next.insert(r.clone());
                    } else {
                        next.insert(r.with_mark(Mark::new(point.difference(s), 1)));
                    }
                }
                if let Some(v) = &rule.decoration {
                    if free && r.avoid_decorations().iter().all(|a| !other.is_subset(a.region)) {
                        next.insert(r.with_shading(point).with_contain(Decoration::new(other, v.clone())));
                    }
                }
            } else if free && r.contain_decorations().iter().all(|c| !c.region.is_subset(other)) {
                let shaded = r.with_shading(point);
                next.insert(match &rule.decoration {
                    Some(v) => shaded.with_avoid(Decoration::new(other, v.clone())),
                    None => shaded,
                });
            }
        }
        t = next;
    }
    Ok(t)
}

fn stack_rule_pattern(d: Depth) -> Result<Option<MeshPattern>> {
    match d {
        Depth::Finite(0) => Err(Error::InvalidDepth(0)),
        Depth::Finite(d) => full_stack_pattern(d - 1).map(Some),
        Depth::Infinite => Ok(None),
    }
}

/// Decorations that make an occurrence of the candidate `lambda` turn into
/// an occurrence of `p` after one pass through a stack of depth `d`. Every
/// inversion of `lambda` is kept (by a larger element in between, or by a
/// full stack of larger elements before it) or destroyed, as `p` demands.
pub fn decorate_stack_candidate(d: Depth, p: &Permutation, lambda: &Permutation) -> Result<BTreeSet<DecoratedPattern>> {
    if !cand_stack(&p.as_word(), d)?.contains(lambda) {
        return Err(Error::InvalidCandidate { target: p.to_string(), candidate: lambda.to_string() });
    }
    let rule = Rule { swap: false, decoration: stack_rule_pattern(d)? };
    decorate(p, lambda, &rule)
}

/// Like [`decorate_stack_candidate`] for a queue: an inversion is kept when
/// something larger precedes its first element, or when that region is
/// empty and a 21 lies above and between the two elements.
pub fn decorate_queue_candidate(p: &Permutation, lambda: &Permutation) -> Result<BTreeSet<DecoratedPattern>> {
    if lambda.len() != p.len() || !p.inversions().is_subset(&lambda.inversions()) {
        return Err(Error::InvalidCandidate { target: p.to_string(), candidate: lambda.to_string() });
    }
    let rule = Rule { swap: true, decoration: Some(MeshPattern::classical(Permutation::decreasing(2))?) };
    decorate(p, lambda, &rule)
}

/// Patterns whose avoiders are the permutations a device sends into `Av(targets)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreimageBasis {
    pub device: Device,
    pub targets: Vec<Permutation>,
    pub patterns: BTreeSet<DecoratedPattern>,
}

impl Pattern for PreimageBasis {
    /// Containing the basis means containing one of its patterns.
    fn contained_in(&self, perm: &Permutation) -> bool {
        self.patterns.iter().any(|p| p.contained_in(perm))
    }
}

pub fn preimage_basis(device: Device, targets: &[Permutation]) -> Result<PreimageBasis> {
    let mut jobs: Vec<(Permutation, Permutation)> = Vec::new();
    for p in targets {
        let cands = match device {
            Device::Stack(d) => cand_stack(&p.as_word(), d)?,
            Device::Queue => cand_queue(p),
        };
        jobs.extend(cands.into_iter().map(|l| (p.clone(), l)));
    }
    let parts: Vec<BTreeSet<DecoratedPattern>> = jobs
        .par_iter()
        .map(|(p, l)| match device {
            Device::Stack(d) => decorate_stack_candidate(d, p, l),
            Device::Queue => decorate_queue_candidate(p, l),
        })
        .collect::<Result<_>>()?;
    Ok(PreimageBasis { device, targets: targets.to_vec(), patterns: parts.into_iter().flatten().collect() })
}

/// `{π of length n : device(π) avoids every target}`, by simulation.
pub fn brute_force_preimage(device: Device, targets: &[Permutation], n: usize) -> Result<Vec<Permutation>> {
    if n > ORACLE_LIMIT {
        return Err(Error::ResourceLimit { what: "preimage oracle length", n, limit: ORACLE_LIMIT });
    }
    if let Device::Stack(d) = device {
        stack_sort_depth(&Permutation::empty(), d)?;
    }
    Ok(filter_all(n, |perm| {
        let out = device.apply(perm).expect("device checked above");
        targets.iter().all(|t| !contains_classical(&out, t))
    }))
}
