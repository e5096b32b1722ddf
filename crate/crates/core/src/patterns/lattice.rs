//! Antichains of shadings and the two lattice operations the discovery
//! pipeline needs: minimal blockers and the structural consequence test.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use super::occurrence::for_each_occurrence;
use super::SquareSet;
use crate::perm::Permutation;

/// An antichain (under inclusion) of shadings of one classical pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShadingFamily {
    pattern: Permutation,
    shadings: BTreeSet<SquareSet>,
}

impl ShadingFamily {
    pub fn new(pattern: Permutation) -> Self {
        ShadingFamily { pattern, shadings: BTreeSet::new() }
    }

    /// Builds the family of maximal elements of `shadings`.
    pub fn maximal_of(pattern: Permutation, shadings: impl IntoIterator<Item = SquareSet>) -> Self {
        let mut fam = ShadingFamily::new(pattern);
        for s in shadings {
            fam.insert_maximal(s);
        }
        fam
    }

    /// Builds the family of minimal elements of `shadings`.
    pub fn minimal_of(pattern: Permutation, shadings: impl IntoIterator<Item = SquareSet>) -> Self {
        let mut fam = ShadingFamily::new(pattern);
        for s in shadings {
            fam.insert_minimal(s);
        }
        fam
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn shadings(&self) -> &BTreeSet<SquareSet> {
        &self.shadings
    }

    pub fn len(&self) -> usize {
        self.shadings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shadings.is_empty()
    }

    pub fn contains(&self, s: SquareSet) -> bool {
        self.shadings.contains(&s)
    }

    /// Adds `s` unless some member already contains it; members contained
    /// in `s` are dropped. Returns whether `s` was added.
    pub fn insert_maximal(&mut self, s: SquareSet) -> bool {
        if self.shadings.iter().any(|&t| s.is_subset(t)) {
            return false;
        }
        self.shadings.retain(|&t| !t.is_subset(s));
        self.shadings.insert(s);
        true
    }

    /// Adds `s` unless some member is contained in it; members containing
    /// `s` are dropped. Returns whether `s` was added.
    pub fn insert_minimal(&mut self, s: SquareSet) -> bool {
        if self.shadings.iter().any(|&t| t.is_subset(s)) {
            return false;
        }
        self.shadings.retain(|&t| !s.is_subset(t));
        self.shadings.insert(s);
        true
    }

    /// Union followed by pruning to maximal elements; independent of merge order.
    pub fn merge_maximal(&mut self, other: &ShadingFamily) {
        for &s in &other.shadings {
            self.insert_maximal(s);
        }
    }

    pub fn remove(&mut self, s: SquareSet) -> bool {
        self.shadings.remove(&s)
    }

    pub fn is_antichain(&self) -> bool {
        self.shadings
            .iter()
            .all(|&a| self.shadings.iter().all(|&b| a == b || !a.is_subset(b)))
    }
}

/// The inclusion-minimal shadings of the family's pattern that are not
/// contained in any member of `family`.
///
/// `R` is contained in no member `T` exactly when `R` meets every
/// complement `grid \ T`, so the result is the set of minimal transversals
/// of the complements, built one edge at a time.
pub fn minimal_blockers(family: &ShadingFamily) -> ShadingFamily {
    let grid = SquareSet::full(family.pattern.len());
    let mut transversals = vec![SquareSet::EMPTY];
    for &t in &family.shadings {
        let edge = grid.difference(t);
        let mut next: Vec<SquareSet> = Vec::new();
        for &h in &transversals {
            if h.intersects(edge) {
                next.push(h);
            } else {
                for sq in edge.squares() {
                    next.push(h.union(SquareSet::single(sq.col, sq.row)));
                }
            }
        }
        transversals = minimal_elements(next);
        if transversals.is_empty() {
            break;
        }
    }
    ShadingFamily { pattern: family.pattern.clone(), shadings: transversals.into_iter().collect() }
}

fn minimal_elements(mut sets: Vec<SquareSet>) -> Vec<SquareSet> {
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut out: Vec<SquareSet> = Vec::new();
    for s in sets {
        if !out.iter().any(|t| t.is_subset(s)) {
            out.push(s);
        }
    }
    out
}

/// Structural test for "every permutation containing `(p, r)` also contains
/// `(q, r2)`": some occurrence of `q` in `p` sends each square of `r2` onto
/// a block of squares of `p` that holds no point of `p` and lies inside `r`.
///
/// Sound but not complete: a `true` answer is always semantically right.
pub fn shading_consequence(p: &Permutation, r: SquareSet, q: &Permutation, r2: SquareSet) -> bool {
    let pv = p.values();
    for_each_occurrence(p, q, |occ| {
        // column boundaries in p's grid: 0, occ positions (1-based), |p| + 1
        let mut cols = Vec::with_capacity(occ.len() + 2);
        cols.push(0);
        cols.extend(occ.iter().map(|&i| i + 1));
        cols.push(p.len() + 1);
        let mut rows: Vec<usize> = occ.iter().map(|&i| pv[i]).collect();
        rows.sort_unstable();
        rows.insert(0, 0);
        rows.push(p.len() + 1);

        let ok = r2.squares().all(|sq| {
            let (c_lo, c_hi) = (cols[sq.col], cols[sq.col + 1]);
            let (r_lo, r_hi) = (rows[sq.row], rows[sq.row + 1]);
            let block = SquareSet::rect(c_lo, c_hi - 1, r_lo, r_hi - 1);
            let point_inside = (c_lo + 1..c_hi).any(|pos| {
                let v = pv[pos - 1];
                r_lo < v && v < r_hi
            });
            !point_inside && block.is_subset(r)
        });
        if ok {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_some()
}
