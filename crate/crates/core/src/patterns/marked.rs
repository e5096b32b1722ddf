use std::collections::BTreeSet;
use std::ops::ControlFlow;

use super::occurrence::{for_each_occurrence, Geometry};
use super::{MeshPattern, Pattern, SquareSet};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A region that must hold at least `min_count` points of the text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mark {
    pub region: SquareSet,
    pub min_count: usize,
}

impl Mark {
    pub fn new(region: SquareSet, min_count: usize) -> Self {
        Mark { region, min_count }
    }

    pub(crate) fn satisfied(&self, geometry: &Geometry) -> bool {
        self.min_count == 0 || geometry.points_in(self.region).nth(self.min_count - 1).is_some()
    }
}

/// A mesh pattern whose marked regions must each contain enough points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedMeshPattern {
    base: MeshPattern,
    marks: BTreeSet<Mark>,
}

impl MarkedMeshPattern {
    pub fn new(base: MeshPattern, marks: impl IntoIterator<Item = Mark>) -> Result<Self> {
        let marks: BTreeSet<Mark> = marks.into_iter().collect();
        for m in &marks {
            if m.region.is_empty() || !m.region.fits_grid(base.len()) {
                return Err(Error::InvalidPattern(format!(
                    "mark region {:?} is empty or outside the grid",
                    m.region
                )));
            }
            if m.region.intersects(base.shading()) {
                return Err(Error::InvalidPattern(format!(
                    "mark region {:?} overlaps the shading",
                    m.region
                )));
            }
        }
        Ok(MarkedMeshPattern { base, marks })
    }

    pub fn base(&self) -> &MeshPattern {
        &self.base
    }

    pub fn marks(&self) -> impl Iterator<Item = &Mark> {
        self.marks.iter()
    }
}

impl Pattern for MarkedMeshPattern {
    fn contained_in(&self, perm: &Permutation) -> bool {
        let shading = self.base.shading();
        for_each_occurrence(perm, self.base.pattern(), |occ| {
            let g = Geometry::new(perm, occ);
            if !g.occupied.intersects(shading) && self.marks.iter().all(|m| m.satisfied(&g)) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn zero_count_marks_are_vacuous() {
        let base = MeshPattern::new(p("21"), SquareSet::single(1, 1)).unwrap();
        let marked = MarkedMeshPattern::new(base.clone(), [Mark::new(SquareSet::rect(0, 2, 0, 0), 0)]).unwrap();
        for n in 0..=6 {
            for perm in Permutation::all(n) {
                assert_eq!(marked.contained_in(&perm), base.contained_in(&perm));
            }
        }
    }

    #[test]
    fn marks_count_points() {
        let base = MeshPattern::classical(p("1")).unwrap();
        let two_right = MarkedMeshPattern::new(base, [Mark::new(SquareSet::rect(1, 1, 0, 1), 2)]).unwrap();
        assert!(two_right.contained_in(&p("132")));
        assert!(two_right.contained_in(&p("312")));
        assert!(!two_right.contained_in(&p("12")));
    }

    #[test]
    fn mark_must_avoid_shading() {
        let base = MeshPattern::new(p("12"), SquareSet::single(0, 0)).unwrap();
        assert!(MarkedMeshPattern::new(base, [Mark::new(SquareSet::single(0, 0), 1)]).is_err());
    }
}
