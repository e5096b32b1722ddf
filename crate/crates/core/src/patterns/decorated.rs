use std::collections::BTreeSet;
use std::ops::ControlFlow;

use super::occurrence::{for_each_occurrence, Geometry};
use super::{Mark, MarkedMeshPattern, MeshPattern, Pattern, SquareSet, MAX_MESH_LEN};
use crate::error::{Error, Result};
use crate::perm::{flatten_slice, Permutation};

/// A region whose points, read left to right, must avoid or contain a mesh
/// pattern. The decoration's shading is evaluated among the region's points
/// only: points outside the region never violate it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decoration {
    pub region: SquareSet,
    pub pattern: MeshPattern,
}

impl Decoration {
    pub fn new(region: SquareSet, pattern: MeshPattern) -> Self {
        Decoration { region, pattern }
    }

    fn region_contains_pattern(&self, perm: &Permutation, geometry: &Geometry) -> bool {
        let word: Vec<usize> = geometry.points_in(self.region).map(|i| perm.values()[i]).collect();
        self.pattern.contained_in(&flatten_slice(&word))
    }
}

/// A classical pattern with shading, markings, avoidance decorations and
/// containment decorations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedPattern {
    pattern: Permutation,
    shading: SquareSet,
    marks: BTreeSet<Mark>,
    avoid: BTreeSet<Decoration>,
    contain: BTreeSet<Decoration>,
}

impl DecoratedPattern {
    pub fn new(
        pattern: Permutation,
        shading: SquareSet,
        marks: impl IntoIterator<Item = Mark>,
        avoid: impl IntoIterator<Item = Decoration>,
        contain: impl IntoIterator<Item = Decoration>,
    ) -> Result<Self> {
        let dp = DecoratedPattern {
            pattern,
            shading,
            marks: marks.into_iter().collect(),
            avoid: avoid.into_iter().collect(),
            contain: contain.into_iter().collect(),
        };
        let k = dp.pattern.len();
        if k > MAX_MESH_LEN {
            return Err(Error::InvalidPattern(format!("decorated pattern {} is too long", dp.pattern)));
        }
        let regions = std::iter::once(dp.shading)
            .chain(dp.marks.iter().map(|m| m.region))
            .chain(dp.avoid.iter().chain(&dp.contain).map(|d| d.region));
        for r in regions {
            if !r.fits_grid(k) {
                return Err(Error::InvalidPattern(format!("region {r:?} lies outside the grid")));
            }
        }
        Ok(dp)
    }

    /// `(p, {}, {}, {}, {})`.
    pub fn plain(pattern: Permutation) -> Result<Self> {
        Self::new(pattern, SquareSet::EMPTY, [], [], [])
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn shading(&self) -> SquareSet {
        self.shading
    }

    pub fn marks(&self) -> &BTreeSet<Mark> {
        &self.marks
    }

    pub fn avoid_decorations(&self) -> &BTreeSet<Decoration> {
        &self.avoid
    }

    pub fn contain_decorations(&self) -> &BTreeSet<Decoration> {
        &self.contain
    }

    /// Adds shading and trims it off every mark region. Shaded squares hold
    /// no free points, so only marks that never count an occurrence point
    /// (the only kind the preimage engine builds) keep their meaning.
    pub(crate) fn with_shading(&self, extra: SquareSet) -> Self {
        let shading = self.shading.union(extra);
        let marks = self.marks.iter().map(|m| Mark::new(m.region.difference(shading), m.min_count));
        DecoratedPattern { shading, marks: implied_marks_removed(marks), ..self.clone() }
    }

    pub(crate) fn with_mark(&self, mark: Mark) -> Self {
        let marks = implied_marks_removed(self.marks.iter().copied().chain([mark]));
        DecoratedPattern { marks, ..self.clone() }
    }

    pub(crate) fn with_avoid(&self, d: Decoration) -> Self {
        let mut out = self.clone();
        out.avoid.insert(d);
        out
    }

    pub(crate) fn with_contain(&self, d: Decoration) -> Self {
        let mut out = self.clone();
        out.contain.insert(d);
        out
    }

    pub fn is_mesh(&self) -> bool {
        self.marks.is_empty() && self.avoid.is_empty() && self.contain.is_empty()
    }
}

/// Drops every mark implied by another: a mark needing at least as many
/// points in a smaller region.
fn implied_marks_removed(marks: impl IntoIterator<Item = Mark>) -> BTreeSet<Mark> {
    let all: BTreeSet<Mark> = marks.into_iter().collect();
    all.iter()
        .filter(|m| {
            !all.iter().any(|o| o != *m && o.region.is_subset(m.region) && o.min_count >= m.min_count)
        })
        .copied()
        .collect()
}

impl From<MeshPattern> for DecoratedPattern {
    fn from(m: MeshPattern) -> Self {
        DecoratedPattern {
            pattern: m.pattern().clone(),
            shading: m.shading(),
            marks: BTreeSet::new(),
            avoid: BTreeSet::new(),
            contain: BTreeSet::new(),
        }
    }
}

impl From<MarkedMeshPattern> for DecoratedPattern {
    fn from(m: MarkedMeshPattern) -> Self {
        let marks = m.marks().copied().collect();
        DecoratedPattern { marks, ..DecoratedPattern::from(m.base().clone()) }
    }
}

impl Pattern for DecoratedPattern {
    fn contained_in(&self, perm: &Permutation) -> bool {
        for_each_occurrence(perm, &self.pattern, |occ| {
            let g = Geometry::new(perm, occ);
            let ok = !g.occupied.intersects(self.shading)
                && self.marks.iter().all(|m| m.satisfied(&g))
                && self.avoid.iter().all(|d| !d.region_contains_pattern(perm, &g))
                && self.contain.iter().all(|d| d.region_contains_pattern(perm, &g));
            if ok {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_some()
    }
}
