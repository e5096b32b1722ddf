//! Classical, mesh, marked-mesh and decorated patterns.
//!
//! Grid squares of a pattern of length `k` are addressed `(col, row)` with
//! `0 <= col, row <= k`: square `(i, j)` is the open cell between the
//! pattern points at positions `i` and `i + 1` and between the values `j`
//! and `j + 1`. Sets of squares are stored as a 64-bit mask with a fixed
//! stride of 8, so patterns carrying shadings or regions are limited to
//! length [`MAX_MESH_LEN`].

mod decorated;
mod lattice;
mod marked;
mod mesh;
mod notation;
mod occurrence;

use std::fmt;

pub use decorated::{Decoration, DecoratedPattern};
pub use lattice::{minimal_blockers, shading_consequence, ShadingFamily};
pub use marked::{Mark, MarkedMeshPattern};
pub use mesh::{maximal_shading, MeshPattern};
pub use notation::{AnyPattern, DecorationJson, MarkJson, PatternJson};
pub use occurrence::{contains_classical, occurrences_classical};
pub(crate) use occurrence::Geometry;

use crate::perm::Permutation;

/// Longest pattern that can carry shadings, markings or decorations.
pub const MAX_MESH_LEN: usize = 7;

const STRIDE: usize = 8;

/// Anything that a permutation can contain or avoid.
pub trait Pattern {
    fn contained_in(&self, perm: &Permutation) -> bool;

    fn avoided_by(&self, perm: &Permutation) -> bool {
        !self.contained_in(perm)
    }
}

impl Pattern for Permutation {
    fn contained_in(&self, perm: &Permutation) -> bool {
        contains_classical(perm, self)
    }
}

impl<P: Pattern + ?Sized> Pattern for &P {
    fn contained_in(&self, perm: &Permutation) -> bool {
        (**self).contained_in(perm)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridSquare {
    pub col: usize,
    pub row: usize,
}

impl GridSquare {
    pub fn new(col: usize, row: usize) -> Self {
        GridSquare { col, row }
    }

    fn bit(self) -> u64 {
        debug_assert!(self.col <= MAX_MESH_LEN && self.row <= MAX_MESH_LEN);
        1u64 << (self.col * STRIDE + self.row)
    }
}

impl From<(usize, usize)> for GridSquare {
    fn from((col, row): (usize, usize)) -> Self {
        GridSquare { col, row }
    }
}

/// A set of grid squares: a shading, or the region of a marking or decoration.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareSet(u64);

impl SquareSet {
    pub const EMPTY: SquareSet = SquareSet(0);

    pub fn from_bits(bits: u64) -> Self {
        SquareSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Every square of the grid of a length-`k` pattern.
    pub fn full(k: usize) -> Self {
        Self::rect(0, k, 0, k)
    }

    /// Columns `c1..=c2` times rows `r1..=r2`; empty when either range is.
    pub fn rect(c1: usize, c2: usize, r1: usize, r2: usize) -> Self {
        let mut bits = 0;
        if c1 <= c2 && r1 <= r2 {
            let col_mask = ((1u64 << (r2 - r1 + 1)) - 1) << r1;
            for c in c1..=c2.min(MAX_MESH_LEN) {
                bits |= col_mask << (c * STRIDE);
            }
        }
        SquareSet(bits)
    }

    pub fn single(col: usize, row: usize) -> Self {
        SquareSet(GridSquare::new(col, row).bit())
    }

    pub fn from_squares<I, S>(squares: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<GridSquare>,
    {
        SquareSet(squares.into_iter().fold(0, |acc, s| acc | s.into().bit()))
    }

    pub fn contains(self, col: usize, row: usize) -> bool {
        col <= MAX_MESH_LEN && row <= MAX_MESH_LEN && self.0 & GridSquare::new(col, row).bit() != 0
    }

    pub fn insert(&mut self, col: usize, row: usize) {
        self.0 |= GridSquare::new(col, row).bit();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: SquareSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: SquareSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: SquareSet) -> Self {
        SquareSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SquareSet) -> Self {
        SquareSet(self.0 & other.0)
    }

    pub fn difference(self, other: SquareSet) -> Self {
        SquareSet(self.0 & !other.0)
    }

    /// Squares in `(col, row)` order.
    pub fn squares(self) -> impl Iterator<Item = GridSquare> {
        let bits = self.0;
        (0..64).filter(move |b| bits >> b & 1 == 1).map(|b| GridSquare::new(b / STRIDE, b % STRIDE))
    }

    pub fn fits_grid(self, k: usize) -> bool {
        k <= MAX_MESH_LEN && self.is_subset(SquareSet::full(k))
    }

    /// Bounding rectangle `(c1, c2, r1, r2)`, or `None` for the empty set.
    pub fn bounding_rect(self) -> Option<(usize, usize, usize, usize)> {
        let mut it = self.squares();
        let first = it.next()?;
        let mut b = (first.col, first.col, first.row, first.row);
        for s in it {
            b.0 = b.0.min(s.col);
            b.1 = b.1.max(s.col);
            b.2 = b.2.min(s.row);
            b.3 = b.3.max(s.row);
        }
        Some(b)
    }

    pub fn is_rect(self) -> bool {
        match self.bounding_rect() {
            Some((c1, c2, r1, r2)) => SquareSet::rect(c1, c2, r1, r2) == self,
            None => false,
        }
    }

    /// Greedy cover by disjoint rectangles, scanning columns left to right.
    pub fn rects(self) -> Vec<(usize, usize, usize, usize)> {
        let mut rest = self;
        let mut out = Vec::new();
        while let Some(start) = rest.squares().next() {
            let (c1, r1) = (start.col, start.row);
            let mut r2 = r1;
            while rest.contains(c1, r2 + 1) {
                r2 += 1;
            }
            let mut c2 = c1;
            while SquareSet::rect(c2 + 1, c2 + 1, r1, r2).is_subset(rest) && c2 < MAX_MESH_LEN {
                c2 += 1;
            }
            out.push((c1, c2, r1, r2));
            rest = rest.difference(SquareSet::rect(c1, c2, r1, r2));
        }
        out
    }

    /// Whether a pattern point at 1-based position `pos` with value `val`
    /// lies in the interior of this region (all four touching squares present).
    pub(crate) fn surrounds_point(self, pos: usize, val: usize) -> bool {
        self.contains(pos - 1, val - 1)
            && self.contains(pos - 1, val)
            && self.contains(pos, val - 1)
            && self.contains(pos, val)
    }
}

impl fmt::Debug for SquareSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.squares().map(|s| (s.col, s.row))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_and_full() {
        assert_eq!(SquareSet::full(2).len(), 9);
        assert_eq!(SquareSet::full(7).len(), 64);
        assert_eq!(SquareSet::rect(1, 2, 3, 3), SquareSet::from_squares([(1, 3), (2, 3)]));
        assert!(SquareSet::rect(2, 1, 0, 0).is_empty());
    }

    #[test]
    fn rect_decomposition_covers_exactly() {
        let s = SquareSet::from_squares([(0, 0), (0, 1), (1, 0), (1, 1), (3, 2), (2, 4)]);
        let rects = s.rects();
        let back = rects
            .iter()
            .fold(SquareSet::EMPTY, |acc, &(a, b, c, d)| acc.union(SquareSet::rect(a, b, c, d)));
        assert_eq!(back, s);
        assert_eq!(rects[0], (0, 1, 0, 1));
        assert!(SquareSet::rect(0, 1, 0, 1).is_rect());
        assert!(!s.is_rect());
    }

    #[test]
    fn interior_points() {
        let r = SquareSet::rect(0, 1, 2, 3);
        assert!(r.surrounds_point(1, 3));
        assert!(!r.surrounds_point(2, 3));
        assert!(!r.surrounds_point(1, 2));
    }
}
