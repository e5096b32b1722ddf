use std::ops::ControlFlow;

use super::occurrence::{for_each_occurrence, Geometry};
use super::{Pattern, SquareSet, MAX_MESH_LEN};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A classical pattern together with a set of shaded grid squares.
///
/// An occurrence of the underlying pattern is an occurrence of the mesh
/// pattern when every shaded square's region in the text is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MeshPattern {
    pattern: Permutation,
    shading: SquareSet,
}

impl MeshPattern {
    pub fn new(pattern: Permutation, shading: SquareSet) -> Result<Self> {
        if pattern.len() > MAX_MESH_LEN {
            return Err(Error::InvalidPattern(format!(
                "mesh patterns are limited to length {MAX_MESH_LEN}, got {}",
                pattern.len()
            )));
        }
        if !shading.fits_grid(pattern.len()) {
            return Err(Error::InvalidPattern(format!(
                "shading {shading:?} lies outside the grid of {pattern}"
            )));
        }
        Ok(MeshPattern { pattern, shading })
    }

    pub fn classical(pattern: Permutation) -> Result<Self> {
        Self::new(pattern, SquareSet::EMPTY)
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn shading(&self) -> SquareSet {
        self.shading
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    pub fn is_classical(&self) -> bool {
        self.shading.is_empty()
    }
}

impl Pattern for MeshPattern {
    fn contained_in(&self, perm: &Permutation) -> bool {
        contains_mesh(perm, &self.pattern, self.shading)
    }
}

pub(crate) fn contains_mesh(perm: &Permutation, pattern: &Permutation, shading: SquareSet) -> bool {
    for_each_occurrence(perm, pattern, |occ| {
        if shading.is_empty() || !Geometry::new(perm, occ).occupied.intersects(shading) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .is_some()
}

/// The largest shading of `pattern` for which `occ` (0-based indices into
/// `perm`) is still an occurrence: every square whose region is empty.
pub fn maximal_shading(pattern: &Permutation, perm: &Permutation, occ: &[usize]) -> Result<SquareSet> {
    let increasing = occ.windows(2).all(|w| w[0] < w[1]);
    if occ.len() != pattern.len()
        || !increasing
        || occ.iter().any(|&i| i >= perm.len())
        || perm.pattern_at(occ) != *pattern
    {
        return Err(Error::InvalidOccurrence(occ.to_vec()));
    }
    if pattern.len() > MAX_MESH_LEN {
        return Err(Error::InvalidPattern(format!("pattern {pattern} is too long to shade")));
    }
    Ok(SquareSet::full(pattern.len()).difference(Geometry::new(perm, occ).occupied))
}
