pub mod bisc;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod patterns;
pub mod perm;
pub mod preimage;
pub mod sorters;

pub use corpus::{named_class, rsk_shape, shape_contains, NamedClass, TableauShape};
pub use error::{Error, Result};
pub use patterns::{AnyPattern, DecoratedPattern, MarkedMeshPattern, MeshPattern, Pattern, SquareSet};
pub use perm::{Permutation, Word};
