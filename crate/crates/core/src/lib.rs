//! Coloured operads in finite sets.

pub mod algebra;
pub mod collection;
pub mod colour;
pub mod error;
pub mod free;
pub mod json;
pub mod operad;
pub mod perm;
pub mod report;
pub mod sc;
pub mod trees;

pub use colour::{Colour, Profile};
pub use error::{Error, Result};
pub use perm::Permutation;
pub use report::{Report, Violation};
pub use trees::{parse_tree, serialize_tree, ColouredTree};
