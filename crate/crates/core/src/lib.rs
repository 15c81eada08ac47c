//! Finite monoids of partial transformations and partitions, their Green's
//! structure, and their maximal subsemigroups.

pub mod element;
pub mod error;
pub mod maximal;
pub mod monoid;
pub mod oracle;
pub mod partition;
pub mod points;
pub mod transform;

pub use element::{Element, Family};
pub use error::{Error, Result};
pub use partition::{DiagramKind, Partition};
pub use points::PointSet;
pub use transform::{PartialTransformation, TransformKind};
