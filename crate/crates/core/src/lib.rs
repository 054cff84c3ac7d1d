//! Computational group theory for link symmetry groups.
//!
//! The crate covers the Whitten group `Γₙ` and its action on ordered
//! oriented links, linking-matrix stabilizers, group actions on JSJ tree
//! diagrams, finite rotation groups and their binary covers, and the
//! integer basis-change algebra of Seifert fibered attaching maps.

pub mod error;
pub mod group;
pub mod link;
pub mod perm;
pub mod rotation;
pub mod seifert;
pub mod tree;
pub mod whitten;

pub use error::{Error, Result};
pub use group::{FiniteGroup, IndexedGroup, Limits, SubgroupRecord};
pub use perm::Perm;
