//! Cellular automata on a set with a transitive group action.
//!
//! The universe is a set of cells acted on by the isometry group of the
//! integer lattice (point lattice or unit-square tessellation). A cellular
//! automaton is given by a construction triple: a finite memory set, a local
//! rule, and a coordinate system assigning each cell a group element that
//! carries the origin onto it. The crate provides exact group arithmetic,
//! the shipped coordinate-system presets, sparse configuration stepping,
//! rule analysis (minimal memory sets, invariance and equivariance checks,
//! composition, inverse verification), the example automata as builtins, and
//! a combinatorial patch of the {8,3} octagon tessellation of the hyperbolic
//! plane.

pub mod analysis;
pub mod ca;
pub mod coordsys;
pub mod error;
pub mod files;
pub mod group;
pub mod hyperbolic;
pub mod render;
pub mod zoo;

pub use ca::{Configuration, ConstructionTriple, LocalRule, MemorySet, RuleKind, StateSet, Window};
pub use coordsys::CoordinateSystem;
pub use error::{Error, Result};
pub use group::{Cell, Isometry, PointPart, Universe};
