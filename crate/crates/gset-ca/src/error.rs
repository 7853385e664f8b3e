//! Crate-wide error type.

use crate::group::{Cell, Isometry};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An isometry handed to `change_origin` is not a representative of any
    /// cell in the coordinate system.
    #[error("isometry {0} is not a member of the coordinate set")]
    Membership(Isometry),

    /// A state symbol does not belong to the state set.
    #[error("unknown state symbol {0:?}")]
    UnknownSymbol(String),

    /// The local rule does not map the all-quiescent pattern to the
    /// quiescent state.
    #[error("local rule violates quiescence: all-{0:?} pattern maps to {1:?}")]
    Quiescence(String, String),

    /// A brute-force pattern enumeration would exceed the table bound.
    #[error("pattern space too large: |Q|^|M| = {states}^{cells} exceeds 2^16")]
    TooLarge { states: usize, cells: usize },

    /// An element handed to an invariance check moves the origin cell.
    #[error("isometry {0} does not stabilize the origin cell {1}")]
    NotAStabilizer(Isometry, Cell),

    /// Two construction triples cannot be composed.
    #[error("incompatible state sets: {0:?} vs {1:?}")]
    IncompatibleStateSets(Vec<String>, Vec<String>),

    /// Two construction triples live in different universes.
    #[error("incompatible universes")]
    IncompatibleUniverses,

    /// A cell id outside the patch was referenced.
    #[error("unknown cell id {0}")]
    UnknownCell(usize),

    /// Patch construction found centers that are neither clearly equal nor
    /// clearly distinct under the deduplication tolerance.
    #[error("tolerance collision while deduplicating patch cells (separation {0:.3e})")]
    ToleranceCollision(f64),

    /// Patch construction was asked for more rings than supported.
    #[error("patch layers must be at most {max}, got {got}")]
    TooManyLayers { max: u32, got: u32 },

    /// Invalid rule or configuration file contents.
    #[error("invalid {file}: {field}: {message}")]
    Validation {
        file: &'static str,
        field: String,
        message: String,
    },

    #[error("cannot parse {0:?} as an isometry (expected \"A:tx,ty\")")]
    IsometryParse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(
        file: &'static str,
        field: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Error::Validation {
            file,
            field: field.into(),
            message: message.into(),
        }
    }
}
