//! The example automata as ready-made construction triples.

use std::fmt;
use std::str::FromStr;

use crate::ca::{moore_neighborhood, ConstructionTriple, LocalRule, MemorySet, RuleKind, StateSet};
use crate::coordsys::{CoordinateSystem, PresetId};
use crate::error::Error;
use crate::group::{cell, Isometry, Universe};

/// Names of the shipped automata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinId {
    /// The Moore-neighborhood sum rule (alive iff the 9-cell sum is 3, or 4
    /// with a live center) on the square tessellation.
    GameOfLife,
    /// The involutive bulb swapper on the point lattice: even cells read the
    /// bulb above, odd cells the bulb below.
    FairyLights,
    /// State shift with the corner-rotation quadrant system.
    StateShiftC,
    /// State shift with the center-rotation quadrant system; composing it
    /// with itself is not a cellular automaton.
    StateShiftD,
    /// State shift on the wedge system; not equivariant.
    StateShift44,
    /// The exact inverse of [`BuiltinId::StateShift44`], built on the
    /// mirrored wedge system.
    StateShift44Inverse,
    /// The block billiard rule on even 2x2 blocks.
    MargolusTau0,
    /// The same rule conjugated onto the odd blocks.
    MargolusTau1,
    /// The identity automaton.
    Identity,
}

impl BuiltinId {
    pub const ALL: [BuiltinId; 9] = [
        BuiltinId::GameOfLife,
        BuiltinId::FairyLights,
        BuiltinId::StateShiftC,
        BuiltinId::StateShiftD,
        BuiltinId::StateShift44,
        BuiltinId::StateShift44Inverse,
        BuiltinId::MargolusTau0,
        BuiltinId::MargolusTau1,
        BuiltinId::Identity,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            BuiltinId::GameOfLife => "game-of-life",
            BuiltinId::FairyLights => "fairy-lights",
            BuiltinId::StateShiftC => "state-shift-c",
            BuiltinId::StateShiftD => "state-shift-d",
            BuiltinId::StateShift44 => "state-shift-44",
            BuiltinId::StateShift44Inverse => "state-shift-44-inverse",
            BuiltinId::MargolusTau0 => "margolus-tau0",
            BuiltinId::MargolusTau1 => "margolus-tau1",
            BuiltinId::Identity => "identity",
        }
    }
}

impl fmt::Display for BuiltinId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        BuiltinId::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::validation("rule file", "builtin", format!("unknown builtin {s:?}")))
    }
}

/// Builds a validated builtin triple. Every triple passes quiescence at
/// construction and its coordinate system passes a radius-10 patch check.
pub fn builtin(id: BuiltinId) -> ConstructionTriple {
    let tr = build(id).expect("builtin triples are valid by construction");
    let report = tr.coordsys().verify_on_patch(10);
    assert!(report.ok(), "{id}: {report}");
    tr
}

fn build(id: BuiltinId) -> crate::error::Result<ConstructionTriple> {
    let sq = Universe::SquareTessellation;
    match id {
        BuiltinId::GameOfLife => ConstructionTriple::new(
            StateSet::binary(),
            LocalRule {
                memory: MemorySet::new(moore_neighborhood())?,
                kind: RuleKind::LifeSum,
            },
            CoordinateSystem::preset(PresetId::TranslationsOnly, sq)?,
            sq,
        ),
        BuiltinId::FairyLights => ConstructionTriple::new(
            StateSet::binary(),
            LocalRule {
                memory: MemorySet::new(vec![cell(0, 1)])?,
                kind: RuleKind::Projection(cell(0, 1)),
            },
            CoordinateSystem::preset(PresetId::FairyLights, Universe::PointLattice)?,
            Universe::PointLattice,
        ),
        BuiltinId::StateShiftC => shift(PresetId::QuadrantRotationCorner, cell(0, 1)),
        BuiltinId::StateShiftD => shift(PresetId::QuadrantRotationCenter, cell(0, 1)),
        BuiltinId::StateShift44 => shift(PresetId::WedgeRotation44, cell(0, 1)),
        BuiltinId::StateShift44Inverse => shift(PresetId::WedgeRotation44Inverse, cell(1, 0)),
        BuiltinId::MargolusTau0 => ConstructionTriple::new(
            StateSet::binary(),
            LocalRule {
                memory: margolus_block(cell(0, 0))?,
                kind: RuleKind::Margolus,
            },
            CoordinateSystem::preset(PresetId::MargolusBlocks, sq)?,
            sq,
        ),
        BuiltinId::MargolusTau1 => {
            // the even-block triple conjugated by the odd shift t_(1,1)
            let t0 = Isometry::translation((1, 1));
            ConstructionTriple::new(
                StateSet::binary(),
                LocalRule {
                    memory: margolus_block(cell(1, 1))?,
                    kind: RuleKind::Margolus,
                },
                CoordinateSystem::preset(PresetId::MargolusBlocks, sq)?.conjugate(t0),
                sq,
            )
        }
        BuiltinId::Identity => ConstructionTriple::new(
            StateSet::binary(),
            LocalRule {
                memory: MemorySet::new(vec![cell(0, 0)])?,
                kind: RuleKind::Projection(cell(0, 0)),
            },
            CoordinateSystem::preset(PresetId::TranslationsOnly, sq)?,
            sq,
        ),
    }
}

fn shift(preset: PresetId, read: crate::group::Cell) -> crate::error::Result<ConstructionTriple> {
    let sq = Universe::SquareTessellation;
    ConstructionTriple::new(
        StateSet::binary(),
        LocalRule {
            memory: MemorySet::new(vec![read])?,
            kind: RuleKind::Projection(read),
        },
        CoordinateSystem::preset(preset, sq)?,
        sq,
    )
}

/// The 2x2 block with the given lower-left cell, in the positional order
/// the billiard rule reads: corner, then counterclockwise around the block
/// center.
fn margolus_block(corner: crate::group::Cell) -> crate::error::Result<MemorySet> {
    MemorySet::new(vec![
        corner,
        cell(corner.x + 1, corner.y),
        cell(corner.x + 1, corner.y + 1),
        cell(corner.x, corner.y + 1),
    ])
}
