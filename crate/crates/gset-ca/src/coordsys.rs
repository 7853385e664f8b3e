//! Coordinate systems: an origin cell plus a total representative function
//! realizing a transversal of the group modulo the origin stabilizer.
//!
//! A coordinate system `(a0, T)` assigns every cell `c` a unique isometry
//! `t` with `t . a0 = c`; `t` is the coordinate of `c`. The presets ship the
//! closed-form inverse lookups `c -> t` for the coordinate sets used by the
//! example automata. The defining axioms are checked empirically on finite
//! patches by [`CoordinateSystem::verify_on_patch`]; radius-bounded
//! certification is the accepted standard here since the coordinate sets are
//! infinite.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{cell, Cell, Isometry, PointPart, Universe};

/// The shipped coordinate-system presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresetId {
    /// All integer translations; valid on both universes.
    TranslationsOnly,
    /// Point lattice: even cells get a translation, odd cells the central
    /// inversion composed with a translation.
    FairyLights,
    /// Square tessellation split in four quadrants rotated about the lattice
    /// point `(0,0)`; the closed first quadrant carries translations.
    QuadrantRotationCorner,
    /// Square tessellation split about the center of the origin square, with
    /// an explicit identity case at the origin.
    QuadrantRotationCenter,
    /// Even 2x2 blocks: translation to the block corner composed with a
    /// rotation about the block center selected by the in-block position.
    MargolusBlocks,
    /// Four wedges `0 <= a <= |b|` rotated about `(0,0)`; boundary cells
    /// claimed by two adjacent wedges belong to the lower-indexed one
    /// (cyclically).
    WedgeRotation44,
    /// The mirrored wedges `0 <= b <= |a|`; boundary ties go to the
    /// higher-indexed wedge, which makes the paired state shifts exact
    /// mutual inverses.
    WedgeRotation44Inverse,
}

pub const ALL_PRESETS: [PresetId; 7] = [
    PresetId::TranslationsOnly,
    PresetId::FairyLights,
    PresetId::QuadrantRotationCorner,
    PresetId::QuadrantRotationCenter,
    PresetId::MargolusBlocks,
    PresetId::WedgeRotation44,
    PresetId::WedgeRotation44Inverse,
];

impl PresetId {
    pub const fn name(self) -> &'static str {
        match self {
            PresetId::TranslationsOnly => "translations-only",
            PresetId::FairyLights => "fairy-lights",
            PresetId::QuadrantRotationCorner => "quadrant-rotation-corner",
            PresetId::QuadrantRotationCenter => "quadrant-rotation-center",
            PresetId::MargolusBlocks => "margolus-blocks",
            PresetId::WedgeRotation44 => "wedge-rotation-44",
            PresetId::WedgeRotation44Inverse => "wedge-rotation-44-inverse",
        }
    }

    /// Whether the preset is defined on the given universe.
    pub fn supports(self, u: Universe) -> bool {
        match self {
            PresetId::TranslationsOnly => true,
            PresetId::FairyLights => u == Universe::PointLattice,
            _ => u == Universe::SquareTessellation,
        }
    }

    /// Whether the preset's coordinate set is a subgroup acting simply
    /// transitively on the cells. For these, the transversal function for
    /// any origin is unique, so origin changes and conjugations stay within
    /// the preset family.
    pub fn coordinate_set_is_group(self) -> bool {
        matches!(
            self,
            PresetId::TranslationsOnly | PresetId::FairyLights | PresetId::MargolusBlocks
        )
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_PRESETS
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::validation("rule file", "coordinate_system.preset", format!("unknown preset {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Preset(PresetId),
    /// Origin moved to `g . a0` with coordinate set `T g^-1` (`g` in `T`).
    Shifted { base: Box<CoordinateSystem>, g: Isometry },
    /// Origin moved to `g . a0` with coordinate set `g T g^-1`.
    Conjugated { base: Box<CoordinateSystem>, g: Isometry },
}

/// An origin cell together with a total representative function `c -> t`,
/// `t . origin = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSystem {
    origin: Cell,
    universe: Universe,
    repr: Repr,
}

impl CoordinateSystem {
    /// A preset at its canonical origin `(0,0)`.
    pub fn preset(id: PresetId, universe: Universe) -> Result<CoordinateSystem> {
        if !id.supports(universe) {
            return Err(Error::validation(
                "rule file",
                "coordinate_system.preset",
                format!("preset {id} is not defined on {universe:?}"),
            ));
        }
        Ok(CoordinateSystem {
            origin: cell(0, 0),
            universe,
            repr: Repr::Preset(id),
        })
    }

    /// A preset re-anchored at `origin` via an origin change by the
    /// representative of that cell.
    pub fn preset_at(id: PresetId, universe: Universe, origin: Cell) -> Result<CoordinateSystem> {
        let base = CoordinateSystem::preset(id, universe)?;
        if origin == base.origin {
            return Ok(base);
        }
        let g = base.coordinate(origin);
        base.change_origin(g)
    }

    pub fn origin(&self) -> Cell {
        self.origin
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    /// The preset this system denotes, when it is expressible as a preset
    /// plus an origin; used by the file serializer.
    pub fn as_preset(&self) -> Option<(PresetId, Cell)> {
        match &self.repr {
            Repr::Preset(id) => Some((*id, self.origin)),
            Repr::Shifted { base, .. } => match base.repr {
                Repr::Preset(id) => Some((id, self.origin)),
                _ => None,
            },
            // For group coordinate sets the conjugated system coincides with
            // the origin-shifted one, because the transversal function of a
            // simply transitive subgroup is unique per origin.
            Repr::Conjugated { base, .. } => match base.repr {
                Repr::Preset(id) if id.coordinate_set_is_group() => Some((id, self.origin)),
                _ => None,
            },
        }
    }

    /// The coordinate of a cell: the unique representative `t` with
    /// `t . origin = c`.
    pub fn coordinate(&self, c: Cell) -> Isometry {
        match &self.repr {
            Repr::Preset(id) => preset_coordinate(*id, self.universe, c),
            Repr::Shifted { base, g } => base.coordinate(c).compose(g.inverse()),
            Repr::Conjugated { base, g } => {
                let pre = g.inverse().act(c, self.universe);
                g.compose(base.coordinate(pre)).compose(g.inverse())
            }
        }
    }

    /// Moves the origin to `g . origin` with coordinate set `T g^-1`.
    /// `g` must itself be a representative.
    pub fn change_origin(&self, g: Isometry) -> Result<CoordinateSystem> {
        if self.coordinate(g.act(self.origin, self.universe)) != g {
            return Err(Error::Membership(g));
        }
        if g.is_identity() {
            return Ok(self.clone());
        }
        Ok(CoordinateSystem {
            origin: g.act(self.origin, self.universe),
            universe: self.universe,
            repr: Repr::Shifted {
                base: Box::new(self.clone()),
                g,
            },
        })
    }

    /// Conjugates the whole system by `g`: origin `g . origin`, coordinate
    /// set `g T g^-1`.
    pub fn conjugate(&self, g: Isometry) -> CoordinateSystem {
        if g.is_identity() {
            return self.clone();
        }
        CoordinateSystem {
            origin: g.act(self.origin, self.universe),
            universe: self.universe,
            repr: Repr::Conjugated {
                base: Box::new(self.clone()),
                g,
            },
        }
    }

    /// Splits `h` as `t . s` with `t` the coordinate of `h . origin` and
    /// `s` in the origin stabilizer. The decomposition is unique given the
    /// system.
    pub fn decompose(&self, h: Isometry) -> (Isometry, Isometry) {
        let t = self.coordinate(h.act(self.origin, self.universe));
        let s = t.inverse().compose(h);
        (t, s)
    }

    /// Checks the transversal axioms on the Chebyshev ball of the given
    /// radius around the origin: the origin has coordinate identity, and
    /// every cell's coordinate carries the origin onto it. Violations are
    /// data, not errors.
    pub fn verify_on_patch(&self, radius: i64) -> PatchReport {
        let mut checked = 0u64;
        if !self.coordinate(self.origin).is_identity() {
            return PatchReport {
                radius,
                cells_checked: 0,
                violation: Some(PatchViolation {
                    cell: self.origin,
                    representative: self.coordinate(self.origin),
                    mapped_to: self
                        .coordinate(self.origin)
                        .act(self.origin, self.universe),
                }),
            };
        }
        for dx in -radius..=radius {
            for dy in -radius..=radius {
                let c = cell(self.origin.x + dx, self.origin.y + dy);
                let t = self.coordinate(c);
                let mapped = t.act(self.origin, self.universe);
                checked += 1;
                if mapped != c {
                    return PatchReport {
                        radius,
                        cells_checked: checked,
                        violation: Some(PatchViolation {
                            cell: c,
                            representative: t,
                            mapped_to: mapped,
                        }),
                    };
                }
            }
        }
        PatchReport {
            radius,
            cells_checked: checked,
            violation: None,
        }
    }
}

/// Outcome of a patch verification.
#[derive(Clone, Debug)]
pub struct PatchReport {
    pub radius: i64,
    pub cells_checked: u64,
    pub violation: Option<PatchViolation>,
}

#[derive(Clone, Debug)]
pub struct PatchViolation {
    pub cell: Cell,
    pub representative: Isometry,
    pub mapped_to: Cell,
}

impl PatchReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for PatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(
                f,
                "ok: {} cells verified at radius {}",
                self.cells_checked, self.radius
            ),
            Some(v) => write!(
                f,
                "violation at {}: representative {} maps origin to {}",
                v.cell, v.representative, v.mapped_to
            ),
        }
    }
}

/// Generators of a stabilizer subgroup: isometries fixing a designated cell.
#[derive(Clone, Debug)]
pub struct StabilizerGens {
    pub cell: Cell,
    pub generators: Vec<Isometry>,
}

impl StabilizerGens {
    pub fn new(c: Cell, u: Universe, generators: Vec<Isometry>) -> Result<StabilizerGens> {
        for g in &generators {
            if g.act(c, u) != c {
                return Err(Error::NotAStabilizer(*g, c));
            }
        }
        Ok(StabilizerGens {
            cell: c,
            generators,
        })
    }
}

fn preset_coordinate(id: PresetId, _universe: Universe, c: Cell) -> Isometry {
    let (x, y) = (c.x, c.y);
    match id {
        PresetId::TranslationsOnly => Isometry::translation((x, y)),

        PresetId::FairyLights => {
            if (x + y).rem_euclid(2) == 0 {
                Isometry::translation((x, y))
            } else {
                // central inversion composed with the translation by -c
                Isometry::new(PointPart::R180, (x, y))
            }
        }

        PresetId::QuadrantRotationCorner => {
            // r^k t_a with r the rotation about the lattice point (0,0);
            // the quadrant determines k, and a in N^2 is solved from the
            // rotated-cell formulas.
            if x >= 0 && y >= 0 {
                wedge_branch(0, c)
            } else if x < 0 && y >= 0 {
                wedge_branch(1, c)
            } else if x < 0 && y < 0 {
                wedge_branch(2, c)
            } else {
                wedge_branch(3, c)
            }
        }

        PresetId::QuadrantRotationCenter => {
            // r is the rotation about the center of the origin square; the
            // identity stands in for the origin cell itself.
            if x == 0 && y == 0 {
                Isometry::IDENTITY
            } else if x >= 1 && y >= 0 {
                wedge_branch(0, c)
            } else if x <= 0 && y >= 1 {
                wedge_branch(1, c)
            } else if x <= -1 && y <= 0 {
                wedge_branch(2, c)
            } else {
                wedge_branch(3, c)
            }
        }

        PresetId::MargolusBlocks => {
            let corner = (2 * x.div_euclid(2), 2 * y.div_euclid(2));
            let pos = (x - corner.0, y - corner.1);
            let k = match pos {
                (0, 0) => 0,
                (1, 0) => 1,
                (1, 1) => 2,
                (0, 1) => 3,
                _ => unreachable!(),
            };
            let r = Isometry::rotation_about_point(k, (1, 1));
            Isometry::translation(corner).compose(r)
        }

        PresetId::WedgeRotation44 => {
            let w = wedge44_membership(c);
            // boundary cells sit in two cyclically adjacent wedges; the
            // lower-indexed one owns them
            let k = (0..4)
                .find(|&k| w[k] && !w[(k + 3) % 4])
                .expect("wedges cover the plane");
            wedge_branch(k as u32, c)
        }

        PresetId::WedgeRotation44Inverse => {
            let w = wedge44_inverse_membership(c);
            // mirrored flow: ties go to the higher-indexed wedge
            let k = (0..4)
                .find(|&k| w[k] && !w[(k + 1) % 4])
                .expect("wedges cover the plane");
            wedge_branch(k as u32, c)
        }
    }
}

/// The universal branch formulas `r^k t_a` solved for the cell `(x, y)`;
/// shared by the quadrant and wedge presets (their rotations differ only by
/// the induced translation, which cancels in the solved form).
fn wedge_branch(k: u32, c: Cell) -> Isometry {
    let (x, y) = (c.x, c.y);
    match k % 4 {
        0 => Isometry::new(PointPart::R0, (x, y)),
        1 => Isometry::new(PointPart::R90, (x + 1, y)),
        2 => Isometry::new(PointPart::R180, (x + 1, y + 1)),
        _ => Isometry::new(PointPart::R270, (x, y + 1)),
    }
}

/// Membership of a square cell in the four wedges `r^k T1 . a0` with
/// `T1 = { t_(a,b) : 0 <= a <= |b| }` and `r` the rotation about `(0,0)`.
fn wedge44_membership(c: Cell) -> [bool; 4] {
    let (x, y) = (c.x, c.y);
    [
        0 <= x && x <= y.abs(),
        0 <= y && y <= (x + 1).abs(),
        x <= -1 && -x - 1 <= (y + 1).abs(),
        y <= -1 && -y - 1 <= x.abs(),
    ]
}

/// The mirrored wedges `T2 = { t_(a,b) : 0 <= b <= |a| }`.
fn wedge44_inverse_membership(c: Cell) -> [bool; 4] {
    let (x, y) = (c.x, c.y);
    [
        0 <= y && y <= x.abs(),
        x <= -1 && -x - 1 <= y.abs(),
        y <= -1 && -y - 1 <= (x + 1).abs(),
        0 <= x && x <= (y + 1).abs(),
    ]
}
