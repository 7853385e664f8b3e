//! Exact arithmetic for the isometry group of the integer lattice.
//!
//! The group is the semidirect product of the point group D4 (eight 2x2
//! integer orthogonal matrices) with the integer translations. It acts on
//! two universes sharing the same index type: the points of the lattice, and
//! the unit squares of the tessellation with vertices in the lattice (index
//! `(a, b)` names the square `[a, a+1] x [b, b+1]`, center `(a+1/2, b+1/2)`).
//! All arithmetic is exact; half-integer square centers are handled in
//! doubled integer coordinates.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A cell index: a lattice point, or the unit square whose lower-left
/// vertex it is, depending on the [`Universe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

/// Shorthand constructor.
pub const fn cell(x: i64, y: i64) -> Cell {
    Cell { x, y }
}

impl Cell {
    /// Center of the cell in doubled coordinates, so that square centers
    /// stay integral.
    pub fn doubled_center(self, u: Universe) -> (i64, i64) {
        match u {
            Universe::PointLattice => (2 * self.x, 2 * self.y),
            Universe::SquareTessellation => (2 * self.x + 1, 2 * self.y + 1),
        }
    }

    /// Squared Euclidean distance between the centers of two same-universe
    /// cells. Exact; halves cancel, so the result is in ordinary lattice
    /// units.
    pub fn center_dist_sq(self, other: Cell) -> i64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn chebyshev(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Which set of cells the group acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Universe {
    /// The lattice points themselves.
    #[serde(rename = "point-lattice")]
    PointLattice,
    /// The unit squares of the tessellation.
    #[serde(rename = "square-tessellation")]
    SquareTessellation,
}

/// The eight elements of the point group D4, as integer orthogonal matrices.
///
/// `R0`..`R270` are counterclockwise rotations about the origin; `MX` and
/// `MY` are the reflections across the x- and y-axis, `MD` and `MA` across
/// the main diagonal and the anti-diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointPart {
    R0,
    R90,
    R180,
    R270,
    MX,
    MY,
    MD,
    MA,
}

pub const ALL_POINT_PARTS: [PointPart; 8] = [
    PointPart::R0,
    PointPart::R90,
    PointPart::R180,
    PointPart::R270,
    PointPart::MX,
    PointPart::MY,
    PointPart::MD,
    PointPart::MA,
];

impl PointPart {
    /// Row-major 2x2 matrix.
    pub const fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            PointPart::R0 => [[1, 0], [0, 1]],
            PointPart::R90 => [[0, -1], [1, 0]],
            PointPart::R180 => [[-1, 0], [0, -1]],
            PointPart::R270 => [[0, 1], [-1, 0]],
            PointPart::MX => [[1, 0], [0, -1]],
            PointPart::MY => [[-1, 0], [0, 1]],
            PointPart::MD => [[0, 1], [1, 0]],
            PointPart::MA => [[0, -1], [-1, 0]],
        }
    }

    fn from_matrix(m: [[i64; 2]; 2]) -> PointPart {
        for p in ALL_POINT_PARTS {
            if p.matrix() == m {
                return p;
            }
        }
        unreachable!("product of D4 matrices left the group: {m:?}")
    }

    pub fn apply(self, v: (i64, i64)) -> (i64, i64) {
        let m = self.matrix();
        (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
    }

    /// The matrices are orthogonal, so the inverse is the transpose.
    pub fn inverse(self) -> PointPart {
        let m = self.matrix();
        PointPart::from_matrix([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn det(self) -> i64 {
        let m = self.matrix();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub const fn name(self) -> &'static str {
        match self {
            PointPart::R0 => "R0",
            PointPart::R90 => "R90",
            PointPart::R180 => "R180",
            PointPart::R270 => "R270",
            PointPart::MX => "MX",
            PointPart::MY => "MY",
            PointPart::MD => "MD",
            PointPart::MA => "MA",
        }
    }
}

impl std::ops::Mul for PointPart {
    type Output = PointPart;

    fn mul(self, other: PointPart) -> PointPart {
        let a = self.matrix();
        let b = other.matrix();
        let mut m = [[0i64; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        PointPart::from_matrix(m)
    }
}

impl fmt::Display for PointPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PointPart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ALL_POINT_PARTS
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::IsometryParse(s.to_string()))
    }
}

/// A lattice isometry `b -> A b + v` with `A` in D4 and `v` an integer
/// translation. Composition is `(A1, v1)(A2, v2) = (A1 A2, A1 v2 + v1)`.
///
/// Textual form: `"A:tx,ty"`, e.g. `"R90:1,0"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Isometry {
    pub linear: PointPart,
    pub translation: (i64, i64),
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        linear: PointPart::R0,
        translation: (0, 0),
    };

    pub const fn new(linear: PointPart, translation: (i64, i64)) -> Isometry {
        Isometry {
            linear,
            translation,
        }
    }

    pub const fn translation(v: (i64, i64)) -> Isometry {
        Isometry::new(PointPart::R0, v)
    }

    /// The rotation by `k * 90` degrees about the lattice point `p`.
    pub fn rotation_about_point(k: u32, p: (i64, i64)) -> Isometry {
        let linear = match k % 4 {
            0 => PointPart::R0,
            1 => PointPart::R90,
            2 => PointPart::R180,
            _ => PointPart::R270,
        };
        let ap = linear.apply(p);
        Isometry::new(linear, (p.0 - ap.0, p.1 - ap.1))
    }

    /// First `self`, after `other`: the map `b -> self(other(b))`.
    pub fn compose(self, other: Isometry) -> Isometry {
        let av = self.linear.apply(other.translation);
        Isometry::new(
            self.linear * other.linear,
            (av.0 + self.translation.0, av.1 + self.translation.1),
        )
    }

    pub fn inverse(self) -> Isometry {
        let a_inv = self.linear.inverse();
        let v = a_inv.apply(self.translation);
        Isometry::new(a_inv, (-v.0, -v.1))
    }

    pub fn is_identity(self) -> bool {
        self == Isometry::IDENTITY
    }

    /// The induced action on cells. On the point lattice this is `A c + v`;
    /// on the square tessellation the square is carried by its center,
    /// computed exactly in doubled coordinates.
    pub fn act(self, c: Cell, u: Universe) -> Cell {
        match u {
            Universe::PointLattice => {
                let p = self.linear.apply((c.x, c.y));
                cell(p.0 + self.translation.0, p.1 + self.translation.1)
            }
            Universe::SquareTessellation => {
                let center = c.doubled_center(u);
                let rotated = self.linear.apply(center);
                let moved = (
                    rotated.0 + 2 * self.translation.0,
                    rotated.1 + 2 * self.translation.1,
                );
                // D4 maps odd vectors to odd vectors, so this is always even.
                debug_assert!((moved.0 - 1) % 2 == 0 && (moved.1 - 1) % 2 == 0);
                cell((moved.0 - 1).div_euclid(2), (moved.1 - 1).div_euclid(2))
            }
        }
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{},{}",
            self.linear, self.translation.0, self.translation.1
        )
    }
}

impl FromStr for Isometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::IsometryParse(s.to_string());
        let (part, trans) = s.split_once(':').ok_or_else(bad)?;
        let linear = part.trim().parse::<PointPart>()?;
        let (tx, ty) = trans.split_once(',').ok_or_else(bad)?;
        let tx = tx.trim().parse::<i64>().map_err(|_| bad())?;
        let ty = ty.trim().parse::<i64>().map_err(|_| bad())?;
        Ok(Isometry::new(linear, (tx, ty)))
    }
}

/// The eight isometries fixing the given cell: the D4 stabilizer of a
/// lattice point, or of a square (rotations and reflections through its
/// center).
pub fn d4_stabilizers(c: Cell, u: Universe) -> Vec<Isometry> {
    ALL_POINT_PARTS
        .into_iter()
        .map(|p| {
            let base = Isometry::new(p, (0, 0));
            match u {
                Universe::PointLattice => {
                    // conjugate the origin stabilizer by the translation to c
                    let t = Isometry::translation((c.x, c.y));
                    t.compose(base).compose(t.inverse())
                }
                Universe::SquareTessellation => {
                    // solve for the translation part sending the square back
                    // onto itself: A * center + 2v = center in doubled coords
                    let center = c.doubled_center(u);
                    let ac = p.apply(center);
                    debug_assert!((center.0 - ac.0) % 2 == 0 && (center.1 - ac.1) % 2 == 0);
                    Isometry::new(p, ((center.0 - ac.0) / 2, (center.1 - ac.1) / 2))
                }
            }
        })
        .collect()
}
