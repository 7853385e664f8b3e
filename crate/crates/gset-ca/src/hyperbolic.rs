//! Finite combinatorial patches of the {8,3} octagon tessellation of the
//! hyperbolic plane, and the octagonal Game of Life on them.
//!
//! Cells are built in the hyperboloid model by breadth-first application of
//! the eight face reflections of the central octagon, deduplicating by
//! center. The floating-point geometry is used only during construction and
//! for rendering; everything downstream works on the exact combinatorial
//! adjacency.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Deduplication tolerance, applied to `cosh(d) - 1` for the hyperbolic
/// distance `d` between centers; the Minkowski inner product gives this
/// invariantly, without the exponential coordinate growth washing it out.
/// Reflection paths to one center diverge by at most ~1e-6 in these terms
/// at the deepest supported ring, while distinct centers measure at least
/// `cosh(two inradii) - 1`, about 1.4; the threshold sits in the middle of
/// that gap and the guard band must stay empty.
pub const TOLERANCE: f64 = 1e-4;
const GUARD: f64 = 0.5;

/// Most rings the builder will produce.
pub const MAX_LAYERS: u32 = 6;

type Vec3 = [f64; 3];
type Mat3 = [[f64; 3]; 3];

/// Minkowski form of signature (+,+,-); points of the hyperbolic plane are
/// the unit-norm sheet `<u,u> = -1, z > 0`.
fn mink(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] - u[2] * v[2]
}


fn mat_apply(a: &Mat3, v: Vec3) -> Vec3 {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

/// The pure boost carrying the base point `(0,0,1)` to `c`, applied to `x`.
/// Acts in the plane spanned by the base point and `c`, fixing the
/// orthogonal spacelike direction; all terms are benign, so no precision is
/// lost at large coordinates.
fn boost_apply(c: Vec3, x: Vec3) -> Vec3 {
    let s = (c[0] * c[0] + c[1] * c[1]).sqrt();
    if s < 1e-12 {
        return x;
    }
    let (wx, wy) = (c[0] / s, c[1] / s);
    let a = x[0] * wx + x[1] * wy;
    let b = -x[0] * wy + x[1] * wx;
    let t = x[2];
    // w -> cosh w + sinh e3, w_perp fixed, e3 -> c; cosh = c[2], sinh = s
    [
        a * c[2] * wx - b * wy + t * c[0],
        a * c[2] * wy + b * wx + t * c[1],
        a * s + t * c[2],
    ]
}

/// Inverse boost: carries `c` back to the base point.
fn boost_unapply(c: Vec3, x: Vec3) -> Vec3 {
    boost_apply([-c[0], -c[1], c[2]], x)
}

/// A frame for the octagon centered at `c`, oriented so that the first face
/// direction points toward `toward` (any true neighbor works: the tile is
/// invariant under its own dihedral stabilizer). Rebuilding frames from
/// centers at every step keeps orientation error from compounding across
/// rings; chained reflection products lose orientation precision
/// exponentially with depth even though the centers they produce stay
/// accurate.
fn anchored_frame(c: Vec3, toward: Vec3) -> Mat3 {
    let local = boost_unapply(c, toward);
    let phi = local[1].atan2(local[0]);
    let (cp, sp) = (phi.cos(), phi.sin());
    let mut frame = [[0.0; 3]; 3];
    for j in 0..3 {
        let e = [
            [cp, sp, 0.0], // rotated e0
            [-sp, cp, 0.0],
            [0.0, 0.0, 1.0],
        ][j];
        let col = boost_apply(c, e);
        for i in 0..3 {
            frame[i][j] = col[i];
        }
    }
    frame
}

/// The reflection `x -> x - 2 <x,n> n` across the geodesic plane with
/// spacelike unit normal `n`, as a matrix.
fn reflection_matrix(n: Vec3) -> Mat3 {
    // column j: image of basis vector e_j; <e_j, n> carries the metric sign
    let mut m = [[0.0; 3]; 3];
    let signs = [1.0, 1.0, -1.0];
    for j in 0..3 {
        let mut e = [0.0; 3];
        e[j] = 1.0;
        let coeff = 2.0 * signs[j] * n[j];
        for i in 0..3 {
            m[i][j] = e[i] - coeff * n[i];
        }
    }
    m
}

/// One octagon of the patch.
#[derive(Clone, Debug)]
pub struct HypCell {
    pub id: usize,
    /// Ring index; the central octagon is layer 0.
    pub layer: u32,
    /// Center in the hyperboloid model; rendering only.
    pub center: Vec3,
}

/// A finite patch: cells, edge-sharing adjacency, and a per-cell boundary
/// flag (set exactly on the outermost ring).
#[derive(Clone, Debug)]
pub struct HypPatch {
    pub cells: Vec<HypCell>,
    neighbors: Vec<Vec<usize>>,
    boundary: Vec<bool>,
    frames: Vec<Mat3>,
    layers: u32,
}

impl HypPatch {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn layers(&self) -> u32 {
        self.layers
    }

    pub fn neighbors(&self, id: usize) -> Result<&[usize]> {
        self.neighbors
            .get(id)
            .map(|v| v.as_slice())
            .ok_or(Error::UnknownCell(id))
    }

    pub fn is_boundary(&self, id: usize) -> Result<bool> {
        self.boundary.get(id).copied().ok_or(Error::UnknownCell(id))
    }

    /// Number of cells in each ring, central octagon first.
    pub fn layer_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.layers as usize + 1];
        for c in &self.cells {
            counts[c.layer as usize] += 1;
        }
        counts
    }

    /// The octagon's vertices projected into the Poincare disk, in cyclic
    /// order.
    pub fn disk_vertices(&self, id: usize) -> Result<[[f64; 2]; 8]> {
        let frame = self.frames.get(id).ok_or(Error::UnknownCell(id))?;
        // circumradius: cosh R = cot(pi/8) cot(pi/3)
        let circum = (1.0 / (PI / 8.0).tan() / (PI / 3.0).tan()).acosh();
        let mut out = [[0.0; 2]; 8];
        for (k, slot) in out.iter_mut().enumerate() {
            let phi = PI / 8.0 + k as f64 * PI / 4.0;
            let v = [
                circum.sinh() * phi.cos(),
                circum.sinh() * phi.sin(),
                circum.cosh(),
            ];
            let w = mat_apply(frame, v);
            *slot = [w[0] / (1.0 + w[2]), w[1] / (1.0 + w[2])];
        }
        Ok(out)
    }
}

/// Builds the patch with `layers` rings around the central octagon.
pub fn build_patch(layers: u32) -> Result<HypPatch> {
    build_patch_with_tolerance(layers, TOLERANCE)
}

/// As [`build_patch`], with an explicit deduplication tolerance (used by the
/// dedup-stability checks).
pub fn build_patch_with_tolerance(layers: u32, tolerance: f64) -> Result<HypPatch> {
    if layers > MAX_LAYERS {
        return Err(Error::TooManyLayers {
            max: MAX_LAYERS,
            got: layers,
        });
    }

    // inradius of the octagon (right-triangle relation for the {8,3}
    // fundamental triangle): half the distance between adjacent centers
    let inradius = ((PI / 3.0).cos() / (PI / 8.0).sin()).acosh();

    // face normals of the base octagon, edge midpoints in directions k*pi/4
    let base_normals: Vec<Vec3> = (0..8)
        .map(|k| {
            let theta = k as f64 * PI / 4.0;
            [
                inradius.cosh() * theta.cos(),
                inradius.cosh() * theta.sin(),
                inradius.sinh(),
            ]
        })
        .collect();

    let identity: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

    let mut cells = vec![HypCell {
        id: 0,
        layer: 0,
        center: [0.0, 0.0, 1.0],
    }];
    let mut frames = vec![identity];
    let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    let mut index = RingIndex::new(tolerance);
    index.insert([0.0, 0.0, 1.0], 0, 0);

    let mut ring: Vec<usize> = vec![0];
    for layer in 0..layers {
        let mut next_ring = Vec::new();
        for &id in &ring {
            let frame = frames[id];
            let source_center = cells[id].center;
            for n in &base_normals {
                let plane = mat_apply(&frame, *n);
                let refl = reflection_matrix(plane);
                let center = mat_apply(&refl, source_center);
                // snap back onto the unit hyperboloid
                let scale = 1.0 / (-mink(center, center)).sqrt();
                let center = [center[0] * scale, center[1] * scale, center[2] * scale];
                match index.lookup(center, layer)? {
                    Some(existing) => {
                        if existing != id {
                            neighbors[id].insert(existing);
                            neighbors[existing].insert(id);
                        }
                    }
                    None => {
                        let new_id = cells.len();
                        cells.push(HypCell {
                            id: new_id,
                            layer: layer + 1,
                            center,
                        });
                        frames.push(anchored_frame(center, source_center));
                        neighbors.push(BTreeSet::new());
                        index.insert(center, layer + 1, new_id);
                        neighbors[id].insert(new_id);
                        neighbors[new_id].insert(id);
                        next_ring.push(new_id);
                    }
                }
            }
        }
        ring = next_ring;
    }

    // sibling edges within the outermost ring: every other edge was seen
    // while reflecting interior cells. Found by the invariant center
    // distance, where adjacency (cosh(2 inradii), about 2.41) and the next
    // distance class (about 5.83) are separated by orders more than the
    // accumulated position error.
    let adjacent_measure = (2.0 * inradius).cosh() - 1.0;
    let next_class = {
        // second neighbors sit at right angles around a common tile
        let c2r = (2.0 * inradius).cosh();
        c2r * c2r - 1.0
    };
    let cut = (adjacent_measure + next_class) / 2.0;
    for (i, &u) in ring.iter().enumerate() {
        for &v in ring.iter().skip(i + 1) {
            let d = -mink(cells[u].center, cells[v].center) - 1.0;
            if d < cut {
                if (d - adjacent_measure).abs() > 0.3 * adjacent_measure {
                    return Err(Error::ToleranceCollision(d));
                }
                neighbors[u].insert(v);
                neighbors[v].insert(u);
            }
        }
    }

    let boundary: Vec<bool> = cells.iter().map(|c| c.layer == layers).collect();
    let neighbors: Vec<Vec<usize>> = neighbors
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();

    for (id, ns) in neighbors.iter().enumerate() {
        debug_assert!(!ns.contains(&id), "irreflexive adjacency");
        if !boundary[id] {
            debug_assert_eq!(ns.len(), 8, "interior cell {id} has degree {}", ns.len());
        }
    }

    Ok(HypPatch {
        cells,
        neighbors,
        boundary,
        frames,
        layers,
    })
}

/// One step of the octagonal Game of Life: a cell is alive next iff the sum
/// over itself and its eight neighbors is 3, or is 4 with the cell alive.
/// Cells whose neighborhood touches the outermost ring are frozen to dead.
pub fn hyp_gol_step(patch: &HypPatch, alive: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    for &id in alive {
        if id >= patch.len() {
            return Err(Error::UnknownCell(id));
        }
    }
    let mut out = BTreeSet::new();
    for cell in &patch.cells {
        let id = cell.id;
        if patch.is_boundary(id)? {
            continue;
        }
        let ns = patch.neighbors(id)?;
        if ns.iter().any(|&n| patch.boundary[n]) {
            continue;
        }
        let center_alive = alive.contains(&id);
        let sum = ns.iter().filter(|n| alive.contains(n)).count()
            + usize::from(center_alive);
        if sum == 3 || (sum == 4 && center_alive) {
            out.insert(id);
        }
    }
    Ok(out)
}

/// Center index over the rings a reflection image can land in. A reflected
/// cell is edge-adjacent to its source, so when ring `k` is being expanded
/// only rings `k - 1`, `k`, and the ring under construction need searching;
/// that keeps the scan exact without any coordinate bucketing.
struct RingIndex {
    tolerance: f64,
    by_ring: Vec<Vec<(Vec3, usize)>>,
}

impl RingIndex {
    fn new(tolerance: f64) -> RingIndex {
        RingIndex {
            tolerance,
            by_ring: Vec::new(),
        }
    }

    /// Closest center among rings `source_ring - 1 ..= source_ring + 1`,
    /// by `cosh(d) - 1`.
    fn nearest(&self, p: Vec3, source_ring: u32) -> Option<(f64, usize)> {
        let lo = source_ring.saturating_sub(1) as usize;
        let mut best: Option<(f64, usize)> = None;
        for ring in self.by_ring.iter().skip(lo).take(3) {
            for (q, id) in ring {
                let d = (-mink(p, *q) - 1.0).max(0.0);
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, *id));
                }
            }
        }
        best
    }

    fn lookup(&self, p: Vec3, source_ring: u32) -> Result<Option<usize>> {
        match self.nearest(p, source_ring) {
            Some((d, id)) if d < self.tolerance => Ok(Some(id)),
            Some((d, _)) if d < GUARD => Err(Error::ToleranceCollision(d)),
            _ => Ok(None),
        }
    }

    fn insert(&mut self, p: Vec3, ring: u32, id: usize) {
        while self.by_ring.len() <= ring as usize {
            self.by_ring.push(Vec::new());
        }
        self.by_ring[ring as usize].push((p, id));
    }
}
