//! Deterministic text, PGM, and SVG renderings of configurations and
//! hyperbolic patches.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::ca::{Configuration, StateSet, Window};
use crate::error::{Error, Result};
use crate::group::{cell, Universe};
use crate::hyperbolic::HypPatch;

/// One printable character per state. State names that are single distinct
/// characters render as themselves; otherwise distinct first characters are
/// used, falling back to an indexed alphabet.
pub fn state_aliases(states: &StateSet) -> Vec<char> {
    let singles: Vec<char> = states
        .symbols()
        .iter()
        .filter_map(|s| {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Some(c),
                _ => None,
            }
        })
        .collect();
    if singles.len() == states.len() && singles.iter().collect::<BTreeSet<_>>().len() == singles.len()
    {
        return singles;
    }
    let firsts: Vec<char> = states
        .symbols()
        .iter()
        .map(|s| s.chars().next().unwrap_or('?'))
        .collect();
    if firsts.iter().collect::<BTreeSet<_>>().len() == firsts.len() {
        return firsts;
    }
    const ALPHABET: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";
    (0..states.len())
        .map(|i| ALPHABET[i % ALPHABET.len()] as char)
        .collect()
}

/// Window-clipped text rendering: one row per y, top row first.
pub fn config_text(x: &Configuration, states: &StateSet, window: Window) -> Result<String> {
    let aliases = state_aliases(states);
    let mut out = String::new();
    for y in (window.lo.y..=window.hi.y).rev() {
        for cx in window.lo.x..=window.hi.x {
            let s = x.get(cell(cx, y));
            let id = states.index(s)?;
            out.push(aliases[id]);
        }
        out.push('\n');
    }
    Ok(out)
}

/// Plain (P2) PGM: pixel values are state indices, maxval `|Q| - 1`.
pub fn config_pgm(x: &Configuration, states: &StateSet, window: Window) -> Result<String> {
    let width = window.hi.x - window.lo.x + 1;
    let height = window.hi.y - window.lo.y + 1;
    let mut out = String::new();
    writeln!(out, "P2").unwrap();
    writeln!(out, "{width} {height}").unwrap();
    writeln!(out, "{}", (states.len() - 1).max(1)).unwrap();
    for y in (window.lo.y..=window.hi.y).rev() {
        let row: Vec<String> = (window.lo.x..=window.hi.x)
            .map(|cx| states.index(x.get(cell(cx, y))).map(|id| id.to_string()))
            .collect::<Result<_>>()?;
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    Ok(out)
}

const PALETTE: [&str; 8] = [
    "#ffffff", "#1a1a1a", "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
];

fn fill_for(id: usize) -> &'static str {
    PALETTE[id % PALETTE.len()]
}

/// Static SVG rendering of a window: unit squares for the square
/// tessellation, dots for the point lattice.
pub fn config_svg(
    x: &Configuration,
    states: &StateSet,
    window: Window,
    universe: Universe,
) -> Result<String> {
    let scale = 20i64;
    let width = (window.hi.x - window.lo.x + 1) * scale;
    let height = (window.hi.y - window.lo.y + 1) * scale;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">"
    )
    .unwrap();
    writeln!(out, "<rect width=\"{width}\" height=\"{height}\" fill=\"#fafafa\"/>").unwrap();
    for cy in window.lo.y..=window.hi.y {
        for cx in window.lo.x..=window.hi.x {
            let id = states.index(x.get(cell(cx, cy)))?;
            let px = (cx - window.lo.x) * scale;
            let py = (window.hi.y - cy) * scale;
            match universe {
                Universe::SquareTessellation => {
                    writeln!(
                        out,
                        "<rect x=\"{px}\" y=\"{py}\" width=\"{scale}\" height=\"{scale}\" \
                         fill=\"{}\" stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>",
                        fill_for(id)
                    )
                    .unwrap();
                }
                Universe::PointLattice => {
                    writeln!(
                        out,
                        "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" \
                         stroke=\"#bbbbbb\" stroke-width=\"0.5\"/>",
                        px + scale / 2,
                        py + scale / 2,
                        scale * 2 / 5,
                        fill_for(id)
                    )
                    .unwrap();
                }
            }
        }
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

/// The patch in the Poincare disk: one polygon per octagon (edges drawn as
/// chords), live cells filled dark.
pub fn patch_svg(patch: &HypPatch, alive: &BTreeSet<usize>) -> Result<String> {
    for &id in alive {
        if id >= patch.len() {
            return Err(Error::UnknownCell(id));
        }
    }
    let size = 840.0;
    let half = size / 2.0;
    let radius = half * 0.98;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<circle cx=\"{half}\" cy=\"{half}\" r=\"{radius}\" fill=\"#fefefe\" stroke=\"#888888\"/>"
    )
    .unwrap();
    for c in &patch.cells {
        let pts = patch.disk_vertices(c.id)?;
        let path: Vec<String> = pts
            .iter()
            .map(|[x, y]| format!("{:.3},{:.3}", half + x * radius, half - y * radius))
            .collect();
        let fill = if alive.contains(&c.id) { "#1a1a1a" } else { "none" };
        writeln!(
            out,
            "<polygon points=\"{}\" fill=\"{fill}\" stroke=\"#555555\" stroke-width=\"0.6\"/>",
            path.join(" ")
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}
