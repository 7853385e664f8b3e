//! JSON interchange formats for rules and configurations.
//!
//! A rule file either names a builtin (`{"builtin": "game-of-life"}`) or
//! spells out a construction triple: state set, quiescent state, universe,
//! coordinate-system preset with origin, memory cells, and the local rule.
//! All numbers are integers and state names are strings, so the files are
//! diff-friendly and byte-deterministic.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ca::{pattern_space, Configuration, ConstructionTriple, LocalRule, MemorySet, RuleKind, StateSet};
use crate::coordsys::CoordinateSystem;
use crate::error::{Error, Result};
use crate::group::{cell, Universe};
use crate::zoo::BuiltinId;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiescent: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub universe: Option<Universe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinate_system: Option<CoordSysSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub memory: Option<Vec<[i64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<RuleSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordSysSpec {
    pub preset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<[i64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum RuleSpec {
    #[serde(rename = "table")]
    Table { entries: BTreeMap<String, String> },
    #[serde(rename = "life-sum")]
    LifeSum,
    #[serde(rename = "projection")]
    Projection { cell: [i64; 2] },
    #[serde(rename = "margolus")]
    Margolus,
}

impl RuleFile {
    pub fn from_json(text: &str) -> Result<RuleFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<RuleFile> {
        RuleFile::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule files serialize")
    }

    /// Builds the validated triple the file denotes.
    pub fn into_triple(self) -> Result<ConstructionTriple> {
        let err = |field: &str, msg: &str| Error::validation("rule file", field, msg);
        if let Some(name) = &self.builtin {
            if self.states.is_some()
                || self.quiescent.is_some()
                || self.universe.is_some()
                || self.coordinate_system.is_some()
                || self.memory.is_some()
                || self.rule.is_some()
            {
                return Err(err("builtin", "a builtin rule file must contain no other keys"));
            }
            return Ok(crate::zoo::builtin(name.parse::<BuiltinId>()?));
        }

        let states = self.states.ok_or_else(|| err("states", "missing"))?;
        let quiescent = self.quiescent.ok_or_else(|| err("quiescent", "missing"))?;
        let universe = self.universe.ok_or_else(|| err("universe", "missing"))?;
        let cs_spec = self
            .coordinate_system
            .ok_or_else(|| err("coordinate_system", "missing"))?;
        let memory = self.memory.ok_or_else(|| err("memory", "missing"))?;
        let rule = self.rule.ok_or_else(|| err("rule", "missing"))?;

        let states = StateSet::new(states, &quiescent)?;
        let memory = MemorySet::new(memory.iter().map(|&[x, y]| cell(x, y)).collect())?;
        let preset = cs_spec.preset.parse()?;
        let origin = cs_spec.origin.map(|[x, y]| cell(x, y)).unwrap_or(cell(0, 0));
        let coordsys = CoordinateSystem::preset_at(preset, universe, origin)?;

        let kind = match rule {
            RuleSpec::LifeSum => RuleKind::LifeSum,
            RuleSpec::Margolus => RuleKind::Margolus,
            RuleSpec::Projection { cell: [x, y] } => RuleKind::Projection(cell(x, y)),
            RuleSpec::Table { entries } => {
                RuleKind::Table(Arc::new(parse_table(&entries, &states, &memory)?))
            }
        };

        ConstructionTriple::new(states, LocalRule { memory, kind }, coordsys, universe)
    }
}

fn parse_table(
    entries: &BTreeMap<String, String>,
    states: &StateSet,
    memory: &MemorySet,
) -> Result<Vec<usize>> {
    let q = states.len();
    let total = pattern_space(q, memory.len())?;
    let mut table = vec![usize::MAX; total as usize];
    for (key, value) in entries {
        let parts: Vec<&str> = if key.is_empty() {
            Vec::new()
        } else {
            key.split(',').collect()
        };
        if parts.len() != memory.len() {
            return Err(Error::validation(
                "rule file",
                "rule.entries",
                format!(
                    "key {key:?} has {} states, memory has {} cells",
                    parts.len(),
                    memory.len()
                ),
            ));
        }
        let mut idx = 0usize;
        for s in parts.iter().rev() {
            idx = idx * q + states.index(s.trim())?;
        }
        if table[idx] != usize::MAX {
            return Err(Error::validation(
                "rule file",
                "rule.entries",
                format!("duplicate entry for key {key:?}"),
            ));
        }
        table[idx] = states.index(value)?;
    }
    if let Some(missing) = table.iter().position(|&v| v == usize::MAX) {
        return Err(Error::validation(
            "rule file",
            "rule.entries",
            format!(
                "table is not total: {} of {} patterns missing (first missing index {missing})",
                table.iter().filter(|&&v| v == usize::MAX).count(),
                total
            ),
        ));
    }
    Ok(table)
}

/// Serializes a triple to its explicit (non-builtin) file form. Fails when
/// the coordinate system is not expressible as a preset plus origin.
pub fn rule_file_from_triple(tr: &ConstructionTriple) -> Result<RuleFile> {
    let (preset, origin) = tr.coordsys().as_preset().ok_or_else(|| {
        Error::validation(
            "rule file",
            "coordinate_system",
            "coordinate system is not a preset and cannot be serialized",
        )
    })?;
    let states = tr.states();
    let rule = match &tr.rule().kind {
        RuleKind::LifeSum => RuleSpec::LifeSum,
        RuleKind::Margolus => RuleSpec::Margolus,
        RuleKind::Projection(c) => RuleSpec::Projection { cell: [c.x, c.y] },
        RuleKind::Table(table) => {
            let q = states.len();
            let n = tr.memory().len();
            let mut entries = BTreeMap::new();
            for (idx, &out) in table.iter().enumerate() {
                let mut key_parts = Vec::with_capacity(n);
                let mut rest = idx;
                for _ in 0..n {
                    key_parts.push(states.name(rest % q).to_string());
                    rest /= q;
                }
                entries.insert(key_parts.join(","), states.name(out).to_string());
            }
            RuleSpec::Table { entries }
        }
    };
    Ok(RuleFile {
        builtin: None,
        states: Some(states.symbols().to_vec()),
        quiescent: Some(states.quiescent().to_string()),
        universe: Some(tr.universe()),
        coordinate_system: Some(CoordSysSpec {
            preset: preset.name().to_string(),
            origin: Some([origin.x, origin.y]),
        }),
        memory: Some(tr.memory().cells().iter().map(|c| [c.x, c.y]).collect()),
        rule: Some(rule),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub default: String,
    pub cells: Vec<(i64, i64, String)>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<ConfigFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<ConfigFile> {
        ConfigFile::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config files serialize")
    }

    /// Canonicalizes into a configuration: entries holding the default are
    /// dropped, duplicate cells are rejected.
    pub fn into_configuration(self) -> Result<Configuration> {
        let mut seen = std::collections::BTreeSet::new();
        for (x, y, _) in &self.cells {
            if !seen.insert((*x, *y)) {
                return Err(Error::validation(
                    "config file",
                    "cells",
                    format!("duplicate cell ({x},{y})"),
                ));
            }
        }
        Ok(Configuration::from_cells(
            self.default,
            self.cells.into_iter().map(|(x, y, s)| (cell(x, y), s)),
        ))
    }

    pub fn from_configuration(x: &Configuration) -> ConfigFile {
        ConfigFile {
            default: x.default_state().to_string(),
            cells: x
                .support()
                .map(|(c, s)| (c.x, c.y, s.to_string()))
                .collect(),
        }
    }
}

/// Convenience: the cells of a window, for CLI parsing.
pub fn parse_window(text: &str) -> Result<crate::ca::Window> {
    let parts: Vec<&str> = text.split(',').collect();
    let bad = || {
        Error::validation(
            "window",
            "format",
            format!("expected x0,y0,x1,y1, got {text:?}"),
        )
    };
    if parts.len() != 4 {
        return Err(bad());
    }
    let nums: Vec<i64> = parts
        .iter()
        .map(|p| p.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    Ok(crate::ca::Window::new(
        cell(nums[0], nums[1]),
        cell(nums[2], nums[3]),
    ))
}

/// The cells named by a window argument or, absent one, the support
/// bounding box padded by one cell (a unit window at the origin for empty
/// configurations).
pub fn window_or_bounds(window: Option<crate::ca::Window>, x: &Configuration) -> crate::ca::Window {
    window.unwrap_or_else(|| {
        x.bounding_window()
            .map(|w| w.grow(1))
            .unwrap_or_else(|| crate::ca::Window::new(cell(0, 0), cell(0, 0)))
    })
}
