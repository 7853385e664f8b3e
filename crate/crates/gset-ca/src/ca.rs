//! Configurations, construction triples, and the global transition map.
//!
//! A configuration assigns a state to every cell, stored sparsely over a
//! quiescent default. A construction triple (memory set, local rule,
//! coordinate system) steps a configuration by reading, for each cell, the
//! states at the images of the memory cells under the cell's coordinate and
//! feeding the tuple to the local rule.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::coordsys::CoordinateSystem;
use crate::error::{Error, Result};
use crate::group::{cell, Cell, Isometry, Universe};

/// Largest pattern space `|Q|^|M|` any brute-force enumeration or explicit
/// table may have.
pub const TABLE_BOUND: u64 = 1 << 16;

/// An ordered set of distinct state names with one designated quiescent
/// state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSet {
    symbols: Vec<String>,
    quiescent: usize,
}

impl StateSet {
    pub fn new(symbols: Vec<String>, quiescent: &str) -> Result<StateSet> {
        if symbols.is_empty() {
            return Err(Error::validation("rule file", "states", "state set is empty"));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.clone()) {
                return Err(Error::validation(
                    "rule file",
                    "states",
                    format!("duplicate state {s:?}"),
                ));
            }
        }
        let quiescent = symbols
            .iter()
            .position(|s| s == quiescent)
            .ok_or_else(|| Error::UnknownSymbol(quiescent.to_string()))?;
        Ok(StateSet { symbols, quiescent })
    }

    /// The two-state set `{"0", "1"}` with `"0"` quiescent.
    pub fn binary() -> StateSet {
        StateSet::new(vec!["0".into(), "1".into()], "0").unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn quiescent(&self) -> &str {
        &self.symbols[self.quiescent]
    }

    pub fn quiescent_id(&self) -> usize {
        self.quiescent
    }

    pub fn name(&self, id: usize) -> &str {
        &self.symbols[id]
    }

    pub fn index(&self, symbol: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }
}

/// A finite ordered list of distinct cells; the order is the canonical
/// indexing of rule tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemorySet {
    cells: Vec<Cell>,
}

impl MemorySet {
    pub fn new(cells: Vec<Cell>) -> Result<MemorySet> {
        let mut seen = BTreeSet::new();
        for c in &cells {
            if !seen.insert(*c) {
                return Err(Error::validation(
                    "rule file",
                    "memory",
                    format!("duplicate memory cell {c}"),
                ));
            }
        }
        Ok(MemorySet { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn position(&self, c: Cell) -> Option<usize> {
        self.cells.iter().position(|&m| m == c)
    }

    /// Largest squared center distance from the origin cell to a memory
    /// cell; the reach of the rule under any isometry coordinate.
    pub fn radius_sq(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| c.center_dist_sq(cell(0, 0)))
            .max()
            .unwrap_or(0)
    }
}

/// The Moore neighborhood `{-1,0,1}^2` in canonical (x, y) order.
pub fn moore_neighborhood() -> Vec<Cell> {
    let mut v: Vec<Cell> = (-1..=1)
        .flat_map(|x| (-1..=1).map(move |y| cell(x, y)))
        .collect();
    v.sort();
    v
}

/// How a local rule maps state tuples to a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleKind {
    /// Dense table indexed by the mixed-radix encoding of the tuple
    /// (position 0 least significant).
    Table(Arc<Vec<usize>>),
    /// The Game-of-Life sum rule on the Moore cells of the memory set:
    /// alive iff the 9-cell sum is 3, or the sum is 4 and the center is
    /// alive. Memory cells outside the Moore neighborhood are ignored.
    LifeSum,
    /// Projection onto one memory cell.
    Projection(Cell),
    /// The block billiard rule on a 4-cell memory read positionally:
    /// sum 1 moves the ball across the diagonal, two diagonal balls bounce,
    /// anything else is left in place.
    Margolus,
}

/// A total local rule over a memory set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRule {
    pub memory: MemorySet,
    pub kind: RuleKind,
}

impl LocalRule {
    /// Validates the rule shape against a state set.
    pub fn validate(&self, states: &StateSet) -> Result<()> {
        match &self.kind {
            RuleKind::Table(table) => {
                let size = pattern_space(states.len(), self.memory.len())?;
                if table.len() as u64 != size {
                    return Err(Error::validation(
                        "rule file",
                        "rule.entries",
                        format!("table has {} entries, expected {}", table.len(), size),
                    ));
                }
                if let Some(bad) = table.iter().find(|&&s| s >= states.len()) {
                    return Err(Error::UnknownSymbol(format!("state id {bad}")));
                }
            }
            RuleKind::LifeSum => {
                if states.len() != 2 {
                    return Err(Error::validation(
                        "rule file",
                        "rule",
                        "life-sum needs exactly two states",
                    ));
                }
                for m in moore_neighborhood() {
                    if self.memory.position(m).is_none() {
                        return Err(Error::validation(
                            "rule file",
                            "memory",
                            format!("life-sum needs the Moore cell {m} in the memory set"),
                        ));
                    }
                }
            }
            RuleKind::Projection(c) => {
                if self.memory.position(*c).is_none() {
                    return Err(Error::validation(
                        "rule file",
                        "rule.cell",
                        format!("projection cell {c} is not in the memory set"),
                    ));
                }
            }
            RuleKind::Margolus => {
                if states.len() != 2 || self.memory.len() != 4 {
                    return Err(Error::validation(
                        "rule file",
                        "rule",
                        "margolus needs two states and a 4-cell memory set",
                    ));
                }
            }
        }
        Ok(())
    }

    /// Evaluates the rule on a tuple of state ids, one per memory cell in
    /// order.
    pub fn eval_ids(&self, states: &StateSet, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.memory.len());
        match &self.kind {
            RuleKind::Table(table) => {
                let mut idx = 0usize;
                for &s in tuple.iter().rev() {
                    idx = idx * states.len() + s;
                }
                table[idx]
            }
            RuleKind::LifeSum => {
                let live = 1 - states.quiescent_id();
                let mut sum = 0;
                let mut center = 0;
                for m in moore_neighborhood() {
                    let s = tuple[self.memory.position(m).unwrap()];
                    if s == live {
                        sum += 1;
                        if m == cell(0, 0) {
                            center = 1;
                        }
                    }
                }
                if sum == 3 || (sum == 4 && center == 1) {
                    live
                } else {
                    states.quiescent_id()
                }
            }
            RuleKind::Projection(c) => tuple[self.memory.position(*c).unwrap()],
            RuleKind::Margolus => {
                let live = 1 - states.quiescent_id();
                let q: Vec<bool> = tuple.iter().map(|&s| s == live).collect();
                let sum = q.iter().filter(|&&b| b).count();
                let out = if sum == 1 {
                    q[2]
                } else if sum == 2 && q[1] == q[3] {
                    q[1]
                } else {
                    q[0]
                };
                if out {
                    live
                } else {
                    states.quiescent_id()
                }
            }
        }
    }
}

/// `|Q|^|M|` with the [`TABLE_BOUND`] enforced.
pub fn pattern_space(states: usize, cells: usize) -> Result<u64> {
    let mut size: u64 = 1;
    for _ in 0..cells {
        size = size.saturating_mul(states as u64);
        if size > TABLE_BOUND {
            return Err(Error::TooLarge { states, cells });
        }
    }
    Ok(size)
}

/// A finite-support assignment of states to cells over a quiescent default,
/// kept in canonical sparse form: no stored value equals the default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    default: String,
    cells: BTreeMap<Cell, String>,
}

impl Configuration {
    pub fn empty(default: impl Into<String>) -> Configuration {
        Configuration {
            default: default.into(),
            cells: BTreeMap::new(),
        }
    }

    pub fn from_cells(
        default: impl Into<String>,
        entries: impl IntoIterator<Item = (Cell, String)>,
    ) -> Configuration {
        let mut cfg = Configuration::empty(default);
        for (c, s) in entries {
            cfg.set(c, s);
        }
        cfg
    }

    pub fn default_state(&self) -> &str {
        &self.default
    }

    pub fn get(&self, c: Cell) -> &str {
        self.cells.get(&c).map(|s| s.as_str()).unwrap_or(&self.default)
    }

    /// Sets one cell, keeping the sparse form canonical.
    pub fn set(&mut self, c: Cell, state: impl Into<String>) {
        let state = state.into();
        if state == self.default {
            self.cells.remove(&c);
        } else {
            self.cells.insert(c, state);
        }
    }

    /// The cells holding a non-default state, in deterministic order.
    pub fn support(&self) -> impl Iterator<Item = (Cell, &str)> {
        self.cells.iter().map(|(c, s)| (*c, s.as_str()))
    }

    pub fn support_len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Whether every stored state belongs to the state set and the default
    /// is its quiescent state.
    pub fn validate(&self, states: &StateSet) -> Result<()> {
        if self.default != states.quiescent() {
            return Err(Error::validation(
                "configuration",
                "default",
                format!(
                    "default state {:?} is not the quiescent state {:?}",
                    self.default,
                    states.quiescent()
                ),
            ));
        }
        for (_, s) in self.support() {
            states.index(s)?;
        }
        Ok(())
    }

    /// Translates/rotates the configuration: `(g x)(c) = x(g^-1 . c)`.
    pub fn act(&self, g: Isometry, u: Universe) -> Configuration {
        let mut out = Configuration::empty(self.default.clone());
        for (c, s) in self.support() {
            out.set(g.act(c, u), s.to_string());
        }
        out
    }

    /// Axis-aligned bounding window of the support, if nonempty.
    pub fn bounding_window(&self) -> Option<Window> {
        let mut it = self.support();
        let (first, _) = it.next()?;
        let (mut lo, mut hi) = (first, first);
        for (c, _) in self.support() {
            lo = cell(lo.x.min(c.x), lo.y.min(c.y));
            hi = cell(hi.x.max(c.x), hi.y.max(c.y));
        }
        Some(Window::new(lo, hi))
    }
}

/// An inclusive axis-aligned rectangle of cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Cell,
    pub hi: Cell,
}

impl Window {
    /// Builds the window spanned by two corner cells (any orientation).
    pub fn new(a: Cell, b: Cell) -> Window {
        Window {
            lo: cell(a.x.min(b.x), a.y.min(b.y)),
            hi: cell(a.x.max(b.x), a.y.max(b.y)),
        }
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.lo.x <= c.x && c.x <= self.hi.x && self.lo.y <= c.y && c.y <= self.hi.y
    }

    pub fn grow(&self, by: i64) -> Window {
        Window {
            lo: cell(self.lo.x - by, self.lo.y - by),
            hi: cell(self.hi.x + by, self.hi.y + by),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.lo.x..=self.hi.x).flat_map(move |x| (self.lo.y..=self.hi.y).map(move |y| cell(x, y)))
    }
}

/// A memory set, local rule, and coordinate system over a common universe
/// and state set.
#[derive(Clone, Debug)]
pub struct ConstructionTriple {
    states: StateSet,
    rule: LocalRule,
    coordsys: CoordinateSystem,
    universe: Universe,
}

impl ConstructionTriple {
    /// Builds and validates a triple: the rule must be total and map the
    /// all-quiescent pattern to the quiescent state, and the coordinate
    /// system must live in the same universe.
    pub fn new(
        states: StateSet,
        rule: LocalRule,
        coordsys: CoordinateSystem,
        universe: Universe,
    ) -> Result<ConstructionTriple> {
        if coordsys.universe() != universe {
            return Err(Error::IncompatibleUniverses);
        }
        rule.validate(&states)?;
        let quiescent = vec![states.quiescent_id(); rule.memory.len()];
        let image = rule.eval_ids(&states, &quiescent);
        if image != states.quiescent_id() {
            return Err(Error::Quiescence(
                states.quiescent().to_string(),
                states.name(image).to_string(),
            ));
        }
        Ok(ConstructionTriple {
            states,
            rule,
            coordsys,
            universe,
        })
    }

    pub fn states(&self) -> &StateSet {
        &self.states
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn memory(&self) -> &MemorySet {
        &self.rule.memory
    }

    pub fn coordsys(&self) -> &CoordinateSystem {
        &self.coordsys
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn quiescent_config(&self) -> Configuration {
        Configuration::empty(self.states.quiescent())
    }

    /// Evaluates the local rule on a pattern of state names in memory
    /// order.
    pub fn local_eval(&self, pattern: &[&str]) -> Result<String> {
        if pattern.len() != self.rule.memory.len() {
            return Err(Error::validation(
                "pattern",
                "length",
                format!(
                    "expected {} states, got {}",
                    self.rule.memory.len(),
                    pattern.len()
                ),
            ));
        }
        let tuple: Vec<usize> = pattern
            .iter()
            .map(|s| self.states.index(s))
            .collect::<Result<_>>()?;
        Ok(self
            .states
            .name(self.rule.eval_ids(&self.states, &tuple))
            .to_string())
    }

    /// The cells this triple reads to produce the state of `c`: the images
    /// of the memory cells under the coordinate of `c`.
    pub fn read_cells(&self, c: Cell) -> Vec<Cell> {
        let t = self.coordsys.coordinate(c);
        self.rule
            .memory
            .cells()
            .iter()
            .map(|&m| t.act(m, self.universe))
            .collect()
    }

    fn eval_at(&self, x: &Configuration, c: Cell) -> Result<usize> {
        let tuple: Vec<usize> = self
            .read_cells(c)
            .into_iter()
            .map(|rc| self.states.index(x.get(rc)))
            .collect::<Result<_>>()?;
        Ok(self.rule.eval_ids(&self.states, &tuple))
    }

    /// One application of the global transition map.
    ///
    /// The configuration's default must be the quiescent state. Candidate
    /// output cells are those whose center lies within the memory radius of
    /// some support cell; coordinates are isometries, so they preserve that
    /// radius, and every other cell reads an all-quiescent pattern.
    pub fn step(&self, x: &Configuration) -> Result<Configuration> {
        x.validate(&self.states)?;
        let mut out = self.quiescent_config();
        let radius_sq = self.rule.memory.radius_sq();
        let reach = int_sqrt_ceil(radius_sq);
        let mut candidates: BTreeSet<Cell> = BTreeSet::new();
        for (s, _) in x.support() {
            for dx in -reach..=reach {
                for dy in -reach..=reach {
                    if dx * dx + dy * dy <= radius_sq {
                        candidates.insert(cell(s.x + dx, s.y + dy));
                    }
                }
            }
        }
        for c in candidates {
            let v = self.eval_at(x, c)?;
            if v != self.states.quiescent_id() {
                out.set(c, self.states.name(v).to_string());
            }
        }
        Ok(out)
    }

    /// `n`-fold iteration of [`ConstructionTriple::step`].
    pub fn run(&self, x: &Configuration, n_steps: u64) -> Result<Configuration> {
        let mut cur = x.clone();
        for _ in 0..n_steps {
            cur = self.step(&cur)?;
        }
        Ok(cur)
    }

    /// Exact-information stepping: `x` is taken as known only on `known`.
    /// Returns the cells whose whole read set lies inside the window,
    /// together with their exact next states. An empty result is a valid
    /// outcome.
    pub fn step_window(
        &self,
        known: Window,
        x: &Configuration,
    ) -> Result<Vec<(Cell, String)>> {
        let mut out = Vec::new();
        for c in known.cells() {
            let reads = self.read_cells(c);
            if reads.iter().all(|rc| known.contains(*rc)) {
                let tuple: Vec<usize> = reads
                    .into_iter()
                    .map(|rc| self.states.index(x.get(rc)))
                    .collect::<Result<_>>()?;
                let v = self.rule.eval_ids(&self.states, &tuple);
                out.push((c, self.states.name(v).to_string()));
            }
        }
        Ok(out)
    }
}

fn int_sqrt_ceil(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r
}
