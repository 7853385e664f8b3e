//! Rule analysis: minimal memory sets, invariance and equivariance checks,
//! stabilizer-obstruction enumeration, composition, and empirical inverse
//! verification.
//!
//! The brute-force pattern loops are the definitions themselves, so their
//! verdicts are exact; everything randomized is seeded and replayable.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ca::{pattern_space, Configuration, ConstructionTriple, LocalRule, MemorySet, RuleKind, StateSet};
use crate::error::{Error, Result};
use crate::group::{cell, Cell, Isometry};

/// The memory cells whose state can change the rule's output, found by
/// exhaustive enumeration of the pattern space.
pub fn useful_cells(tr: &ConstructionTriple) -> Result<MemorySet> {
    let states = tr.states();
    let memory = tr.memory();
    let q = states.len();
    let n = memory.len();
    let total = pattern_space(q, n)?;

    let mut useful = vec![false; n];
    let mut tuple = vec![0usize; n];
    for idx in 0..total {
        decode_tuple(idx, q, &mut tuple);
        let base = tr.rule().eval_ids(states, &tuple);
        for i in 0..n {
            if useful[i] {
                continue;
            }
            let orig = tuple[i];
            for alt in 0..q {
                if alt == orig {
                    continue;
                }
                tuple[i] = alt;
                if tr.rule().eval_ids(states, &tuple) != base {
                    useful[i] = true;
                    break;
                }
            }
            tuple[i] = orig;
        }
    }
    MemorySet::new(
        memory
            .cells()
            .iter()
            .zip(&useful)
            .filter(|(_, &u)| u)
            .map(|(&c, _)| c)
            .collect(),
    )
}

/// Restricts the triple to its useful cells. The restriction is
/// well-defined because useless cells never affect the rule; they are fixed
/// to the quiescent state when tabulating.
pub fn minimize(tr: &ConstructionTriple) -> Result<ConstructionTriple> {
    let states = tr.states();
    let memory = tr.memory();
    let minimal = useful_cells(tr)?;
    if minimal.cells() == memory.cells() {
        return Ok(tr.clone());
    }
    let positions: Vec<usize> = minimal
        .cells()
        .iter()
        .map(|&c| memory.position(c).unwrap())
        .collect();

    let q = states.len();
    let total = pattern_space(q, minimal.len())?;
    let mut table = Vec::with_capacity(total as usize);
    let mut reduced = vec![0usize; minimal.len()];
    let mut full = vec![states.quiescent_id(); memory.len()];
    for idx in 0..total {
        decode_tuple(idx, q, &mut reduced);
        for f in full.iter_mut() {
            *f = states.quiescent_id();
        }
        for (i, &p) in positions.iter().enumerate() {
            full[p] = reduced[i];
        }
        table.push(tr.rule().eval_ids(states, &full));
    }
    ConstructionTriple::new(
        states.clone(),
        LocalRule {
            memory: minimal,
            kind: RuleKind::Table(Arc::new(table)),
        },
        tr.coordsys().clone(),
        tr.universe(),
    )
}

/// A replayable invariance verdict for one isometry.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub element: Isometry,
    pub holds: bool,
    pub counterexample: Option<InvarianceWitness>,
}

/// A pattern on `M` and `s^-1 . M` whose transformed and untransformed rule
/// values differ.
#[derive(Clone, Debug)]
pub struct InvarianceWitness {
    /// Cell states defining the pattern, in deterministic order.
    pub pattern: Vec<(Cell, String)>,
    pub value_original: String,
    pub value_transformed: String,
}

impl fmt::Display for InvarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "holds {}", self.element)
        } else {
            writeln!(f, "violated {}", self.element)?;
            let w = self.counterexample.as_ref().unwrap();
            for (c, s) in &w.pattern {
                writeln!(f, "  {c} = {s}")?;
            }
            write!(
                f,
                "  rule gives {:?}, transformed pattern gives {:?}",
                w.value_original, w.value_transformed
            )
        }
    }
}

/// Checks, for each element `s` fixing the origin, whether the local rule
/// takes the same value on `x` and on `s x` for every pattern `x` on
/// `M` united with `s^-1 . M`. Exhaustive, hence exact. By the generated
/// subgroup argument, all-hold over generators certifies invariance under
/// the whole generated stabilizer subgroup.
pub fn invariance_check(
    tr: &ConstructionTriple,
    elements: &[Isometry],
) -> Result<Vec<InvarianceReport>> {
    elements
        .iter()
        .map(|&s| invariance_check_one(tr, s))
        .collect()
}

fn invariance_check_one(tr: &ConstructionTriple, s: Isometry) -> Result<InvarianceReport> {
    let u = tr.universe();
    let origin = tr.coordsys().origin();
    if s.act(origin, u) != origin {
        return Err(Error::NotAStabilizer(s, origin));
    }
    let states = tr.states();
    let memory = tr.memory();
    let s_inv = s.inverse();

    // domain: M united with s^-1 . M, deterministic order
    let mut domain: Vec<Cell> = memory.cells().to_vec();
    for &m in memory.cells() {
        let c = s_inv.act(m, u);
        if !domain.contains(&c) {
            domain.push(c);
        }
    }
    let q = states.len();
    let total = pattern_space(q, domain.len())?;

    // tuple positions: reading M from x, and from (s x)(b) = x(s^-1 . b)
    let pos_of = |c: Cell| domain.iter().position(|&d| d == c).unwrap();
    let direct: Vec<usize> = memory.cells().iter().map(|&m| pos_of(m)).collect();
    let moved: Vec<usize> = memory.cells().iter().map(|&m| pos_of(s_inv.act(m, u))).collect();

    let mut pattern = vec![0usize; domain.len()];
    let mut tuple = vec![0usize; memory.len()];
    for idx in 0..total {
        decode_tuple(idx, q, &mut pattern);
        for (i, &p) in direct.iter().enumerate() {
            tuple[i] = pattern[p];
        }
        let original = tr.rule().eval_ids(states, &tuple);
        for (i, &p) in moved.iter().enumerate() {
            tuple[i] = pattern[p];
        }
        let transformed = tr.rule().eval_ids(states, &tuple);
        if original != transformed {
            return Ok(InvarianceReport {
                element: s,
                holds: false,
                counterexample: Some(InvarianceWitness {
                    pattern: domain
                        .iter()
                        .zip(&pattern)
                        .map(|(&c, &v)| (c, states.name(v).to_string()))
                        .collect(),
                    value_original: states.name(original).to_string(),
                    value_transformed: states.name(transformed).to_string(),
                }),
            });
        }
    }
    Ok(InvarianceReport {
        element: s,
        holds: true,
        counterexample: None,
    })
}

/// Enumerates the elements of `(T^-1 T^-1 T) intersect Stab(origin)`
/// witnessed by cell pairs within the Chebyshev ball of the given radius:
/// for coordinates `t`, `t'`, the coordinate of `t^-1 t' . origin` differs
/// from `t^-1 t'` by exactly such a stabilizer element.
pub fn s_set(tr: &ConstructionTriple, radius: i64) -> BTreeSet<Isometry> {
    let cs = tr.coordsys();
    let u = tr.universe();
    let origin = cs.origin();
    let mut out = BTreeSet::new();
    let ball: Vec<Cell> = (-radius..=radius)
        .flat_map(|dx| {
            (-radius..=radius).map(move |dy| cell(origin.x + dx, origin.y + dy))
        })
        .collect();
    for &c in &ball {
        let t = cs.coordinate(c);
        let t_inv = t.inverse();
        for &c2 in &ball {
            let g = t_inv.compose(cs.coordinate(c2));
            let s = cs.coordinate(g.act(origin, u)).inverse().compose(g);
            debug_assert_eq!(s.act(origin, u), origin);
            out.insert(s);
        }
    }
    out
}

/// Verdict of an equivariance check for one triple.
#[derive(Clone, Debug)]
pub struct EquivarianceReport {
    pub radius: i64,
    pub elements_checked: usize,
    pub violation: Option<InvarianceReport>,
    /// Set when the triple is a state shift, for which the coordinate
    /// system is essentially unique and a violation disqualifies the
    /// automaton itself, not just this triple.
    pub triple_is_state_shift: bool,
}

impl EquivarianceReport {
    pub fn no_obstruction(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for EquivarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(
                f,
                "no obstruction up to radius {} ({} stabilizer elements checked)",
                self.radius, self.elements_checked
            ),
            Some(v) => {
                if self.triple_is_state_shift {
                    writeln!(
                        f,
                        "the automaton is not equivariant (state shifts admit only one coordinate system)"
                    )?;
                } else {
                    writeln!(f, "this triple's local rule is not S-invariant")?;
                }
                write!(f, "{v}")
            }
        }
    }
}

/// Runs [`invariance_check`] over the stabilizer elements witnessed by
/// [`s_set`] within the radius. Any failure is a definitive negative for
/// this triple; all-hold is a radius-bounded positive.
pub fn equivariance_check(tr: &ConstructionTriple, radius: i64) -> Result<EquivarianceReport> {
    let elements: Vec<Isometry> = s_set(tr, radius).into_iter().collect();
    let is_shift = tr.memory().len() == 1
        && matches!(tr.rule().kind, RuleKind::Projection(c) if tr.memory().cells() == [c]);
    for &s in &elements {
        let report = invariance_check_one(tr, s)?;
        if !report.holds {
            return Ok(EquivarianceReport {
                radius,
                elements_checked: elements.len(),
                violation: Some(report),
                triple_is_state_shift: is_shift,
            });
        }
    }
    Ok(EquivarianceReport {
        radius,
        elements_checked: elements.len(),
        violation: None,
        triple_is_state_shift: is_shift,
    })
}

/// Builds the composed triple for `first` after `second`: memory
/// `{ t_b1 . b2 }` over the second system's coordinates of the first
/// memory's cells, the chained local rule, and the first triple's
/// coordinate system. When the composite map is a cellular automaton, this
/// triple realizes it.
pub fn compose_triples(
    first: &ConstructionTriple,
    second: &ConstructionTriple,
) -> Result<ConstructionTriple> {
    if first.universe() != second.universe() {
        return Err(Error::IncompatibleUniverses);
    }
    if first.states() != second.states() {
        return Err(Error::IncompatibleStateSets(
            first.states().symbols().to_vec(),
            second.states().symbols().to_vec(),
        ));
    }
    let u = first.universe();
    let states = first.states().clone();
    let m1 = first.memory();
    let m2 = second.memory();

    // the second system's coordinate of each first-memory cell
    let coords: Vec<Isometry> = m1
        .cells()
        .iter()
        .map(|&b1| second.coordsys().coordinate(b1))
        .collect();

    // composed memory, deduplicated keeping first occurrence
    let mut memory: Vec<Cell> = Vec::new();
    for t in &coords {
        for &b2 in m2.cells() {
            let c = t.act(b2, u);
            if !memory.contains(&c) {
                memory.push(c);
            }
        }
    }
    let memory = MemorySet::new(memory)?;

    // for each first-memory cell, where its inner tuple sits in the
    // composed tuple
    let reads: Vec<Vec<usize>> = coords
        .iter()
        .map(|t| {
            m2.cells()
                .iter()
                .map(|&b2| memory.position(t.act(b2, u)).unwrap())
                .collect()
        })
        .collect();

    let q = states.len();
    let total = pattern_space(q, memory.len())?;
    let mut table = Vec::with_capacity(total as usize);
    let mut y = vec![0usize; memory.len()];
    let mut inner = vec![0usize; m2.len()];
    let mut outer = vec![0usize; m1.len()];
    for idx in 0..total {
        decode_tuple(idx, q, &mut y);
        for (i, read) in reads.iter().enumerate() {
            for (j, &p) in read.iter().enumerate() {
                inner[j] = y[p];
            }
            outer[i] = second.rule().eval_ids(&states, &inner);
        }
        table.push(first.rule().eval_ids(&states, &outer));
    }

    ConstructionTriple::new(
        states,
        LocalRule {
            memory,
            kind: RuleKind::Table(Arc::new(table)),
        },
        first.coordsys().clone(),
        u,
    )
}

/// Verdict of a composition consistency check.
#[derive(Clone, Debug)]
pub enum CompositionReport {
    Consistent { trials: u64 },
    Counterexample(CompositionWitness),
}

/// A configuration and cell where stepping the two automata in sequence
/// disagrees with the composed triple.
#[derive(Clone, Debug)]
pub struct CompositionWitness {
    pub config: Configuration,
    pub cell: Cell,
    pub value_composite: String,
    pub value_composed_triple: String,
}

impl CompositionReport {
    pub fn is_consistent(&self) -> bool {
        matches!(self, CompositionReport::Consistent { .. })
    }
}

impl fmt::Display for CompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositionReport::Consistent { trials } => {
                write!(f, "consistent on {trials} random configurations")
            }
            CompositionReport::Counterexample(w) => {
                writeln!(f, "counterexample at cell {}", w.cell)?;
                writeln!(
                    f,
                    "  stepwise composite gives {:?}, composed triple gives {:?}",
                    w.value_composite, w.value_composed_triple
                )?;
                write!(f, "  input support:")?;
                for (c, s) in w.config.support() {
                    write!(f, " {c}={s}")?;
                }
                Ok(())
            }
        }
    }
}

/// Compares `first(second(x))` with `composed(x)` on seeded random
/// configurations supported in the radius ball.
pub fn verify_composition(
    first: &ConstructionTriple,
    second: &ConstructionTriple,
    composed: &ConstructionTriple,
    trials: u64,
    seed: u64,
    radius: i64,
) -> Result<CompositionReport> {
    let states = first.states();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = random_configuration_from(states, radius, &mut rng);
        let stepwise = first.step(&second.step(&x)?)?;
        let direct = composed.step(&x)?;
        if stepwise != direct {
            let (c, composite, composed_value) = first_difference(&stepwise, &direct);
            return Ok(CompositionReport::Counterexample(CompositionWitness {
                config: x,
                cell: c,
                value_composite: composite,
                value_composed_triple: composed_value,
            }));
        }
    }
    Ok(CompositionReport::Consistent { trials })
}

/// Verdict of a two-sided inverse check.
#[derive(Clone, Debug)]
pub enum InverseReport {
    Confirmed { trials: u64 },
    Failure(InverseWitness),
}

#[derive(Clone, Debug)]
pub struct InverseWitness {
    pub config: Configuration,
    /// `"a(b(x))"` or `"b(a(x))"`.
    pub order: &'static str,
    pub cell: Cell,
    pub expected: String,
    pub got: String,
}

impl InverseReport {
    pub fn confirmed(&self) -> bool {
        matches!(self, InverseReport::Confirmed { .. })
    }
}

impl fmt::Display for InverseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InverseReport::Confirmed { trials } => {
                write!(f, "inverse confirmed on {trials} random configurations")
            }
            InverseReport::Failure(w) => {
                writeln!(f, "inverse fails for {} at cell {}", w.order, w.cell)?;
                write!(
                    f,
                    "  expected {:?}, got {:?}; input support:",
                    w.expected, w.got
                )?;
                for (c, s) in w.config.support() {
                    write!(f, " {c}={s}")?;
                }
                Ok(())
            }
        }
    }
}

/// Tests `a(b(x)) = x` and `b(a(x)) = x` on seeded random configurations.
pub fn verify_inverse(
    a: &ConstructionTriple,
    b: &ConstructionTriple,
    trials: u64,
    seed: u64,
    radius: i64,
) -> Result<InverseReport> {
    let states = a.states();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x = random_configuration_from(states, radius, &mut rng);
        let ab = a.step(&b.step(&x)?)?;
        if ab != x {
            let (c, got, expected) = first_difference(&ab, &x);
            return Ok(InverseReport::Failure(InverseWitness {
                config: x,
                order: "a(b(x))",
                cell: c,
                expected,
                got,
            }));
        }
        let ba = b.step(&a.step(&x)?)?;
        if ba != x {
            let (c, got, expected) = first_difference(&ba, &x);
            return Ok(InverseReport::Failure(InverseWitness {
                config: x,
                order: "b(a(x))",
                cell: c,
                expected,
                got,
            }));
        }
    }
    Ok(InverseReport::Confirmed { trials })
}

/// Whether `step(g x) = g step(x)` for one configuration.
pub fn commutes_on(tr: &ConstructionTriple, g: Isometry, x: &Configuration) -> Result<bool> {
    let u = tr.universe();
    Ok(tr.step(&x.act(g, u))? == tr.step(x)?.act(g, u))
}

/// A uniformly random configuration on the Chebyshev ball of the given
/// radius: every cell of the ball draws a state uniformly (including the
/// quiescent one), then the result is canonicalized.
pub fn random_configuration(states: &StateSet, radius: i64, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_configuration_from(states, radius, &mut rng)
}

fn random_configuration_from(
    states: &StateSet,
    radius: i64,
    rng: &mut ChaCha8Rng,
) -> Configuration {
    let mut x = Configuration::empty(states.quiescent());
    for cx in -radius..=radius {
        for cy in -radius..=radius {
            let s = rng.gen_range(0..states.len());
            x.set(cell(cx, cy), states.name(s).to_string());
        }
    }
    x
}

fn first_difference(a: &Configuration, b: &Configuration) -> (Cell, String, String) {
    let cells: BTreeSet<Cell> = a
        .support()
        .map(|(c, _)| c)
        .chain(b.support().map(|(c, _)| c))
        .collect();
    for c in cells {
        if a.get(c) != b.get(c) {
            return (c, a.get(c).to_string(), b.get(c).to_string());
        }
    }
    unreachable!("configurations differ but no differing cell found")
}

fn decode_tuple(mut idx: u64, q: usize, out: &mut [usize]) {
    for slot in out.iter_mut() {
        *slot = (idx % q as u64) as usize;
        idx /= q as u64;
    }
}
