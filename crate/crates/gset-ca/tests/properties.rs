//! Cross-module property suites: algebraic laws under proptest, the
//! equivariance witnesses of the example automata, minimal-memory
//! covariance under origin changes, locality fuzzing, and agreement between
//! global and window stepping.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use gset_ca::analysis::{commutes_on, random_configuration, useful_cells};
use gset_ca::ca::{ConstructionTriple, LocalRule, MemorySet, RuleKind, Window};
use gset_ca::coordsys::{CoordinateSystem, PresetId, ALL_PRESETS};
use gset_ca::group::{cell, d4_stabilizers, Cell, Isometry, Universe, ALL_POINT_PARTS};
use gset_ca::zoo::{builtin, BuiltinId};

use common::TestRng;

fn arb_isometry() -> impl Strategy<Value = Isometry> {
    (0..8usize, -6i64..=6, -6i64..=6)
        .prop_map(|(p, tx, ty)| Isometry::new(ALL_POINT_PARTS[p], (tx, ty)))
}

fn arb_cell() -> impl Strategy<Value = Cell> {
    (-8i64..=8, -8i64..=8).prop_map(|(x, y)| cell(x, y))
}

proptest! {
    #[test]
    fn associativity(g in arb_isometry(), h in arb_isometry(), k in arb_isometry()) {
        prop_assert_eq!(g.compose(h).compose(k), g.compose(h.compose(k)));
    }

    #[test]
    fn inverse_law(g in arb_isometry()) {
        prop_assert_eq!(g.inverse().compose(g), Isometry::IDENTITY);
        prop_assert_eq!(g.compose(g.inverse()), Isometry::IDENTITY);
    }

    #[test]
    fn action_law(g in arb_isometry(), h in arb_isometry(), c in arb_cell()) {
        for u in [Universe::PointLattice, Universe::SquareTessellation] {
            prop_assert_eq!(g.act(h.act(c, u), u), g.compose(h).act(c, u));
            prop_assert_eq!(Isometry::IDENTITY.act(c, u), c);
        }
    }

    #[test]
    fn distance_preserved(g in arb_isometry(), c in arb_cell(), d in arb_cell()) {
        for u in [Universe::PointLattice, Universe::SquareTessellation] {
            prop_assert_eq!(g.act(c, u).center_dist_sq(g.act(d, u)), c.center_dist_sq(d));
        }
    }

    #[test]
    fn decompose_splits_every_isometry(h in arb_isometry(), which in 0..ALL_PRESETS.len()) {
        let id = ALL_PRESETS[which];
        let u = if id.supports(Universe::SquareTessellation) {
            Universe::SquareTessellation
        } else {
            Universe::PointLattice
        };
        let cs = CoordinateSystem::preset(id, u).unwrap();
        let (t, s) = cs.decompose(h);
        prop_assert_eq!(t.compose(s), h);
        prop_assert_eq!(s.act(cs.origin(), u), cs.origin());
        prop_assert_eq!(cs.coordinate(t.act(cs.origin(), u)), t);
    }

    #[test]
    fn transversal_axiom_on_random_cells(c in arb_cell(), which in 0..ALL_PRESETS.len()) {
        let id = ALL_PRESETS[which];
        let u = if id.supports(Universe::SquareTessellation) {
            Universe::SquareTessellation
        } else {
            Universe::PointLattice
        };
        let cs = CoordinateSystem::preset(id, u).unwrap();
        prop_assert_eq!(cs.coordinate(c).act(cs.origin(), u), c);
    }
}

/// The declared equivariance generators of the builtins: elements of groups
/// known to commute with the automaton.
fn declared_generators(id: BuiltinId) -> Vec<Isometry> {
    match id {
        BuiltinId::GameOfLife => {
            let mut gens = vec![
                Isometry::translation((1, 0)),
                Isometry::translation((0, 1)),
                Isometry::translation((-3, 2)),
            ];
            gens.extend(d4_stabilizers(cell(0, 0), Universe::SquareTessellation));
            gens
        }
        BuiltinId::FairyLights => vec![
            Isometry::translation((2, 0)),
            Isometry::translation((1, 1)),
            // the odd-cell representatives are central inversions
            Isometry::new(gset_ca::group::PointPart::R180, (1, 0)),
        ],
        BuiltinId::MargolusTau0 | BuiltinId::MargolusTau1 => vec![
            Isometry::translation((2, 0)),
            Isometry::translation((0, 2)),
            Isometry::rotation_about_point(1, (1, 1)),
        ],
        BuiltinId::Identity => vec![
            Isometry::translation((5, -1)),
            Isometry::new(gset_ca::group::PointPart::MD, (0, 0)),
        ],
        _ => Vec::new(),
    }
}

#[test]
fn equivariance_witnesses() {
    for id in BuiltinId::ALL {
        let tr = builtin(id);
        for g in declared_generators(id) {
            for seed in 0..50u64 {
                let x = random_configuration(tr.states(), 4, 9000 + seed);
                assert!(
                    commutes_on(&tr, g, &x).unwrap(),
                    "{id}: {g} fails on seed {seed}"
                );
            }
        }
    }
}

#[test]
fn equivariance_sample_is_subgroup_closed() {
    // if g and h commute with the automaton on a fixed sample, so do their
    // product and inverses on that sample
    let tr = builtin(BuiltinId::GameOfLife);
    let sample: Vec<_> = (0..50u64)
        .map(|seed| random_configuration(tr.states(), 4, 400 + seed))
        .collect();
    let passes = |g: Isometry| sample.iter().all(|x| commutes_on(&tr, g, x).unwrap());

    let g = Isometry::translation((2, -1));
    let h = Isometry::new(gset_ca::group::PointPart::R90, (1, 0));
    assert!(passes(g) && passes(h));
    assert!(passes(g.compose(h)));
    assert!(passes(h.compose(g)));
    assert!(passes(g.inverse()));
    assert!(passes(h.inverse()));
}

/// The transported triple `(g . M, transported rule, changed origin)`: the
/// rule stays positional, the memory moves cell-wise.
fn transported(tr: &ConstructionTriple, g: Isometry) -> ConstructionTriple {
    let u = tr.universe();
    let memory = MemorySet::new(
        tr.memory()
            .cells()
            .iter()
            .map(|&c| g.act(c, u))
            .collect(),
    )
    .unwrap();
    let kind = match &tr.rule().kind {
        RuleKind::Table(t) => RuleKind::Table(Arc::clone(t)),
        RuleKind::Projection(c) => RuleKind::Projection(g.act(*c, u)),
        RuleKind::Margolus => RuleKind::Margolus,
        RuleKind::LifeSum => panic!("transport life-sum via minimize first"),
    };
    let cs = tr.coordsys().change_origin(g).unwrap();
    ConstructionTriple::new(tr.states().clone(), LocalRule { memory, kind }, cs, u).unwrap()
}

/// Re-expresses a rule as a dense table so it transports positionally.
fn tabulated(tr: &ConstructionTriple) -> ConstructionTriple {
    let q = tr.states().len();
    let n = tr.memory().len();
    let total = q.pow(n as u32);
    let mut table = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rest = idx;
        let pattern: Vec<&str> = (0..n)
            .map(|_| {
                let s = tr.states().name(rest % q);
                rest /= q;
                s
            })
            .collect();
        let out = tr.local_eval(&pattern).unwrap();
        table.push(tr.states().index(&out).unwrap());
    }
    ConstructionTriple::new(
        tr.states().clone(),
        LocalRule {
            memory: MemorySet::new(tr.memory().cells().to_vec()).unwrap(),
            kind: RuleKind::Table(Arc::new(table)),
        },
        tr.coordsys().clone(),
        tr.universe(),
    )
    .unwrap()
}

#[test]
fn minimal_memory_moves_with_the_origin() {
    // game of life, tabulated so the rule transports positionally
    let gol = tabulated(&builtin(BuiltinId::GameOfLife));
    let g = Isometry::translation((2, 3));
    let moved = transported(&gol, g);

    for seed in 0..20u64 {
        let x = random_configuration(gol.states(), 4, 500 + seed);
        assert_eq!(moved.step(&x).unwrap(), gol.step(&x).unwrap());
    }

    let m0: BTreeSet<Cell> = useful_cells(&gol).unwrap().cells().iter().copied().collect();
    let m1: BTreeSet<Cell> = useful_cells(&moved).unwrap().cells().iter().copied().collect();
    let expected: BTreeSet<Cell> = m0
        .iter()
        .map(|&c| g.act(c, Universe::SquareTessellation))
        .collect();
    assert_eq!(m1, expected);

    // fairy lights through an inversion representative
    let fairy = builtin(BuiltinId::FairyLights);
    let g = fairy.coordsys().coordinate(cell(1, 0));
    let moved = transported(&fairy, g);
    for seed in 0..20u64 {
        let x = random_configuration(fairy.states(), 4, 600 + seed);
        assert_eq!(moved.step(&x).unwrap(), fairy.step(&x).unwrap());
    }
    let m1: BTreeSet<Cell> = useful_cells(&moved).unwrap().cells().iter().copied().collect();
    let expected: BTreeSet<Cell> = useful_cells(&fairy)
        .unwrap()
        .cells()
        .iter()
        .map(|&c| g.act(c, Universe::PointLattice))
        .collect();
    assert_eq!(m1, expected);
}

#[test]
fn locality_fuzz() {
    // altering the configuration outside a cell's read set never changes
    // that cell's next state
    for id in [
        BuiltinId::GameOfLife,
        BuiltinId::FairyLights,
        BuiltinId::MargolusTau0,
        BuiltinId::StateShift44,
    ] {
        let tr = builtin(id);
        let mut rng = TestRng(77);
        for seed in 0..40u64 {
            let x = random_configuration(tr.states(), 4, 700 + seed);
            let target = cell(
                rng.below(7) as i64 - 3,
                rng.below(7) as i64 - 3,
            );
            let reads: BTreeSet<Cell> = tr.read_cells(target).into_iter().collect();

            let mut mutated = x.clone();
            for _ in 0..6 {
                let c = cell(rng.below(13) as i64 - 6, rng.below(13) as i64 - 6);
                if reads.contains(&c) {
                    continue;
                }
                let flip = if mutated.get(c) == "0" { "1" } else { "0" };
                mutated.set(c, flip);
            }

            let before = tr.step(&x).unwrap();
            let after = tr.step(&mutated).unwrap();
            assert_eq!(before.get(target), after.get(target), "{id} seed {seed}");
        }
    }
}

#[test]
fn step_window_agrees_with_step() {
    for id in BuiltinId::ALL {
        let tr = builtin(id);
        let window = Window::new(cell(-6, -6), cell(6, 6));
        for seed in 0..100u64 {
            let x = random_configuration(tr.states(), 4, 800 + seed);
            let global = tr.step(&x).unwrap();
            for (c, s) in tr.step_window(window, &x).unwrap() {
                assert_eq!(s, global.get(c), "{id} seed {seed} at {c}");
            }
        }
    }
}

#[test]
fn composition_witnesses_replay() {
    use gset_ca::analysis::{compose_triples, verify_composition, CompositionReport};
    let tr = builtin(BuiltinId::StateShiftD);
    let composed = compose_triples(&tr, &tr).unwrap();
    match verify_composition(&tr, &tr, &composed, 100, 13, 4).unwrap() {
        CompositionReport::Counterexample(w) => {
            let stepwise = tr.step(&tr.step(&w.config).unwrap()).unwrap();
            let direct = composed.step(&w.config).unwrap();
            assert_eq!(stepwise.get(w.cell), w.value_composite);
            assert_eq!(direct.get(w.cell), w.value_composed_triple);
            assert_ne!(w.value_composite, w.value_composed_triple);
        }
        CompositionReport::Consistent { .. } => panic!("expected a counterexample"),
    }
}

#[test]
fn octagonal_life_rule_matches_square_rule_on_equal_sums() {
    // same local map: feed the square life rule a Moore pattern with a
    // given 9-cell sum and center, and the octagonal step a patch pattern
    // with the same sum and center; outcomes must agree
    use gset_ca::hyperbolic::{build_patch, hyp_gol_step};
    use std::collections::BTreeSet as Set;

    let gol = builtin(BuiltinId::GameOfLife);
    let patch = build_patch(3).unwrap();
    let center = 0usize;
    let ns = patch.neighbors(center).unwrap();

    for center_alive in [false, true] {
        for neighbor_count in 0..=8usize {
            // square side: a Moore tuple with the same counts
            let mut pattern = vec!["0"; 9];
            let center_pos = gol.memory().position(cell(0, 0)).unwrap();
            if center_alive {
                pattern[center_pos] = "1";
            }
            let mut placed = 0;
            for (i, slot) in pattern.iter_mut().enumerate() {
                if i != center_pos && placed < neighbor_count {
                    *slot = "1";
                    placed += 1;
                }
            }
            let square = gol.local_eval(&pattern).unwrap() == "1";

            // octagon side
            let mut alive: Set<usize> = ns.iter().take(neighbor_count).copied().collect();
            if center_alive {
                alive.insert(center);
            }
            let next = hyp_gol_step(&patch, &alive).unwrap();
            assert_eq!(
                next.contains(&center),
                square,
                "center_alive {center_alive} neighbors {neighbor_count}"
            );
        }
    }
}

#[test]
fn preset_membership_check_blocks_foreign_isometries() {
    // change_origin demands a representative; a rotation that is not in the
    // translations-only coordinate set must be refused
    let cs = CoordinateSystem::preset(PresetId::TranslationsOnly, Universe::SquareTessellation)
        .unwrap();
    let r = Isometry::new(gset_ca::group::PointPart::R90, (0, 0));
    assert!(cs.change_origin(r).is_err());
}
