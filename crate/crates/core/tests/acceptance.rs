//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use impartial::algebra::{
    best_move, outcome_of, position_outcome, position_value, replay, sum_value, SumPosition,
    Verdict,
};
use impartial::digraph::{Game, GameDigraph, NodeId, TheoryClass};
use impartial::fixtures;
use impartial::hackenbush::shapes::{full_glass, glass, stalk};
use impartial::hackenbush::EdgeColor::{self, Green, Lime};
use impartial::hackenbush::{analyze_sum, compile_to_digraph, DEFAULT_POSITION_CAP};
use impartial::oracle::{check_consistency, random_digraph, retrograde_label};
use impartial::solvers::{
    covered_values, solve_carry, solve_cyclic, solve_entailing, solve_short, Assignment,
};
use impartial::values::{GrayValue, NatSet, Outcome, WhiteValue};

fn fin(elems: &[u32]) -> NatSet {
    NatSet::finite(elems.iter().copied())
}

fn step_bounded(d: &GameDigraph, a: &Assignment) {
    assert!(
        a.steps() <= d.node_count() as u32,
        "halting bound violated: {} steps on {} nodes",
        a.steps(),
        d.node_count()
    );
}

fn carry_solved(d: &GameDigraph) -> Assignment {
    let a = solve_carry(d).unwrap();
    step_bounded(d, &a);
    a
}

fn white_start(d: &GameDigraph) -> Option<NodeId> {
    d.nodes().find(|&n| d.is_white(n))
}

fn pass(n: u32, what: &str) {
    println!("criterion {n:2} ({what}): PASS");
}

#[test]
fn acceptance_01_fraenkel_fixture() {
    let d = fixtures::fraenkel();
    let marked = [NodeId(1), NodeId(3), NodeId(4)];
    let expect = [
        WhiteValue::Finite(1),
        WhiteValue::Finite(3),
        WhiteValue::Inf(fin(&[2, 3])),
    ];
    for solve in [solve_cyclic, solve_carry] {
        let a = solve(&d).unwrap();
        step_bounded(&d, &a);
        for (node, want) in marked.iter().zip(&expect) {
            assert_eq!(a.white_value(*node), Some(want));
        }
    }
    let comps: Vec<(Game, Assignment)> = fixtures::fraenkel_pieces()
        .into_iter()
        .map(|g| {
            let a = solve_cyclic(&g.digraph).unwrap();
            (g, a)
        })
        .collect();
    let p = SumPosition::new(comps).unwrap();
    assert_eq!(position_value(&p).unwrap(), WhiteValue::Inf(fin(&[0, 1])));
    assert_eq!(position_outcome(&p).unwrap(), Outcome::N);
    let advice = best_move(&p).unwrap();
    assert_eq!(advice.verdict, Verdict::Win);
    assert_eq!(advice.line.len(), 1);
    let step = &advice.line[0];
    // The infinite piece (component 3, 0-based 2) exits to the value-2 node.
    assert_eq!(step.component, 2);
    assert_eq!(step.from, NodeId(4));
    assert_eq!(step.to, NodeId(2));
    let end = replay(&p, &advice.line).unwrap();
    assert!(end.opponent_to_move);
    assert_eq!(outcome_of(&end.value.unwrap()), Outcome::P);
    pass(1, "fraenkel fixture");
}

#[test]
fn acceptance_02_cyclic_fixture() {
    let d = fixtures::two_branch_with_cycle();
    let a = solve_cyclic(&d).unwrap();
    // Off-cycle nodes carry 0,0,0,1,1,2; the probe node also resolves to 1.
    for (node, want) in [(5, 0), (6, 0), (8, 0), (3, 1), (7, 1), (4, 2), (9, 1)] {
        assert_eq!(a.white_value(NodeId(node)), Some(&WhiteValue::Finite(want)));
    }
    assert_eq!(a.white_value(NodeId(1)), Some(&WhiteValue::Inf(fin(&[1]))));
    assert_eq!(a.white_value(NodeId(2)), Some(&WhiteValue::Inf(fin(&[2]))));
    assert_eq!(a.white_value(NodeId(0)), Some(&WhiteValue::Inf(NatSet::empty())));
    step_bounded(&d, &a);
    pass(2, "cyclic three-cycle fixture");
}

#[test]
fn acceptance_03_entailing_fixtures() {
    let d = fixtures::entailing_protection();
    let a = solve_entailing(&d).unwrap();
    step_bounded(&d, &a);
    assert_eq!(a.white_value(NodeId(0)), Some(&WhiteValue::Finite(1)));
    assert_eq!(
        covered_values(&d, &a, NodeId(2)),
        NatSet::cofinite_excluding([1])
    );

    let d = fixtures::entailing_two_branch();
    let a = solve_entailing(&d).unwrap();
    step_bounded(&d, &a);
    assert_eq!(
        a.gray_value(NodeId(7)),
        Some(&GrayValue::Cover(NatSet::cofinite_excluding([0])))
    );
    assert_eq!(
        a.gray_value(NodeId(1)),
        Some(&GrayValue::Cover(NatSet::cofinite_excluding([1])))
    );
    let moons: Vec<NodeId> = d
        .nodes()
        .filter(|&n| matches!(a.white_value(n), Some(WhiteValue::Moon(_))))
        .collect();
    assert_eq!(moons, vec![NodeId(4)]);
    pass(3, "entailing fixtures");
}

#[test]
fn acceptance_04_carry_fixtures() {
    let d = fixtures::carry_hit_and_run();
    let a = carry_solved(&d);
    assert_eq!(a.white_value(NodeId(0)), Some(&WhiteValue::Finite(1)));
    assert_eq!(
        a.gray_value(NodeId(2)),
        Some(&GrayValue::Cover(NatSet::cofinite_excluding([1])))
    );

    let left = fixtures::moon_chain_left();
    let a = carry_solved(&left);
    assert_eq!(a.white_value(NodeId(0)), Some(&WhiteValue::FullMoon));
    assert_eq!(a.gray_value(NodeId(1)), Some(&GrayValue::NewMoon));
    assert_eq!(a.gray_value(NodeId(2)), Some(&GrayValue::FullMoon));
    assert_eq!(a.gray_value(NodeId(3)), Some(&GrayValue::NewMoon));
    let right = fixtures::moon_chain_right();
    let a = carry_solved(&right);
    assert_eq!(a.white_value(NodeId(0)), Some(&WhiteValue::Finite(0)));
    assert_eq!(a.gray_value(NodeId(1)), Some(&GrayValue::FullMoon));
    assert_eq!(a.gray_value(NodeId(2)), Some(&GrayValue::NewMoon));

    // Compiled glasses.
    let lunar = compile_to_digraph(&glass(Green, Lime, Lime), DEFAULT_POSITION_CAP).unwrap();
    let a = carry_solved(&lunar.game.digraph);
    assert_eq!(a.white_value(lunar.root()), Some(&WhiteValue::Moon(fin(&[0]))));
    for arms in [(Green, Lime), (Lime, Green)] {
        let c = compile_to_digraph(&glass(Lime, arms.0, arms.1), DEFAULT_POSITION_CAP).unwrap();
        let a = carry_solved(&c.game.digraph);
        assert_eq!(
            a.white_value(c.root()),
            Some(&WhiteValue::Inf(fin(&[0, 2])))
        );
    }

    // Compiled full glass: every cyclic-zone white node is the nymphet of 0.
    let c = compile_to_digraph(&full_glass(Green, Green, Green, Lime), DEFAULT_POSITION_CAP)
        .unwrap();
    let a = carry_solved(&c.game.digraph);
    assert_eq!(a.white_value(c.root()), Some(&WhiteValue::Nym(0)));
    let zone: Vec<NodeId> = a
        .cyclic_zone()
        .filter(|&n| c.game.digraph.is_white(n))
        .collect();
    assert!(
        zone.len() == 3 || zone.len() == 4,
        "cyclic zone has {} nodes",
        zone.len()
    );
    for n in &zone {
        assert_eq!(a.white_value(*n), Some(&WhiteValue::Nym(0)));
    }
    assert!(zone.contains(&c.root()));
    pass(4, "carry-on fixtures incl. compiled glasses");
}

#[test]
fn acceptance_05_glass_sum_end_to_end() {
    let components = [
        full_glass(Green, Green, Green, Lime),
        stalk(&[Lime, Lime]),
        glass(Lime, Green, Lime),
        glass(Green, Lime, Lime),
    ];
    let analysis = analyze_sum(&components, DEFAULT_POSITION_CAP).unwrap();
    assert_eq!(analysis.value, WhiteValue::Inf(fin(&[0, 2])));
    assert_eq!(analysis.outcome, Outcome::N);
    assert_eq!(analysis.advice.verdict, Verdict::Win);

    // Replay the digraph-level line and confirm it hands the opponent a
    // previous-player win of value 0 (the *2 + *2 endgame).
    let sum = SumPosition::new(
        analysis
            .components
            .iter()
            .map(|(c, a)| (c.game.clone(), a.clone()))
            .collect(),
    )
    .unwrap();
    let advice = best_move(&sum).unwrap();
    assert_eq!(advice.verdict, Verdict::Win);
    let end = replay(&sum, &advice.line).unwrap();
    assert!(end.opponent_to_move);
    assert_eq!(end.value, Some(WhiteValue::Finite(0)));
    pass(5, "four-glass sum: value, outcome, replayed winning line");
}

#[test]
fn acceptance_06_sum_table() {
    use WhiteValue::{Finite, FullMoon, Inf, Moon, Nym};
    let d = fin(&[1, 2]);
    let d2 = fin(&[0, 3]);
    let f = fin(&[0, 3]);
    let f2 = fin(&[1]);
    // All 25 cells with symbolic adorns.
    let cells: Vec<(WhiteValue, WhiteValue, WhiteValue)> = vec![
        (FullMoon, FullMoon, FullMoon),
        (FullMoon, Inf(d.clone()), FullMoon),
        (FullMoon, Moon(f.clone()), FullMoon),
        (FullMoon, Nym(2), FullMoon),
        (FullMoon, Finite(3), FullMoon),
        (Inf(d.clone()), FullMoon, FullMoon),
        (Inf(d.clone()), Inf(d2.clone()), Inf(NatSet::empty())),
        (Inf(d.clone()), Moon(f.clone()), Inf(fin(&[1, 2]))),
        (Inf(d.clone()), Nym(2), Inf(fin(&[3, 0]))),
        (Inf(d.clone()), Finite(3), Inf(fin(&[2, 1]))),
        (Moon(f.clone()), FullMoon, FullMoon),
        (Moon(f.clone()), Inf(d2.clone()), Inf(fin(&[0, 3]))),
        (Moon(f.clone()), Moon(f2.clone()), Moon(fin(&[1, 2]))),
        (Moon(f.clone()), Nym(1), Moon(fin(&[1, 2]))),
        (Moon(f.clone()), Finite(2), Moon(fin(&[2, 1]))),
        (Nym(2), FullMoon, FullMoon),
        (Nym(2), Inf(d2.clone()), Inf(fin(&[2, 1]))),
        (Nym(2), Moon(f2.clone()), Moon(fin(&[3]))),
        (Nym(2), Nym(3), Nym(1)),
        (Nym(2), Finite(2), Nym(0)),
        (Finite(3), FullMoon, FullMoon),
        (Finite(3), Inf(d2.clone()), Inf(fin(&[3, 0]))),
        (Finite(3), Moon(f2.clone()), Moon(fin(&[2]))),
        (Finite(3), Nym(1), Nym(2)),
        (Finite(3), Finite(5), Finite(6)),
    ];
    for (a, b, want) in &cells {
        assert_eq!(&sum_value(a, b), want, "{a} + {b}");
    }
    // Commutativity over ten thousand random adorned pairs with small sets.
    let mut state = 0x243f6a8885a308d3u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let make = |bits: u64| -> WhiteValue {
        let adorn = |b: u64| fin(&(0..8).filter(|i| b & (1 << i) != 0).collect::<Vec<u32>>());
        match bits % 5 {
            0 => Finite((bits >> 3) as u32 % 8),
            1 => Nym((bits >> 3) as u32 % 8),
            2 => Moon(adorn(bits >> 3)),
            3 => Inf(adorn(bits >> 3)),
            _ => FullMoon,
        }
    };
    for _ in 0..10_000 {
        let a = make(next());
        let b = make(next());
        assert_eq!(sum_value(&a, &b), sum_value(&b, &a), "{a} + {b}");
        assert_eq!(sum_value(&FullMoon, &a), FullMoon);
        let z = sum_value(&a, &Finite(0));
        if a == FullMoon {
            assert_eq!(z, FullMoon);
        } else {
            assert_eq!(z, a);
        }
    }
    pass(6, "sum table: 25 cells, commutativity, absorption, identity");
}

#[test]
fn acceptance_07_pair_oracle_equivalence() {
    let mut checked = 0u32;
    let mut seed = 50_000u64;
    let mut lunar_empty = 0u32;
    while checked < 1000 {
        seed += 1;
        let n1 = 2 + (seed % 6) as usize;
        let n2 = 2 + ((seed / 11) % 6) as usize;
        let d1 = random_digraph(n1, 0.35, 0.3, TheoryClass::CarryOn, seed).unwrap();
        let d2 = random_digraph(n2, 0.4, 0.25, TheoryClass::CarryOn, seed ^ 0x5bd1e995).unwrap();
        let (Some(s1), Some(s2)) = (white_start(&d1), white_start(&d2)) else {
            continue;
        };
        let g1 = Game::new(d1, s1).unwrap();
        let g2 = Game::new(d2, s2).unwrap();
        let r = check_consistency(&g1, &g2).unwrap();
        assert!(
            r.consistent(),
            "seed {seed}: sum={} algebra={} oracle={}",
            r.sum,
            r.algebra_outcome,
            r.oracle_outcome
        );
        if matches!(&r.sum, WhiteValue::Moon(f) if f.is_empty()) {
            lunar_empty += 1;
        }
        checked += 1;
    }
    println!("  note: empty-adorn moons observed in sums: {lunar_empty}");
    pass(7, "1000/1000 sum outcomes match the product oracle");
}

#[test]
fn acceptance_08_single_piece_oracle_equivalence() {
    // Named fixtures first.
    for d in [
        fixtures::two_branch_acyclic(),
        fixtures::two_branch_with_cycle(),
        fixtures::carry_hit_and_run(),
        fixtures::moon_chain_left(),
        fixtures::moon_chain_right(),
        fixtures::fraenkel(),
        fixtures::pass_with_exits(3).digraph,
        fixtures::pass_with_carry(3).digraph,
    ] {
        let a = carry_solved(&d);
        let labels = retrograde_label(&d);
        for x in d.nodes() {
            if let Some(v) = a.white_value(x) {
                assert_eq!(outcome_of(v), labels[x.index()], "fixture node {x}");
            }
        }
    }
    // A thousand random carry-on digraphs of up to eight nodes.
    let mut moons_without_adorn = 0u32;
    for trial in 0..1000u64 {
        let n = 2 + (trial % 7) as usize;
        let d = random_digraph(n, 0.35, 0.3, TheoryClass::CarryOn, 90_000 + trial).unwrap();
        let a = carry_solved(&d);
        let labels = retrograde_label(&d);
        for x in d.nodes() {
            if let Some(v) = a.white_value(x) {
                assert_eq!(outcome_of(v), labels[x.index()], "trial {trial} node {x}");
                if matches!(v, WhiteValue::Moon(f) if f.is_empty()) {
                    moons_without_adorn += 1;
                }
            }
        }
    }
    println!("  note: empty-adorn moons observed on nodes: {moons_without_adorn}");
    pass(8, "single-piece outcomes match retrograde on fixtures + 1000 randoms");
}

#[test]
fn acceptance_09_agreement_ladder() {
    // 500 gray-free digraphs: the unified solver equals the cyclic solver
    // node for node, adorns included.
    for seed in 0..500u64 {
        let n = 2 + (seed % 7) as usize;
        let d = random_digraph(n, 0.35, 0.0, TheoryClass::Cyclic, 10_000 + seed).unwrap();
        let c = solve_cyclic(&d).unwrap();
        let k = carry_solved(&d);
        step_bounded(&d, &c);
        assert_eq!(c, k, "seed {seed}");
    }
    // 500 acyclic gray-free digraphs: all four solvers agree.
    for seed in 0..500u64 {
        let n = 1 + (seed % 8) as usize;
        let d = random_digraph(n, 0.4, 0.0, TheoryClass::Short, 20_000 + seed).unwrap();
        let s = solve_short(&d).unwrap();
        step_bounded(&d, &s);
        for a in [solve_cyclic(&d).unwrap(), solve_entailing(&d).unwrap(), carry_solved(&d)] {
            for x in d.nodes() {
                assert_eq!(s.white_value(x), a.white_value(x), "seed {seed} node {x}");
            }
        }
    }
    // 200 acyclic carry-compatible digraphs: finite values equal, lunar
    // placement equal (the entailing theory has a single lunar value).
    let mut tested = 0;
    let mut seed = 30_000u64;
    while tested < 200 {
        seed += 1;
        let n = 2 + (seed % 7) as usize;
        let d = random_digraph(n, 0.35, 0.4, TheoryClass::Entailing, seed).unwrap();
        if !d.carry_compatible() {
            continue;
        }
        let e = solve_entailing(&d).unwrap();
        let k = carry_solved(&d);
        step_bounded(&d, &e);
        for x in d.nodes() {
            match (e.white_value(x), k.white_value(x)) {
                (None, None) => {}
                (Some(WhiteValue::Finite(a)), Some(WhiteValue::Finite(b))) => {
                    assert_eq!(a, b, "seed {seed} node {x}")
                }
                (Some(WhiteValue::Moon(_)), Some(v)) if v.is_lunar() => {}
                (ev, kv) => panic!("seed {seed} node {x}: entailing {ev:?} vs carry {kv:?}"),
            }
        }
        tested += 1;
    }
    pass(9, "agreement ladder: 500 cyclic, 500 short, 200 acyclic carry");
}

#[test]
fn acceptance_10_halting_bound() {
    // The bound is asserted by every solve in this suite via step_bounded;
    // re-verify it across the named fixtures and a fresh random sample here.
    let mut max_ratio = 0.0f64;
    for d in [
        fixtures::two_branch_acyclic(),
        fixtures::two_branch_with_cycle(),
        fixtures::entailing_protection(),
        fixtures::entailing_two_branch(),
        fixtures::carry_hit_and_run(),
        fixtures::moon_chain_left(),
        fixtures::moon_chain_right(),
        fixtures::fraenkel(),
    ] {
        let a = impartial::solve_auto(&d).unwrap();
        step_bounded(&d, &a);
        max_ratio = max_ratio.max(a.steps() as f64 / d.node_count() as f64);
    }
    for seed in 0..300u64 {
        let n = 1 + (seed % 9) as usize;
        let d = random_digraph(n, 0.3, 0.3, TheoryClass::CarryOn, 40_000 + seed).unwrap();
        let a = carry_solved(&d);
        max_ratio = max_ratio.max(a.steps() as f64 / d.node_count() as f64);
    }
    assert!(max_ratio <= 1.0);
    pass(10, "halting: step count within the node bound on every solve");
}

#[test]
fn acceptance_11_pass_move_regressions() {
    for n in 1..=3u32 {
        // Pass with open exits: adding the next heap up draws.
        let j = fixtures::pass_with_exits(n);
        let ja = carry_solved(&j.digraph);
        let heap = fixtures::nim_heap(n + 1);
        let ha = carry_solved(&heap.digraph);
        let sum = sum_value(
            ja.white_value(j.start).unwrap(),
            ha.white_value(heap.start).unwrap(),
        );
        assert_eq!(outcome_of(&sum), Outcome::D, "exits n={n}");
        let r = check_consistency(&j, &heap).unwrap();
        assert!(r.consistent(), "exits n={n}");
        assert_eq!(r.oracle_outcome, Outcome::D, "exits n={n}");

        // Pass with a carry-on to the heap: the same sum is a win.
        let jp = fixtures::pass_with_carry(n);
        let jpa = carry_solved(&jp.digraph);
        let sum = sum_value(
            jpa.white_value(jp.start).unwrap(),
            ha.white_value(heap.start).unwrap(),
        );
        assert_eq!(outcome_of(&sum), Outcome::N, "carry n={n}");
        let r = check_consistency(&jp, &heap).unwrap();
        assert!(r.consistent(), "carry n={n}");
        assert_eq!(r.oracle_outcome, Outcome::N, "carry n={n}");

        // A heap plus its nymphet is drawn.
        assert_eq!(
            outcome_of(&sum_value(&WhiteValue::Finite(n), &WhiteValue::Nym(n))),
            Outcome::D
        );
    }
    pass(11, "pass-move regressions: exits draw, carry-on wins, heap+nymphet draws");
}

#[test]
fn acceptance_12_monochromatic_stalks() {
    for h in 1..=5usize {
        for color in [EdgeColor::Green, EdgeColor::Lime] {
            let p = stalk(&vec![color; h]);
            let c = compile_to_digraph(&p, DEFAULT_POSITION_CAP).unwrap();
            let a = carry_solved(&c.game.digraph);
            assert_eq!(
                a.white_value(c.root()),
                Some(&WhiteValue::Finite(h as u32)),
                "height {h} {color}"
            );
            // Monochromatic play is classical: the compiled digraph is short
            // and the plain mex solver agrees.
            let s = solve_short(&c.game.digraph).unwrap();
            assert_eq!(s.white_value(c.root()), a.white_value(c.root()));
        }
    }
    pass(12, "monochromatic stalks solve to their height");
}
