//! Acceptance suite: one test per criterion, each printing a pass line and
//! holding its stated runtime budget. Run with
//! `cargo test -p outerpack --test acceptance -- --nocapture`.

mod support;

use std::time::{Duration, Instant};

use outerpack::construct::{color_112_2connected, color_1124, lift_to_subdivision, remap_sequence};
use outerpack::gadgets::{self, random_outerplanar_subcubic};
use outerpack::solver::{decide_backtracking, decide_dp_outerplanar, Pin};
use outerpack::verify::{verify_feasible_1124, verify_packing, ColorSequence};
use outerpack::{subdivide, Graph};

fn seq(s: &[u32]) -> ColorSequence {
    ColorSequence::new(s.to_vec()).unwrap()
}

fn finish(criterion: u32, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its budget: {elapsed:?} > {budget:?}"
    );
    println!("criterion {criterion} PASS: {what} ({elapsed:.2?})");
}

#[test]
fn criterion_1_example_sharpness() {
    let started = Instant::now();
    let g = gadgets::example_c4_two_ears().graph;
    assert!(decide_backtracking(&g, &seq(&[1, 1, 3]), &[], None).unwrap().is_unsat());
    assert!(decide_backtracking(&g, &seq(&[1, 2, 2]), &[], None).unwrap().is_unsat());
    assert!(decide_backtracking(&g, &seq(&[1, 1, 2]), &[], None).unwrap().is_sat());
    finish(
        1,
        "6-vertex example: UNSAT under (1,1,3) and (1,2,2), SAT under (1,1,2)",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_gadget_g1_pin() {
    let started = Instant::now();
    let g1 = gadgets::gadget_g1(true);
    let pin = Pin::Force { vertex: g1.v("z6"), class: 4 };
    let s = seq(&[1, 1, 2, 5]);
    assert!(decide_backtracking(&g1.graph, &s, &[pin], None).unwrap().is_unsat());
    assert!(decide_backtracking(&g1.graph, &s, &[], None).unwrap().is_sat());
    finish(
        2,
        "G1 with pendant z6: pinning z6 to the s=5 class is UNSAT, unpinned SAT",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_3_gadget_h_unsat() {
    let started = Instant::now();
    let h = gadgets::gadget_h().graph;
    assert!(decide_dp_outerplanar(&h, &seq(&[1, 2, 2, 4]), &[]).unwrap().is_unsat());
    assert!(decide_dp_outerplanar(&h, &seq(&[1, 1, 3, 4]), &[]).unwrap().is_unsat());
    finish(
        3,
        "66-vertex H: UNSAT under (1,2,2,4) and (1,1,3,4) via the DP engine",
        started,
        Duration::from_secs(2 * 300),
    );
}

#[test]
fn criterion_4_big_construction_unsat() {
    let started = Instant::now();
    let g = gadgets::gadget_big_g().graph;
    assert!(decide_dp_outerplanar(&g, &seq(&[1, 1, 2, 5]), &[]).unwrap().is_unsat());
    finish(
        4,
        "276-vertex construction: UNSAT under (1,1,2,5) via the DP engine",
        started,
        Duration::from_secs(30 * 60),
    );
}

#[test]
fn criterion_5_theorem_112_end_to_end() {
    let started = Instant::now();
    // (a) exhaustive over the class up to 9 vertices.
    let mut exhaustive = 0usize;
    for n in 3..=9u32 {
        for g in support::all_two_connected_subcubic_outerplanar(n) {
            let c = color_112_2connected(&g)
                .unwrap_or_else(|e| panic!("exhaustive n={n}: {e}"));
            assert!(verify_packing(&g, &c).unwrap().is_empty());
            exhaustive += 1;
        }
    }
    // (b) 1000 seeded random 2-connected samples with up to 40 vertices.
    for sample_seed in 0..1000u64 {
        let n = 4 + (sample_seed % 37) as u32;
        let g = random_outerplanar_subcubic(n, sample_seed, true).unwrap();
        let c = color_112_2connected(&g)
            .unwrap_or_else(|e| panic!("seed {sample_seed}: {e}"));
        assert!(
            verify_packing(&g, &c).unwrap().is_empty(),
            "seed {sample_seed} produced an invalid coloring"
        );
    }
    finish(
        5,
        &format!(
            "(1,1,2)-colorer: {exhaustive} exhaustive graphs (n<=9) and 1000 seeded samples \
             (n<=40), zero failures"
        ),
        started,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_6_theorem_1124_end_to_end() {
    let started = Instant::now();
    for sample_seed in 0..1000u64 {
        let n = 3 + (sample_seed % 58) as u32;
        let g = random_outerplanar_subcubic(n, sample_seed, false).unwrap();
        let c = color_1124(&g).unwrap_or_else(|e| panic!("seed {sample_seed}: {e}"));
        assert!(
            verify_feasible_1124(&g, &c).unwrap().is_empty(),
            "seed {sample_seed} produced an infeasible coloring"
        );
    }
    let gadget_corpus = [
        gadgets::gadget_g1(false),
        gadgets::gadget_g1(true),
        gadgets::gadget_g2(false),
        gadgets::gadget_g2(true),
        gadgets::gadget_g3(false),
        gadgets::gadget_g3(true),
        gadgets::gadget_big_g(),
        gadgets::gadget_h(),
        gadgets::example_c4_two_ears(),
        gadgets::double_triangle_unit(),
    ];
    for lg in &gadget_corpus {
        let c = color_1124(&lg.graph).unwrap();
        assert!(verify_feasible_1124(&lg.graph, &c).unwrap().is_empty());
    }
    finish(
        6,
        "feasible (1,1,2,4)-colorer: 1000 seeded samples (n<=60, bridges and cut vertices) \
         plus every gadget, zero failures",
        started,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_7_corollary_pipeline() {
    let started = Instant::now();
    let to_1234 = seq(&[1, 2, 3, 4]);
    for sample_seed in 0..100u64 {
        let g = random_outerplanar_subcubic(4 + (sample_seed % 30) as u32, sample_seed, true)
            .unwrap();
        let c = color_112_2connected(&g).unwrap();
        let (_, lifted) = lift_to_subdivision(&g, &c).unwrap();
        let remapped = remap_sequence(&lifted, &to_1234).unwrap();
        let sub = subdivide(&g);
        assert!(verify_packing(&sub.subdivided, &remapped).unwrap().is_empty());
    }
    let to_12345 = seq(&[1, 2, 3, 4, 5]);
    for sample_seed in 0..100u64 {
        let g = random_outerplanar_subcubic(3 + (sample_seed % 40) as u32, sample_seed, false)
            .unwrap();
        let c = color_1124(&g).unwrap();
        let (_, lifted) = lift_to_subdivision(&g, &c).unwrap();
        let remapped = remap_sequence(&lifted, &to_12345).unwrap();
        let sub = subdivide(&g);
        assert!(verify_packing(&sub.subdivided, &remapped).unwrap().is_empty());
    }
    finish(
        7,
        "lift + remap: 100 verified (1,2,3,4)-colorings and 100 verified \
         (1,2,3,4,5)-colorings of subdivisions",
        started,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_8_oracle_equivalence() {
    let started = Instant::now();
    // Backtracking against full enumeration: every graph on up to 5
    // vertices, plus a seeded spread on 6..8 vertices across densities.
    let sequences = [seq(&[1, 1, 2]), seq(&[1, 2, 2]), seq(&[1, 1, 3])];
    let mut corpus = Vec::new();
    for n in 1..=5u32 {
        let pairs: Vec<(u32, u32)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0..(1u64 << pairs.len()) {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            corpus.push(Graph::from_edge_list(n, edges).unwrap());
        }
    }
    let exhaustive_count = corpus.len();
    for sample_seed in 0..1200u64 {
        corpus.push(support::seeded_graph(
            6 + (sample_seed % 3) as u32,
            10 + (sample_seed % 81),
            sample_seed,
        ));
    }
    for g in &corpus {
        for s in &sequences {
            let fast = decide_backtracking(g, s, &[], None).unwrap().is_sat();
            assert_eq!(fast, support::enumeration_sat(g, s), "n={} {s}", g.vertex_count());
        }
    }
    // DP against backtracking on 500 random outerplanar graphs.
    let dp_sequences =
        [seq(&[1, 1, 2]), seq(&[1, 2, 2]), seq(&[1, 1, 2, 4]), seq(&[1, 1, 2, 5])];
    for sample_seed in 0..500u64 {
        let n = 4 + (sample_seed % 17) as u32;
        let g = random_outerplanar_subcubic(n, sample_seed, sample_seed % 2 == 0).unwrap();
        for s in &dp_sequences {
            let a = decide_backtracking(&g, s, &[], None).unwrap().is_sat();
            let b = decide_dp_outerplanar(&g, s, &[]).unwrap().is_sat();
            assert_eq!(a, b, "seed {sample_seed} under {s}");
        }
    }
    finish(
        8,
        &format!(
            "backtracking == enumeration on {exhaustive_count} exhaustive + 1200 sampled \
             graphs; DP == backtracking on 500 outerplanar samples x 4 sequences"
        ),
        started,
        Duration::from_secs(15 * 60),
    );
}

#[test]
fn criterion_9_petersen_sanity_anchor() {
    let started = Instant::now();
    let g = gadgets::petersen().graph;
    assert!(decide_backtracking(&g, &seq(&[1, 1, 2, 2]), &[], None).unwrap().is_unsat());
    finish(9, "Petersen graph: UNSAT under (1,1,2,2)", started, Duration::from_secs(30));
}
