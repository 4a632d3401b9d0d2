//! Property tests pinning each operation against an independent oracle.

mod support;

use proptest::prelude::*;

use outerpack::construct::{color_112_2connected, color_1124};
use outerpack::gadgets::{self, random_outerplanar_subcubic};
use outerpack::solver::{decide_backtracking, decide_dp_outerplanar, packing_chromatic_number};
use outerpack::solver::{PcnResult, Pin};
use outerpack::structure::{block_cut_tree, outer_embedding, pendant_faces, weak_dual};
use outerpack::verify::{verify_feasible_1124, verify_packing, verify_packing_partial};
use outerpack::verify::{ColorSequence, Coloring};
use outerpack::{all_pairs_distances, subdivide, Graph, Vertex};

fn arb_graph(max_n: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pair_count = (n as usize) * (n as usize - 1) / 2;
        proptest::collection::vec(any::<bool>(), pair_count).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[idx] {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::from_edge_list(n, edges).expect("generated pairs are valid")
        })
    })
}

fn arb_colored(max_n: u32) -> impl Strategy<Value = (Graph, Coloring)> {
    (arb_graph(max_n), proptest::collection::vec(1u32..=4, max_n as usize), 0usize..3)
        .prop_map(|(g, classes, seq_pick)| {
            let sequence = match seq_pick {
                0 => ColorSequence::new(vec![1, 1, 2, 4]).unwrap(),
                1 => ColorSequence::new(vec![1, 2, 3, 4]).unwrap(),
                _ => ColorSequence::new(vec![2, 2, 3, 3]).unwrap(),
            };
            let classes = classes[..g.vertex_count() as usize].to_vec();
            let c = Coloring::total(sequence, classes).expect("classes within range");
            (g, c)
        })
}

/// Min-plus matrix powering, an independent route to all-pairs distances.
fn min_plus_distances(g: &Graph) -> Vec<Vec<Option<u64>>> {
    let n = g.vertex_count() as usize;
    const INF: u64 = u64::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
    }
    for &(u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    loop {
        let mut next = vec![vec![INF; n]; n];
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                let mut best = d[i][j];
                for k in 0..n {
                    best = best.min(d[i][k] + d[k][j]);
                }
                next[i][j] = best;
                changed |= best != d[i][j];
            }
        }
        d = next;
        if !changed {
            break;
        }
    }
    d.into_iter()
        .map(|row| row.into_iter().map(|x| (x < INF).then_some(x)).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_matches_min_plus_powers(g in arb_graph(12)) {
        let bfs = all_pairs_distances(&g);
        let oracle = min_plus_distances(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(
                    bfs.dist(u, v).map(u64::from),
                    oracle[u as usize][v as usize]
                );
            }
        }
    }

    #[test]
    fn distance_matrix_axioms(g in arb_graph(10)) {
        let d = all_pairs_distances(&g);
        for u in g.vertices() {
            prop_assert_eq!(d.dist(u, u), Some(0));
            for v in g.vertices() {
                prop_assert_eq!(d.dist(u, v), d.dist(v, u));
                prop_assert_eq!(d.dist(u, v) == Some(1), g.has_edge(u, v));
                for w in g.vertices() {
                    if let (Some(a), Some(b)) = (d.dist(u, w), d.dist(w, v)) {
                        if let Some(c) = d.dist(u, v) {
                            prop_assert!(c <= a + b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subdivision_doubles_distances_and_is_bipartite(g in arb_graph(10)) {
        let sub = subdivide(&g);
        prop_assert_eq!(
            sub.subdivided.vertex_count(),
            g.vertex_count() + g.edge_count() as u32
        );
        prop_assert_eq!(sub.subdivided.edge_count(), 2 * g.edge_count());
        let dg = all_pairs_distances(&g);
        let dd = all_pairs_distances(&sub.subdivided);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(
                    dd.dist(sub.vertex_map[u as usize], sub.vertex_map[v as usize]),
                    dg.dist(u, v).map(|d| 2 * d)
                );
            }
        }
        // Two-coloring check: originals versus midpoints.
        for &(u, v) in sub.subdivided.edges() {
            let original = |x: Vertex| x < g.vertex_count();
            prop_assert_ne!(original(u), original(v));
        }
    }

    #[test]
    fn verifier_agrees_with_quadratic_oracle((g, c) in arb_colored(10)) {
        let fast = verify_packing(&g, &c).unwrap();
        prop_assert_eq!(fast.is_empty(), support::quadratic_packing_ok(&g, &c));
    }

    #[test]
    fn relaxation_monotonicity((g, c) in arb_colored(9)) {
        if !verify_packing(&g, &c).unwrap().is_empty() {
            return Ok(());
        }
        // Pointwise-smaller thresholds keep the coloring valid.
        let relaxed: Vec<u32> = c
            .sequence()
            .thresholds()
            .iter()
            .map(|&s| s.saturating_sub(1).max(1))
            .collect();
        let relaxed = ColorSequence::new(relaxed).unwrap();
        let classes: Vec<u32> = g.vertices().map(|v| c.class_of(v).unwrap()).collect();
        let rc = Coloring::total(relaxed, classes).unwrap();
        prop_assert!(verify_packing(&g, &rc).unwrap().is_empty());
    }

    #[test]
    fn subset_monotonicity((g, c) in arb_colored(9), keep in proptest::collection::vec(any::<bool>(), 9)) {
        if !verify_packing(&g, &c).unwrap().is_empty() {
            return Ok(());
        }
        let classes: Vec<Option<u32>> = g
            .vertices()
            .map(|v| keep[v as usize % keep.len()].then(|| c.class_of(v).unwrap()))
            .collect();
        let partial = Coloring::from_classes(c.sequence().clone(), classes).unwrap();
        prop_assert!(verify_packing_partial(&g, &partial).unwrap().is_empty());
    }
}

#[test]
fn backtracking_matches_enumeration_on_small_graphs() {
    let sequences = [
        ColorSequence::new(vec![1, 1, 2]).unwrap(),
        ColorSequence::new(vec![1, 2, 2]).unwrap(),
        ColorSequence::new(vec![1, 1, 3]).unwrap(),
    ];
    // All graphs on up to 4 vertices, then a seeded spread up to 8.
    let mut corpus = Vec::new();
    for n in 1..=4u32 {
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
    for seed in 0..60 {
        corpus.push(support::seeded_graph(6 + (seed % 3) as u32, 20 + (seed % 60), seed));
    }
    for g in &corpus {
        for s in &sequences {
            let fast = decide_backtracking(g, s, &[], None).unwrap().is_sat();
            let slow = support::enumeration_sat(g, s);
            assert_eq!(fast, slow, "{} vertices under {s}", g.vertex_count());
        }
    }
}

#[test]
fn dp_matches_backtracking_on_random_outerplanar() {
    let sequences = [
        ColorSequence::new(vec![1, 1, 2]).unwrap(),
        ColorSequence::new(vec![1, 2, 2]).unwrap(),
        ColorSequence::new(vec![1, 1, 2, 4]).unwrap(),
        ColorSequence::new(vec![1, 1, 2, 5]).unwrap(),
    ];
    for seed in 0..40u64 {
        let g = random_outerplanar_subcubic(5 + (seed % 16) as u32, seed, seed % 2 == 0).unwrap();
        for s in &sequences {
            let a = decide_backtracking(&g, s, &[], None).unwrap().is_sat();
            let b = decide_dp_outerplanar(&g, s, &[]).unwrap().is_sat();
            assert_eq!(a, b, "seed {seed} under {s}");
        }
    }
}

#[test]
fn pins_never_turn_unsat_into_sat() {
    let s = ColorSequence::new(vec![1, 1, 2]).unwrap();
    for seed in 0..80u64 {
        let g = support::seeded_graph(6, 40, seed);
        let free = decide_backtracking(&g, &s, &[], None).unwrap().is_sat();
        let pin = Pin::Force { vertex: (seed % 6) as Vertex, class: (seed % 3) as u32 + 1 };
        let pinned = decide_backtracking(&g, &s, &[pin], None).unwrap().is_sat();
        assert!(free || !pinned, "seed {seed}: pin turned UNSAT into SAT");
    }
}

#[test]
fn pcn_is_monotone_under_edge_deletion() {
    for seed in 0..25u64 {
        let g = support::seeded_graph(7, 45, seed);
        if g.edge_count() == 0 {
            continue;
        }
        let full = match packing_chromatic_number(&g, 7, None).unwrap() {
            PcnResult::Found(k, _) => k,
            _ => continue,
        };
        let mut edges: Vec<(Vertex, Vertex)> = g.edges().to_vec();
        edges.remove((seed % edges.len() as u64) as usize);
        let h = Graph::from_edge_list(g.vertex_count(), edges).unwrap();
        if let PcnResult::Found(k, _) = packing_chromatic_number(&h, 7, None).unwrap() {
            assert!(k <= full, "seed {seed}: deletion raised pcn {full} -> {k}");
        }
    }
}

#[test]
fn three_faces_of_generated_blocks_are_pendant() {
    // Each 3-face of a 2-connected subcubic outerplane graph is pendant.
    for seed in 0..60u64 {
        let g = random_outerplanar_subcubic(5 + (seed % 30) as u32, seed, true).unwrap();
        let emb = outer_embedding(&g).unwrap();
        let wd = weak_dual(&emb);
        let bt = block_cut_tree(&g);
        let pendant = pendant_faces(&g, &wd, &bt);
        for (fi, face) in wd.faces.iter().enumerate() {
            if face.len() == 3 {
                assert!(pendant.contains(&fi), "seed {seed} face {fi}");
            }
        }
    }
}

#[test]
fn euler_consistency_per_block() {
    for seed in 0..60u64 {
        let g = random_outerplanar_subcubic(5 + (seed % 40) as u32, seed, seed % 2 == 0).unwrap();
        let emb = outer_embedding(&g).unwrap();
        let wd = weak_dual(&emb);
        for (bi, be) in emb.blocks.iter().enumerate() {
            let Some(be) = be else { continue };
            let faces = &wd.block_faces[bi];
            assert_eq!(faces.len(), be.chords.len() + 1, "seed {seed} block {bi}");
            let boundary_sum: usize = faces.iter().map(|&f| wd.faces[f].len()).sum();
            assert_eq!(
                boundary_sum,
                be.outer_cycle.len() + 2 * be.chords.len(),
                "seed {seed} block {bi}"
            );
        }
    }
}

#[test]
fn exhaustive_small_two_connected_corpus_colors() {
    // Every 2-connected subcubic outerplanar graph on up to 7 vertices
    // (the acceptance suite pushes this to 9).
    for n in 3..=7u32 {
        for g in support::all_two_connected_subcubic_outerplanar(n) {
            let c = color_112_2connected(&g).unwrap();
            assert!(verify_packing(&g, &c).unwrap().is_empty());
            assert!(support::quadratic_packing_ok(&g, &c));
        }
    }
}

#[test]
fn gadget_corpus_accepts_both_colorers() {
    for lg in [
        gadgets::example_c4_two_ears(),
        gadgets::double_triangle_unit(),
        gadgets::gadget_g1(false),
        gadgets::gadget_g1(true),
        gadgets::gadget_g3(true),
    ] {
        let c = color_1124(&lg.graph).unwrap();
        assert!(verify_feasible_1124(&lg.graph, &c).unwrap().is_empty());
    }
}
