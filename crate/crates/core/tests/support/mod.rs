//! Independent oracles shared by the property and acceptance suites. They
//! deliberately avoid the library's verification/search code paths: the
//! enumeration oracle checks pairs against a plain distance matrix, and the
//! outerplanar enumerator builds the graph class directly from cycles plus
//! non-crossing chord matchings.

use outerpack::verify::{ColorSequence, Coloring};
use outerpack::{all_pairs_distances, DistanceMatrix, Graph, Vertex};

/// Exhaustive satisfiability oracle: explores every total class
/// assignment, pruning only assignments already in violation (which keeps
/// it exhaustive for UNSAT answers).
pub fn enumeration_sat(g: &Graph, sequence: &ColorSequence) -> bool {
    let n = g.vertex_count() as usize;
    let dist = all_pairs_distances(g);
    let k = sequence.class_count();
    let mut classes = vec![0u32; n];
    fn rec(
        v: usize,
        n: usize,
        k: u32,
        classes: &mut Vec<u32>,
        dist: &DistanceMatrix,
        sequence: &ColorSequence,
    ) -> bool {
        if v == n {
            return true;
        }
        'class: for c in 1..=k {
            for u in 0..v {
                if classes[u] == c {
                    if let Some(d) = dist.dist(u as Vertex, v as Vertex) {
                        if d < sequence.threshold(c) + 1 {
                            continue 'class;
                        }
                    }
                }
            }
            classes[v] = c;
            if rec(v + 1, n, k, classes, dist, sequence) {
                return true;
            }
        }
        false
    }
    rec(0, n, k, &mut classes, &dist, sequence)
}

/// Quadratic verifier oracle: every same-class pair against the full
/// distance matrix.
pub fn quadratic_packing_ok(g: &Graph, c: &Coloring) -> bool {
    let dist = all_pairs_distances(g);
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if let (Some(cu), Some(cv)) = (c.class_of(u), c.class_of(v)) {
                if cu == cv {
                    if let Some(d) = dist.dist(u, v) {
                        if d < c.sequence().threshold(cu) + 1 {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Every 2-connected subcubic outerplanar graph on n vertices, as the
/// n-cycle plus a non-crossing matching of chords between non-adjacent
/// cycle positions (each vertex lies on at most one chord, so the degree
/// bound holds). Every isomorphism class in the target family appears,
/// since such a graph is exactly its unique Hamiltonian cycle plus
/// non-crossing chords.
pub fn all_two_connected_subcubic_outerplanar(n: u32) -> Vec<Graph> {
    assert!(n >= 3);
    let mut out = Vec::new();
    let candidates: Vec<(u32, u32)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| v != u + 1 && !(u == 0 && v == n - 1))
        .collect();
    let mut chords: Vec<(u32, u32)> = Vec::new();
    fn crossing(a: (u32, u32), b: (u32, u32)) -> bool {
        let inside = |x: u32, (p, q): (u32, u32)| p < x && x < q;
        inside(b.0, a) != inside(b.1, a) && b.0 != a.0 && b.0 != a.1 && b.1 != a.0 && b.1 != a.1
    }
    fn rec(
        start: usize,
        candidates: &[(u32, u32)],
        chords: &mut Vec<(u32, u32)>,
        n: u32,
        out: &mut Vec<Graph>,
    ) {
        let mut edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend(chords.iter().copied());
        out.push(Graph::from_edge_list(n, edges).expect("valid enumerated graph"));
        for i in start..candidates.len() {
            let cand = candidates[i];
            let ok = chords.iter().all(|&c| {
                !crossing(c, cand)
                    && c.0 != cand.0
                    && c.0 != cand.1
                    && c.1 != cand.0
                    && c.1 != cand.1
            });
            if ok {
                chords.push(cand);
                rec(i + 1, candidates, chords, n, out);
                chords.pop();
            }
        }
    }
    rec(0, &candidates, &mut chords, n, &mut out);
    out
}

/// Seeded Erdos-Renyi-style graph for oracle corpora.
pub fn seeded_graph(n: u32, density_numerator: u64, seed: u64) -> Graph {
    // Small xorshift; only used to vary test corpora deterministically.
    let mut state = seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if next() % 100 < density_numerator {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, edges).expect("generated pairs are valid")
}
