//! Constructors for every named graph used in the sharpness arguments, plus
//! seeded random generators for property testing.
//!
//! The figures never list edges, so each constructor asserts the distances,
//! triangle inventories and counts the surrounding text states; a failed
//! assertion means the transcription is wrong, not the caller.
//!
//! Vertices inside composite gadgets carry dotted label paths: the four
//! embedded copies of `G1` inside `G2` are `g1s.*`, `g1z.*`, `g1ls.*`,
//! `g1lz.*`, and the three `G2` (resp. `G3`) copies inside the big
//! constructions are `a.*`, `b.*`, `c.*`.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// A graph together with a label table so paper names (u1, y6, z6, ...)
/// stay addressable in tests and on the command line.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: BTreeMap<String, Vertex>,
}

impl LabeledGraph {
    /// Vertex carrying `label`; panics if absent (labels are part of each
    /// constructor's contract).
    pub fn v(&self, label: &str) -> Vertex {
        *self
            .labels
            .get(label)
            .unwrap_or_else(|| panic!("no vertex labeled {label:?}"))
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.labels.contains_key(label)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("infeasible request: {0}")]
    InfeasibleRequest(String),
}

struct Builder {
    pairs: Vec<(Vertex, Vertex)>,
    labels: BTreeMap<String, Vertex>,
    next: Vertex,
}

impl Builder {
    fn new() -> Self {
        Builder { pairs: Vec::new(), labels: BTreeMap::new(), next: 0 }
    }

    fn vertex(&mut self, label: String) -> Vertex {
        let v = self.next;
        self.next += 1;
        let prev = self.labels.insert(label, v);
        assert!(prev.is_none(), "duplicate label");
        v
    }

    fn edge(&mut self, u: Vertex, v: Vertex) {
        self.pairs.push((u, v));
    }

    fn triangle(&mut self, a: Vertex, b: Vertex, c: Vertex) {
        self.edge(a, b);
        self.edge(b, c);
        self.edge(c, a);
    }

    /// Double-triangle unit under `prefix`: triangles 1-2-3 and 4-5-6 joined
    /// by the edges 2-4 and 3-5. Returns the two degree-2 attachment
    /// vertices (1 and 6).
    fn unit(&mut self, prefix: &str, stem: &str) -> (Vertex, Vertex) {
        let v: Vec<Vertex> =
            (1..=6).map(|i| self.vertex(format!("{prefix}{stem}{i}"))).collect();
        self.triangle(v[0], v[1], v[2]);
        self.triangle(v[3], v[4], v[5]);
        self.edge(v[1], v[3]);
        self.edge(v[2], v[4]);
        (v[0], v[5])
    }

    fn finish(self) -> LabeledGraph {
        let graph = Graph::from_edge_list(self.next, self.pairs)
            .expect("gadget transcriptions are valid graphs");
        LabeledGraph { graph, labels: self.labels }
    }
}

fn dist(g: &Graph, u: Vertex, v: Vertex) -> u32 {
    g.bfs_distances(u)[v as usize].expect("gadgets are connected")
}

fn assert_triangle(g: &LabeledGraph, a: &str, b: &str, c: &str) {
    let (a, b, c) = (g.v(a), g.v(b), g.v(c));
    assert!(
        g.graph.has_edge(a, b) && g.graph.has_edge(b, c) && g.graph.has_edge(c, a),
        "expected triangle {a} {b} {c}"
    );
}

/// The 6-vertex graph from the (1,1,3)- and (1,2,2)-sharpness examples: a
/// four-cycle u1 u2 u3 u4 with paths u1 v1 u2 and u3 v2 u4 added.
pub fn example_c4_two_ears() -> LabeledGraph {
    let mut b = Builder::new();
    let u: Vec<Vertex> = (1..=4).map(|i| b.vertex(format!("u{i}"))).collect();
    let v1 = b.vertex("v1".into());
    let v2 = b.vertex("v2".into());
    for i in 0..4 {
        b.edge(u[i], u[(i + 1) % 4]);
    }
    b.edge(u[0], v1);
    b.edge(v1, u[1]);
    b.edge(u[2], v2);
    b.edge(v2, u[3]);
    let g = b.finish();
    assert_eq!(g.graph.vertex_count(), 6);
    assert_eq!(g.graph.edge_count(), 8);
    assert_triangle(&g, "u1", "u2", "v1");
    assert_triangle(&g, "u3", "u4", "v2");
    assert_eq!(crate::graph::all_pairs_distances(&g.graph).diameter(), 3);
    g
}

/// Two triangles a1 a2 a3 and a4 a5 a6 joined by the edges a2 a4 and a3 a5;
/// the recurring strip in the gadget figures. Attachment points a1 and a6.
pub fn double_triangle_unit() -> LabeledGraph {
    let mut b = Builder::new();
    b.unit("", "a");
    let g = b.finish();
    let mut degrees: Vec<usize> = g.graph.vertices().map(|v| g.graph.degree(v)).collect();
    assert_eq!(degrees.remove(0), 2);
    assert_eq!(degrees.pop().unwrap(), 2);
    assert!(degrees.iter().all(|&d| d == 3));
    assert_eq!(dist(&g.graph, g.v("a1"), g.v("a6")), 3);
    g
}

fn add_g1(b: &mut Builder, prefix: &str) -> Vertex {
    let w1 = b.vertex(format!("{prefix}w1"));
    let (u1, _u6) = b.unit(prefix, "u");
    let (v1, _v6) = b.unit(prefix, "v");
    b.edge(w1, u1);
    b.edge(w1, v1);
    w1
}

/// Gadget G1: a hub w1 joined to two double-triangle units u1..u6 and
/// v1..v6, plus the pendant z6 on w1 when requested.
pub fn gadget_g1(with_pendant: bool) -> LabeledGraph {
    let mut b = Builder::new();
    let w1 = add_g1(&mut b, "");
    if with_pendant {
        let z6 = b.vertex("z6".into());
        b.edge(z6, w1);
    }
    let g = b.finish();
    assert_eq!(g.graph.vertex_count(), if with_pendant { 14 } else { 13 });
    for (a, bb, c) in [("u1", "u2", "u3"), ("u4", "u5", "u6"), ("v1", "v2", "v3"), ("v4", "v5", "v6")]
    {
        assert_triangle(&g, a, bb, c);
    }
    if with_pendant {
        // The farthest vertices from z6 are u6 and v6, at distance 5.
        let z6 = g.v("z6");
        let d = g.graph.bfs_distances(z6);
        let far: Vec<Vertex> = g
            .graph
            .vertices()
            .filter(|&v| d[v as usize] == Some(5))
            .collect();
        let mut expected = vec![g.v("u6"), g.v("v6")];
        expected.sort_unstable();
        assert_eq!(far, expected);
        assert!(d.iter().all(|&x| x.unwrap() <= 5));
    }
    g
}

fn add_g2(b: &mut Builder, prefix: &str) -> Vertex {
    let x4 = b.vertex(format!("{prefix}x4"));
    let (t1, t6) = b.unit(prefix, "t");
    let (y1, y6) = b.unit(prefix, "y");
    b.edge(x4, t1);
    b.edge(x4, y1);
    let branch_t = b.vertex(format!("{prefix}branch_t"));
    let branch_y = b.vertex(format!("{prefix}branch_y"));
    b.edge(t6, branch_t);
    b.edge(y6, branch_y);
    let (ls1, ls6) = b.unit(prefix, "ls");
    let (lz1, lz6) = b.unit(prefix, "lz");
    b.edge(branch_t, ls1);
    b.edge(branch_t, lz1);
    let (s1, s6) = b.unit(prefix, "s");
    let (z1, z6) = b.unit(prefix, "z");
    b.edge(branch_y, s1);
    b.edge(branch_y, z1);
    for (stem, attach) in [("g1s.", s6), ("g1z.", z6), ("g1ls.", ls6), ("g1lz.", lz6)] {
        let w1 = add_g1(b, &format!("{prefix}{stem}"));
        b.edge(attach, w1);
    }
    x4
}

/// Gadget G2: hub x4 joined to two double-triangle units (t- and y-side);
/// each far end meets a branch vertex joined to two further units, each of
/// which ends at the attachment hub of a G1 copy. The pendant x1 hangs on
/// x4 when requested.
pub fn gadget_g2(with_pendant: bool) -> LabeledGraph {
    let mut b = Builder::new();
    let x4 = add_g2(&mut b, "");
    if with_pendant {
        let x1 = b.vertex("x1".into());
        b.edge(x1, x4);
    }
    let g = b.finish();
    assert_eq!(g.graph.vertex_count(), if with_pendant { 92 } else { 91 });
    assert!(g.graph.is_subcubic());
    for (a, bb, c) in [("t1", "t2", "t3"), ("y1", "y2", "y3"), ("s1", "s2", "s3"), ("z1", "z2", "z3")]
    {
        assert_triangle(&g, a, bb, c);
    }
    // Distance anchors from the sharpness argument: the y- and t-triangles
    // meet at the hub, the s- and z-triangles at a branch vertex, and z4, z5
    // sit at distance exactly 5 from y4.
    assert_eq!(dist(&g.graph, g.v("y1"), g.v("t1")), 2);
    assert_eq!(dist(&g.graph, g.v("z1"), g.v("s1")), 2);
    assert_eq!(dist(&g.graph, g.v("z4"), g.v("y4")), 5);
    assert_eq!(dist(&g.graph, g.v("z5"), g.v("y4")), 5);
    g
}

/// The 276-vertex construction: a triangle x1 x2 x3 with a G2 copy hanging
/// from each corner.
pub fn gadget_big_g() -> LabeledGraph {
    let mut b = Builder::new();
    let x: Vec<Vertex> = (1..=3).map(|i| b.vertex(format!("x{i}"))).collect();
    b.triangle(x[0], x[1], x[2]);
    for (i, prefix) in ["a.", "b.", "c."].iter().enumerate() {
        let hub = add_g2(&mut b, prefix);
        b.edge(x[i], hub);
    }
    let g = b.finish();
    assert_eq!(g.graph.vertex_count(), 276);
    assert!(g.graph.is_subcubic());
    for &xi in &x {
        assert_eq!(g.graph.degree(xi), 3);
    }
    assert_triangle(&g, "x1", "x2", "x3");
    g
}

fn add_g3(b: &mut Builder, prefix: &str) -> Vertex {
    let u: Vec<Vertex> = (1..=12).map(|i| b.vertex(format!("{prefix}u{i}"))).collect();
    let m: Vec<Vertex> = (4..=12).map(|i| b.vertex(format!("{prefix}m{i}"))).collect();
    // Right side carries the paper labels: central triangle u1 u2 u3, child
    // u4 u5 u6 below u3, grandchildren u7 u8 u9 below u5 and u10 u11 u12
    // below u6. The left side under u2 mirrors it as m4..m12.
    b.triangle(u[0], u[1], u[2]);
    b.triangle(u[3], u[4], u[5]);
    b.triangle(u[6], u[7], u[8]);
    b.triangle(u[9], u[10], u[11]);
    b.edge(u[2], u[3]);
    b.edge(u[4], u[6]);
    b.edge(u[5], u[9]);
    b.triangle(m[0], m[1], m[2]);
    b.triangle(m[3], m[4], m[5]);
    b.triangle(m[6], m[7], m[8]);
    b.edge(u[1], m[0]);
    b.edge(m[1], m[3]);
    b.edge(m[2], m[6]);
    u[0]
}

/// Gadget G3: a tree of seven triangles joined by six bridges, pendant v3
/// on the central u1 when requested.
pub fn gadget_g3(with_pendant: bool) -> LabeledGraph {
    let mut b = Builder::new();
    let u1 = add_g3(&mut b, "");
    if with_pendant {
        let v3 = b.vertex("v3".into());
        b.edge(v3, u1);
    }
    let g = b.finish();
    assert_eq!(g.graph.vertex_count(), if with_pendant { 22 } else { 21 });
    assert_eq!(g.graph.edge_count(), if with_pendant { 28 } else { 27 });
    assert!(g.graph.is_subcubic());
    assert_eq!(dist(&g.graph, g.v("u1"), g.v("u4")), 2);
    assert_eq!(dist(&g.graph, g.v("u4"), g.v("u7")), 2);
    if with_pendant {
        assert_eq!(dist(&g.graph, g.v("v3"), g.v("u4")), 3);
    }
    g
}

/// The 66-vertex construction H: a triangle v1 v2 v3 with a G3 copy hanging
/// from each corner.
pub fn gadget_h() -> LabeledGraph {
    let mut b = Builder::new();
    let v: Vec<Vertex> = (1..=3).map(|i| b.vertex(format!("v{i}"))).collect();
    b.triangle(v[0], v[1], v[2]);
    for (i, prefix) in ["a.", "b.", "c."].iter().enumerate() {
        let u1 = add_g3(&mut b, prefix);
        b.edge(v[i], u1);
    }
    let g = b.finish();
    assert_eq!(g.graph.vertex_count(), 66);
    assert!(g.graph.is_subcubic());
    assert_triangle(&g, "v1", "v2", "v3");
    g
}

/// The Petersen graph, labels o0..o4 (outer cycle) and i0..i4 (inner
/// pentagram).
pub fn petersen() -> LabeledGraph {
    let mut b = Builder::new();
    let o: Vec<Vertex> = (0..5).map(|i| b.vertex(format!("o{i}"))).collect();
    let i: Vec<Vertex> = (0..5).map(|j| b.vertex(format!("i{j}"))).collect();
    for j in 0..5 {
        b.edge(o[j], o[(j + 1) % 5]);
        b.edge(i[j], i[(j + 2) % 5]);
        b.edge(o[j], i[j]);
    }
    let g = b.finish();
    assert_eq!(g.graph.vertex_count(), 10);
    assert_eq!(g.graph.edge_count(), 15);
    assert!(g.graph.vertices().all(|v| g.graph.degree(v) == 3));
    g
}

/// Grows a 2-connected outerplane block: starts from a cycle and repeatedly
/// appends a fan of new vertices across an outer-cycle edge whose endpoints
/// still have degree at most 2 (the old edge becomes a chord).
fn grow_block(
    rng: &mut ChaCha8Rng,
    pairs: &mut Vec<(Vertex, Vertex)>,
    deg: &mut Vec<u32>,
    target: usize,
) {
    let new_vertex = |deg: &mut Vec<u32>| -> Vertex {
        deg.push(0);
        deg.len() as Vertex - 1
    };
    fn edge(pairs: &mut Vec<(Vertex, Vertex)>, deg: &mut [u32], u: Vertex, v: Vertex) {
        pairs.push((u, v));
        deg[u as usize] += 1;
        deg[v as usize] += 1;
    }

    let cycle_len = rng.gen_range(3..=target.min(6).max(3));
    let mut outer: Vec<Vertex> = (0..cycle_len).map(|_| new_vertex(deg)).collect();
    for i in 0..cycle_len {
        edge(pairs, deg, outer[i], outer[(i + 1) % cycle_len]);
    }
    let mut count = cycle_len;
    while count < target {
        let candidates: Vec<usize> = (0..outer.len())
            .filter(|&i| {
                let (u, v) = (outer[i], outer[(i + 1) % outer.len()]);
                deg[u as usize] <= 2 && deg[v as usize] <= 2
            })
            .collect();
        if candidates.is_empty() {
            break;
        }
        let i = candidates[rng.gen_range(0..candidates.len())];
        let (u, v) = (outer[i], outer[(i + 1) % outer.len()]);
        let fan = rng.gen_range(1..=(target - count).min(3));
        let path: Vec<Vertex> = (0..fan).map(|_| new_vertex(deg)).collect();
        let mut prev = u;
        for &w in &path {
            edge(pairs, deg, prev, w);
            prev = w;
        }
        edge(pairs, deg, prev, v);
        // The fan sits outside the old edge, so the outer cycle now detours
        // through it.
        outer.splice(i + 1..i + 1, path.iter().copied());
        count += fan;
    }
}

/// Seeded random subcubic outerplanar graph on at most `n` vertices;
/// 2-connected when requested. ChaCha-based, so a fixed seed reproduces a
/// byte-identical edge list on every platform.
pub fn random_outerplanar_subcubic(
    n: u32,
    seed: u64,
    two_connected: bool,
) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::InfeasibleRequest(format!(
            "need at least 3 vertices, got {n}{}",
            if two_connected { " (2-connected)" } else { "" }
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(Vertex, Vertex)> = Vec::new();
    let mut deg: Vec<u32> = Vec::new();

    if two_connected {
        grow_block(&mut rng, &mut pairs, &mut deg, n as usize);
        return Ok(Graph::from_edge_list(deg.len() as u32, pairs).expect("generator is valid"));
    }

    let root_target = rng.gen_range(3..=(n as usize).min(8));
    grow_block(&mut rng, &mut pairs, &mut deg, root_target);
    while deg.len() < n as usize {
        let remaining = n as usize - deg.len();
        let attach: Vec<Vertex> =
            (0..deg.len() as Vertex).filter(|&v| deg[v as usize] <= 2).collect();
        if attach.is_empty() {
            break;
        }
        let w = attach[rng.gen_range(0..attach.len())];
        if remaining < 4 || rng.gen_bool(0.3) {
            // Pendant path of one to three vertices.
            let len = rng.gen_range(1..=remaining.min(3));
            let mut prev = w;
            for _ in 0..len {
                deg.push(0);
                let x = deg.len() as Vertex - 1;
                pairs.push((prev, x));
                deg[prev as usize] += 1;
                deg[x as usize] += 1;
                prev = x;
            }
        } else {
            // Pendant 2-connected block joined by a bridge.
            let size = rng.gen_range(3..=(remaining - 1).min(9));
            let base = deg.len();
            grow_block(&mut rng, &mut pairs, &mut deg, size);
            let anchors: Vec<Vertex> =
                (base as Vertex..deg.len() as Vertex).filter(|&v| deg[v as usize] <= 2).collect();
            let r = anchors[rng.gen_range(0..anchors.len())];
            pairs.push((w, r));
            deg[w as usize] += 1;
            deg[r as usize] += 1;
        }
    }
    Ok(Graph::from_edge_list(deg.len() as u32, pairs).expect("generator is valid"))
}
