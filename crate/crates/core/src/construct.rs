//! Constructive colorers.
//!
//! [`color_112_2connected`] produces a packing (1,1,2)-coloring of any
//! 2-connected subcubic outerplanar graph by recursive reduction: color
//! cycles directly, strip pendant faces of length at least four, split
//! along even faces, and finish with the pendant-3-face endgame at the far
//! end of the weak dual.
//!
//! [`color_1124`] produces a feasible packing (1,1,2,4)-coloring of any
//! subcubic outerplanar graph: peel degree-<=1 vertices, strip long pendant
//! faces, then repeatedly detach a pendant block and extend the coloring of
//! the remainder by case analysis on the class of the bridge endpoint.
//! "Feasible" means the s=4 class appears at most once per block
//! (condition A) and never within distance two of a degree-<=2 vertex of
//! the s=2 class (condition B).
//!
//! Class indices throughout: 1 and 2 are the two s=1 classes, 3 is the s=2
//! class, 4 (where present) the s=4 class.
//!
//! In debug builds every extension step re-verifies the constraints of the
//! just-colored graph and reports the failing case label; validity of the
//! many-case extensions is asserted, not derived, so these checks gate
//! against transcription slips.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{subdivide, Graph, Vertex};
use crate::structure::{outer_embedding, weak_dual, NotOuterplanar, OuterEmbedding, WeakDual};
use crate::verify::{
    verify_feasible_1124, verify_packing, ColorSequence, Coloring, Violation,
};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not subcubic")]
    NotSubcubic,
    #[error(transparent)]
    NotOuterplanar(#[from] NotOuterplanar),
    #[error("requested distinct classes on identical vertices ({0})")]
    InvalidPair(Vertex),
    #[error("adding edge {u}-{v} leaves the graph class")]
    EdgeAdditionBreaksClass { u: Vertex, v: Vertex },
    #[error("input coloring is not a valid packing coloring")]
    InvalidInputColoring(Vec<Violation>),
    #[error("no injective remap of class thresholds exists")]
    NoInjection,
    #[error("proof step `{case}` failed: {detail}")]
    InternalProofStepFailed { case: &'static str, detail: String },
}

fn step_failed(case: &'static str, detail: impl Into<String>) -> ConstructError {
    ConstructError::InternalProofStepFailed { case, detail: detail.into() }
}

const C1A: u32 = 1;
const C1B: u32 = 2;
const C2: u32 = 3;
const C4: u32 = 4;

fn seq_112() -> ColorSequence {
    ColorSequence::new(vec![1, 1, 2]).expect("static sequence")
}

fn seq_1124() -> ColorSequence {
    ColorSequence::new(vec![1, 1, 2, 4]).expect("static sequence")
}

fn is_one_class(c: u32) -> bool {
    c == C1A || c == C1B
}

fn other_one(c: u32) -> u32 {
    debug_assert!(is_one_class(c));
    3 - c
}

/// Swaps the two s=1 classes in place.
fn swap_ones(c: &mut Coloring) {
    for v in 0..c.vertex_count() {
        match c.class_of(v) {
            Some(C1A) => c.set(v, C1B),
            Some(C1B) => c.set(v, C1A),
            _ => {}
        }
    }
}

/// Copies classes from a coloring of a surgered graph back through its
/// new-to-old vertex map.
fn transfer(from: &Coloring, new_to_old: &[Vertex], into: &mut Coloring) {
    for (new, &old) in new_to_old.iter().enumerate() {
        if let Some(class) = from.class_of(new as Vertex) {
            into.set(old, class);
        }
    }
}

/// Induced subgraph on `keep` plus the maps in both directions.
fn induced(g: &Graph, keep: &[Vertex]) -> (Graph, Vec<Option<Vertex>>, Vec<Vertex>) {
    let keep_set: std::collections::BTreeSet<Vertex> = keep.iter().copied().collect();
    let drop: Vec<Vertex> = g.vertices().filter(|v| !keep_set.contains(v)).collect();
    g.without_vertices(&drop)
}

#[cfg(debug_assertions)]
fn debug_check_112(g: &Graph, c: &Coloring, case: &'static str) -> Result<(), ConstructError> {
    match verify_packing(g, c) {
        Ok(v) if v.is_empty() => Ok(()),
        Ok(v) => Err(step_failed(case, format!("violations {v:?}"))),
        Err(e) => Err(step_failed(case, format!("verify error {e}"))),
    }
}

#[cfg(not(debug_assertions))]
fn debug_check_112(_: &Graph, _: &Coloring, _: &'static str) -> Result<(), ConstructError> {
    Ok(())
}

#[cfg(debug_assertions)]
fn debug_check_1124(g: &Graph, c: &Coloring, case: &'static str) -> Result<(), ConstructError> {
    match verify_feasible_1124(g, c) {
        Ok(v) if v.is_empty() => Ok(()),
        Ok(v) => Err(step_failed(case, format!("violations {v:?}"))),
        Err(e) => Err(step_failed(case, format!("verify error {e}"))),
    }
}

#[cfg(not(debug_assertions))]
fn debug_check_1124(_: &Graph, _: &Coloring, _: &'static str) -> Result<(), ConstructError> {
    Ok(())
}

fn validate_2connected(g: &Graph) -> Result<(), ConstructError> {
    if !g.is_subcubic() {
        return Err(ConstructError::NotSubcubic);
    }
    let emb = outer_embedding(g)?;
    let two_connected = g.vertex_count() >= 3
        && emb.block_tree.blocks.len() == 1
        && emb.block_tree.blocks[0].vertices.len() == g.vertex_count() as usize;
    if !two_connected {
        return Err(ConstructError::NotTwoConnected);
    }
    Ok(())
}

/// Packing (1,1,2)-coloring of a 2-connected subcubic outerplanar graph.
pub fn color_112_2connected(g: &Graph) -> Result<Coloring, ConstructError> {
    validate_2connected(g)?;
    let c = c112(g)?;
    if !c.is_total() {
        return Err(step_failed("total", "recursion left vertices uncolored"));
    }
    Ok(c)
}

/// Packing (1,1,2)-coloring with distinct classes on `u` and `v`, obtained
/// by coloring `g + uv`. Fails with `EdgeAdditionBreaksClass` when the
/// extra edge leaves the graph class.
pub fn color_112_with_distinct_pair(
    g: &Graph,
    u: Vertex,
    v: Vertex,
) -> Result<Coloring, ConstructError> {
    if u == v {
        return Err(ConstructError::InvalidPair(u));
    }
    validate_2connected(g)?;
    let work = if g.has_edge(u, v) {
        g.clone()
    } else {
        g.with_edge(u, v).map_err(|_| ConstructError::InvalidPair(u))?
    };
    if validate_2connected(&work).is_err() {
        return Err(ConstructError::EdgeAdditionBreaksClass { u, v });
    }
    let coloring = c112(&work)?;
    debug_assert_ne!(coloring.class_of(u), coloring.class_of(v));
    debug_check_112(g, &coloring, "distinct-pair")?;
    Ok(coloring)
}

/// Recursive colorer; callers guarantee 2-connected subcubic outerplanar
/// (or n <= 3, which the reductions may produce).
fn c112(g: &Graph) -> Result<Coloring, ConstructError> {
    let n = g.vertex_count();
    if n <= 3 {
        // All vertices get different colors.
        let classes: Vec<u32> = (1..=n).collect();
        return Ok(Coloring::total(seq_112(), classes).expect("<=3 classes"));
    }
    let emb =
        outer_embedding(g).map_err(|e| step_failed("recheck-outerplanar", e.to_string()))?;
    if emb.block_tree.blocks.len() != 1 {
        return Err(step_failed("recheck-2connected", "recursion left multiple blocks"));
    }
    if !g.is_subcubic() {
        return Err(step_failed("recheck-subcubic", "recursion broke the degree bound"));
    }
    if g.edge_count() == n as usize {
        // The graph is its outer cycle.
        let cycle = emb.blocks[0].as_ref().expect("nontrivial block").outer_cycle.clone();
        return Ok(cycle_coloring(&cycle, n));
    }
    let wd = weak_dual(&emb);
    let pendant = crate::structure::pendant_faces(g, &wd, &emb.block_tree);

    if let Some(&fi) = pendant.iter().find(|&&fi| wd.faces[fi].len() >= 4) {
        return reduce_long_pendant_face(g, &wd, fi);
    }
    if let Some(fi) = (0..wd.faces.len()).find(|&fi| wd.faces[fi].len() % 2 == 0) {
        return even_face_split(g, &wd, fi);
    }
    endgame(g, &wd)
}

/// A cycle standing alone: alternate the two s=1 classes when even;
/// otherwise one vertex takes the s=2 class and the rest alternate.
fn cycle_coloring(order: &[Vertex], n: u32) -> Coloring {
    let mut c = Coloring::empty(seq_112(), n);
    if order.len() % 2 == 0 {
        for (t, &v) in order.iter().enumerate() {
            c.set(v, if t % 2 == 0 { C1A } else { C1B });
        }
    } else {
        c.set(order[0], C2);
        for (t, &v) in order.iter().enumerate().skip(1) {
            c.set(v, if t % 2 == 1 { C1A } else { C1B });
        }
    }
    c
}

/// Face boundary rotated to start at `first` and continue toward `second`.
fn orient_from(boundary: &[Vertex], first: Vertex, second: Vertex) -> Vec<Vertex> {
    let l = boundary.len();
    let i = boundary.iter().position(|&x| x == first).expect("vertex on boundary");
    let forward = boundary[(i + 1) % l] == second;
    debug_assert!(forward || boundary[(i + l - 1) % l] == second);
    (0..l)
        .map(|t| if forward { boundary[(i + t) % l] } else { boundary[(i + l - t) % l] })
        .collect()
}

/// Classes for the interior path u_2..u_{k-1} of a pendant face whose ends
/// already carry `c1` and `ck` (adjacent, hence distinct). Alternates the
/// s=1 classes; when the face is odd and both ends are s=1 classes, the
/// exceptional pattern places the s=2 class on u_3.
fn pendant_interior_classes(c1: u32, ck: u32, k: usize) -> Vec<u32> {
    let count = k - 2;
    for start in [C1A, C1B] {
        let end = if count % 2 == 1 { start } else { other_one(start) };
        let ok_start = !is_one_class(c1) || start != c1;
        let ok_end = !is_one_class(ck) || end != ck;
        if ok_start && ok_end {
            return (0..count)
                .map(|i| if i % 2 == 0 { start } else { other_one(start) })
                .collect();
        }
    }
    debug_assert!(k % 2 == 1 && is_one_class(c1) && is_one_class(ck) && c1 != ck);
    let mut out = vec![ck, C2];
    for i in 0..count - 2 {
        out.push(if i % 2 == 0 { c1 } else { ck });
    }
    out
}

/// Pendant face of length >= 4 with no cut vertex on it: delete its
/// interior path, color the rest, and extend along the path.
fn reduce_long_pendant_face(
    g: &Graph,
    wd: &WeakDual,
    fi: usize,
) -> Result<Coloring, ConstructError> {
    let order = pendant_face_order(g, wd, fi)?;
    let k = order.len();
    let (rest, _, new_to_old) = g.without_vertices(&order[1..k - 1]);
    let sub = c112(&rest)?;
    let mut c = Coloring::empty(seq_112(), g.vertex_count());
    transfer(&sub, &new_to_old, &mut c);
    let c1 = c.class_of(order[0]).expect("colored");
    let ck = c.class_of(order[k - 1]).expect("colored");
    for (i, class) in pendant_interior_classes(c1, ck, k).into_iter().enumerate() {
        c.set(order[1 + i], class);
    }
    debug_check_112(g, &c, "pendant-face")?;
    Ok(c)
}

/// Boundary of a pendant face ordered so the unique shared (chord) edge is
/// (first, last); interior vertices must have degree two.
fn pendant_face_order(g: &Graph, wd: &WeakDual, fi: usize) -> Result<Vec<Vertex>, ConstructError> {
    let b = &wd.faces[fi].boundary;
    let l = b.len();
    let shared: Vec<usize> = (0..l)
        .filter(|&t| {
            let (u, v) = (b[t], b[(t + 1) % l]);
            wd.dual_edges
                .iter()
                .any(|&(x, y, e)| (x == fi || y == fi) && e == (u.min(v), u.max(v)))
        })
        .collect();
    if shared.len() != 1 {
        return Err(step_failed("pendant-face", "pendant face must share exactly one edge"));
    }
    let t0 = shared[0];
    // u1 = b[t0+1], walking away from the shared edge; uk = b[t0].
    let order = orient_from(b, b[(t0 + 1) % l], b[(t0 + 2) % l]);
    debug_assert_eq!(*order.last().unwrap(), b[t0]);
    for &u in &order[1..l - 1] {
        if g.degree(u) != 2 {
            return Err(step_failed("pendant-face", format!("interior vertex {u} has a chord")));
        }
    }
    Ok(order)
}

/// A component hanging off a face cycle; it attaches to the consecutive
/// boundary pair at `pair_index` via `near` and `far` (possibly equal).
struct FaceAttachment {
    pair_index: usize,
    vertices: Vec<Vertex>,
    near: Vertex,
    far: Vertex,
}

fn face_attachments(g: &Graph, order: &[Vertex]) -> Result<Vec<FaceAttachment>, ConstructError> {
    let l = order.len();
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(t, &v)| (v, t)).collect();
    let (rest, _, n2o) = g.without_vertices(order);
    let mut out = Vec::new();
    for comp in rest.connected_components() {
        let vertices: Vec<Vertex> = comp.iter().map(|&v| n2o[v as usize]).collect();
        let mut contacts: Vec<(usize, Vertex)> = Vec::new();
        for &cv in &vertices {
            for &nb in g.neighbors(cv) {
                if let Some(&p) = pos.get(&nb) {
                    contacts.push((p, cv));
                }
            }
        }
        contacts.sort_unstable();
        if contacts.len() != 2 {
            return Err(step_failed(
                "face-attachment",
                format!("component with {} boundary contacts", contacts.len()),
            ));
        }
        let (a, b) = (contacts[0].0, contacts[1].0);
        let (pair_index, near, far) = if (a + 1) % l == b {
            (a, contacts[0].1, contacts[1].1)
        } else if (b + 1) % l == a {
            (b, contacts[1].1, contacts[0].1)
        } else {
            return Err(step_failed("face-attachment", "contacts are not consecutive"));
        };
        out.push(FaceAttachment { pair_index, vertices, near, far });
    }
    out.sort_by_key(|a| a.pair_index);
    Ok(out)
}

/// Colors an attachment's component so its two entry vertices get distinct
/// classes (via the auxiliary near-far edge), then flips the s=1 classes
/// if needed so the entry classes differ from the boundary classes they
/// touch.
fn color_attachment_component(
    g: &Graph,
    att: &FaceAttachment,
    avoid_near: u32,
    avoid_far: u32,
    into: &mut Coloring,
) -> Result<(), ConstructError> {
    let (sub_g, o2n, n2o) = induced(g, &att.vertices);
    let near_l = o2n[att.near as usize].expect("component vertex");
    let far_l = o2n[att.far as usize].expect("component vertex");
    let work = if near_l != far_l && !sub_g.has_edge(near_l, far_l) {
        sub_g.with_edge(near_l, far_l).expect("distinct vertices")
    } else {
        sub_g
    };
    let mut sub = c112(&work)?;
    if att.near != att.far && sub.class_of(near_l) == sub.class_of(far_l) {
        return Err(step_failed("component-distinct-ends", "auxiliary edge did not separate"));
    }
    let fits = |s: &Coloring| {
        s.class_of(near_l) != Some(avoid_near) && s.class_of(far_l) != Some(avoid_far)
    };
    if !fits(&sub) {
        swap_ones(&mut sub);
    }
    if !fits(&sub) {
        return Err(step_failed("component-swap", "no renaming meets the boundary classes"));
    }
    transfer(&sub, &n2o, into);
    Ok(())
}

/// Even face: color its cycle alternately, one s=2 vertex per hanging
/// single-vertex component, and recurse on the larger components with the
/// auxiliary edge forcing distinct entry classes.
fn even_face_split(g: &Graph, wd: &WeakDual, fi: usize) -> Result<Coloring, ConstructError> {
    let order = wd.faces[fi].boundary.clone();
    let atts = face_attachments(g, &order)?;
    let mut c = Coloring::empty(seq_112(), g.vertex_count());
    for (t, &v) in order.iter().enumerate() {
        c.set(v, if t % 2 == 0 { C1A } else { C1B });
    }
    let l = order.len();
    for att in &atts {
        if att.vertices.len() == 1 {
            c.set(att.vertices[0], C2);
        } else {
            let avoid_near = c.class_of(order[att.pair_index]).unwrap();
            let avoid_far = c.class_of(order[(att.pair_index + 1) % l]).unwrap();
            color_attachment_component(g, att, avoid_near, avoid_far, &mut c)?;
        }
    }
    debug_check_112(g, &c, "even-face")?;
    Ok(c)
}

/// All faces odd and every pendant face a triangle: work on the pendant
/// face at the far end of a longest path in the weak dual.
fn endgame(g: &Graph, wd: &WeakDual) -> Result<Coloring, ConstructError> {
    let faces = wd.faces.len();
    if faces < 2 {
        return Err(step_failed("endgame", "expected at least two faces"));
    }
    let mut best = (0usize, 0usize);
    for start in 0..faces {
        let mut dist = vec![usize::MAX; faces];
        dist[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        let mut far = 0;
        while let Some(x) = queue.pop_front() {
            far = far.max(dist[x]);
            for &y in &wd.adjacency[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if far > best.1 {
            best = (start, far);
        }
    }
    let f0 = best.0;
    if wd.adjacency[f0].len() != 1 || wd.faces[f0].len() != 3 {
        return Err(step_failed("endgame", "chosen face is not a pendant 3-face"));
    }
    let f0p = wd.adjacency[f0][0];

    if wd.faces[f0p].len() == 3 {
        // Two triangles sharing an edge: the whole graph.
        if g.vertex_count() != 4 || g.edge_count() != 5 {
            return Err(step_failed("endgame-k4e", "3-face neighbor without the K4-e shape"));
        }
        let mut c = Coloring::empty(seq_112(), 4);
        let deg3: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
        for v in g.vertices() {
            if g.degree(v) == 2 {
                c.set(v, C1A);
            }
        }
        c.set(deg3[0], C1B);
        c.set(deg3[1], C2);
        debug_check_112(g, &c, "endgame-k4e")?;
        return Ok(c);
    }

    let boundary = wd.faces[f0p].boundary.clone();
    let k = boundary.len();
    let w1 = boundary
        .iter()
        .copied()
        .filter(|&v| g.degree(v) == 2)
        .min()
        .ok_or_else(|| step_failed("endgame", "odd face without a degree-2 vertex"))?;
    let i1 = boundary.iter().position(|&v| v == w1).unwrap();
    let nb_a = boundary[(i1 + 1) % k];
    let nb_b = boundary[(i1 + k - 1) % k];

    // A neighbor of w1 with degree two: delete both and bridge the gap.
    if g.degree(nb_a) == 2 || g.degree(nb_b) == 2 {
        let w2 = match (g.degree(nb_a) == 2, g.degree(nb_b) == 2) {
            (true, true) => nb_a.min(nb_b),
            (true, false) => nb_a,
            _ => nb_b,
        };
        let order = orient_from(&boundary, w1, w2);
        let (w3, wk) = (order[2], order[k - 1]);
        if g.has_edge(w3, wk) {
            return Err(step_failed("endgame-short", "unexpected chord w3-wk"));
        }
        let (rest, o2n, n2o) = g.without_vertices(&[w1, w2]);
        let rest = rest
            .with_edge(o2n[w3 as usize].unwrap(), o2n[wk as usize].unwrap())
            .expect("distinct");
        let sub = c112(&rest)?;
        let mut c = Coloring::empty(seq_112(), g.vertex_count());
        transfer(&sub, &n2o, &mut c);
        let (c3, ck) = (c.class_of(w3).unwrap(), c.class_of(wk).unwrap());
        let choice = [(C1A, C1B), (C1B, C1A)]
            .into_iter()
            .find(|&(cw1, cw2)| {
                (!is_one_class(ck) || cw1 != ck) && (!is_one_class(c3) || cw2 != c3)
            })
            .ok_or_else(|| step_failed("endgame-short", "no class pair for w1, w2"))?;
        c.set(w1, choice.0);
        c.set(w2, choice.1);
        debug_check_112(g, &c, "endgame-short")?;
        return Ok(c);
    }

    // Both neighbors of w1 have degree three; components hang off the face.
    let mut order = orient_from(&boundary, w1, nb_a.min(nb_b));
    let mut atts = face_attachments(g, &order)?;
    if atts.iter().filter(|a| a.vertices.len() > 1).count() > 1 {
        return Err(step_failed("endgame-main", "more than one large component"));
    }
    // The component at the pair (w2, w3) must be a single vertex; flip the
    // orientation if the large one sits there.
    if atts.iter().any(|a| a.pair_index == 1 && a.vertices.len() > 1) {
        order = orient_from(&boundary, w1, nb_a.max(nb_b));
        atts = face_attachments(g, &order)?;
    }
    let mut c = Coloring::empty(seq_112(), g.vertex_count());
    c.set(order[1], C2);
    for t in 2..k {
        c.set(order[t], if t % 2 == 0 { C1A } else { C1B });
    }
    c.set(order[0], if k % 2 == 0 { C1A } else { C1B });
    for att in &atts {
        if att.pair_index == 1 {
            if att.vertices.len() != 1 {
                return Err(step_failed("endgame-main", "pair (w2,w3) component not single"));
            }
            c.set(att.vertices[0], other_one(c.class_of(order[2]).unwrap()));
        } else if att.vertices.len() == 1 {
            c.set(att.vertices[0], C2);
        } else {
            let avoid_near = c.class_of(order[att.pair_index]).unwrap();
            let avoid_far = c.class_of(order[(att.pair_index + 1) % k]).unwrap();
            if !is_one_class(avoid_near) || !is_one_class(avoid_far) {
                return Err(step_failed("endgame-main", "large component beside w2"));
            }
            color_attachment_component(g, att, avoid_near, avoid_far, &mut c)?;
        }
    }
    debug_check_112(g, &c, "endgame-main")?;
    Ok(c)
}

/// Feasible packing (1,1,2,4)-coloring of a subcubic outerplanar graph
/// (connectivity not required).
pub fn color_1124(g: &Graph) -> Result<Coloring, ConstructError> {
    if !g.is_subcubic() {
        return Err(ConstructError::NotSubcubic);
    }
    outer_embedding(g)?;
    let c = c1124(g)?;
    if !c.is_total() {
        return Err(step_failed("total", "recursion left vertices uncolored"));
    }
    debug_check_1124(g, &c, "toplevel")?;
    Ok(c)
}

fn c1124(g: &Graph) -> Result<Coloring, ConstructError> {
    let n = g.vertex_count();
    let mut c = Coloring::empty(seq_1124(), n);
    if n == 0 {
        return Ok(c);
    }
    let components = g.connected_components();
    if components.len() > 1 {
        // Cross-component distances are infinite; color independently.
        for comp in components {
            let (sub_g, _, n2o) = induced(g, &comp);
            let sub = c1124(&sub_g)?;
            transfer(&sub, &n2o, &mut c);
        }
        return Ok(c);
    }
    // Peel a vertex of degree <= 1 and give it an s=1 class its neighbor
    // does not use.
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 1) {
        let neighbor = g.neighbors(v).first().copied();
        let (rest, _, n2o) = g.without_vertices(&[v]);
        let sub = c1124(&rest)?;
        transfer(&sub, &n2o, &mut c);
        let class = match neighbor.and_then(|u| c.class_of(u)) {
            Some(C1A) => C1B,
            _ => C1A,
        };
        c.set(v, class);
        debug_check_1124(g, &c, "peel")?;
        return Ok(c);
    }

    let emb = outer_embedding(g).map_err(|e| step_failed("recheck-outerplanar", e.to_string()))?;
    if emb.block_tree.blocks.len() == 1 {
        // 2-connected: a (1,1,2)-coloring suffices; the s=4 class is unused.
        let sub = c112(g)?;
        for v in g.vertices() {
            c.set(v, sub.class_of(v).unwrap());
        }
        debug_check_1124(g, &c, "two-connected")?;
        return Ok(c);
    }

    let wd = weak_dual(&emb);
    let pendant = crate::structure::pendant_faces(g, &wd, &emb.block_tree);
    if let Some(&fi) = pendant.iter().find(|&&fi| wd.faces[fi].len() >= 4) {
        return reduce_long_pendant_face_1124(g, &wd, &emb.block_tree, fi);
    }

    detach_pendant_block(g, &emb, &wd)
}

/// Pendant face of length >= 4 in the general setting: without a cut vertex
/// the reduction matches the 2-connected case; with one, the face is a
/// whole pendant block and is deleted outright.
fn reduce_long_pendant_face_1124(
    g: &Graph,
    wd: &WeakDual,
    bt: &crate::structure::BlockTree,
    fi: usize,
) -> Result<Coloring, ConstructError> {
    let boundary = wd.faces[fi].boundary.clone();
    let k = boundary.len();
    let cut_on_face: Vec<Vertex> =
        boundary.iter().copied().filter(|&v| bt.is_cut_vertex(v)).collect();
    let mut c = Coloring::empty(seq_1124(), g.vertex_count());

    if cut_on_face.is_empty() {
        let order = pendant_face_order(g, wd, fi)?;
        let (rest, _, n2o) = g.without_vertices(&order[1..k - 1]);
        let sub = c1124(&rest)?;
        transfer(&sub, &n2o, &mut c);
        let c1 = c.class_of(order[0]).unwrap();
        let ck = c.class_of(order[k - 1]).unwrap();
        for (i, class) in pendant_interior_classes(c1, ck, k).into_iter().enumerate() {
            c.set(order[1 + i], class);
        }
        debug_check_1124(g, &c, "pendant2-open")?;
        return Ok(c);
    }

    // The boundary induces a pendant block hanging by the bridge at u1.
    if cut_on_face.len() != 1 {
        return Err(step_failed("pendant2-block", "pendant face with several cut vertices"));
    }
    let u1 = cut_on_face[0];
    let outside: Vec<Vertex> =
        g.neighbors(u1).iter().copied().filter(|nb| !boundary.contains(nb)).collect();
    if outside.len() != 1 {
        return Err(step_failed("pendant2-block", "cut vertex without a unique bridge"));
    }
    let v_out = outside[0];
    let (rest, _, n2o) = g.without_vertices(&boundary);
    let sub = c1124(&rest)?;
    transfer(&sub, &n2o, &mut c);
    let c1 = if c.class_of(v_out) == Some(C1B) { C1A } else { C1B };
    let i1 = boundary.iter().position(|&v| v == u1).unwrap();
    let second = boundary[(i1 + 1) % k].min(boundary[(i1 + k - 1) % k]);
    let order = orient_from(&boundary, u1, second);
    c.set(u1, c1);
    if k % 2 == 0 {
        for t in 1..k {
            c.set(order[t], if t % 2 == 1 { other_one(c1) } else { c1 });
        }
    } else {
        c.set(order[1], other_one(c1));
        c.set(order[2], C2);
        for t in 3..k {
            c.set(order[t], if (t - 3) % 2 == 0 { c1 } else { other_one(c1) });
        }
    }
    debug_check_1124(g, &c, "pendant2-block")?;
    Ok(c)
}

/// The pendant block chosen for detachment: its cut vertex and the bridge
/// endpoint outside.
struct PendantBlock {
    v1: Vertex,
    u1: Vertex,
}

fn pick_pendant_block(emb: &OuterEmbedding) -> Result<usize, ConstructError> {
    let bt = &emb.block_tree;
    let mut best: Option<usize> = None;
    for b in bt.pendant_blocks() {
        if bt.blocks[b].is_trivial() {
            continue;
        }
        if bt.block_cuts[b].len() != 1 {
            return Err(step_failed("pendant-block", "pendant block without a cut vertex"));
        }
        if best.map_or(true, |cur| bt.blocks[b].vertices[0] < bt.blocks[cur].vertices[0]) {
            best = Some(b);
        }
    }
    best.ok_or_else(|| step_failed("pendant-block", "no nontrivial pendant block"))
}

/// Case analysis of the main recursion: detach the chosen pendant block,
/// color the remainder, and extend.
fn detach_pendant_block(
    g: &Graph,
    emb: &OuterEmbedding,
    wd: &WeakDual,
) -> Result<Coloring, ConstructError> {
    let bt = &emb.block_tree;
    let block_idx = pick_pendant_block(emb)?;
    let block = &bt.blocks[block_idx];
    let v1 = bt.block_cuts[block_idx][0];
    let outside: Vec<Vertex> =
        g.neighbors(v1).iter().copied().filter(|nb| !block.vertices.contains(nb)).collect();
    if outside.len() != 1 {
        return Err(step_failed("pendant-block", "cut vertex without a unique bridge"));
    }
    let pb = PendantBlock { v1, u1: outside[0] };

    let f0 = wd.block_faces[block_idx]
        .iter()
        .copied()
        .find(|&f| wd.faces[f].contains(pb.v1))
        .ok_or_else(|| step_failed("pendant-block", "cut vertex on no face"))?;

    if block.edges.len() == block.vertices.len() {
        return case_triangle(g, &pb, block);
    }
    if wd.adjacency[f0].iter().all(|&x| wd.adjacency[x].len() == 1) {
        return case_star(g, &pb, wd, f0);
    }
    case_deep(g, &pb, wd, f0)
}

/// Colors `g` minus the pendant block. A bridge endpoint of degree two in
/// `g` never keeps an s=2 or s=4 class: its single colored neighbor blocks
/// at most one s=1 class, and swapping to the free one only relaxes
/// constraints. (The case extensions place s=2/s=4 classes within distance
/// two of the bridge endpoint, which condition (B) tolerates only at
/// degree three.)
fn color_rest(
    g: &Graph,
    pb: &PendantBlock,
    block_vertices: &[Vertex],
) -> Result<Coloring, ConstructError> {
    let (rest, _, n2o) = g.without_vertices(block_vertices);
    let sub = c1124(&rest)?;
    let mut c = Coloring::empty(seq_1124(), g.vertex_count());
    transfer(&sub, &n2o, &mut c);
    if g.degree(pb.u1) == 2 && matches!(c.class_of(pb.u1), Some(C2) | Some(C4)) {
        recolor_to_free_one_class(g, &mut c, pb.u1, block_vertices)
            .ok_or_else(|| step_failed("normalize-u1", "no free s=1 class at degree-2 bridge"))?;
    }
    Ok(c)
}

/// Recolors `u` to an s=1 class unused by its colored neighbors, if any.
fn recolor_to_free_one_class(
    g: &Graph,
    c: &mut Coloring,
    u: Vertex,
    excluded: &[Vertex],
) -> Option<()> {
    let used: Vec<u32> = g
        .neighbors(u)
        .iter()
        .filter(|nb| !excluded.contains(nb))
        .filter_map(|&nb| c.class_of(nb))
        .collect();
    let free = [C1A, C1B].into_iter().find(|cl| !used.contains(cl))?;
    c.set(u, free);
    Some(())
}

/// The pendant block is a triangle on the end of a bridge.
fn case_triangle(
    g: &Graph,
    pb: &PendantBlock,
    block: &crate::structure::Block,
) -> Result<Coloring, ConstructError> {
    if block.vertices.len() != 3 {
        return Err(step_failed("case1", "pendant cycle block longer than a triangle"));
    }
    let mut c = color_rest(g, pb, &block.vertices)?;
    let others: Vec<Vertex> =
        block.vertices.iter().copied().filter(|&v| v != pb.v1).collect();
    let (v2, v3) = (others[0], others[1]);
    match c.class_of(pb.u1).unwrap() {
        cu if is_one_class(cu) => {
            c.set(pb.v1, other_one(cu));
            c.set(v2, cu);
            c.set(v3, C2);
        }
        C2 => {
            // Condition (B) at the degree-3 bridge endpoint keeps every s=4
            // vertex at distance >= 3 from it, so v3's s=4 is safe.
            c.set(pb.v1, C1A);
            c.set(v2, C1B);
            c.set(v3, C4);
        }
        _ => {
            // Bridge endpoint carries the s=4 class.
            if recolor_to_free_one_class(g, &mut c, pb.u1, &block.vertices).is_some() {
                let cu = c.class_of(pb.u1).unwrap();
                c.set(pb.v1, other_one(cu));
                c.set(v2, cu);
                c.set(v3, C2);
            } else {
                // Both outside neighbors carry the two s=1 classes.
                c.set(pb.v1, C2);
                c.set(v2, C1B);
                c.set(v3, C1A);
            }
        }
    }
    debug_check_1124(g, &c, "case1")?;
    Ok(c)
}

/// A pendant 3-face hanging off a cycle face: shares the boundary pair at
/// `q` and contributes the apex.
struct ApexFace {
    q: usize,
    apex: Vertex,
}

fn apex_faces(
    wd: &WeakDual,
    center: usize,
    exclude: Option<usize>,
    order: &[Vertex],
) -> Result<Vec<ApexFace>, ConstructError> {
    let l = order.len();
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(t, &v)| (v, t)).collect();
    let mut out = Vec::new();
    for &(a, b, e) in &wd.dual_edges {
        let neighbor = if a == center {
            b
        } else if b == center {
            a
        } else {
            continue;
        };
        if Some(neighbor) == exclude {
            continue;
        }
        let face = &wd.faces[neighbor];
        if face.len() != 3 {
            return Err(step_failed("apex-face", "pendant neighbor face is not a triangle"));
        }
        let (pu, pv) = (pos[&e.0], pos[&e.1]);
        let q = if (pu + 1) % l == pv {
            pu
        } else if (pv + 1) % l == pu {
            pv
        } else {
            return Err(step_failed("apex-face", "shared edge not consecutive on the cycle"));
        };
        let apex = face
            .boundary
            .iter()
            .copied()
            .find(|&x| x != e.0 && x != e.1)
            .expect("triangle has a third vertex");
        out.push(ApexFace { q, apex });
    }
    out.sort_by_key(|a| a.q);
    Ok(out)
}

/// The face at the cut vertex is adjacent only to pendant 3-faces.
fn case_star(
    g: &Graph,
    pb: &PendantBlock,
    wd: &WeakDual,
    f0: usize,
) -> Result<Coloring, ConstructError> {
    let boundary = wd.faces[f0].boundary.clone();
    let k = boundary.len();
    let i1 = boundary.iter().position(|&v| v == pb.v1).unwrap();
    let second = boundary[(i1 + 1) % k].min(boundary[(i1 + k - 1) % k]);
    let order = orient_from(&boundary, pb.v1, second);
    let apexes = apex_faces(wd, f0, None, &order)?;
    let block_vertices: Vec<Vertex> = {
        let mut v = order.clone();
        v.extend(apexes.iter().map(|a| a.apex));
        v.sort_unstable();
        v
    };
    let mut c = color_rest(g, pb, &block_vertices)?;
    let cu = c.class_of(pb.u1).unwrap();

    if k % 2 == 0 {
        let cv = if cu == C1A { C1B } else { C1A };
        for (t, &v) in order.iter().enumerate() {
            c.set(v, if t % 2 == 0 { cv } else { other_one(cv) });
        }
        for a in &apexes {
            c.set(a.apex, C2);
        }
        debug_check_1124(g, &c, "case2-even")?;
        return Ok(c);
    }

    let p1 = apexes.first().ok_or_else(|| step_failed("case2", "no apex faces"))?.q;
    // Odd face: the first shared edge's near endpoint takes the s=2 class,
    // or s=4 when the bridge endpoint already carries the s=2 class.
    c.set(order[p1], if cu == C2 { C4 } else { C2 });
    // Alternate the remaining k-1 cycle vertices so v1 avoids the bridge
    // endpoint's s=1 class.
    let t0 = k - 1 - p1; // position of v1 along the open path
    let start = if is_one_class(cu) {
        if t0 % 2 == 0 {
            other_one(cu)
        } else {
            cu
        }
    } else {
        C1A
    };
    for t in 0..k - 1 {
        let v = order[(p1 + 1 + t) % k];
        c.set(v, if t % 2 == 0 { start } else { other_one(start) });
    }
    for (i, a) in apexes.iter().enumerate() {
        if i == 0 {
            c.set(a.apex, other_one(c.class_of(order[(p1 + 1) % k]).unwrap()));
        } else {
            c.set(a.apex, C2);
        }
    }
    debug_check_1124(g, &c, if cu == C2 { "case2-odd-four" } else { "case2-odd" })?;
    Ok(c)
}

/// The face at the cut vertex has a non-pendant neighbor: reduce at the
/// deepest pendant face instead.
fn case_deep(
    g: &Graph,
    pb: &PendantBlock,
    wd: &WeakDual,
    f0: usize,
) -> Result<Coloring, ConstructError> {
    let block_face_ids = &wd.block_faces[wd.faces[f0].block];
    let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
    dist.insert(f0, 0);
    let mut queue = std::collections::VecDeque::from([f0]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[&x];
        for &y in &wd.adjacency[x] {
            if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(dx + 1);
                queue.push_back(y);
            }
        }
    }
    let r = block_face_ids
        .iter()
        .copied()
        .filter(|&f| wd.adjacency[f].len() == 1 && !wd.faces[f].contains(pb.v1))
        .max_by_key(|&f| (dist[&f], usize::MAX - f))
        .ok_or_else(|| step_failed("case3", "no pendant face in the block"))?;
    if dist[&r] < 2 {
        return Err(step_failed("case3", "deepest pendant face too close"));
    }
    let r0 = wd.adjacency[r][0];
    let non_pendant: Vec<usize> = wd.adjacency[r0]
        .iter()
        .copied()
        .filter(|&x| wd.adjacency[x].len() > 1 || wd.faces[x].contains(pb.v1))
        .collect();
    if non_pendant.len() != 1 {
        return Err(step_failed("case3", "expected a unique non-pendant neighbor"));
    }
    let r0p = non_pendant[0];
    let shared = wd
        .dual_edges
        .iter()
        .find_map(|&(a, b, e)| ((a == r0 && b == r0p) || (a == r0p && b == r0)).then_some(e))
        .expect("adjacent faces share an edge");

    if wd.faces[r0p].len() == 3 {
        case_deep_triangle(g, pb, wd, r0, r0p, shared)
    } else {
        case_deep_long(g, wd, r0, r0p, shared)
    }
}

/// The non-pendant neighbor is the 3-face at the cut vertex: the block is
/// that triangle plus one fan of pendant triangles around the inner cycle.
fn case_deep_triangle(
    g: &Graph,
    pb: &PendantBlock,
    wd: &WeakDual,
    r0: usize,
    r0p: usize,
    shared: (Vertex, Vertex),
) -> Result<Coloring, ConstructError> {
    let x0 = wd.faces[r0p]
        .boundary
        .iter()
        .copied()
        .find(|&x| x != shared.0 && x != shared.1)
        .expect("triangle apex");
    if x0 != pb.v1 {
        return Err(step_failed("case31", "apex of the 3-face is not the cut vertex"));
    }
    let (x1, x2) = (shared.0.min(shared.1), shared.0.max(shared.1));
    let order = orient_from(&wd.faces[r0].boundary, x1, x2);
    let rr = order.len();
    let apexes = apex_faces(wd, r0, Some(r0p), &order)?;
    if apexes.is_empty() {
        return Err(step_failed("case31", "no pendant faces on the inner cycle"));
    }
    let block_vertices: Vec<Vertex> = {
        let mut v = order.clone();
        v.push(x0);
        v.extend(apexes.iter().map(|a| a.apex));
        v.sort_unstable();
        v
    };
    let mut c = color_rest(g, pb, &block_vertices)?;

    if c.class_of(pb.u1) == Some(C4)
        && recolor_to_free_one_class(g, &mut c, pb.u1, &block_vertices).is_none()
    {
        // Both outside neighbors use the s=1 classes: fall back to a
        // standalone (1,1,2)-coloring of the block. Its boundary vertices
        // x0, x1, x2 all have degree three, so condition (B) cannot bind.
        let (sub_g, _, n2o) = induced(g, &block_vertices);
        let sub = c112(&sub_g)?;
        for (new, &old) in n2o.iter().enumerate() {
            c.set(old, sub.class_of(new as Vertex).unwrap());
        }
        debug_check_1124(g, &c, "case313-fallback")?;
        return Ok(c);
    }
    let cu = c.class_of(pb.u1).unwrap();
    let qm = apexes.last().unwrap().q;

    if is_one_class(cu) {
        // x1 takes the s=2 class; the path x0, x2, ..., xr alternates so x0
        // avoids the bridge endpoint's class; the last apex takes s=4.
        c.set(order[0], C2);
        let start = other_one(cu);
        c.set(x0, start);
        for t in 1..rr {
            c.set(order[t], if t % 2 == 1 { other_one(start) } else { start });
        }
        for (i, a) in apexes.iter().enumerate() {
            c.set(a.apex, if i + 1 == apexes.len() { C4 } else { C2 });
        }
        debug_check_1124(g, &c, "case311")?;
    } else {
        // Bridge endpoint carries the s=2 class: x1 takes s=4 instead, at
        // distance two from it and hence at distance >= 5 from other s=4
        // vertices.
        c.set(order[0], C4);
        c.set(order[qm + 1], C2);
        c.set(x0, C1A);
        for t in 1..=qm {
            c.set(order[t], if t % 2 == 1 { C1B } else { C1A });
        }
        let ym = apexes.last().unwrap().apex;
        c.set(ym, if qm % 2 == 1 { C1A } else { C1B });
        for (i, t) in (qm + 2..rr).enumerate() {
            c.set(order[t], if i % 2 == 0 { C1A } else { C1B });
        }
        for a in apexes.iter().take(apexes.len() - 1) {
            c.set(a.apex, C2);
        }
        debug_check_1124(g, &c, "case312")?;
    }
    Ok(c)
}

/// The non-pendant neighbor is longer: cut the fan free and patch its face
/// with an auxiliary edge between the outer neighbors of the shared edge.
fn case_deep_long(
    g: &Graph,
    wd: &WeakDual,
    r0: usize,
    r0p: usize,
    shared: (Vertex, Vertex),
) -> Result<Coloring, ConstructError> {
    let neighbor_on = |x: Vertex, other: Vertex| -> Vertex {
        let b = &wd.faces[r0p].boundary;
        let l = b.len();
        let i = b.iter().position(|&y| y == x).unwrap();
        let (s, p) = (b[(i + 1) % l], b[(i + l - 1) % l]);
        if s == other {
            p
        } else {
            s
        }
    };
    let mut x1 = shared.0.min(shared.1);
    let mut x2 = shared.0.max(shared.1);
    let mut xp1 = neighbor_on(x1, x2);
    let mut xp2 = neighbor_on(x2, x1);
    if xp1 == xp2 {
        return Err(step_failed("case32", "outer neighbors coincide"));
    }

    let mut order = orient_from(&wd.faces[r0].boundary, x1, x2);
    let mut apexes = apex_faces(wd, r0, Some(r0p), &order)?;
    let star: Vec<Vertex> = {
        let mut v = order.clone();
        v.extend(apexes.iter().map(|a| a.apex));
        v.sort_unstable();
        v
    };

    let (rest, o2n, n2o) = g.without_vertices(&star);
    let (l1, l2) = (o2n[xp1 as usize].unwrap(), o2n[xp2 as usize].unwrap());
    let work = if rest.has_edge(l1, l2) { rest } else { rest.with_edge(l1, l2).expect("distinct") };
    let sub = c1124(&work)?;
    let mut c = Coloring::empty(seq_1124(), g.vertex_count());
    transfer(&sub, &n2o, &mut c);

    // Keep the s=2 class off x2's outer neighbor; the outer neighbors are
    // adjacent in the cut graph, so at most one of them carries it.
    if c.class_of(xp2) == Some(C2) {
        std::mem::swap(&mut x1, &mut x2);
        std::mem::swap(&mut xp1, &mut xp2);
        order = orient_from(&wd.faces[r0].boundary, x1, x2);
        apexes = apex_faces(wd, r0, Some(r0p), &order)?;
    }
    if c.class_of(xp2) == Some(C2) {
        return Err(step_failed("case32", "both outer neighbors carry the s=2 class"));
    }
    let rr = order.len();
    let q1 = apexes.first().ok_or_else(|| step_failed("case32", "no pendant faces"))?.q;
    c.set(order[q1], C2);
    // Alternate the remaining cycle; x1, x2 sit consecutively in the open
    // path and one phase avoids both outer-neighbor classes.
    let (a1, a2) = (c.class_of(xp1).unwrap(), c.class_of(xp2).unwrap());
    let class_at = |start: u32, target: usize| {
        let t = (target + rr - q1 - 1) % rr;
        if t % 2 == 0 {
            start
        } else {
            other_one(start)
        }
    };
    let start = [C1A, C1B]
        .into_iter()
        .find(|&s| {
            (!is_one_class(a1) || class_at(s, 0) != a1)
                && (!is_one_class(a2) || class_at(s, 1) != a2)
        })
        .ok_or_else(|| step_failed("case32", "no alternation phase fits"))?;
    for t in 0..rr - 1 {
        let v = order[(q1 + 1 + t) % rr];
        c.set(v, if t % 2 == 0 { start } else { other_one(start) });
    }
    for (i, a) in apexes.iter().enumerate() {
        if i == 0 {
            c.set(a.apex, other_one(c.class_of(order[(q1 + 1) % rr]).unwrap()));
        } else {
            c.set(a.apex, C2);
        }
    }
    debug_check_1124(g, &c, "case32")?;
    Ok(c)
}

/// Lifts a valid packing coloring to the subdivision: midpoints form a new
/// s=1 class and every original class threshold doubles plus one.
pub fn lift_to_subdivision(
    g: &Graph,
    c: &Coloring,
) -> Result<(ColorSequence, Coloring), ConstructError> {
    let violations = match verify_packing(g, c) {
        Ok(v) => v,
        Err(_) => return Err(ConstructError::InvalidInputColoring(Vec::new())),
    };
    if !violations.is_empty() {
        return Err(ConstructError::InvalidInputColoring(violations));
    }
    let mut thresholds = vec![1u32];
    thresholds.extend(c.sequence().thresholds().iter().map(|&s| 2 * s + 1));
    let lifted_seq = ColorSequence::new(thresholds).expect("doubling keeps monotonicity");
    let sub = subdivide(g);
    let mut lifted = Coloring::empty(lifted_seq.clone(), sub.subdivided.vertex_count());
    for v in g.vertices() {
        lifted.set(v, c.class_of(v).expect("total") + 1);
    }
    for &(_, _, mid) in &sub.edge_midpoint {
        lifted.set(mid, 1);
    }
    debug_assert!(verify_packing(&sub.subdivided, &lifted).map_or(false, |v| v.is_empty()));
    Ok((lifted_seq, lifted))
}

/// Relabels classes onto a target sequence: an injective slot assignment
/// with `target[sigma(i)] <= s[i]` for every used class (greedy, largest
/// thresholds first). Validity carries over by relaxation monotonicity.
pub fn remap_sequence(c: &Coloring, target: &ColorSequence) -> Result<Coloring, ConstructError> {
    let source = c.sequence();
    let mut used: Vec<u32> = c.colored_vertices().map(|(_, cl)| cl).collect();
    used.sort_unstable();
    used.dedup();
    let mut by_threshold = used;
    by_threshold.sort_by_key(|&cl| std::cmp::Reverse(source.threshold(cl)));
    let mut free: Vec<u32> = (1..=target.class_count()).collect();
    let mut assignment: BTreeMap<u32, u32> = BTreeMap::new();
    for cl in by_threshold {
        let s = source.threshold(cl);
        let pick = free
            .iter()
            .rposition(|&t| target.threshold(t) <= s)
            .ok_or(ConstructError::NoInjection)?;
        assignment.insert(cl, free.remove(pick));
    }
    let mut out = Coloring::empty(target.clone(), c.vertex_count());
    for (v, cl) in c.colored_vertices() {
        out.set(v, assignment[&cl]);
    }
    Ok(out)
}
