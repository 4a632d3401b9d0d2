//! Exact dynamic program over the block/face structure of an outerplanar
//! graph.
//!
//! The graph decomposes along separators of size at most two: cut vertices,
//! and shared (chord) edges between faces of a block. Every path between
//! the two sides of such a separator crosses it, and for an edge separator
//! the two endpoints are adjacent, so distances inside a processed piece
//! never shrink once the rest of the graph arrives. That makes a capped
//! profile exact: per separator vertex and class, the distance to the
//! nearest same-class vertex in the piece, capped at the class threshold
//! plus one ("far enough").
//!
//! Faces are processed by walking their boundary cycle. While a cycle is
//! open, the two arc ends form a non-adjacent separator; the only future
//! shortcut between already-processed vertices runs through the closing
//! edge, so the walk additionally tracks, per class, the least sum of
//! (distance to the anchor) + (distance to the frontier) over *distinct*
//! source pairs from different absorption events. Closing the cycle checks
//! that sum against the threshold. Pairs born in a single absorption event
//! never need the wrap check: their direct in-piece path is at least as
//! short and was checked when the event's piece was built.
//!
//! Profiles are deduplicated per separator; a configurable ceiling on the
//! number of stored entries aborts cleanly with `MemoryBudgetExceeded`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::{Duration, Instant};

use crate::graph::{Graph, Vertex};
use crate::structure::{outer_embedding, weak_dual, OuterEmbedding, WeakDual};
use crate::verify::{verify_packing, ColorSequence, Coloring};

use super::backtrack::respects_pins;
use super::{pin_domains, Pin, SolveResult, SolverError};

/// Default ceiling on stored profile and walk-state entries.
pub const DEFAULT_PROFILE_LIMIT: usize = 4_000_000;

const INF: u32 = u32::MAX / 4;

type Deriv = u32;
const LEAF: Deriv = 0;

enum Abort {
    Timeout,
    Memory,
}

#[derive(Clone)]
struct Entry {
    vec: Box<[u16]>,
    deriv: Deriv,
}

/// Profiles of a piece hanging below one vertex, bucketed by that vertex's
/// color. Layout per entry: `d[i]` = capped distance from the vertex to the
/// nearest class-i vertex inside the piece (the vertex itself excluded).
type VertexTable = Vec<Vec<Entry>>;

/// Profiles of a face piece at its entry edge `(p, q)`, bucketed by
/// `color(p) * k + color(q)`. Layout: `d_p[0..k]` then `d_q[0..k]`.
type EdgeTable = Vec<Vec<Entry>>;

pub(crate) struct DpOptions {
    pub budget: Option<Duration>,
    pub profile_limit: usize,
}

enum WalkMode {
    EdgeExport,
    VertexExport,
}

enum WalkResult {
    Edge(EdgeTable),
    Vertex(VertexTable),
}

struct Dp {
    k: usize,
    /// Required minimum distance per class: s_i + 1.
    need: Vec<u32>,
    /// Storage cap per class: min(s_i + 1, n + 1). A stored value equal to
    /// the cap means "no source within any distance that could matter".
    caps: Vec<u16>,
    allowed: Vec<u32>,
    wd: WeakDual,
    emb: OuterEmbedding,
    vertex_blocks: Vec<Vec<usize>>,
    faces_at_edge: HashMap<(Vertex, Vertex), Vec<usize>>,
    arena: Vec<(Option<(Vertex, u8)>, Vec<Deriv>)>,
    empty_vertex: Vec<Entry>,
    empty_edge: Vec<Entry>,
    entries: usize,
    limit: usize,
    deadline: Option<Instant>,
    ticks: u64,
}

impl Dp {
    fn real(&self, x: u16, class: usize) -> u32 {
        if x >= self.caps[class] {
            INF
        } else {
            x as u32
        }
    }

    fn cap_store(&self, x: u32, class: usize) -> u16 {
        x.min(self.caps[class] as u32) as u16
    }

    fn deriv(&mut self, assign: Option<(Vertex, u8)>, parents: &[Deriv]) -> Deriv {
        let real: Vec<Deriv> = parents.iter().copied().filter(|&p| p != LEAF).collect();
        if assign.is_none() {
            if real.is_empty() {
                return LEAF;
            }
            if real.len() == 1 {
                return real[0];
            }
        }
        self.arena.push((assign, real));
        (self.arena.len() - 1) as Deriv
    }

    fn tick(&mut self) -> Result<(), Abort> {
        self.ticks += 1;
        if self.ticks & 0x1FFF == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Abort::Timeout);
                }
            }
        }
        Ok(())
    }

    fn bump(&mut self) -> Result<(), Abort> {
        self.entries += 1;
        if self.entries > self.limit {
            Err(Abort::Memory)
        } else {
            Ok(())
        }
    }

    fn colors(&self, v: Vertex) -> Vec<usize> {
        let mask = self.allowed[v as usize];
        (0..self.k).filter(|&c| mask & (1 << c) != 0).collect()
    }

    /// The face on the other side of edge `{u, v}`, if any.
    fn child_face_at(&self, face: usize, u: Vertex, v: Vertex) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.faces_at_edge
            .get(&key)
            .and_then(|faces| faces.iter().copied().find(|&f| f != face))
    }

    /// Rotation of the face boundary starting at `p` and ending at `q`
    /// (which must be cyclically adjacent to `p`).
    fn orient(&self, face: usize, p: Vertex, q: Vertex) -> Vec<Vertex> {
        let b = &self.wd.faces[face].boundary;
        let n = b.len();
        let ip = b.iter().position(|&x| x == p).expect("p on boundary");
        let mut out = Vec::with_capacity(n);
        if b[(ip + 1) % n] == q {
            // Walk backwards so q comes last.
            for t in 0..n {
                out.push(b[(ip + n - t) % n]);
            }
        } else {
            debug_assert_eq!(b[(ip + n - 1) % n], q);
            for t in 0..n {
                out.push(b[(ip + t) % n]);
            }
        }
        debug_assert_eq!(out[0], p);
        debug_assert_eq!(out[n - 1], q);
        out
    }

    /// Everything hanging below `v` outside `skip_block`; `None` when `v`
    /// has no other blocks.
    fn subtree_table(
        &mut self,
        v: Vertex,
        skip_block: Option<usize>,
    ) -> Result<Option<VertexTable>, Abort> {
        let blocks: Vec<usize> = self.vertex_blocks[v as usize]
            .iter()
            .copied()
            .filter(|&b| Some(b) != skip_block)
            .collect();
        if blocks.is_empty() {
            return Ok(None);
        }
        let mut acc = self.base_table(v)?;
        for b in blocks {
            let table = if self.emb.block_tree.blocks[b].is_trivial() {
                self.bridge_table(b, v)?
            } else {
                self.block_vertex_table(b, v)?
            };
            acc = self.merge_vertex_tables(acc, table)?;
        }
        Ok(Some(acc))
    }

    /// One empty profile per allowed color of `v`.
    fn base_table(&mut self, v: Vertex) -> Result<VertexTable, Abort> {
        let mut out = vec![Vec::new(); self.k];
        for c in self.colors(v) {
            self.bump()?;
            out[c].push(Entry { vec: self.caps.clone().into_boxed_slice(), deriv: LEAF });
        }
        Ok(out)
    }

    /// Cross-merge of two pieces meeting only at their shared vertex: pairs
    /// across the pieces route through it, so the per-class distance sums
    /// must clear the thresholds.
    fn merge_vertex_tables(
        &mut self,
        a: VertexTable,
        b: VertexTable,
    ) -> Result<VertexTable, Abort> {
        let mut out = vec![Vec::new(); self.k];
        for c in 0..self.k {
            let mut seen: HashSet<Box<[u16]>> = HashSet::new();
            for ea in &a[c] {
                'pair: for eb in &b[c] {
                    self.tick()?;
                    let mut vec = vec![0u16; self.k];
                    for i in 0..self.k {
                        let (da, db) = (self.real(ea.vec[i], i), self.real(eb.vec[i], i));
                        if da + db < self.need[i] {
                            continue 'pair;
                        }
                        vec[i] = self.cap_store(da.min(db), i);
                    }
                    let vec: Box<[u16]> = vec.into_boxed_slice();
                    if seen.insert(vec.clone()) {
                        self.bump()?;
                        let deriv = self.deriv(None, &[ea.deriv, eb.deriv]);
                        out[c].push(Entry { vec, deriv });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Profiles at `v` of the piece across the bridge block `(v, u)`.
    fn bridge_table(&mut self, block: usize, v: Vertex) -> Result<VertexTable, Abort> {
        let edge = self.emb.block_tree.blocks[block].edges[0];
        let u = if edge.0 == v { edge.1 } else { edge.0 };
        let below = match self.subtree_table(u, Some(block))? {
            Some(t) => t,
            None => self.base_table(u)?,
        };
        let mut out = vec![Vec::new(); self.k];
        for cv in self.colors(v) {
            let mut seen: HashSet<Box<[u16]>> = HashSet::new();
            for cu in 0..self.k {
                if cu == cv {
                    continue; // adjacent same class
                }
                'entry: for e in &below[cu] {
                    self.tick()?;
                    // u's piece moves one hop away from v; u itself joins it.
                    let mut vec = vec![0u16; self.k];
                    for i in 0..self.k {
                        let mut d = self.real(e.vec[i], i).saturating_add(1);
                        if i == cu {
                            d = d.min(1);
                        }
                        if i == cv && d < self.need[i] {
                            continue 'entry;
                        }
                        vec[i] = self.cap_store(d, i);
                    }
                    let vec: Box<[u16]> = vec.into_boxed_slice();
                    if seen.insert(vec.clone()) {
                        self.bump()?;
                        let deriv = self.deriv(Some((u, cu as u8)), &[e.deriv]);
                        out[cv].push(Entry { vec, deriv });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Profiles at `v` of a nontrivial block hanging there, with everything
    /// below it absorbed.
    fn block_vertex_table(&mut self, block: usize, v: Vertex) -> Result<VertexTable, Abort> {
        let root_face = self.wd.block_faces[block]
            .iter()
            .copied()
            .find(|&f| self.wd.faces[f].contains(v))
            .expect("block vertex lies on a face");
        let b = self.wd.faces[root_face].boundary.clone();
        let n = b.len();
        let iv = b.iter().position(|&x| x == v).unwrap();
        let (succ, pred) = (b[(iv + 1) % n], b[(iv + n - 1) % n]);
        let order = self.orient(root_face, v, succ.max(pred));
        match self.walk_face(root_face, order, WalkMode::VertexExport)? {
            WalkResult::Vertex(t) => Ok(t),
            WalkResult::Edge(_) => unreachable!(),
        }
    }

    /// Profiles of the face piece entered over edge `(p, q)`.
    fn face_edge_table(&mut self, face: usize, p: Vertex, q: Vertex) -> Result<EdgeTable, Abort> {
        let order = self.orient(face, p, q);
        match self.walk_face(face, order, WalkMode::EdgeExport)? {
            WalkResult::Edge(t) => Ok(t),
            WalkResult::Vertex(_) => unreachable!(),
        }
    }

    fn walk_face(
        &mut self,
        face: usize,
        order: Vec<Vertex>,
        mode: WalkMode,
    ) -> Result<WalkResult, Abort> {
        let k = self.k;
        let block = self.wd.faces[face].block;
        let l = order.len();
        let empty_edge = self.empty_edge.clone();
        let empty_vertex = self.empty_vertex.clone();

        struct Step {
            vertex: Vertex,
            owned: bool,
            edge_child: Option<EdgeTable>,
            subtree: Option<VertexTable>,
        }
        let mut steps = Vec::with_capacity(l - 1);
        for j in 1..l {
            let (prev, w) = (order[j - 1], order[j]);
            let edge_child = match self.child_face_at(face, prev, w) {
                Some(cf) => Some(self.face_edge_table(cf, prev, w)?),
                None => None,
            };
            let owned = j < l - 1 || matches!(mode, WalkMode::VertexExport);
            let subtree = if owned { self.subtree_table(w, Some(block))? } else { None };
            steps.push(Step { vertex: w, owned, edge_child, subtree });
        }
        // Only a block-root face can have a child across its closing edge;
        // for every other face that edge is the entry to the parent.
        let closing_child = match mode {
            WalkMode::VertexExport => match self.child_face_at(face, order[l - 1], order[0]) {
                Some(cf) => Some(self.face_edge_table(cf, order[0], order[l - 1])?),
                None => None,
            },
            WalkMode::EdgeExport => None,
        };

        let mut edge_out: EdgeTable = vec![Vec::new(); k * k];
        let mut vertex_out: VertexTable = vec![Vec::new(); k];
        let mut edge_seen: Vec<HashSet<Box<[u16]>>> = vec![HashSet::new(); k * k];
        let mut vertex_seen: Vec<HashSet<Box<[u16]>>> = vec![HashSet::new(); k];

        for c1 in self.colors(order[0]) {
            // State: (frontier color, packed f|g|m per class) -> derivation.
            let mut states: BTreeMap<(u8, Box<[u16]>), Deriv> = BTreeMap::new();
            let mut init = Vec::with_capacity(3 * k);
            for _ in 0..3 {
                init.extend_from_slice(&self.caps);
            }
            states.insert((c1 as u8, init.into_boxed_slice()), LEAF);

            for (jm1, step) in steps.iter().enumerate() {
                let j = (jm1 + 1) as u32;
                let mut next: BTreeMap<(u8, Box<[u16]>), Deriv> = BTreeMap::new();
                let w_colors = self.colors(step.vertex);
                for ((fc, vec), deriv) in &states {
                    for &c in &w_colors {
                        let e_entries: &[Entry] = match &step.edge_child {
                            Some(t) => &t[*fc as usize * k + c],
                            None => &empty_edge,
                        };
                        let v_entries: &[Entry] = match &step.subtree {
                            Some(t) => &t[c],
                            None => &empty_vertex,
                        };
                        for pe in e_entries {
                            for pv in v_entries {
                                self.tick()?;
                                let Some(nv) = self.step_state(
                                    vec, c, c1, j, &pe.vec, &pv.vec, step.owned,
                                ) else {
                                    continue;
                                };
                                let key = (c as u8, nv);
                                if !next.contains_key(&key) {
                                    self.bump()?;
                                    let assign = step.owned.then_some((step.vertex, c as u8));
                                    let nd = self.deriv(assign, &[*deriv, pe.deriv, pv.deriv]);
                                    next.insert(key, nd);
                                }
                            }
                        }
                    }
                }
                states = next;
                if states.is_empty() {
                    break;
                }
            }

            // Close the cycle: the edge (x_L, x_1) joins the piece.
            for ((cexit, vec), deriv) in &states {
                let cexit = *cexit as usize;
                if cexit == c1 {
                    continue; // adjacent endpoints of the closing edge
                }
                let f = &vec[0..k];
                let g = &vec[k..2 * k];
                let m = &vec[2 * k..3 * k];
                let wrap_ok = (0..k).all(|i| self.real(m[i], i) + 1 >= self.need[i])
                    && self.real(g[c1], c1) + 1 >= self.need[c1]
                    && self.real(f[cexit], cexit) + 1 >= self.need[cexit];
                if !wrap_ok {
                    continue;
                }
                let closers: &[Entry] = match &closing_child {
                    Some(t) => &t[c1 * k + cexit],
                    None => &empty_edge,
                };
                'closer: for e2 in closers {
                    self.tick()?;
                    for i in 0..k {
                        let dp = self.real(e2.vec[i], i);
                        let dq = self.real(e2.vec[k + i], i);
                        if dp + self.real(f[i], i) < self.need[i]
                            || dq + self.real(g[i], i) < self.need[i]
                        {
                            continue 'closer;
                        }
                    }
                    if self.real(e2.vec[c1], c1) < self.need[c1]
                        || self.real(e2.vec[k + cexit], cexit) < self.need[cexit]
                    {
                        continue;
                    }
                    match mode {
                        WalkMode::EdgeExport => {
                            let mut out = vec![0u16; 2 * k];
                            for i in 0..k {
                                let (fi, gi) = (self.real(f[i], i), self.real(g[i], i));
                                out[i] = self.cap_store(fi.min(gi + 1), i);
                                out[k + i] = self.cap_store(gi.min(fi + 1), i);
                            }
                            let out: Box<[u16]> = out.into_boxed_slice();
                            let bucket = c1 * k + cexit;
                            if edge_seen[bucket].insert(out.clone()) {
                                self.bump()?;
                                let nd = self.deriv(None, &[*deriv, e2.deriv]);
                                edge_out[bucket].push(Entry { vec: out, deriv: nd });
                            }
                        }
                        WalkMode::VertexExport => {
                            let mut out = vec![0u16; k];
                            for i in 0..k {
                                let (fi, gi) = (self.real(f[i], i), self.real(g[i], i));
                                let (dp, dq) =
                                    (self.real(e2.vec[i], i), self.real(e2.vec[k + i], i));
                                out[i] =
                                    self.cap_store(fi.min(gi + 1).min(dp).min(dq + 1), i);
                            }
                            let out: Box<[u16]> = out.into_boxed_slice();
                            if vertex_seen[c1].insert(out.clone()) {
                                self.bump()?;
                                let nd = self.deriv(None, &[*deriv, e2.deriv]);
                                vertex_out[c1].push(Entry { vec: out, deriv: nd });
                            }
                        }
                    }
                }
            }
        }
        Ok(match mode {
            WalkMode::EdgeExport => WalkResult::Edge(edge_out),
            WalkMode::VertexExport => WalkResult::Vertex(vertex_out),
        })
    }

    /// One absorption: vertex `w` (class `c`, at arc distance `j` from the
    /// anchor) joins the piece together with the hanger across the last arc
    /// edge (`pe`, at the pair old-frontier/w) and w's own subtree (`pv`).
    /// Returns the successor state vector, or `None` when a distance
    /// constraint fails.
    #[allow(clippy::too_many_arguments)]
    fn step_state(
        &self,
        vec: &[u16],
        c: usize,
        c1: usize,
        j: u32,
        pe: &[u16],
        pv: &[u16],
        is_source: bool,
    ) -> Option<Box<[u16]>> {
        let k = self.k;
        let f = &vec[0..k];
        let g = &vec[k..2 * k];
        let m = &vec[2 * k..3 * k];

        // w against the processed arc, and against the anchor color along
        // the arc (the wrap route is checked at closing time).
        if 1 + self.real(g[c], c) < self.need[c] {
            return None;
        }
        if c == c1 && j < self.need[c] {
            return None;
        }
        // w against both hangers.
        if self.real(pe[k + c], c) < self.need[c] || self.real(pv[c], c) < self.need[c] {
            return None;
        }
        for i in 0..k {
            let near = self.real(pe[i], i);
            let far = self.real(pe[k + i], i);
            let sub = self.real(pv[i], i);
            // Hanger interiors against processed sources (via the old
            // frontier), each other, and w's subtree.
            if near + self.real(g[i], i) < self.need[i] {
                return None;
            }
            if sub + 1 + self.real(g[i], i) < self.need[i] {
                return None;
            }
            if sub + far < self.need[i] {
                return None;
            }
        }
        // Hanger interiors against the anchor color, cheapest route back.
        {
            let near = self.real(pe[c1], c1);
            let far = self.real(pe[k + c1], c1);
            if (near + (j - 1)).min(far + j) < self.need[c1] {
                return None;
            }
            if self.real(pv[c1], c1) + j < self.need[c1] {
                return None;
            }
        }

        let mut out = vec![0u16; 3 * k];
        for i in 0..k {
            let near = self.real(pe[i], i);
            let far = self.real(pe[k + i], i);
            let sub = self.real(pv[i], i);
            let own: u32 = if i == c && is_source { 0 } else { INF };
            let phi = (own.saturating_add(j))
                .min(near + (j - 1))
                .min(far + j)
                .min(sub + j);
            let gamma = own.min(far).min(sub);
            let (fi, gi, mi) = (self.real(f[i], i), self.real(g[i], i), self.real(m[i], i));
            out[i] = self.cap_store(fi.min(phi), i);
            out[k + i] = self.cap_store((gi + 1).min(gamma), i);
            out[2 * k + i] = self.cap_store((mi + 1).min(fi + gamma).min(phi + gi + 1), i);
        }
        Some(out.into_boxed_slice())
    }
}

/// Exact decision for outerplanar graphs via the block/face-tree dynamic
/// program, with the default memory ceiling and no time budget.
pub fn decide_dp_outerplanar(
    g: &Graph,
    sequence: &ColorSequence,
    pins: &[Pin],
) -> Result<SolveResult, SolverError> {
    decide_dp_outerplanar_with_limits(
        g,
        sequence,
        pins,
        &DpOptions { budget: None, profile_limit: DEFAULT_PROFILE_LIMIT },
    )
}

/// Like [`decide_dp_outerplanar`] with a wall-clock budget; `Timeout` is a
/// normal outcome when it runs out.
pub fn decide_dp_outerplanar_with_budget(
    g: &Graph,
    sequence: &ColorSequence,
    pins: &[Pin],
    budget: Option<Duration>,
) -> Result<SolveResult, SolverError> {
    decide_dp_outerplanar_with_limits(
        g,
        sequence,
        pins,
        &DpOptions { budget, profile_limit: DEFAULT_PROFILE_LIMIT },
    )
}

pub(crate) fn decide_dp_outerplanar_with_limits(
    g: &Graph,
    sequence: &ColorSequence,
    pins: &[Pin],
    options: &DpOptions,
) -> Result<SolveResult, SolverError> {
    let started = Instant::now();
    let allowed = pin_domains(g.vertex_count(), sequence, pins)?;
    let emb = outer_embedding(g)?;
    let wd = weak_dual(&emb);

    let n = g.vertex_count();
    let k = sequence.class_count() as usize;
    let need: Vec<u32> = sequence.thresholds().iter().map(|&s| s + 1).collect();
    let caps: Vec<u16> = need.iter().map(|&d| d.min(n as u32 + 1) as u16).collect();

    let mut vertex_blocks: Vec<Vec<usize>> = vec![Vec::new(); n as usize];
    for (bi, block) in emb.block_tree.blocks.iter().enumerate() {
        for &v in &block.vertices {
            vertex_blocks[v as usize].push(bi);
        }
    }
    let mut faces_at_edge: HashMap<(Vertex, Vertex), Vec<usize>> = HashMap::new();
    for (fi, face) in wd.faces.iter().enumerate() {
        let b = &face.boundary;
        for t in 0..b.len() {
            let (u, v) = (b[t], b[(t + 1) % b.len()]);
            faces_at_edge.entry((u.min(v), u.max(v))).or_default().push(fi);
        }
    }

    let empty_vertex = vec![Entry { vec: caps.clone().into_boxed_slice(), deriv: LEAF }];
    let empty_edge = vec![Entry {
        vec: caps.iter().chain(caps.iter()).copied().collect::<Vec<u16>>().into_boxed_slice(),
        deriv: LEAF,
    }];

    let mut dp = Dp {
        k,
        need,
        caps,
        allowed,
        wd,
        emb,
        vertex_blocks,
        faces_at_edge,
        arena: vec![(None, Vec::new())],
        empty_vertex,
        empty_edge,
        entries: 0,
        limit: options.profile_limit,
        deadline: options.budget.map(|b| started + b),
        ticks: 0,
    };

    let mut assignments: Vec<(Vertex, u8)> = Vec::new();
    for component in g.connected_components() {
        let root = component[0];
        let outcome = (|| -> Result<Option<(usize, Deriv)>, Abort> {
            let table = match dp.subtree_table(root, None)? {
                Some(t) => t,
                None => dp.base_table(root)?,
            };
            for c in 0..dp.k {
                if let Some(entry) = table[c].first() {
                    return Ok(Some((c, entry.deriv)));
                }
            }
            Ok(None)
        })();
        match outcome {
            Ok(Some((c, deriv))) => {
                assignments.push((root, c as u8));
                let mut stack = vec![deriv];
                while let Some(id) = stack.pop() {
                    let (assign, parents) = &dp.arena[id as usize];
                    if let Some(a) = assign {
                        assignments.push(*a);
                    }
                    stack.extend(parents.iter().copied());
                }
            }
            Ok(None) => return Ok(SolveResult::Unsat),
            Err(Abort::Timeout) => {
                return Ok(SolveResult::Timeout(options.budget.unwrap_or_default()))
            }
            Err(Abort::Memory) => {
                return Err(SolverError::MemoryBudgetExceeded { budget: options.profile_limit })
            }
        }
    }

    let mut classes = vec![None; n as usize];
    for (v, c) in assignments {
        debug_assert!(classes[v as usize].is_none(), "vertex {v} colored twice");
        classes[v as usize] = Some(c as u32 + 1);
    }
    let coloring = Coloring::total(
        sequence.clone(),
        classes.into_iter().map(|c| c.expect("witness is total")).collect(),
    )
    .expect("classes in range");
    assert!(
        verify_packing(g, &coloring).map_or(false, |v| v.is_empty()),
        "dp witness failed verification"
    );
    assert!(respects_pins(&coloring, pins), "dp witness violates pins");
    Ok(SolveResult::Sat(coloring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets;
    use crate::solver::decide_backtracking;

    fn seq(s: &[u32]) -> ColorSequence {
        ColorSequence::new(s.to_vec()).unwrap()
    }

    fn cycle(n: u32) -> Graph {
        Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn small_cycles_match_backtracking() {
        for n in 3..=9 {
            let g = cycle(n);
            for s in [&[1u32, 1, 2][..], &[1, 2, 2], &[1, 1, 3], &[1, 2], &[1, 1, 2, 5]] {
                let s = seq(s);
                let a = decide_backtracking(&g, &s, &[], None).unwrap().is_sat();
                let b = decide_dp_outerplanar(&g, &s, &[]).unwrap().is_sat();
                assert_eq!(a, b, "C{n} under {s}");
            }
        }
    }

    #[test]
    fn lone_large_class_vertex_is_allowed() {
        // A single s=5 vertex on a small cycle: the wrap check must not
        // pair it with itself.
        let g = cycle(5);
        assert!(decide_dp_outerplanar(&g, &seq(&[1, 1, 5]), &[]).unwrap().is_sat());
    }

    #[test]
    fn ex13_matches_paper() {
        let g = gadgets::example_c4_two_ears().graph;
        assert!(decide_dp_outerplanar(&g, &seq(&[1, 1, 3]), &[]).unwrap().is_unsat());
        assert!(decide_dp_outerplanar(&g, &seq(&[1, 2, 2]), &[]).unwrap().is_unsat());
        assert!(decide_dp_outerplanar(&g, &seq(&[1, 1, 2]), &[]).unwrap().is_sat());
    }

    #[test]
    fn petersen_is_rejected() {
        let g = gadgets::petersen().graph;
        assert!(matches!(
            decide_dp_outerplanar(&g, &seq(&[1, 1, 2]), &[]),
            Err(SolverError::NotOuterplanar(_))
        ));
    }

    #[test]
    fn pins_are_respected() {
        let g = gadgets::gadget_g1(true);
        let pin = Pin::Force { vertex: g.v("z6"), class: 4 };
        let r = decide_dp_outerplanar(&g.graph, &seq(&[1, 1, 2, 5]), &[pin]).unwrap();
        assert!(r.is_unsat());
        let r = decide_dp_outerplanar(&g.graph, &seq(&[1, 1, 2, 5]), &[]).unwrap();
        assert!(r.is_sat());
    }

    #[test]
    fn random_outerplanar_cross_check() {
        let sequences =
            [seq(&[1, 1, 2]), seq(&[1, 2, 2]), seq(&[1, 1, 2, 4]), seq(&[1, 1, 2, 5])];
        for seed in 0..60u64 {
            let n = 4 + (seed % 17) as u32;
            let g = gadgets::random_outerplanar_subcubic(n, seed, seed % 3 == 0).unwrap();
            for s in &sequences {
                let a = decide_backtracking(&g, s, &[], None).unwrap().is_sat();
                let b = decide_dp_outerplanar(&g, s, &[]).unwrap().is_sat();
                assert_eq!(a, b, "seed {seed}, n {n}, {s}");
            }
        }
    }

    #[test]
    fn memory_ceiling_aborts_cleanly() {
        let g = gadgets::gadget_g1(false).graph;
        let err = decide_dp_outerplanar_with_limits(
            &g,
            &seq(&[1, 1, 2, 5]),
            &[],
            &DpOptions { budget: None, profile_limit: 8 },
        );
        assert!(matches!(err, Err(SolverError::MemoryBudgetExceeded { budget: 8 })));
    }

    #[test]
    fn trees_and_disconnected_inputs() {
        // A star plus an isolated vertex: only trivial blocks.
        let g = Graph::from_edge_list(5, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(decide_dp_outerplanar(&g, &seq(&[1, 2]), &[]).unwrap().is_sat());
        assert!(decide_dp_outerplanar(&g, &seq(&[2]), &[]).unwrap().is_unsat());
    }
}
