//! Block-cut decomposition, outerplane embeddings, face enumeration and the
//! weak dual tree.
//!
//! An outerplane embedding of a 2-connected block is its unique Hamiltonian
//! cycle plus the remaining edges as non-crossing chords. Faces are the
//! regions the chords carve out of the cycle; two faces are adjacent in the
//! weak dual iff they share a chord, which makes the dual of every block a
//! tree.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// A block: maximal subgraph without a cut vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex set.
    pub vertices: Vec<Vertex>,
    /// Sorted edge set, each `(u, v)` with `u < v`.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Block {
    /// Trivial blocks are single edges (bridges); the rest are 2-connected.
    pub fn is_trivial(&self) -> bool {
        self.edges.len() == 1
    }
}

/// Blocks, cut vertices and their incidences.
#[derive(Debug, Clone)]
pub struct BlockTree {
    pub blocks: Vec<Block>,
    /// Sorted cut vertices of the whole graph.
    pub cut_vertices: Vec<Vertex>,
    /// Per block, the cut vertices lying on it (sorted).
    pub block_cuts: Vec<Vec<Vertex>>,
    /// Per cut vertex, the indices of blocks containing it.
    pub blocks_at_cut: BTreeMap<Vertex, Vec<usize>>,
}

impl BlockTree {
    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.cut_vertices.binary_search(&v).is_ok()
    }

    /// Blocks containing at most one cut vertex.
    pub fn pendant_blocks(&self) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.block_cuts[b].len() <= 1).collect()
    }

    /// Index of the unique block containing edge `uv`.
    pub fn block_of_edge(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        (0..self.blocks.len()).find(|&b| self.blocks[b].edges.binary_search(&key).is_ok())
    }
}

/// Standard depth-first block decomposition (iterative, lowpoint based).
pub fn block_cut_tree(g: &Graph) -> BlockTree {
    let n = g.vertex_count() as usize;
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut timer = 0u32;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut raw_blocks: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
    let mut is_cut = vec![false; n];

    // Explicit DFS stack: (vertex, parent, next neighbor index, dfs children).
    let mut stack: Vec<(Vertex, Option<Vertex>, usize, u32)> = Vec::new();
    for root in g.vertices() {
        if disc[root as usize] != u32::MAX {
            continue;
        }
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        stack.push((root, None, 0, 0));
        while let Some(&mut (v, parent, ref mut idx, ref mut children)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if Some(w) == parent {
                    continue;
                }
                if disc[w as usize] == u32::MAX {
                    *children += 1;
                    edge_stack.push((v, w));
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    stack.push((w, Some(v), 0, 0));
                } else if disc[w as usize] < disc[v as usize] {
                    edge_stack.push((v, w));
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                let child_count = *children;
                stack.pop();
                if let Some(&mut (p, pp, _, _)) = stack.last_mut() {
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                    if low[v as usize] >= disc[p as usize] {
                        // Edges above (p, v) form one block.
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        raw_blocks.push(block);
                        if pp.is_some() {
                            is_cut[p as usize] = true;
                        }
                    }
                } else if child_count >= 2 {
                    is_cut[v as usize] = true;
                }
            }
        }
    }

    let mut blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|raw| {
            let mut edges: Vec<(Vertex, Vertex)> =
                raw.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            edges.sort_unstable();
            edges.dedup();
            let mut vertices: Vec<Vertex> =
                edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            Block { vertices, edges }
        })
        .collect();
    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices).then_with(|| a.edges.cmp(&b.edges)));

    let cut_vertices: Vec<Vertex> =
        (0..n as u32).filter(|&v| is_cut[v as usize]).collect();
    let block_cuts: Vec<Vec<Vertex>> = blocks
        .iter()
        .map(|b| b.vertices.iter().copied().filter(|&v| is_cut[v as usize]).collect())
        .collect();
    let mut blocks_at_cut: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, cuts) in block_cuts.iter().enumerate() {
        for &v in cuts {
            blocks_at_cut.entry(v).or_default().push(i);
        }
    }
    BlockTree { blocks, cut_vertices, block_cuts, blocks_at_cut }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("not outerplanar: block on vertices {block:?} ({reason})")]
pub struct NotOuterplanar {
    /// Vertex set of the offending block.
    pub block: Vec<Vertex>,
    pub reason: &'static str,
}

/// Outer cycle and chords of one nontrivial block.
#[derive(Debug, Clone)]
pub struct BlockEmbedding {
    /// The unique Hamiltonian cycle, canonical rotation: starts at the
    /// smallest vertex and proceeds toward its smaller neighbor.
    pub outer_cycle: Vec<Vertex>,
    /// Block edges not on the outer cycle, each `(u, v)` with `u < v`, sorted.
    pub chords: Vec<(Vertex, Vertex)>,
}

/// Per-block outerplane embedding, aligned with the block tree.
#[derive(Debug, Clone)]
pub struct OuterEmbedding {
    pub block_tree: BlockTree,
    /// `None` for trivial blocks (bridges have no faces).
    pub blocks: Vec<Option<BlockEmbedding>>,
}

/// Recognizes outerplanarity and returns per-block outer cycles.
///
/// Entry point for outer-cycle discovery: a Hamiltonian-cycle search with
/// degree-2 forced-edge propagation, run per 2-connected block. Swap in a
/// linear-time recognizer here if inputs outgrow desk scale.
pub fn outer_embedding(g: &Graph) -> Result<OuterEmbedding, NotOuterplanar> {
    let block_tree = block_cut_tree(g);
    let mut blocks = Vec::with_capacity(block_tree.blocks.len());
    for block in &block_tree.blocks {
        if block.is_trivial() {
            blocks.push(None);
            continue;
        }
        blocks.push(Some(embed_block(block)?));
    }
    Ok(OuterEmbedding { block_tree, blocks })
}

fn embed_block(block: &Block) -> Result<BlockEmbedding, NotOuterplanar> {
    let nb = block.vertices.len();
    // Outerplanar graphs have at most 2n-3 edges; reject dense blocks before
    // searching (this catches K4 immediately).
    if block.edges.len() > 2 * nb - 3 {
        return Err(NotOuterplanar { block: block.vertices.clone(), reason: "too many edges" });
    }
    let cycle = match hamiltonian_cycle(block) {
        Some(c) => c,
        None => {
            return Err(NotOuterplanar {
                block: block.vertices.clone(),
                reason: "no Hamiltonian cycle",
            })
        }
    };
    let mut pos = BTreeMap::new();
    for (i, &v) in cycle.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut chords: Vec<(Vertex, Vertex)> = Vec::new();
    for &(u, v) in &block.edges {
        let (pu, pv) = (pos[&u], pos[&v]);
        let on_cycle = pu.abs_diff(pv) == 1 || pu.abs_diff(pv) == nb - 1;
        if !on_cycle {
            chords.push((u, v));
        }
    }
    // Chords must be pairwise non-crossing in the cycle order.
    let spans: Vec<(usize, usize)> = chords
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (pos[&u], pos[&v]);
            (a.min(b), a.max(b))
        })
        .collect();
    for (i, &(a, b)) in spans.iter().enumerate() {
        for &(c, d) in &spans[i + 1..] {
            let c_inside = a < c && c < b;
            let d_inside = a < d && d < b;
            if c_inside != d_inside && c != a && c != b && d != a && d != b {
                return Err(NotOuterplanar {
                    block: block.vertices.clone(),
                    reason: "crossing chords",
                });
            }
        }
    }
    Ok(BlockEmbedding { outer_cycle: canonical_rotation(&cycle), chords })
}

/// Rotates/reflects a cyclic vertex sequence so it starts at the smallest
/// vertex and proceeds toward the smaller of its two neighbors.
fn canonical_rotation(cycle: &[Vertex]) -> Vec<Vertex> {
    let n = cycle.len();
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let succ = cycle[(start + 1) % n];
    let pred = cycle[(start + n - 1) % n];
    let mut out = Vec::with_capacity(n);
    if succ <= pred {
        for i in 0..n {
            out.push(cycle[(start + i) % n]);
        }
    } else {
        for i in 0..n {
            out.push(cycle[(start + n - i) % n]);
        }
    }
    out
}

/// Hamiltonian cycle of a 2-connected block, or `None`.
///
/// Every degree-2 vertex forces both its edges onto the cycle; forcing
/// propagates (a vertex with two forced edges excludes its others, and a
/// vertex left with two allowed edges forces them). The remaining choices
/// are settled by depth-first search.
fn hamiltonian_cycle(block: &Block) -> Option<Vec<Vertex>> {
    let nb = block.vertices.len();
    let local: BTreeMap<Vertex, usize> =
        block.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nb];
    for &(u, v) in &block.edges {
        let (lu, lv) = (local[&u], local[&v]);
        adj[lu].push(lv);
        adj[lv].push(lu);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    // edge id = index into block.edges (undirected)
    let edge_id: BTreeMap<(usize, usize), usize> = block
        .edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| {
            let (a, b) = (local[&u], local[&v]);
            ((a.min(b), a.max(b)), i)
        })
        .collect();
    let eid = |a: usize, b: usize| edge_id[&(a.min(b), a.max(b))];

    let m = block.edges.len();
    let mut allowed = vec![true; m];
    let mut forced = vec![false; m];
    let mut allowed_deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut forced_deg = vec![0usize; nb];

    let mut queue: Vec<usize> = (0..nb).filter(|&v| allowed_deg[v] == 2).collect();
    let mut qi = 0;
    while qi < queue.len() {
        let v = queue[qi];
        qi += 1;
        if allowed_deg[v] != 2 {
            return None;
        }
        let to_force: Vec<usize> = adj[v]
            .iter()
            .copied()
            .filter(|&w| allowed[eid(v, w)] && !forced[eid(v, w)])
            .collect();
        for w in to_force {
            let e = eid(v, w);
            if forced[e] {
                continue;
            }
            forced[e] = true;
            for x in [v, w] {
                forced_deg[x] += 1;
                if forced_deg[x] > 2 {
                    return None;
                }
                if forced_deg[x] == 2 {
                    // Exclude every other allowed edge at x.
                    let others: Vec<usize> = adj[x]
                        .iter()
                        .copied()
                        .filter(|&y| allowed[eid(x, y)] && !forced[eid(x, y)])
                        .collect();
                    for y in others {
                        let f = eid(x, y);
                        allowed[f] = false;
                        allowed_deg[x] -= 1;
                        allowed_deg[y] -= 1;
                        if allowed_deg[y] < 2 {
                            return None;
                        }
                        if allowed_deg[y] == 2 {
                            queue.push(y);
                        }
                    }
                }
            }
        }
    }

    // DFS over the remaining choices, forced edges first (mandatory).
    let mut path = vec![0usize];
    let mut visited = vec![false; nb];
    visited[0] = true;
    let mut used = vec![false; m];
    let forced_total = forced.iter().filter(|&&f| f).count();

    fn dfs(
        cur: usize,
        path: &mut Vec<usize>,
        visited: &mut Vec<bool>,
        used: &mut Vec<bool>,
        used_forced: usize,
        nb: usize,
        adj: &[Vec<usize>],
        allowed: &[bool],
        forced: &[bool],
        forced_total: usize,
        eid: &dyn Fn(usize, usize) -> usize,
    ) -> bool {
        if path.len() == nb {
            if !adj[cur].contains(&0) {
                return false;
            }
            let e = eid(cur, 0);
            return allowed[e] && used_forced + usize::from(forced[e]) == forced_total;
        }
        // A forced edge at cur that is still unused must be taken now.
        let pending: Vec<usize> = adj[cur]
            .iter()
            .copied()
            .filter(|&w| forced[eid(cur, w)] && !used[eid(cur, w)])
            .collect();
        let candidates: Vec<usize> = if !pending.is_empty() {
            pending
        } else {
            adj[cur]
                .iter()
                .copied()
                .filter(|&w| allowed[eid(cur, w)] && !used[eid(cur, w)])
                .collect()
        };
        for w in candidates {
            if visited[w] {
                continue;
            }
            let e = eid(cur, w);
            visited[w] = true;
            used[e] = true;
            path.push(w);
            if dfs(
                w,
                path,
                visited,
                used,
                used_forced + usize::from(forced[e]),
                nb,
                adj,
                allowed,
                forced,
                forced_total,
                eid,
            ) {
                return true;
            }
            path.pop();
            used[e] = false;
            visited[w] = false;
        }
        false
    }

    let eid_ref = |a: usize, b: usize| eid(a, b);
    if dfs(
        0,
        &mut path,
        &mut visited,
        &mut used,
        0,
        nb,
        &adj,
        &allowed,
        &forced,
        forced_total,
        &eid_ref,
    ) {
        Some(path.into_iter().map(|i| block.vertices[i]).collect())
    } else {
        None
    }
}

/// One internal face: the chordless cycle bounding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Index of the block this face lives in.
    pub block: usize,
    /// Boundary cycle in canonical rotation.
    pub boundary: Vec<Vertex>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.boundary.contains(&v)
    }
}

/// Faces of every block plus the face-adjacency forest.
#[derive(Debug, Clone)]
pub struct WeakDual {
    pub faces: Vec<Face>,
    /// Dual edges: two faces sharing a chord, with that chord.
    pub dual_edges: Vec<(usize, usize, (Vertex, Vertex))>,
    /// Per face, the adjacent faces (sorted).
    pub adjacency: Vec<Vec<usize>>,
    /// Per block (aligned with the embedding), its face indices. Trivial
    /// blocks get an empty list.
    pub block_faces: Vec<Vec<usize>>,
}

/// Enumerates internal faces by recursive chord splitting and builds the
/// weak dual.
pub fn weak_dual(emb: &OuterEmbedding) -> WeakDual {
    let mut faces = Vec::new();
    let mut dual_edges = Vec::new();
    let mut block_faces = vec![Vec::new(); emb.blocks.len()];

    for (bi, be) in emb.blocks.iter().enumerate() {
        let Some(be) = be else { continue };
        let cycle = &be.outer_cycle;
        let n = cycle.len();
        let pos: BTreeMap<Vertex, usize> =
            cycle.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        // Chord spans by position, grouped by left endpoint.
        let mut spans_at: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &be.chords {
            let (a, b) = (pos[&u].min(pos[&v]), pos[&u].max(pos[&v]));
            spans_at[a].push(b);
        }
        for list in &mut spans_at {
            list.sort_unstable();
        }

        // face_of(lo, hi): the face bounded below by positions lo..=hi and
        // closed by the edge/chord (hi, lo). Returns its face index.
        struct Ctx<'a> {
            spans_at: &'a [Vec<usize>],
            cycle: &'a [Vertex],
            block: usize,
            faces: &'a mut Vec<Face>,
            dual_edges: &'a mut Vec<(usize, usize, (Vertex, Vertex))>,
            block_faces: &'a mut Vec<usize>,
        }
        fn face_of(ctx: &mut Ctx, lo: usize, hi: usize) -> usize {
            let mut boundary_pos = Vec::new();
            let mut children = Vec::new();
            let mut cur = lo;
            boundary_pos.push(cur);
            while cur != hi {
                // Outermost chord from cur that stays within (lo, hi],
                // excluding the bounding chord itself.
                let jump = ctx.spans_at[cur]
                    .iter()
                    .copied()
                    .filter(|&t| t <= hi && !(cur == lo && t == hi))
                    .max();
                if let Some(t) = jump {
                    let child = face_of(ctx, cur, t);
                    children.push((child, (ctx.cycle[cur], ctx.cycle[t])));
                    cur = t;
                } else {
                    cur += 1;
                }
                if cur != lo {
                    boundary_pos.push(cur);
                }
            }
            let boundary: Vec<Vertex> =
                boundary_pos.iter().map(|&p| ctx.cycle[p]).collect();
            let idx = ctx.faces.len();
            ctx.faces.push(Face {
                block: ctx.block,
                boundary: canonical_rotation(&boundary),
            });
            ctx.block_faces.push(idx);
            for (child, (u, v)) in children {
                ctx.dual_edges.push((idx, child, (u.min(v), u.max(v))));
            }
            idx
        }

        let mut ctx = Ctx {
            spans_at: &spans_at,
            cycle,
            block: bi,
            faces: &mut faces,
            dual_edges: &mut dual_edges,
            block_faces: &mut block_faces[bi],
        };
        face_of(&mut ctx, 0, n - 1);
    }

    let mut adjacency = vec![Vec::new(); faces.len()];
    for &(a, b, _) in &dual_edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }
    WeakDual { faces, dual_edges, adjacency, block_faces }
}

/// Faces that are dual leaves with no cut vertex on their boundary, plus
/// faces whose boundary induces a pendant block.
pub fn pendant_faces(g: &Graph, wd: &WeakDual, bt: &BlockTree) -> Vec<usize> {
    let _ = g;
    let mut out = Vec::new();
    for (i, face) in wd.faces.iter().enumerate() {
        let leaf = wd.adjacency[i].len() <= 1;
        let no_cut = face.boundary.iter().all(|&v| !bt.is_cut_vertex(v));
        if leaf && no_cut {
            out.push(i);
            continue;
        }
        // Boundary induces a pendant block: the block is exactly this cycle
        // and carries at most one cut vertex.
        let block = &bt.blocks[face.block];
        let mut sorted = face.boundary.clone();
        sorted.sort_unstable();
        if block.vertices == sorted
            && block.edges.len() == face.boundary.len()
            && bt.block_cuts[face.block].len() <= 1
        {
            out.push(i);
        }
    }
    out
}
