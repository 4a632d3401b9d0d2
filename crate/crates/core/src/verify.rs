//! Packing-coloring validation and the feasibility conditions for
//! (1,1,2,4)-colorings.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::structure::block_cut_tree;

/// Non-decreasing sequence of class distance thresholds `(s_1, ..., s_k)`.
///
/// A packing coloring for this sequence partitions the vertices into classes
/// `1..=k` where two distinct vertices of class `i` must be at distance at
/// least `s_i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorSequence(Vec<u32>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("sequence must be non-empty")]
    Empty,
    #[error("thresholds must be positive")]
    NonPositive,
    #[error("sequence must be non-decreasing, got {0} after {1}")]
    Decreasing(u32, u32),
}

impl ColorSequence {
    pub fn new(s: impl Into<Vec<u32>>) -> Result<Self, SequenceError> {
        let s = s.into();
        if s.is_empty() {
            return Err(SequenceError::Empty);
        }
        if s.iter().any(|&x| x == 0) {
            return Err(SequenceError::NonPositive);
        }
        for w in s.windows(2) {
            if w[1] < w[0] {
                return Err(SequenceError::Decreasing(w[1], w[0]));
            }
        }
        Ok(ColorSequence(s))
    }

    /// The standard sequence `(1, 2, ..., k)` of packing k-colorings.
    pub fn standard(k: u32) -> Self {
        ColorSequence((1..=k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Threshold of 1-based class `i`.
    pub fn threshold(&self, class: u32) -> u32 {
        self.0[(class - 1) as usize]
    }

    pub fn thresholds(&self) -> &[u32] {
        &self.0
    }

    pub fn class_count(&self) -> u32 {
        self.0.len() as u32
    }
}

impl std::fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Assignment of vertices to 1-based class indices; uncolored vertices are
/// explicit (`None`), never class 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    sequence: ColorSequence,
    classes: Vec<Option<u32>>,
}

impl Coloring {
    pub fn empty(sequence: ColorSequence, n: u32) -> Self {
        Coloring { sequence, classes: vec![None; n as usize] }
    }

    pub fn from_classes(
        sequence: ColorSequence,
        classes: Vec<Option<u32>>,
    ) -> Result<Self, VerifyError> {
        let k = sequence.class_count();
        for (v, c) in classes.iter().enumerate() {
            if let Some(c) = *c {
                if c == 0 || c > k {
                    return Err(VerifyError::ClassOutOfRange { vertex: v as Vertex, class: c, k });
                }
            }
        }
        Ok(Coloring { sequence, classes })
    }

    /// Total coloring from one class per vertex.
    pub fn total(sequence: ColorSequence, classes: Vec<u32>) -> Result<Self, VerifyError> {
        Self::from_classes(sequence, classes.into_iter().map(Some).collect())
    }

    pub fn sequence(&self) -> &ColorSequence {
        &self.sequence
    }

    pub fn vertex_count(&self) -> u32 {
        self.classes.len() as u32
    }

    pub fn class_of(&self, v: Vertex) -> Option<u32> {
        self.classes[v as usize]
    }

    pub fn set(&mut self, v: Vertex, class: u32) {
        debug_assert!(class >= 1 && class <= self.sequence.class_count());
        self.classes[v as usize] = Some(class);
    }

    pub fn clear(&mut self, v: Vertex) {
        self.classes[v as usize] = None;
    }

    pub fn is_total(&self) -> bool {
        self.classes.iter().all(Option::is_some)
    }

    pub fn colored_vertices(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.classes
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v as Vertex, c)))
    }

    /// Vertices of the given class, ascending.
    pub fn class_members(&self, class: u32) -> Vec<Vertex> {
        self.colored_vertices().filter(|&(_, c)| c == class).map(|(v, _)| v).collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("vertex {vertex} has class {class}, outside 1..={k}")]
    ClassOutOfRange { vertex: Vertex, class: u32, k: u32 },
    #[error("coloring is partial (vertex {0} uncolored) but a total coloring is required")]
    PartialColoring(Vertex),
    #[error("coloring covers {coloring} vertices, graph has {graph}")]
    SizeMismatch { coloring: u32, graph: u32 },
    #[error("expected sequence (1,1,2,4), got {0}")]
    WrongSequence(ColorSequence),
}

/// A reported constraint violation, self-describing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Two same-class vertices closer than the class threshold allows.
    Packing { class: u32, u: Vertex, v: Vertex, distance: u32, required: u32 },
    /// Condition (A): two vertices of the s=4 class in one block.
    ConditionA { u: Vertex, v: Vertex },
    /// Condition (B): a degree-<=2 vertex of the s=2 class with an s=4
    /// vertex within distance two.
    ConditionB { vertex: Vertex, four_vertex: Vertex, distance: u32 },
}

fn check_shape(g: &Graph, c: &Coloring, require_total: bool) -> Result<(), VerifyError> {
    if c.vertex_count() != g.vertex_count() {
        return Err(VerifyError::SizeMismatch {
            coloring: c.vertex_count(),
            graph: g.vertex_count(),
        });
    }
    if require_total {
        for v in g.vertices() {
            if c.class_of(v).is_none() {
                return Err(VerifyError::PartialColoring(v));
            }
        }
    }
    Ok(())
}

/// Checks the packing condition for every same-class pair; the coloring must
/// be total. Violations come back sorted by (class, u, v).
pub fn verify_packing(g: &Graph, c: &Coloring) -> Result<Vec<Violation>, VerifyError> {
    check_shape(g, c, true)?;
    Ok(packing_violations(g, c))
}

/// Like [`verify_packing`] but only colored pairs are checked.
pub fn verify_packing_partial(g: &Graph, c: &Coloring) -> Result<Vec<Violation>, VerifyError> {
    check_shape(g, c, false)?;
    Ok(packing_violations(g, c))
}

/// Truncated breadth-first search from each colored vertex out to its class
/// radius; the full distance matrix is never materialized.
fn packing_violations(g: &Graph, c: &Coloring) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut dist: Vec<u32> = vec![u32::MAX; g.vertex_count() as usize];
    let mut touched: Vec<Vertex> = Vec::new();
    for (v, class) in c.colored_vertices() {
        let radius = c.sequence().threshold(class);
        dist[v as usize] = 0;
        touched.push(v);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if du == radius {
                continue;
            }
            for &w in g.neighbors(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = du + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }
        for &w in &touched {
            // Report each pair once, from its smaller endpoint.
            if w > v && c.class_of(w) == Some(class) {
                out.push(Violation::Packing {
                    class,
                    u: v,
                    v: w,
                    distance: dist[w as usize],
                    required: radius + 1,
                });
            }
        }
        for w in touched.drain(..) {
            dist[w as usize] = u32::MAX;
        }
    }
    out.sort();
    out
}

/// Class indices under the sequence (1,1,2,4): classes 1 and 2 are the two
/// s=1 classes, class 3 is the s=2 class ("color 2"), class 4 the s=4 class
/// ("color 4").
pub const S1124: [u32; 4] = [1, 1, 2, 4];
const CLASS_TWO: u32 = 3;
const CLASS_FOUR: u32 = 4;

/// Validates a feasible (1,1,2,4)-coloring: the packing condition plus
/// (A) the s=4 class is used at most once within each block, and
/// (B) no s=4 vertex lies within distance two of a degree-<=2 vertex of the
/// s=2 class.
pub fn verify_feasible_1124(g: &Graph, c: &Coloring) -> Result<Vec<Violation>, VerifyError> {
    if c.sequence().thresholds() != S1124 {
        return Err(VerifyError::WrongSequence(c.sequence().clone()));
    }
    check_shape(g, c, true)?;
    let mut out = packing_violations(g, c);

    let bt = block_cut_tree(g);
    for block in &bt.blocks {
        let fours: Vec<Vertex> = block
            .vertices
            .iter()
            .copied()
            .filter(|&v| c.class_of(v) == Some(CLASS_FOUR))
            .collect();
        for (i, &u) in fours.iter().enumerate() {
            for &v in &fours[i + 1..] {
                out.push(Violation::ConditionA { u, v });
            }
        }
    }

    for v in g.vertices() {
        if g.degree(v) > 2 || c.class_of(v) != Some(CLASS_TWO) {
            continue;
        }
        let dist = bounded_bfs(g, v, 2);
        for (w, d) in dist {
            if w != v && c.class_of(w) == Some(CLASS_FOUR) {
                out.push(Violation::ConditionB { vertex: v, four_vertex: w, distance: d });
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn bounded_bfs(g: &Graph, source: Vertex, radius: u32) -> Vec<(Vertex, u32)> {
    let mut dist: Vec<(Vertex, u32)> = vec![(source, 0)];
    let mut seen = vec![false; g.vertex_count() as usize];
    seen[source as usize] = true;
    let mut queue = VecDeque::from([(source, 0u32)]);
    while let Some((u, du)) = queue.pop_front() {
        if du == radius {
            continue;
        }
        for &w in g.neighbors(u) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                dist.push((w, du + 1));
                queue.push_back((w, du + 1));
            }
        }
    }
    dist
}
