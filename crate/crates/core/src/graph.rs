//! Immutable simple undirected graphs, hop distances and the subdivision
//! operation.
//!
//! Vertices are dense integers `0..n`. Graphs never change after
//! construction; the surgery helpers ([`Graph::without_vertices`],
//! [`Graph::with_edge`]) return new graphs plus correspondence maps so
//! recursive algorithms can transfer colorings back.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

/// Vertex identifier, always in `0..graph.vertex_count()`.
pub type Vertex = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    OutOfRangeVertex { vertex: Vertex, count: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("line {line}: {source}")]
    BadEdge {
        line: usize,
        #[source]
        source: GraphError,
    },
}

/// Immutable simple undirected graph.
///
/// No self-loops, no parallel edges; neighbor lists are sorted ascending so
/// every traversal order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph from an edge list, deduplicating repeated pairs.
    pub fn from_edge_list(
        n: u32,
        pairs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, v) in pairs {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRangeVertex { vertex: w, count: n });
                }
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n as usize];
        for &(u, v) in &set {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, edges: set.into_iter().collect() })
    }

    pub fn vertex_count(&self) -> u32 {
        self.adj.len() as u32
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        0..self.vertex_count()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True iff every vertex has degree at most 3.
    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    /// Breadth-first hop distances from `source`; unreachable vertices get `None`.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.adj.len()];
        dist[source as usize] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize].unwrap();
            for &w in self.neighbors(u) {
                if dist[w as usize].is_none() {
                    dist[w as usize] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Partition of the vertices into maximal connected sets, each sorted,
    /// ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.adj.len()];
        let mut parts = Vec::new();
        for s in self.vertices() {
            if seen[s as usize] {
                continue;
            }
            let mut part = vec![s];
            seen[s as usize] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        part.push(w);
                        queue.push_back(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.connected_components().len() == 1
    }

    /// Deletes a vertex set, renumbering the rest densely.
    ///
    /// Returns the new graph together with the old-to-new map (`None` for
    /// deleted vertices) and the new-to-old map.
    pub fn without_vertices(&self, delete: &[Vertex]) -> (Graph, Vec<Option<Vertex>>, Vec<Vertex>) {
        let del: BTreeSet<Vertex> = delete.iter().copied().collect();
        let mut old_to_new = vec![None; self.adj.len()];
        let mut new_to_old = Vec::new();
        for v in self.vertices() {
            if !del.contains(&v) {
                old_to_new[v as usize] = Some(new_to_old.len() as Vertex);
                new_to_old.push(v);
            }
        }
        let pairs = self.edges.iter().filter_map(|&(u, v)| {
            Some((old_to_new[u as usize]?, old_to_new[v as usize]?))
        });
        let graph = Graph::from_edge_list(new_to_old.len() as u32, pairs)
            .expect("deletion preserves validity");
        (graph, old_to_new, new_to_old)
    }

    /// Returns a copy with edge `uv` added (identifiers unchanged).
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        let mut pairs: Vec<(Vertex, Vertex)> = self.edges.clone();
        pairs.push((u, v));
        Graph::from_edge_list(self.vertex_count(), pairs)
    }

    /// Parses the text format: `n m` header, then `m` lines `u v`;
    /// `#`-prefixed comment lines are skipped.
    pub fn parse_text(input: &str) -> Result<Self, ParseError> {
        let mut lines = input
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
        let (line_no, header) = lines.next().ok_or(ParseError::Malformed {
            line: 0,
            message: "empty input".into(),
        })?;
        let mut parts = header.split_whitespace();
        let parse_num = |tok: Option<&str>, line: usize| -> Result<u64, ParseError> {
            tok.and_then(|t| t.parse().ok()).ok_or(ParseError::Malformed {
                line,
                message: format!("expected `n m` header, got `{header}`"),
            })
        };
        let n = parse_num(parts.next(), line_no + 1)?;
        let m = parse_num(parts.next(), line_no + 1)?;
        let mut pairs = Vec::new();
        for (line_no, line) in lines {
            let mut it = line.split_whitespace();
            let bad = || ParseError::Malformed {
                line: line_no + 1,
                message: format!("expected `u v`, got `{line}`"),
            };
            let u: Vertex = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            let v: Vertex = it.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
            if it.next().is_some() {
                return Err(bad());
            }
            pairs.push(((u, v), line_no + 1));
        }
        if pairs.len() != m as usize {
            return Err(ParseError::EdgeCountMismatch { declared: m as usize, found: pairs.len() });
        }
        let mut graph_pairs = Vec::with_capacity(pairs.len());
        for ((u, v), line) in pairs {
            // Range/self-loop validation happens in from_edge_list; re-run it
            // per edge so the error carries the offending line.
            Graph::from_edge_list(n as u32, [(u, v)])
                .map_err(|source| ParseError::BadEdge { line, source })?;
            graph_pairs.push((u, v));
        }
        Ok(Graph::from_edge_list(n as u32, graph_pairs).expect("validated above"))
    }

    /// Serializes to the text format accepted by [`Graph::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.vertex_count(), self.edge_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// All-pairs hop distances. Unreachable pairs answer `None`.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: u32,
    dist: Vec<u32>,
}

const UNREACHABLE: u32 = u32::MAX;

impl DistanceMatrix {
    pub fn dist(&self, u: Vertex, v: Vertex) -> Option<u32> {
        match self.dist[(u * self.n + v) as usize] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    /// Largest finite pairwise distance (0 for the empty graph).
    pub fn diameter(&self) -> u32 {
        self.dist.iter().filter(|&&d| d != UNREACHABLE).copied().max().unwrap_or(0)
    }

    /// Largest finite distance from `v`.
    pub fn eccentricity(&self, v: Vertex) -> u32 {
        (0..self.n)
            .filter_map(|u| self.dist(v, u))
            .max()
            .unwrap_or(0)
    }
}

/// Exact unweighted shortest-path distances via one BFS per vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    let n = g.vertex_count();
    let mut dist = vec![UNREACHABLE; (n as usize) * (n as usize)];
    for s in g.vertices() {
        for (v, d) in g.bfs_distances(s).into_iter().enumerate() {
            if let Some(d) = d {
                dist[(s as usize) * (n as usize) + v] = d;
            }
        }
    }
    DistanceMatrix { n, dist }
}

/// The subdivision `D(G)` plus the maps from original vertices and edges
/// into it.
///
/// Original vertices keep their identifiers; the midpoint of the `i`-th edge
/// (in `Graph::edges` order) is vertex `n + i`.
#[derive(Debug, Clone)]
pub struct SubdivisionMap {
    pub subdivided: Graph,
    /// Original vertex -> vertex of `D(G)`.
    pub vertex_map: Vec<Vertex>,
    /// Original edge (as in `Graph::edges`) -> its midpoint vertex.
    pub edge_midpoint: Vec<(Vertex, Vertex, Vertex)>,
}

/// Replaces each edge by a path of length two.
pub fn subdivide(g: &Graph) -> SubdivisionMap {
    let n = g.vertex_count();
    let mut pairs = Vec::with_capacity(2 * g.edge_count());
    let mut edge_midpoint = Vec::with_capacity(g.edge_count());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        let mid = n + i as u32;
        pairs.push((u, mid));
        pairs.push((mid, v));
        edge_midpoint.push((u, v, mid));
    }
    let subdivided = Graph::from_edge_list(n + g.edge_count() as u32, pairs)
        .expect("subdivision of a valid graph is valid");
    SubdivisionMap {
        subdivided,
        vertex_map: (0..n).collect(),
        edge_midpoint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn triangle_from_edge_list() {
        let g = Graph::from_edge_list(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
    }

    #[test]
    fn k4_minus_edge() {
        let g = Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 2);
        assert!(!g.has_edge(1, 3));
    }

    #[test]
    fn duplicate_pair_is_deduplicated() {
        let g = Graph::from_edge_list(2, [(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Graph::from_edge_list(3, [(0, 3)]),
            Err(GraphError::OutOfRangeVertex { vertex: 3, count: 3 })
        );
        assert_eq!(Graph::from_edge_list(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn c4_opposite_distance() {
        let d = all_pairs_distances(&cycle(4));
        assert_eq!(d.dist(0, 2), Some(2));
        assert_eq!(d.dist(1, 3), Some(2));
        assert_eq!(d.dist(0, 1), Some(1));
    }

    #[test]
    fn disconnected_pairs_are_unreachable() {
        let g = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(d.dist(0, 3), None);
        assert_eq!(d.dist(0, 1), Some(1));
    }

    #[test]
    fn subcubic_examples() {
        let k4 = Graph::from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(k4.is_subcubic());
        let k5 = Graph::from_edge_list(
            5,
            (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))),
        )
        .unwrap();
        assert!(!k5.is_subcubic());
    }

    #[test]
    fn subdivision_of_triangle_is_c6() {
        let sub = subdivide(&cycle(3));
        assert_eq!(sub.subdivided.vertex_count(), 6);
        assert_eq!(sub.subdivided.edge_count(), 6);
        assert!(sub.subdivided.vertices().all(|v| sub.subdivided.degree(v) == 2));
        assert!(sub.subdivided.is_connected());
    }

    #[test]
    fn subdivision_of_k2_is_path() {
        let sub = subdivide(&Graph::from_edge_list(2, [(0, 1)]).unwrap());
        assert_eq!(sub.subdivided.vertex_count(), 3);
        assert_eq!(sub.subdivided.edge_count(), 2);
        let mid = sub.edge_midpoint[0].2;
        assert_eq!(sub.subdivided.degree(mid), 2);
    }

    #[test]
    fn components_examples() {
        let two_triangles =
            Graph::from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let parts = two_triangles.connected_components();
        assert_eq!(parts, vec![vec![0, 1, 2], vec![3, 4, 5]]);

        let empty = Graph::from_edge_list(3, []).unwrap();
        assert_eq!(empty.connected_components().len(), 3);
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let parsed = Graph::parse_text(&g.to_text()).unwrap();
        assert_eq!(parsed, g);

        let with_comments = "# a comment\n3 2\n0 1\n# another\n1 2\n";
        let parsed = Graph::parse_text(with_comments).unwrap();
        assert_eq!(parsed.edge_count(), 2);
    }

    #[test]
    fn text_parse_errors() {
        assert!(matches!(
            Graph::parse_text("3 2\n0 1\n"),
            Err(ParseError::EdgeCountMismatch { declared: 2, found: 1 })
        ));
        assert!(matches!(
            Graph::parse_text("2 1\n0 5\n"),
            Err(ParseError::BadEdge { line: 2, .. })
        ));
        assert!(Graph::parse_text("nonsense").is_err());
    }

    #[test]
    fn surgery_maps_are_consistent() {
        let g = cycle(5);
        let (h, old_to_new, new_to_old) = g.without_vertices(&[2]);
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 3);
        for (new, &old) in new_to_old.iter().enumerate() {
            assert_eq!(old_to_new[old as usize], Some(new as Vertex));
        }
        let h2 = g.with_edge(0, 2).unwrap();
        assert_eq!(h2.edge_count(), 6);
        assert!(h2.has_edge(0, 2));
    }
}
