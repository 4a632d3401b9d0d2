//! Packing colorings of subcubic outerplanar graphs.
//!
//! A packing `(s_1, ..., s_k)`-coloring partitions the vertices into classes
//! where two distinct vertices of class `i` are at distance at least
//! `s_i + 1`. This crate provides:
//!
//! - core graph types, hop distances and the subdivision operation
//!   ([`graph`]),
//! - block-cut decomposition, outerplanarity recognition and weak dual face
//!   trees ([`structure`]),
//! - a packing-coloring verifier plus the feasibility conditions for
//!   (1,1,2,4)-colorings ([`verify`]),
//! - exact decision solvers: backtracking with forward checking, and a
//!   distance-profile dynamic program over the block/face tree of
//!   outerplanar graphs ([`solver`]),
//! - constructive colorers: (1,1,2) for 2-connected subcubic outerplanar
//!   inputs, feasible (1,1,2,4) for all subcubic outerplanar inputs, the
//!   subdivision lift and sequence remapping ([`construct`]),
//! - constructors for the counterexample gadgets with their paper labels,
//!   and seeded random generators for property testing ([`gadgets`]).

pub mod construct;
pub mod gadgets;
pub mod graph;
pub mod solver;
pub mod structure;
pub mod verify;

pub use graph::{all_pairs_distances, subdivide, DistanceMatrix, Graph, SubdivisionMap, Vertex};
pub use structure::{block_cut_tree, outer_embedding, pendant_faces, weak_dual};
pub use structure::{Block, BlockTree, Face, NotOuterplanar, OuterEmbedding, WeakDual};
pub use verify::{verify_feasible_1124, verify_packing, verify_packing_partial};
pub use verify::{ColorSequence, Coloring, Violation};
