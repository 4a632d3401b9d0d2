//! Exact decision procedures for packing S-colorability.
//!
//! Two engines share one contract: [`decide_backtracking`] works on any
//! graph; [`decide_dp_outerplanar`] is a distance-profile dynamic program
//! over the block/face tree, exact for outerplanar inputs and fast enough
//! for the 276-vertex sharpness construction. SAT answers always carry a
//! witness coloring, which is re-verified before it is returned.

mod backtrack;
mod dp;

use std::time::Duration;

use thiserror::Error;

use crate::graph::Vertex;
use crate::verify::{ColorSequence, Coloring};

pub use backtrack::{decide_backtracking, packing_chromatic_number, PcnResult};
pub use dp::{decide_dp_outerplanar, decide_dp_outerplanar_with_budget};

/// Pre-assigned constraint on one vertex, mechanizing "suppose x has color
/// c" style case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pin {
    /// The vertex must take exactly this class.
    Force { vertex: Vertex, class: u32 },
    /// The vertex may take none of these classes.
    Forbid { vertex: Vertex, classes: Vec<u32> },
}

impl Pin {
    pub fn vertex(&self) -> Vertex {
        match *self {
            Pin::Force { vertex, .. } | Pin::Forbid { vertex, .. } => vertex,
        }
    }
}

/// Outcome of an exact decision run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// Satisfiable, with a verified witness.
    Sat(Coloring),
    /// Exhaustively refuted.
    Unsat,
    /// Budget exhausted before a decision was reached.
    Timeout(Duration),
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveResult::Unsat)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("vertex {0} is pinned more than once")]
    DuplicatePin(Vertex),
    #[error("pin references vertex {vertex} outside 0..{count}")]
    PinOutOfRange { vertex: Vertex, count: u32 },
    #[error("pin on vertex {vertex} references class {class}, outside 1..={k}")]
    PinClassOutOfRange { vertex: Vertex, class: u32, k: u32 },
    #[error("sequences with more than 32 classes are not supported (got {0})")]
    TooManyClasses(u32),
    #[error(transparent)]
    NotOuterplanar(#[from] crate::structure::NotOuterplanar),
    #[error("profile store exceeded the memory budget of {budget} entries")]
    MemoryBudgetExceeded { budget: usize },
}

/// Per-vertex class domains derived from the sequence and pins.
fn pin_domains(
    n: u32,
    sequence: &ColorSequence,
    pins: &[Pin],
) -> Result<Vec<u32>, SolverError> {
    let k = sequence.class_count();
    if k > 32 {
        return Err(SolverError::TooManyClasses(k));
    }
    let full: u32 = if k == 32 { u32::MAX } else { (1 << k) - 1 };
    let mut domains = vec![full; n as usize];
    let mut pinned = vec![false; n as usize];
    for pin in pins {
        let v = pin.vertex();
        if v >= n {
            return Err(SolverError::PinOutOfRange { vertex: v, count: n });
        }
        if std::mem::replace(&mut pinned[v as usize], true) {
            return Err(SolverError::DuplicatePin(v));
        }
        match pin {
            Pin::Force { class, .. } => {
                if *class == 0 || *class > k {
                    return Err(SolverError::PinClassOutOfRange { vertex: v, class: *class, k });
                }
                domains[v as usize] = 1 << (class - 1);
            }
            Pin::Forbid { classes, .. } => {
                for class in classes {
                    if *class == 0 || *class > k {
                        return Err(SolverError::PinClassOutOfRange {
                            vertex: v,
                            class: *class,
                            k,
                        });
                    }
                    domains[v as usize] &= !(1 << (class - 1));
                }
            }
        }
    }
    Ok(domains)
}

/// Classes barred from symmetry breaking because a pin mentions their run.
fn pin_touched_classes(sequence: &ColorSequence, pins: &[Pin]) -> Vec<bool> {
    let k = sequence.class_count() as usize;
    let mut touched = vec![false; k + 1];
    for pin in pins {
        match pin {
            Pin::Force { class, .. } => touched[*class as usize] = true,
            Pin::Forbid { classes, .. } => {
                for &c in classes {
                    touched[c as usize] = true;
                }
            }
        }
    }
    // Spread within runs of equal thresholds: breaking is per run.
    let s = sequence.thresholds();
    for i in 1..k {
        if s[i] == s[i - 1] && (touched[i] || touched[i + 1]) {
            touched[i] = true;
            touched[i + 1] = true;
        }
    }
    for i in (1..k).rev() {
        if s[i] == s[i - 1] && (touched[i] || touched[i + 1]) {
            touched[i] = true;
            touched[i + 1] = true;
        }
    }
    touched
}
