//! Backtracking decision engine with forward checking.
//!
//! Variable order: descending degree, ties by identifier. Value order:
//! class indices ascending, so the loosest classes are tried first. After
//! each assignment a truncated breadth-first sweep removes the class from
//! every vertex within its threshold radius; an emptied domain backtracks
//! immediately. Interchangeable classes (equal thresholds) are broken by
//! forbidding a class until its predecessor has been used, except in runs a
//! pin touches.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::graph::{Graph, Vertex};
use crate::verify::{verify_packing, ColorSequence, Coloring};

use super::{pin_domains, pin_touched_classes, Pin, SolveResult, SolverError};

const TIME_CHECK_MASK: u64 = 0xFFF;

struct Search<'a> {
    g: &'a Graph,
    sequence: &'a ColorSequence,
    order: Vec<Vertex>,
    domains: Vec<u32>,
    assigned: Vec<Option<u32>>,
    used_count: Vec<u32>,
    sym_guard: Vec<bool>,
    trail: Vec<(Vertex, u32)>,
    deadline: Option<Instant>,
    nodes: u64,
    timed_out: bool,
}

impl<'a> Search<'a> {
    /// Removes `class` from every unassigned vertex within distance
    /// `threshold` of `v`; returns false (after recording removals) if a
    /// domain empties.
    fn propagate(&mut self, v: Vertex, class: u32) -> bool {
        let radius = self.sequence.threshold(class);
        let bit = 1 << (class - 1);
        let mut dist = vec![u32::MAX; self.g.vertex_count() as usize];
        dist[v as usize] = 0;
        let mut queue = VecDeque::from([v]);
        let mut ok = true;
        'bfs: while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if du == radius {
                continue;
            }
            for &w in self.g.neighbors(u) {
                if dist[w as usize] != u32::MAX {
                    continue;
                }
                dist[w as usize] = du + 1;
                queue.push_back(w);
                if self.assigned[w as usize].is_none() && self.domains[w as usize] & bit != 0 {
                    self.domains[w as usize] &= !bit;
                    self.trail.push((w, bit));
                    if self.domains[w as usize] == 0 {
                        ok = false;
                        break 'bfs;
                    }
                }
            }
        }
        ok
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (w, bit) = self.trail.pop().unwrap();
            self.domains[w as usize] |= bit;
        }
    }

    fn solve(&mut self, depth: usize) -> bool {
        if self.timed_out {
            return false;
        }
        self.nodes += 1;
        if self.nodes & TIME_CHECK_MASK == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.timed_out = true;
                    return false;
                }
            }
        }
        let Some(&v) = self.order.get(depth) else { return true };
        let domain = self.domains[v as usize];
        for class in 1..=self.sequence.class_count() {
            if domain & (1 << (class - 1)) == 0 {
                continue;
            }
            // Class c may not appear before class c-1 when both have the
            // same threshold (and no pin touches the run).
            if self.sym_guard[class as usize] && self.used_count[class as usize - 1] == 0 {
                continue;
            }
            let mark = self.trail.len();
            self.assigned[v as usize] = Some(class);
            self.used_count[class as usize] += 1;
            if self.propagate(v, class) && self.solve(depth + 1) {
                return true;
            }
            self.undo_to(mark);
            self.used_count[class as usize] -= 1;
            self.assigned[v as usize] = None;
            if self.timed_out {
                return false;
            }
        }
        false
    }
}

/// Exact decision by backtracking search. SAT returns a verified witness
/// respecting all pins; UNSAT is exhaustive.
pub fn decide_backtracking(
    g: &Graph,
    sequence: &ColorSequence,
    pins: &[Pin],
    budget: Option<Duration>,
) -> Result<SolveResult, SolverError> {
    let started = Instant::now();
    let domains = pin_domains(g.vertex_count(), sequence, pins)?;
    let touched = pin_touched_classes(sequence, pins);
    let s = sequence.thresholds();
    let sym_guard: Vec<bool> = (0..=sequence.class_count() as usize)
        .map(|c| c >= 2 && s[c - 1] == s[c - 2] && !touched[c])
        .collect();

    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut search = Search {
        g,
        sequence,
        order,
        domains,
        assigned: vec![None; g.vertex_count() as usize],
        used_count: vec![0; sequence.class_count() as usize + 1],
        sym_guard,
        trail: Vec::new(),
        deadline: budget.map(|b| started + b),
        nodes: 0,
        timed_out: false,
    };

    if search.solve(0) {
        let classes: Vec<u32> = search.assigned.iter().map(|c| c.unwrap()).collect();
        let coloring = Coloring::total(sequence.clone(), classes).expect("classes in range");
        assert!(
            verify_packing(g, &coloring).map_or(false, |v| v.is_empty()),
            "witness failed verification"
        );
        assert!(respects_pins(&coloring, pins), "witness violates pins");
        Ok(SolveResult::Sat(coloring))
    } else if search.timed_out {
        Ok(SolveResult::Timeout(budget.unwrap_or_default()))
    } else {
        Ok(SolveResult::Unsat)
    }
}

pub(super) fn respects_pins(c: &Coloring, pins: &[Pin]) -> bool {
    pins.iter().all(|pin| match pin {
        Pin::Force { vertex, class } => c.class_of(*vertex) == Some(*class),
        Pin::Forbid { vertex, classes } => {
            c.class_of(*vertex).map_or(false, |got| !classes.contains(&got))
        }
    })
}

/// Result of a packing chromatic number query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PcnResult {
    /// Smallest k admitting a packing (1,2,...,k)-coloring, with a witness.
    Found(u32, Coloring),
    /// No k up to the requested maximum works.
    Unknown,
    /// Budget exhausted first.
    Timeout(Duration),
}

/// Smallest `k <= k_max` such that the graph has a packing
/// (1,2,...,k)-coloring; the budget spans the whole sweep.
pub fn packing_chromatic_number(
    g: &Graph,
    k_max: u32,
    budget: Option<Duration>,
) -> Result<PcnResult, SolverError> {
    let started = Instant::now();
    for k in 1..=k_max {
        let remaining = match budget {
            None => None,
            Some(b) => match b.checked_sub(started.elapsed()) {
                Some(r) if !r.is_zero() => Some(r),
                _ => return Ok(PcnResult::Timeout(b)),
            },
        };
        match decide_backtracking(g, &ColorSequence::standard(k), &[], remaining)? {
            SolveResult::Sat(c) => return Ok(PcnResult::Found(k, c)),
            SolveResult::Unsat => continue,
            SolveResult::Timeout(_) => return Ok(PcnResult::Timeout(budget.unwrap_or_default())),
        }
    }
    Ok(PcnResult::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets;
    use crate::verify::verify_packing_partial;

    fn seq(s: &[u32]) -> ColorSequence {
        ColorSequence::new(s.to_vec()).unwrap()
    }

    fn cycle(n: u32) -> Graph {
        Graph::from_edge_list(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn ex13_sharpness() {
        let g = gadgets::example_c4_two_ears().graph;
        assert!(decide_backtracking(&g, &seq(&[1, 1, 3]), &[], None).unwrap().is_unsat());
        assert!(decide_backtracking(&g, &seq(&[1, 2, 2]), &[], None).unwrap().is_unsat());
        assert!(decide_backtracking(&g, &seq(&[1, 1, 2]), &[], None).unwrap().is_sat());
    }

    #[test]
    fn pinning_z6_to_the_s5_class_is_unsat() {
        let g = gadgets::gadget_g1(true);
        let pin = Pin::Force { vertex: g.v("z6"), class: 4 };
        let r = decide_backtracking(&g.graph, &seq(&[1, 1, 2, 5]), &[pin], None).unwrap();
        assert!(r.is_unsat());
        // Without the pin the gadget is colorable.
        let r = decide_backtracking(&g.graph, &seq(&[1, 1, 2, 5]), &[], None).unwrap();
        assert!(r.is_sat());
    }

    #[test]
    fn petersen_is_not_1122_colorable() {
        let g = gadgets::petersen().graph;
        assert!(decide_backtracking(&g, &seq(&[1, 1, 2, 2]), &[], None).unwrap().is_unsat());
    }

    #[test]
    fn pcn_examples() {
        let single = Graph::from_edge_list(1, []).unwrap();
        assert!(matches!(
            packing_chromatic_number(&single, 4, None).unwrap(),
            PcnResult::Found(1, _)
        ));
        assert!(matches!(
            packing_chromatic_number(&cycle(3), 4, None).unwrap(),
            PcnResult::Found(3, _)
        ));
        assert!(matches!(
            packing_chromatic_number(&cycle(4), 4, None).unwrap(),
            PcnResult::Found(3, _)
        ));
        assert!(matches!(
            packing_chromatic_number(&cycle(4), 2, None).unwrap(),
            PcnResult::Unknown
        ));
    }

    #[test]
    fn forbid_pins_are_respected() {
        let g = cycle(5);
        let pins =
            vec![Pin::Forbid { vertex: 0, classes: vec![1, 2] }, Pin::Force { vertex: 1, class: 1 }];
        match decide_backtracking(&g, &seq(&[1, 1, 2]), &pins, None).unwrap() {
            SolveResult::Sat(c) => {
                assert_eq!(c.class_of(0), Some(3));
                assert_eq!(c.class_of(1), Some(1));
                assert!(verify_packing_partial(&g, &c).unwrap().is_empty());
            }
            other => panic!("expected SAT, got {other:?}"),
        }
    }

    #[test]
    fn pin_validation() {
        let g = cycle(3);
        let dup = vec![
            Pin::Force { vertex: 0, class: 1 },
            Pin::Forbid { vertex: 0, classes: vec![2] },
        ];
        assert!(matches!(
            decide_backtracking(&g, &seq(&[1, 1, 2]), &dup, None),
            Err(SolverError::DuplicatePin(0))
        ));
        let out = vec![Pin::Force { vertex: 9, class: 1 }];
        assert!(matches!(
            decide_backtracking(&g, &seq(&[1, 1, 2]), &out, None),
            Err(SolverError::PinOutOfRange { vertex: 9, .. })
        ));
        let bad = vec![Pin::Force { vertex: 0, class: 4 }];
        assert!(matches!(
            decide_backtracking(&g, &seq(&[1, 1, 2]), &bad, None),
            Err(SolverError::PinClassOutOfRange { class: 4, .. })
        ));
    }

    #[test]
    fn zero_budget_times_out_on_nontrivial_input() {
        let g = gadgets::gadget_g1(true).graph;
        let r = decide_backtracking(&g, &seq(&[1, 1, 2, 5]), &[], Some(Duration::ZERO)).unwrap();
        assert!(matches!(r, SolveResult::Timeout(_)));
    }
}
