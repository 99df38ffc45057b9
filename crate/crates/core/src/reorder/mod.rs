//! Reordering a PQ-tree so that its frontier extends a partial order.
//!
//! [`reorder_general`] accepts any relation given as arcs. For relations
//! that come from intervals, [`reorder_interval`] compares whole subtrees
//! through two handles per node and runs in time linear in the number of
//! elements.

mod general;
mod interval;

use thiserror::Error;

use crate::rational::Coord;

pub use general::reorder_general;
pub use interval::{compute_handles, reorder_interval};

/// No reordering of the tree has a frontier extending the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no equivalent ordering extends the relation")]
pub struct Incompatible;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("arc {0} -> {0} is a self-comparison")]
    SelfArc(usize),
    #[error("element {id} out of range ({n} elements)")]
    OutOfRange { id: usize, n: usize },
    #[error("element {0} has a missing or repeated endpoint")]
    BadEndpoints(usize),
}

/// An arbitrary relation on `0..n` given by arcs `a -> b` meaning `a ⊴ b`.
/// It need not be transitive nor acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphOrder {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl DigraphOrder {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Result<Self, OrderError> {
        for &(a, b) in &arcs {
            for id in [a, b] {
                if id >= n {
                    return Err(OrderError::OutOfRange { id, n });
                }
            }
            if a == b {
                return Err(OrderError::SelfArc(a));
            }
        }
        Ok(DigraphOrder { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Whether `order` (a permutation of `0..n`) places every arc forward.
    pub fn is_extended_by(&self, order: &[usize]) -> bool {
        let mut pos = vec![0; self.n];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        self.arcs.iter().all(|&(a, b)| pos[a] < pos[b])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    R,
    L,
}

/// The endpoints of a family of (possibly empty) intervals in left-to-right
/// order `⋖`. At a shared coordinate right endpoints come first, so
/// `a ⊴ b` iff `r_a ⋖ ℓ_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedEndpointSequence {
    events: Vec<(usize, Side)>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl SortedEndpointSequence {
    /// Takes the events already in `⋖` order.
    pub fn from_events(n: usize, events: Vec<(usize, Side)>) -> Result<Self, OrderError> {
        let mut left = vec![usize::MAX; n];
        let mut right = vec![usize::MAX; n];
        for (i, &(e, side)) in events.iter().enumerate() {
            if e >= n {
                return Err(OrderError::OutOfRange { id: e, n });
            }
            let slot = match side {
                Side::L => &mut left[e],
                Side::R => &mut right[e],
            };
            if *slot != usize::MAX {
                return Err(OrderError::BadEndpoints(e));
            }
            *slot = i;
        }
        for e in 0..n {
            if left[e] == usize::MAX || right[e] == usize::MAX {
                return Err(OrderError::BadEndpoints(e));
            }
        }
        Ok(SortedEndpointSequence {
            events,
            left,
            right,
        })
    }

    /// Sorts the endpoints of intervals `(lo, hi)` with `lo <= hi`. An
    /// interval with `lo == hi` is empty: its right event precedes its left.
    pub fn from_intervals(intervals: &[(Coord, Coord)]) -> Self {
        let mut keyed: Vec<(&Coord, Side, usize)> = Vec::with_capacity(2 * intervals.len());
        for (e, (lo, hi)) in intervals.iter().enumerate() {
            assert!(lo <= hi, "interval {e} has lo > hi");
            keyed.push((lo, Side::L, e));
            keyed.push((hi, Side::R, e));
        }
        keyed.sort();
        let events = keyed.into_iter().map(|(_, s, e)| (e, s)).collect();
        Self::from_events(intervals.len(), events).expect("two endpoints per interval")
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn events(&self) -> &[(usize, Side)] {
        &self.events
    }

    pub fn left_pos(&self, e: usize) -> usize {
        self.left[e]
    }

    pub fn right_pos(&self, e: usize) -> usize {
        self.right[e]
    }

    /// `a ⊴ b` for `a != b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.right[a] < self.left[b]
    }

    /// The relation as explicit arcs (quadratic; intended for checking).
    pub fn induced_order(&self) -> DigraphOrder {
        let n = self.len();
        let mut arcs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.precedes(a, b) {
                    arcs.push((a, b));
                }
            }
        }
        DigraphOrder { n, arcs }
    }
}

/// Positions in the endpoint sequence of the lower handle
/// `LH = min r` and the upper handle `UH = max ℓ` of a set of intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Handles {
    pub lower: usize,
    pub upper: usize,
}

/// `I1 ⊴ I2` for two disjoint interval sets. Comparing a set with itself is
/// not meaningful and must not be asked.
pub fn set_precedes(h1: Handles, h2: Handles) -> bool {
    h1.lower < h2.upper
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HandleKind {
    Lower,
    Upper,
}

/// Every element of the restricted ordering has a predecessor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("the restricted ordering has no minimal element")]
pub struct NoMinimal;

/// Minimal elements of the relation encoded by a restricted handle ordering
/// (each element contributing one lower and one upper handle, listed left to
/// right). An element is minimal iff its upper handle precedes every lower
/// handle but its own. Returned in increasing id order.
pub fn minimal_elements(restricted: &[(usize, HandleKind)]) -> Result<Vec<usize>, NoMinimal> {
    let mut lowers = restricted
        .iter()
        .enumerate()
        .filter(|(_, h)| h.1 == HandleKind::Lower);
    let first = lowers.next();
    let second = lowers.next();
    let mut out: Vec<usize> = restricted
        .iter()
        .enumerate()
        .filter(|&(i, &(e, kind))| {
            kind == HandleKind::Upper
                && match (first, second) {
                    (Some((p1, &(holder, _))), _) if holder != e => i < p1,
                    (Some(_), Some((p2, _))) => i < p2,
                    _ => true,
                }
        })
        .map(|(_, &(e, _))| e)
        .collect();
    if out.is_empty() {
        return Err(NoMinimal);
    }
    out.sort_unstable();
    Ok(out)
}
