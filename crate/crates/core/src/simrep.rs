//! Simultaneous interval representations of graphs sharing a vertex set.
//!
//! The graphs `G_1..G_k` share a set `I` of `ℓ` vertices with the same
//! induced edges. Whether a fixed drawing of `I` extends to some `G_i`
//! depends only on the weak order of the `2ℓ` endpoints, so [`simrep`] walks
//! every weak order that realizes `G[I]`, draws tie class `j` at coordinate
//! `j`, and runs [`extend`] on every graph.
//!
//! # Instance format
//!
//! ```text
//! # k graphs sharing l vertices
//! 2 2
//! shared 0 1        # local ids of the shared vertices in G_1
//! 3 3
//! 0 1
//! 1 2
//! 0 2
//! shared 0 1        # the same shared vertices, same order, in G_2
//! 3 2
//! 0 1
//! 1 2
//! ```

use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::{ClosedInterval, Graph};
use crate::repext::{extend, ExtendError, PartialRepresentation};

pub const DEFAULT_MAX_SHARED: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimRepError {
    #[error("no simultaneous representation exists")]
    NoSimRep,
    #[error("{shared} shared vertices exceed the bound {bound}")]
    BoundExceeded { shared: usize, bound: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("malformed instance: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimRepInstance {
    graphs: Vec<Graph>,
    shared: Vec<Vec<usize>>,
}

impl SimRepInstance {
    /// `shared[i][j]` is the id in `graphs[i]` of the `j`-th shared vertex.
    pub fn new(graphs: Vec<Graph>, shared: Vec<Vec<usize>>) -> Result<Self, SimRepError> {
        let bad = |msg: String| Err(SimRepError::InvalidInstance(msg));
        if graphs.len() != shared.len() {
            return bad(format!(
                "{} graphs but {} shared lists",
                graphs.len(),
                shared.len()
            ));
        }
        let l = shared.first().map_or(0, Vec::len);
        for (i, (g, ids)) in graphs.iter().zip(&shared).enumerate() {
            if ids.len() != l {
                return bad(format!(
                    "graph {i} lists {} shared vertices, expected {l}",
                    ids.len()
                ));
            }
            let mut seen = vec![false; g.n()];
            for &v in ids {
                if v >= g.n() {
                    return bad(format!("graph {i}: shared vertex {v} out of range"));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return bad(format!("graph {i}: shared vertex {v} listed twice"));
                }
            }
        }
        if let Some(first) = graphs.first() {
            let base = first.induced(&shared[0]);
            for (i, (g, ids)) in graphs.iter().zip(&shared).enumerate().skip(1) {
                if g.induced(ids) != base {
                    return bad(format!(
                        "graph {i} induces different edges on the shared vertices than graph 0"
                    ));
                }
            }
        }
        Ok(SimRepInstance { graphs, shared })
    }

    pub fn parse(text: &str) -> Result<Self, SimRepError> {
        let bad = |line: usize, msg: &str| SimRepError::Parse(format!("line {line}: {msg}"));
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let ints = |line: usize, s: &str| -> Result<Vec<usize>, SimRepError> {
            s.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| bad(line, &format!("`{t}` is not an id")))
                })
                .collect()
        };
        let (hl, header) = lines.next().ok_or_else(|| bad(1, "missing `k l` header"))?;
        let [k, l] =
            <[usize; 2]>::try_from(ints(hl, header)?).map_err(|_| bad(hl, "expected `k l`"))?;
        let mut graphs = Vec::with_capacity(k);
        let mut shared = Vec::with_capacity(k);
        for i in 0..k {
            let (sl, s) = lines
                .next()
                .ok_or_else(|| bad(hl, &format!("missing graph {i}")))?;
            let rest = s
                .strip_prefix("shared")
                .ok_or_else(|| bad(sl, "expected `shared ...`"))?;
            let ids = ints(sl, rest)?;
            if ids.len() != l {
                return Err(bad(sl, &format!("expected {l} shared ids")));
            }
            let (gl, gh) = lines
                .next()
                .ok_or_else(|| bad(sl, "missing `n m` header"))?;
            let [_, m] =
                <[usize; 2]>::try_from(ints(gl, gh)?).map_err(|_| bad(gl, "expected `n m`"))?;
            let mut block = format!("{gh}\n");
            for _ in 0..m {
                let (_, e) = lines.next().ok_or_else(|| bad(gl, "graph ends early"))?;
                block.push_str(e);
                block.push('\n');
            }
            graphs.push(Graph::parse(&block).map_err(|e| bad(gl, &e.to_string()))?);
            shared.push(ids);
        }
        if let Some((line, _)) = lines.next() {
            return Err(bad(line, "trailing content"));
        }
        SimRepInstance::new(graphs, shared)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.graphs.len(), self.shared_len());
        for (g, ids) in self.graphs.iter().zip(&self.shared) {
            s.push_str("shared");
            for v in ids {
                s.push_str(&format!(" {v}"));
            }
            s.push('\n');
            s.push_str(&g.to_text());
        }
        s
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn shared(&self) -> &[Vec<usize>] {
        &self.shared
    }

    pub fn shared_len(&self) -> usize {
        self.shared.first().map_or(0, Vec::len)
    }

    /// The graph induced on the shared vertices, in shared order.
    pub fn shared_graph(&self) -> Graph {
        match self.graphs.first() {
            Some(g) => g.induced(&self.shared[0]),
            None => Graph::empty(0),
        }
    }
}

/// Endpoint classes of one drawing of the shared vertices: `(left, right)`
/// tie-class indices per vertex, classes numbered left to right.
pub type EndpointClasses = [(usize, usize)];

/// Calls `visit` on every weak order of the shared endpoints whose drawing
/// realizes `shared`, in a fixed order, until `visit` breaks.
pub fn for_each_shared_ordering<B>(
    shared: &Graph,
    mut visit: impl FnMut(&EndpointClasses) -> ControlFlow<B>,
) -> Option<B> {
    let l = shared.n();
    assert!(l < 32, "shared vertex sets are kept in a u32 mask");
    let adj: Vec<u32> = (0..l)
        .map(|v| {
            shared
                .neighbors(v)
                .iter()
                .fold(0u32, |acc, &w| acc | 1 << w)
        })
        .collect();
    let mut classes = vec![(usize::MAX, usize::MAX); l];
    let all = ((1u64 << l) - 1) as u32;
    walk(&adj, all, 0, 0, 0, &mut classes, &mut visit).break_value()
}

fn walk<B>(
    adj: &[u32],
    all: u32,
    opened: u32,
    closed: u32,
    depth: usize,
    classes: &mut [(usize, usize)],
    visit: &mut impl FnMut(&EndpointClasses) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if closed == all {
        return visit(classes);
    }
    let alive = opened & !closed;
    let unopened = all & !opened;
    // every submask of the unopened vertices, in increasing order
    let mut open = 0u32;
    loop {
        if consistent(adj, alive, closed, open) {
            let may_close = alive | open;
            let mut close = 0u32;
            loop {
                if open | close != 0 {
                    for v in bits(open) {
                        classes[v].0 = depth;
                    }
                    for v in bits(close) {
                        classes[v].1 = depth;
                    }
                    walk(
                        adj,
                        all,
                        opened | open,
                        closed | close,
                        depth + 1,
                        classes,
                        visit,
                    )?;
                }
                if close == may_close {
                    break;
                }
                close = (close.wrapping_sub(may_close)) & may_close;
            }
        }
        if open == unopened {
            break;
        }
        open = (open.wrapping_sub(unopened)) & unopened;
    }
    ControlFlow::Continue(())
}

fn consistent(adj: &[u32], alive: u32, closed: u32, open: u32) -> bool {
    bits(open).all(|v| {
        let others = (alive | open) & !(1 << v);
        adj[v] & others == others && adj[v] & closed == 0
    })
}

fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

/// Draws tie class `j` at integer coordinate `j`.
pub fn integer_drawing(classes: &EndpointClasses) -> Vec<ClosedInterval> {
    classes
        .iter()
        .map(|&(l, r)| ClosedInterval::ints(l as i64, r as i64))
        .collect()
}

/// Extends one drawing of the shared vertices to every graph.
pub fn extend_all(
    inst: &SimRepInstance,
    drawing: &[ClosedInterval],
) -> Result<Vec<Vec<ClosedInterval>>, ExtendError> {
    inst.graphs
        .iter()
        .zip(&inst.shared)
        .map(|(g, ids)| {
            let pairs = ids.iter().copied().zip(drawing.iter().cloned()).collect();
            let partial = PartialRepresentation::from_pairs(g, pairs)?;
            extend(g, &partial).map(|e| e.representation)
        })
        .collect()
}

/// One representation per graph, all drawing the shared vertices
/// identically.
pub fn simrep(
    inst: &SimRepInstance,
    max_shared: usize,
) -> Result<Vec<Vec<ClosedInterval>>, SimRepError> {
    let l = inst.shared_len();
    if l > max_shared {
        return Err(SimRepError::BoundExceeded {
            shared: l,
            bound: max_shared,
        });
    }
    for_each_shared_ordering(&inst.shared_graph(), |classes| {
        match extend_all(inst, &integer_drawing(classes)) {
            Ok(reps) => ControlFlow::Break(reps),
            Err(_) => ControlFlow::Continue(()),
        }
    })
    .ok_or(SimRepError::NoSimRep)
}
