//! Undirected simple graphs, closed intervals and intersection checks.

use std::fmt;
use std::io::{self, Read};

use thiserror::Error;

use crate::rational::Rational;
use crate::repext::PartialRepresentation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex id {id} out of range (n = {n})")]
    OutOfRange { id: usize, n: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

/// Simple undirected graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(GraphError::OutOfRange { id, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
            labels: None,
        })
    }

    /// Builds from already symmetric, duplicate-free adjacency lists.
    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<usize>>) -> Graph {
        let mut twice = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            twice += list.len();
        }
        Graph {
            adj,
            m: twice / 2,
            labels: None,
        }
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Parses the `n m` + edge-list text format. `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(GraphError::Malformed {
            line: 1,
            msg: "missing `n m` header".into(),
        })?;
        let [n, m] = parse_ints::<2>(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            if edges.len() == m {
                return Err(GraphError::Malformed {
                    line,
                    msg: format!("more than {m} edge lines"),
                });
            }
            let [u, v] = parse_ints::<2>(line, l)?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::Malformed {
                line: text.lines().count(),
                msg: format!("expected {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, &edges)
    }

    pub fn read<R: Read>(mut reader: R) -> Result<Graph, GraphError> {
        let mut s = String::new();
        reader
            .read_to_string(&mut s)
            .map_err(|e: io::Error| GraphError::Io(e.to_string()))?;
        Graph::parse(&s)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect()
            })
            .collect();
        Graph::from_adjacency_unchecked(adj)
    }
}

fn parse_ints<const K: usize>(line: usize, l: &str) -> Result<[usize; K], GraphError> {
    let mut out = [0usize; K];
    let mut it = l.split_whitespace();
    for slot in out.iter_mut() {
        let tok = it.next().ok_or_else(|| GraphError::Malformed {
            line,
            msg: format!("expected {K} integers"),
        })?;
        *slot = tok.parse().map_err(|_| GraphError::Malformed {
            line,
            msg: format!("bad integer `{tok}`"),
        })?;
    }
    if let Some(extra) = it.next() {
        return Err(GraphError::Malformed {
            line,
            msg: format!("unexpected token `{extra}`"),
        });
    }
    Ok(out)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n(),
            self.edges().collect::<Vec<_>>()
        )
    }
}

/// Closed interval `[left, right]`; zero length is allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClosedInterval {
    pub left: Rational,
    pub right: Rational,
}

impl ClosedInterval {
    pub fn new(left: Rational, right: Rational) -> ClosedInterval {
        assert!(left <= right, "interval [{left}, {right}] has left > right");
        ClosedInterval { left, right }
    }

    pub fn ints(l: i64, r: i64) -> ClosedInterval {
        ClosedInterval::new(Rational::from(l), Rational::from(r))
    }

    pub fn intersects(&self, other: &ClosedInterval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.left <= x && x <= &self.right
    }
}

impl fmt::Debug for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

/// A full interval representation, indexed by vertex id.
pub type Representation = Vec<ClosedInterval>;

/// Formats a representation one `v L R` line per vertex, in id order.
pub fn format_representation(rep: &[ClosedInterval]) -> String {
    let mut s = String::new();
    for (v, iv) in rep.iter().enumerate() {
        s.push_str(&format!("{v} {} {}\n", iv.left, iv.right));
    }
    s
}

/// Calls `f(u, v)` for every intersecting pair (closed semantics), stopping
/// early if `f` returns `false`. Runs in O(n log n + pairs reported).
pub fn for_each_intersection<F>(items: &[(usize, &ClosedInterval)], mut f: F) -> bool
where
    F: FnMut(usize, usize) -> bool,
{
    // (coordinate, is_right, slot); lefts sort before rights at equal coordinates
    let mut events: Vec<(&Rational, bool, usize)> = Vec::with_capacity(items.len() * 2);
    for (slot, (_, iv)) in items.iter().enumerate() {
        events.push((&iv.left, false, slot));
        events.push((&iv.right, true, slot));
    }
    events.sort_unstable_by(|a, b| a.0.cmp(b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut active: Vec<usize> = Vec::new();
    let mut where_in_active = vec![usize::MAX; items.len()];
    for (_, is_right, slot) in events {
        if is_right {
            let at = where_in_active[slot];
            let last = *active.last().unwrap();
            active.swap_remove(at);
            if last != slot {
                where_in_active[last] = at;
            }
        } else {
            for &other in &active {
                if !f(items[other].0, items[slot].0) {
                    return false;
                }
            }
            where_in_active[slot] = active.len();
            active.push(slot);
        }
    }
    true
}

/// Intersection graph of a representation (touching endpoints intersect).
pub fn intersection_graph(rep: &[ClosedInterval]) -> Graph {
    let items: Vec<(usize, &ClosedInterval)> = rep.iter().enumerate().collect();
    let mut adj = vec![Vec::new(); rep.len()];
    for_each_intersection(&items, |u, v| {
        adj[u].push(v);
        adj[v].push(u);
        true
    });
    Graph::from_adjacency_unchecked(adj)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyFailure {
    #[error("representation has {got} intervals, graph has {want} vertices")]
    WrongSize { got: usize, want: usize },
    #[error("pre-drawn vertex {0} was moved")]
    PredrawnMoved(usize),
    #[error("intervals of {0} and {1} intersect but the graph has no edge")]
    ExtraEdge(usize, usize),
    #[error("edge {0}-{1} is not realised by intersecting intervals")]
    MissingEdge(usize, usize),
}

/// Checks that `full` represents `g` and keeps every pre-drawn interval verbatim.
pub fn check_extension(
    g: &Graph,
    partial: &PartialRepresentation,
    full: &[ClosedInterval],
) -> Result<(), VerifyFailure> {
    if full.len() != g.n() {
        return Err(VerifyFailure::WrongSize {
            got: full.len(),
            want: g.n(),
        });
    }
    for (v, iv) in partial.iter() {
        if &full[v] != iv {
            return Err(VerifyFailure::PredrawnMoved(v));
        }
    }
    let items: Vec<(usize, &ClosedInterval)> = full.iter().enumerate().collect();
    let mut found = vec![0usize; g.n()];
    let mut extra = None;
    for_each_intersection(&items, |u, v| {
        if g.has_edge(u, v) {
            found[u] += 1;
            found[v] += 1;
            true
        } else {
            extra = Some((u.min(v), u.max(v)));
            false
        }
    });
    if let Some((u, v)) = extra {
        return Err(VerifyFailure::ExtraEdge(u, v));
    }
    for u in 0..g.n() {
        if found[u] != g.degree(u) {
            let v = *g
                .neighbors(u)
                .iter()
                .find(|&&v| !full[u].intersects(&full[v]))
                .expect("degree mismatch");
            return Err(VerifyFailure::MissingEdge(u.min(v), u.max(v)));
        }
    }
    Ok(())
}

pub fn verify_extension(
    g: &Graph,
    partial: &PartialRepresentation,
    full: &[ClosedInterval],
) -> bool {
    check_extension(g, partial, full).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_path() {
        let g = Graph::parse("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn parses_single_vertex_and_comments() {
        let g = Graph::parse("# a comment\n1 0\n").unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(Graph::parse("2 1\n0 0\n"), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::parse("2 2\n0 1\n1 0\n"),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::parse("2 1\n0 5\n"),
            Err(GraphError::OutOfRange { id: 5, n: 2 })
        );
        assert!(matches!(
            Graph::parse("2 1\n0 x\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse("2 2\n0 1\n"),
            Err(GraphError::Malformed { .. })
        ));
        assert!(matches!(
            Graph::parse(""),
            Err(GraphError::Malformed { .. })
        ));
    }

    #[test]
    fn intersection_examples() {
        let g = intersection_graph(&[ClosedInterval::ints(0, 1), ClosedInterval::ints(1, 2)]);
        assert!(g.has_edge(0, 1));
        let g = intersection_graph(&[ClosedInterval::ints(0, 1), ClosedInterval::ints(2, 3)]);
        assert_eq!(g.m(), 0);
        let g = intersection_graph(&[
            ClosedInterval::ints(0, 4),
            ClosedInterval::ints(1, 2),
            ClosedInterval::ints(3, 5),
        ]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn verify_examples() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let partial =
            PartialRepresentation::from_pairs(&g, vec![(0, ClosedInterval::ints(0, 1))]).unwrap();
        assert!(verify_extension(
            &g,
            &partial,
            &[ClosedInterval::ints(0, 1), ClosedInterval::ints(1, 2)]
        ));
        assert_eq!(
            check_extension(
                &g,
                &partial,
                &[ClosedInterval::ints(0, 2), ClosedInterval::ints(1, 3)]
            ),
            Err(VerifyFailure::PredrawnMoved(0))
        );
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let none = PartialRepresentation::empty(3);
        assert_eq!(
            check_extension(
                &path,
                &none,
                &[
                    ClosedInterval::ints(0, 2),
                    ClosedInterval::ints(1, 3),
                    ClosedInterval::ints(2, 4)
                ]
            ),
            Err(VerifyFailure::ExtraEdge(0, 2))
        );
        assert_eq!(
            check_extension(
                &path,
                &none,
                &[
                    ClosedInterval::ints(0, 1),
                    ClosedInterval::ints(2, 3),
                    ClosedInterval::ints(3, 4)
                ]
            ),
            Err(VerifyFailure::MissingEdge(0, 1))
        );
    }

    fn arb_rep() -> impl Strategy<Value = Vec<ClosedInterval>> {
        prop::collection::vec((0i64..12, 0i64..5), 0..12).prop_map(|v| {
            v.into_iter()
                .map(|(l, len)| ClosedInterval::ints(l, l + len))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn intersection_graph_matches_pairwise(rep in arb_rep()) {
            let g = intersection_graph(&rep);
            for u in 0..rep.len() {
                prop_assert!(!g.has_edge(u, u));
                for v in 0..rep.len() {
                    if u != v {
                        prop_assert_eq!(g.has_edge(u, v), rep[u].intersects(&rep[v]));
                        prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                    }
                }
            }
            let deg: usize = (0..g.n()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(deg, 2 * g.m());
            prop_assert!(verify_extension(&g, &PartialRepresentation::empty(rep.len()), &rep));
        }
    }
}
