//! Pre-drawn intervals: parsing, validation against the graph, and the
//! global left-to-right endpoint sequence.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::graph::{ClosedInterval, Graph};
use crate::rational::Rational;
pub use crate::reorder::Side;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartialError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {v} out of range (n = {n})")]
    OutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: vertex {v} is pre-drawn twice")]
    Duplicate { line: usize, v: usize },
    #[error("line {line}: left endpoint {} exceeds right endpoint {}", .ends.0, .ends.1)]
    Reversed {
        line: usize,
        ends: Box<(Rational, Rational)>,
    },
    #[error("line {line}: left endpoints are not in non-decreasing order")]
    NotSorted { line: usize },
    #[error("pre-drawn intervals of {0} and {1} intersect but the graph has no edge {0}-{1}")]
    Intersecting(usize, usize),
    #[error("edge {0}-{1} joins pre-drawn vertices whose intervals are disjoint")]
    Disjoint(usize, usize),
}

impl PartialError {
    /// Whether the input was well-formed but contradicts the graph.
    pub fn is_contradiction(&self) -> bool {
        matches!(
            self,
            PartialError::Intersecting(..) | PartialError::Disjoint(..)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Event {
    pub vertex: usize,
    pub side: Side,
}

#[derive(Clone, PartialEq, Eq)]
pub struct PartialRepresentation {
    predrawn: Vec<Option<ClosedInterval>>,
    vertices: Vec<usize>,
    events: Vec<Event>,
}

impl PartialRepresentation {
    /// No pre-drawn intervals on a graph with `n` vertices.
    pub fn empty(n: usize) -> Self {
        PartialRepresentation {
            predrawn: vec![None; n],
            vertices: Vec::new(),
            events: Vec::new(),
        }
    }

    /// Builds and validates a partial representation from `(vertex, interval)` pairs.
    pub fn from_pairs(
        g: &Graph,
        pairs: Vec<(usize, ClosedInterval)>,
    ) -> Result<Self, PartialError> {
        let mut p = Self::empty(g.n());
        for (i, (v, iv)) in pairs.into_iter().enumerate() {
            p.insert(i + 1, v, iv)?;
        }
        p.sort_events(None);
        p.validate(g)?;
        Ok(p)
    }

    /// Parses `v L R` lines (`#` comments, blank lines ignored).
    ///
    /// With `assume_sorted`, lines must list the intervals by non-decreasing
    /// left endpoint; this is checked, and only the right endpoints are
    /// sorted. Otherwise all endpoints are sorted in O(k log k).
    pub fn parse(g: &Graph, text: &str, assume_sorted: bool) -> Result<Self, PartialError> {
        let mut p = Self::empty(g.n());
        let mut line_order: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| PartialError::Malformed {
                line,
                msg: msg.to_string(),
            };
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(bad("expected `v L R`"));
            }
            let v: usize = toks[0]
                .parse()
                .map_err(|_| bad("vertex id is not a non-negative integer"))?;
            let left: Rational = toks[1].parse().map_err(|e| bad(&format!("{e}")))?;
            let right: Rational = toks[2].parse().map_err(|e| bad(&format!("{e}")))?;
            if left > right {
                return Err(PartialError::Reversed {
                    line,
                    ends: Box::new((left, right)),
                });
            }
            if assume_sorted {
                if let Some(&(_, prev)) = line_order.last() {
                    let prev_left = &p.predrawn[prev].as_ref().unwrap().left;
                    if *prev_left > left {
                        return Err(PartialError::NotSorted { line });
                    }
                }
            }
            p.insert(line, v, ClosedInterval::new(left, right))?;
            line_order.push((line, v));
        }
        let lefts: Option<Vec<usize>> =
            assume_sorted.then(|| line_order.iter().map(|&(_, v)| v).collect());
        p.sort_events(lefts);
        p.validate(g)?;
        Ok(p)
    }

    fn insert(&mut self, line: usize, v: usize, iv: ClosedInterval) -> Result<(), PartialError> {
        let n = self.predrawn.len();
        if v >= n {
            return Err(PartialError::OutOfRange { line, v, n });
        }
        if self.predrawn[v].is_some() {
            return Err(PartialError::Duplicate { line, v });
        }
        self.predrawn[v] = Some(iv);
        self.vertices.push(v);
        Ok(())
    }

    fn event_cmp(&self, a: &Event, b: &Event) -> Ordering {
        self.coord(a)
            .cmp(self.coord(b))
            .then(a.side.cmp(&b.side))
            .then(a.vertex.cmp(&b.vertex))
    }

    fn sort_events(&mut self, lefts_in_order: Option<Vec<usize>>) {
        self.vertices.sort_unstable();
        let mut rights: Vec<Event> = self
            .vertices
            .iter()
            .map(|&v| Event {
                vertex: v,
                side: Side::R,
            })
            .collect();
        rights.sort_by(|a, b| self.event_cmp(a, b));
        let mut lefts: Vec<Event> = match lefts_in_order {
            Some(order) => order
                .into_iter()
                .map(|v| Event {
                    vertex: v,
                    side: Side::L,
                })
                .collect(),
            None => {
                let mut ls: Vec<Event> = self
                    .vertices
                    .iter()
                    .map(|&v| Event {
                        vertex: v,
                        side: Side::L,
                    })
                    .collect();
                ls.sort_by(|a, b| self.event_cmp(a, b));
                ls
            }
        };
        // ties among equal left coordinates must follow vertex id
        let mut i = 0;
        while i < lefts.len() {
            let mut j = i + 1;
            while j < lefts.len() && self.coord(&lefts[j]) == self.coord(&lefts[i]) {
                j += 1;
            }
            if j - i > 1 {
                lefts[i..j].sort_unstable_by_key(|e| e.vertex);
            }
            i = j;
        }
        let mut events = Vec::with_capacity(2 * self.vertices.len());
        let (mut a, mut b) = (0, 0);
        while a < lefts.len() || b < rights.len() {
            let take_left = b == rights.len()
                || (a < lefts.len() && self.event_cmp(&lefts[a], &rights[b]) == Ordering::Less);
            if take_left {
                events.push(lefts[a]);
                a += 1;
            } else {
                events.push(rights[b]);
                b += 1;
            }
        }
        self.events = events;
    }

    /// Checks that pre-drawn intervals intersect exactly along the edges of
    /// the induced subgraph, in O(k + m') over the sorted events.
    fn validate(&self, g: &Graph) -> Result<(), PartialError> {
        let k = self.vertices.len();
        let mut active: Vec<usize> = Vec::new();
        let mut slot = vec![usize::MAX; g.n()];
        let mut pairs = 0usize;
        let mut i = 0;
        while i < self.events.len() {
            let x = self.coord(&self.events[i]).clone();
            let mut j = i;
            while j < self.events.len() && *self.coord(&self.events[j]) == x {
                j += 1;
            }
            // lefts at x meet everything still open, including intervals
            // whose right endpoint is exactly x
            for e in &self.events[i..j] {
                if e.side == Side::L {
                    for &u in &active {
                        if !g.has_edge(u, e.vertex) {
                            return Err(PartialError::Intersecting(
                                u.min(e.vertex),
                                u.max(e.vertex),
                            ));
                        }
                        pairs += 1;
                    }
                    slot[e.vertex] = active.len();
                    active.push(e.vertex);
                }
            }
            for e in &self.events[i..j] {
                if e.side == Side::R {
                    let at = slot[e.vertex];
                    let last = *active.last().unwrap();
                    active.swap_remove(at);
                    if last != e.vertex {
                        slot[last] = at;
                    }
                }
            }
            i = j;
        }
        let mut edges = 0usize;
        for &u in &self.vertices {
            edges += g
                .neighbors(u)
                .iter()
                .filter(|&&w| w > u && self.predrawn[w].is_some())
                .count();
        }
        if edges != pairs {
            for &u in &self.vertices {
                for &w in g.neighbors(u) {
                    if w > u {
                        if let Some(iw) = &self.predrawn[w] {
                            if !self.predrawn[u].as_ref().unwrap().intersects(iw) {
                                return Err(PartialError::Disjoint(u, w));
                            }
                        }
                    }
                }
            }
            unreachable!("{k} pre-drawn intervals: {pairs} intersecting pairs vs {edges} edges");
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.predrawn.len()
    }

    /// Number of pre-drawn intervals.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<&ClosedInterval> {
        self.predrawn[v].as_ref()
    }

    pub fn is_predrawn(&self, v: usize) -> bool {
        self.predrawn[v].is_some()
    }

    /// Pre-drawn vertices in id order with their intervals.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &ClosedInterval)> + '_ {
        self.vertices
            .iter()
            .map(move |&v| (v, self.predrawn[v].as_ref().unwrap()))
    }

    /// All `2k` endpoints, left to right; at a shared coordinate right
    /// endpoints precede left endpoints.
    pub fn sorted_events(&self) -> &[Event] {
        &self.events
    }

    pub fn coord(&self, e: &Event) -> &Rational {
        let iv = self.predrawn[e.vertex]
            .as_ref()
            .expect("event of a vertex that is not pre-drawn");
        match e.side {
            Side::L => &iv.left,
            Side::R => &iv.right,
        }
    }

    pub fn to_text(&self) -> String {
        self.iter()
            .map(|(v, iv)| format!("{v} {} {}\n", iv.left, iv.right))
            .collect()
    }
}

impl fmt::Debug for PartialRepresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path2() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn load_examples() {
        let p = PartialRepresentation::parse(&path2(), "0 0 1\n", false).unwrap();
        assert_eq!(p.len(), 1);
        let iso = Graph::empty(2);
        assert_eq!(
            PartialRepresentation::parse(&iso, "0 0 2\n1 1 3\n", false).unwrap_err(),
            PartialError::Intersecting(0, 1)
        );
        let p = PartialRepresentation::parse(&path2(), "# point\n0 0 0\n", false).unwrap();
        assert_eq!(p.get(0), Some(&ClosedInterval::ints(0, 0)));
    }

    #[test]
    fn errors_are_reported() {
        let g = path2();
        assert_eq!(
            PartialRepresentation::parse(&g, "0 0 1\n1 3 4\n", false).unwrap_err(),
            PartialError::Disjoint(0, 1)
        );
        assert!(matches!(
            PartialRepresentation::parse(&g, "0 1/0 1", false),
            Err(PartialError::Malformed { .. })
        ));
        assert!(matches!(
            PartialRepresentation::parse(&g, "0 2 1", false),
            Err(PartialError::Reversed { .. })
        ));
        assert!(matches!(
            PartialRepresentation::parse(&g, "5 0 1", false),
            Err(PartialError::OutOfRange { .. })
        ));
        assert!(matches!(
            PartialRepresentation::parse(&g, "0 0 1\n0 0 1", false),
            Err(PartialError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            PartialRepresentation::parse(&g, "0 1 2\n1 0 1", true),
            Err(PartialError::NotSorted { line: 2 })
        ));
        assert!(PartialRepresentation::parse(&g, "0 1 2\n1 0 1", false).is_ok());
    }

    #[test]
    fn rights_precede_lefts_at_shared_coordinate() {
        let g = path2();
        let p = PartialRepresentation::parse(&g, "1 1 2\n0 0 1\n", false).unwrap();
        let seq: Vec<(usize, Side)> = p
            .sorted_events()
            .iter()
            .map(|e| (e.vertex, e.side))
            .collect();
        assert_eq!(
            seq,
            vec![(0, Side::L), (0, Side::R), (1, Side::L), (1, Side::R)]
        );
        let iso = Graph::empty(1);
        let p = PartialRepresentation::parse(&iso, "0 3 3", false).unwrap();
        assert_eq!(p.sorted_events()[0].side, Side::R);
    }

    proptest! {
        #[test]
        fn validation_matches_pairwise(ivs in prop::collection::vec((0i64..8, 0i64..4), 1..8), flips in prop::collection::vec(any::<bool>(), 28)) {
            let n = ivs.len();
            let rep: Vec<ClosedInterval> = ivs.iter().map(|&(l, len)| ClosedInterval::ints(l, l + len)).collect();
            let mut edges = Vec::new();
            let mut consistent = true;
            let mut f = 0;
            for u in 0..n {
                for v in u + 1..n {
                    let flip = flips[f % flips.len()] && f % 5 == 0;
                    f += 1;
                    let want = rep[u].intersects(&rep[v]) != flip;
                    if flip { consistent = false; }
                    if want { edges.push((u, v)); }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let pairs: Vec<(usize, ClosedInterval)> = rep.iter().cloned().enumerate().collect();
            let got = PartialRepresentation::from_pairs(&g, pairs.clone());
            prop_assert_eq!(got.is_ok(), consistent);
            if let Ok(p) = got {
                let ev = p.sorted_events();
                prop_assert_eq!(ev.len(), 2 * n);
                for w in ev.windows(2) {
                    prop_assert!(p.event_cmp(&w[0], &w[1]) == Ordering::Less);
                }
                // sorted input parses identically with assume_sorted
                let mut sorted = pairs.clone();
                sorted.sort_by(|a, b| a.1.left.cmp(&b.1.left));
                let text: String = sorted.iter().map(|(v, iv)| format!("{v} {} {}\n", iv.left, iv.right)).collect();
                let q = PartialRepresentation::parse(&g, &text, true).unwrap();
                prop_assert_eq!(q.sorted_events(), p.sorted_events());
            }
        }
    }
}
