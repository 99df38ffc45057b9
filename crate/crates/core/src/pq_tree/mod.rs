//! PQ-trees over a fixed element set `0..e`.
//!
//! The tree lives in an index arena. Children of every inner node form a
//! doubly linked list whose sibling links are *unordered* (`sib[0]` and
//! `sib[1]` carry no left/right meaning), so a child list can be reversed or
//! spliced into a neighbour in O(1). The parent keeps the two end children in
//! `ends`; the left-to-right order is recovered by walking from `ends[0]`.
//!
//! Parent pointers are only maintained for children of P-nodes and for the
//! two end children of Q-nodes. Interior children of Q-nodes learn their
//! parent during the bubble-up phase of each reduction.

mod reduce;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use reduce::Infeasible;

pub type NodeId = usize;

pub(crate) const NIL: NodeId = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(usize),
    P,
    Q,
    /// Tombstone left behind by template surgery.
    Dead,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub(crate) enum Mark {
    #[default]
    Unmarked,
    Queued,
    Blocked,
    Unblocked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub(crate) enum Label {
    #[default]
    Empty,
    Full,
    Partial,
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub(crate) kind: NodeKind,
    pub(crate) parent: NodeId,
    pub(crate) in_q: bool,
    pub(crate) sib: [NodeId; 2],
    pub(crate) ends: [NodeId; 2],
    /// Exact for P-nodes. Q-nodes may absorb children of a partial sibling
    /// without their count being updated.
    pub(crate) count: usize,
    // per-reduction scratch, reset after every reduction
    pub(crate) mark: Mark,
    pub(crate) label: Label,
    pub(crate) pertinent_children: usize,
    pub(crate) pertinent_leaves: usize,
    pub(crate) full_children: Vec<NodeId>,
    pub(crate) partial_children: Vec<NodeId>,
}

impl Node {
    fn new(kind: NodeKind) -> Node {
        Node {
            kind,
            parent: NIL,
            in_q: false,
            sib: [NIL, NIL],
            ends: [NIL, NIL],
            count: 0,
            mark: Mark::Unmarked,
            label: Label::Empty,
            pertinent_children: 0,
            pertinent_leaves: 0,
            full_children: Vec::new(),
            partial_children: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("element {0} out of range")]
    OutOfRange(usize),
    #[error("restricting set {0} is empty")]
    EmptySet(usize),
    #[error("label count {labels} does not match element count {elements}")]
    LabelCount { labels: usize, elements: usize },
}

/// Elements `0..elements` and a family of sets that must each be consecutive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsecutiveInstance {
    elements: usize,
    sets: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl ConsecutiveInstance {
    pub fn new(elements: usize, sets: Vec<Vec<usize>>) -> Result<Self, InstanceError> {
        for (i, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(InstanceError::EmptySet(i));
            }
            if let Some(&x) = s.iter().find(|&&x| x >= elements) {
                return Err(InstanceError::OutOfRange(x));
            }
        }
        Ok(ConsecutiveInstance {
            elements,
            sets,
            labels: None,
        })
    }

    /// Elements named by labels; sets are given as label lists.
    pub fn from_labels(labels: &[&str], sets: &[&[&str]]) -> Result<Self, InstanceError> {
        let index = |l: &str| labels.iter().position(|x| *x == l);
        let sets = sets
            .iter()
            .map(|s| s.iter().map(|l| index(l).unwrap_or(usize::MAX)).collect())
            .collect();
        let mut inst = ConsecutiveInstance::new(labels.len(), sets)?;
        inst.labels = Some(labels.iter().map(|s| s.to_string()).collect());
        Ok(inst)
    }

    pub fn elements(&self) -> usize {
        self.elements
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("tree has {0} orderings, more than the limit")]
pub struct LimitExceeded(pub u128);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BracketError {
    #[error("unexpected `{0}` at byte {1}")]
    Unexpected(char, usize),
    #[error("unexpected end of input")]
    Eof,
    #[error("inner node with fewer than two children at byte {0}")]
    TooFewChildren(usize),
    #[error("duplicate leaf `{0}`")]
    DuplicateLeaf(String),
}

#[derive(Clone)]
pub struct PQTree {
    pub(crate) nodes: Vec<Node>,
    pub(crate) root: NodeId,
    pub(crate) leaf_of: Vec<NodeId>,
    pub(crate) labels: Option<Vec<String>>,
    pub(crate) touched: Vec<NodeId>,
    pub(crate) pseudo: NodeId,
}

impl PQTree {
    /// The tree allowing every ordering: one P-node over `0..elements`,
    /// children sorted by element id.
    pub fn universal(elements: usize) -> PQTree {
        let mut t = PQTree {
            nodes: Vec::new(),
            root: NIL,
            leaf_of: Vec::new(),
            labels: None,
            touched: Vec::new(),
            pseudo: NIL,
        };
        t.leaf_of = (0..elements).map(|e| t.alloc(NodeKind::Leaf(e))).collect();
        match elements {
            0 => {}
            1 => t.root = t.leaf_of[0],
            _ => {
                let root = t.alloc(NodeKind::P);
                for e in 0..elements {
                    t.append_child(root, t.leaf_of[e], 1);
                }
                t.root = root;
            }
        }
        t.touched.clear();
        t
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> PQTree {
        assert_eq!(labels.len(), self.leaf_of.len());
        self.labels = Some(labels);
        self
    }

    pub fn elements(&self) -> usize {
        self.leaf_of.len()
    }

    /// Size of the node arena; node ids are below this bound.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn root(&self) -> Option<NodeId> {
        (self.root != NIL).then_some(self.root)
    }

    pub fn kind(&self, node: NodeId) -> NodeKind {
        self.nodes[node].kind
    }

    pub fn leaf(&self, element: usize) -> NodeId {
        self.leaf_of[element]
    }

    pub(crate) fn alloc(&mut self, kind: NodeKind) -> NodeId {
        self.nodes.push(Node::new(kind));
        let id = self.nodes.len() - 1;
        self.touched.push(id);
        id
    }

    pub(crate) fn other_sib(&self, x: NodeId, from: NodeId) -> NodeId {
        let s = self.nodes[x].sib;
        if s[0] == from {
            s[1]
        } else {
            s[0]
        }
    }

    /// Children of `node` from left to right.
    pub fn children(&self, node: NodeId) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes[node].count);
        let mut prev = NIL;
        let mut cur = self.nodes[node].ends[0];
        while cur != NIL {
            out.push(cur);
            let next = self.other_sib(cur, prev);
            prev = cur;
            cur = next;
        }
        out
    }

    /// All live nodes in post-order (children before parents).
    pub fn post_order(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        if self.root == NIL {
            return out;
        }
        let mut stack = vec![(self.root, false)];
        while let Some((x, expanded)) = stack.pop() {
            if expanded || matches!(self.nodes[x].kind, NodeKind::Leaf(_)) {
                out.push(x);
                continue;
            }
            stack.push((x, true));
            let ch = self.children(x);
            for &c in ch.iter().rev() {
                stack.push((c, false));
            }
        }
        out
    }

    /// The left-to-right leaf sequence.
    pub fn frontier(&self) -> Vec<usize> {
        self.post_order()
            .into_iter()
            .filter_map(|x| match self.nodes[x].kind {
                NodeKind::Leaf(e) => Some(e),
                _ => None,
            })
            .collect()
    }

    /// Elements in the subtree of `node`, left to right.
    pub fn leaves_under(&self, node: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            match self.nodes[x].kind {
                NodeKind::Leaf(e) => out.push(e),
                _ => stack.extend(self.children(x).into_iter().rev()),
            }
        }
        out
    }

    /// Replaces the child order of a P-node with a permutation of its children,
    /// or of a Q-node with its current order or the reversal.
    pub fn set_child_order(&mut self, node: NodeId, order: &[NodeId]) {
        let current = self.children(node);
        assert_eq!(current.len(), order.len(), "child order length mismatch");
        match self.nodes[node].kind {
            NodeKind::Q => {
                if order == current.as_slice() {
                    return;
                }
                assert!(
                    order.iter().eq(current.iter().rev()),
                    "Q-node children may only be reversed"
                );
                self.nodes[node].ends.swap(0, 1);
            }
            NodeKind::P => {
                let mut a = current.clone();
                let mut b = order.to_vec();
                a.sort_unstable();
                b.sort_unstable();
                assert_eq!(a, b, "order is not a permutation of the children");
                for (i, &c) in order.iter().enumerate() {
                    let left = if i == 0 { NIL } else { order[i - 1] };
                    let right = order.get(i + 1).copied().unwrap_or(NIL);
                    self.nodes[c].sib = [left, right];
                }
                self.nodes[node].ends = [order[0], *order.last().unwrap()];
            }
            k => panic!("cannot reorder children of {k:?}"),
        }
    }

    pub fn reverse_q(&mut self, node: NodeId) {
        assert_eq!(self.nodes[node].kind, NodeKind::Q);
        self.nodes[node].ends.swap(0, 1);
    }

    /// Consecutive-ones reduction: returns the tree restricted to orderings in
    /// which `set` is consecutive. A failed reduction consumes the tree.
    pub fn reduce(mut self, set: &[usize]) -> Result<PQTree, Infeasible> {
        self.reduce_in_place(set)?;
        Ok(self)
    }

    /// Number of orderings in the equivalence class (saturating).
    pub fn count_orderings(&self) -> u128 {
        let mut count = vec![1u128; self.nodes.len()];
        for x in self.post_order() {
            let c = match self.nodes[x].kind {
                NodeKind::Leaf(_) => 1,
                NodeKind::P => {
                    let ch = self.children(x);
                    let mut acc: u128 = 1;
                    for k in 1..=ch.len() as u128 {
                        acc = acc.saturating_mul(k);
                    }
                    ch.iter().fold(acc, |a, &c| a.saturating_mul(count[c]))
                }
                NodeKind::Q => self
                    .children(x)
                    .iter()
                    .fold(2u128, |a, &c| a.saturating_mul(count[c])),
                NodeKind::Dead => unreachable!(),
            };
            count[x] = c;
        }
        if self.root == NIL {
            1
        } else {
            count[self.root]
        }
    }

    /// Every frontier of the equivalence class, if there are at most `limit`.
    pub fn enumerate_orderings(&self, limit: usize) -> Result<BTreeSet<Vec<usize>>, LimitExceeded> {
        let total = self.count_orderings();
        if total > limit as u128 {
            return Err(LimitExceeded(total));
        }
        if self.root == NIL {
            return Ok(std::iter::once(Vec::new()).collect());
        }
        Ok(self.expand(self.root).into_iter().collect())
    }

    fn expand(&self, x: NodeId) -> Vec<Vec<usize>> {
        match self.nodes[x].kind {
            NodeKind::Leaf(e) => vec![vec![e]],
            NodeKind::P | NodeKind::Q => {
                let ch = self.children(x);
                let parts: Vec<Vec<Vec<usize>>> = ch.iter().map(|&c| self.expand(c)).collect();
                let idx: Vec<usize> = (0..ch.len()).collect();
                let arrangements: Vec<Vec<usize>> = if self.nodes[x].kind == NodeKind::P {
                    permutations(&idx)
                } else {
                    vec![idx.clone(), idx.iter().rev().copied().collect()]
                };
                let mut out = Vec::new();
                for arr in arrangements {
                    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
                    for &i in &arr {
                        let mut next = Vec::with_capacity(acc.len() * parts[i].len());
                        for prefix in &acc {
                            for tail in &parts[i] {
                                let mut v = prefix.clone();
                                v.extend_from_slice(tail);
                                next.push(v);
                            }
                        }
                        acc = next;
                    }
                    out.extend(acc);
                }
                out
            }
            NodeKind::Dead => unreachable!(),
        }
    }

    fn label_of(&self, e: usize) -> String {
        match &self.labels {
            Some(l) => l[e].clone(),
            None => e.to_string(),
        }
    }

    /// Bracket form: P-nodes `( … )`, Q-nodes `[ … ]`, leaves by label.
    pub fn to_bracket(&self) -> String {
        let mut s = String::new();
        if self.root != NIL {
            self.write_bracket(self.root, &mut s);
        }
        s
    }

    fn write_bracket(&self, x: NodeId, s: &mut String) {
        match self.nodes[x].kind {
            NodeKind::Leaf(e) => s.push_str(&self.label_of(e)),
            k @ (NodeKind::P | NodeKind::Q) => {
                let (open, close) = if k == NodeKind::P {
                    ('(', ')')
                } else {
                    ('[', ']')
                };
                s.push(open);
                for (i, c) in self.children(x).into_iter().enumerate() {
                    if i > 0 {
                        s.push(' ');
                    }
                    self.write_bracket(c, s);
                }
                s.push(close);
            }
            NodeKind::Dead => unreachable!(),
        }
    }

    /// Parses the bracket form. Elements are numbered by the sorted order of
    /// their labels, so `((a b c) [d e f])` maps `a` to 0 and `f` to 5.
    pub fn from_bracket(text: &str) -> Result<PQTree, BracketError> {
        #[derive(Debug)]
        enum Tok {
            Open(char, usize),
            Close(char, usize),
            Word(String),
        }
        let mut toks = Vec::new();
        let chars: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (at, c) = chars[i];
            match c {
                '(' | '[' => toks.push(Tok::Open(c, at)),
                ')' | ']' => toks.push(Tok::Close(c, at)),
                c if c.is_whitespace() => {}
                _ => {
                    let mut w = String::new();
                    while i < chars.len()
                        && !"()[]".contains(chars[i].1)
                        && !chars[i].1.is_whitespace()
                    {
                        w.push(chars[i].1);
                        i += 1;
                    }
                    toks.push(Tok::Word(w));
                    continue;
                }
            }
            i += 1;
        }
        let mut words: Vec<String> = toks
            .iter()
            .filter_map(|t| {
                if let Tok::Word(w) = t {
                    Some(w.clone())
                } else {
                    None
                }
            })
            .collect();
        words.sort();
        if let Some(w) = words.windows(2).find(|w| w[0] == w[1]) {
            return Err(BracketError::DuplicateLeaf(w[0].clone()));
        }
        let mut t = PQTree::universal(words.len());
        // rebuild inner structure from scratch
        t.nodes.truncate(words.len());
        for n in t.nodes.iter_mut() {
            n.parent = NIL;
            n.sib = [NIL, NIL];
            n.in_q = false;
        }
        t.root = NIL;
        let mut stack: Vec<(NodeId, char, usize)> = Vec::new();
        let mut pos = 0;
        let mut top: Option<NodeId> = None;
        for tok in toks {
            if top.is_some() {
                let (ch, at) = match tok {
                    Tok::Open(c, a) | Tok::Close(c, a) => (c, a),
                    Tok::Word(_) => ('?', pos),
                };
                return Err(BracketError::Unexpected(ch, at));
            }
            let node = match tok {
                Tok::Open(c, at) => {
                    let id = t.alloc(if c == '(' { NodeKind::P } else { NodeKind::Q });
                    stack.push((id, c, at));
                    pos = at;
                    continue;
                }
                Tok::Close(c, at) => {
                    let (id, open, oat) = stack.pop().ok_or(BracketError::Unexpected(c, at))?;
                    if (open == '(') != (c == ')') {
                        return Err(BracketError::Unexpected(c, at));
                    }
                    if t.nodes[id].count < 2 {
                        return Err(BracketError::TooFewChildren(oat));
                    }
                    pos = at;
                    id
                }
                Tok::Word(w) => t.leaf_of[words.binary_search(&w).unwrap()],
            };
            match stack.last() {
                Some(&(parent, _, _)) => t.append_child(parent, node, 1),
                None => top = Some(node),
            }
        }
        if !stack.is_empty() {
            return Err(BracketError::Eof);
        }
        t.root = top.unwrap_or(NIL);
        t.touched.clear();
        t.labels = Some(words);
        Ok(t)
    }

    /// Checks structural invariants; used by tests.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut seen = vec![false; self.elements()];
        for x in self.post_order() {
            let n = &self.nodes[x];
            match n.kind {
                NodeKind::Leaf(e) => {
                    if seen[e] {
                        return Err(format!("leaf {e} appears twice"));
                    }
                    seen[e] = true;
                }
                NodeKind::P | NodeKind::Q => {
                    let ch = self.children(x);
                    if ch.len() < 2 {
                        return Err(format!("inner node {x} has {} children", ch.len()));
                    }
                    if n.kind == NodeKind::P && ch.len() != n.count {
                        return Err(format!(
                            "node {x}: count {} but {} children",
                            n.count,
                            ch.len()
                        ));
                    }
                    let q = n.kind == NodeKind::Q;
                    for (i, &c) in ch.iter().enumerate() {
                        if self.nodes[c].in_q != q {
                            return Err(format!("child {c} of {x} has wrong in_q flag"));
                        }
                        let endmost = i == 0 || i + 1 == ch.len();
                        if (!q || endmost) && self.nodes[c].parent != x {
                            return Err(format!(
                                "child {c} of {x} has parent {}",
                                self.nodes[c].parent
                            ));
                        }
                    }
                }
                NodeKind::Dead => return Err(format!("dead node {x} reachable")),
            }
        }
        if let Some(e) = seen.iter().position(|s| !s) {
            return Err(format!("element {e} missing"));
        }
        Ok(())
    }
}

impl fmt::Debug for PQTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PQTree({})", self.to_bracket())
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Builds the PQ-tree of all orderings in which every restricting set is
/// consecutive, by reducing a universal tree once per set.
pub fn build_pq_tree(inst: &ConsecutiveInstance) -> Result<PQTree, Infeasible> {
    let mut t = PQTree::universal(inst.elements());
    if let Some(l) = inst.labels() {
        t = t.with_labels(l.to_vec());
    }
    for s in inst.sets() {
        t.reduce_in_place(s)?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests;
