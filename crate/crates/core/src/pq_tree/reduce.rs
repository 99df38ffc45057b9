//! Booth–Lueker reduction: a bubble-up pass that discovers parents of the
//! pertinent nodes, followed by bottom-up template matching.
//!
//! Template names follow the usual catalogue: L1 (leaf), P1–P6 (P-nodes),
//! Q1–Q3 (Q-nodes). Non-root templates leave a node that is full or singly
//! partial; a singly partial node is always a Q-node with one full end child
//! and one empty end child.

use std::collections::VecDeque;

use thiserror::Error;

use super::{Label, Mark, NodeId, NodeKind, PQTree, NIL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no ordering makes every restricting set consecutive")]
pub struct Infeasible;

impl PQTree {
    pub(crate) fn replace_sib(&mut self, x: NodeId, old: NodeId, new: NodeId) {
        let s = &mut self.nodes[x].sib;
        if s[0] == old {
            s[0] = new;
        } else if s[1] == old {
            s[1] = new;
        } else {
            panic!("pq-tree corrupted: {old} is not a sibling of {x}");
        }
    }

    /// Attaches detached node `c` at end `side` of `p`.
    pub(crate) fn append_child(&mut self, p: NodeId, c: NodeId, side: usize) {
        let old = self.nodes[p].ends[side];
        let q = self.nodes[p].kind == NodeKind::Q;
        {
            let n = &mut self.nodes[c];
            n.parent = p;
            n.in_q = q;
        }
        if old == NIL {
            self.nodes[p].ends = [c, c];
            self.nodes[c].sib = [NIL, NIL];
        } else {
            self.nodes[c].sib = [old, NIL];
            self.replace_sib(old, NIL, c);
            self.nodes[p].ends[side] = c;
        }
        self.nodes[p].count += 1;
    }

    /// Detaches child `c` from `p`; `p` must be the real parent of `c`.
    pub(crate) fn remove_child(&mut self, p: NodeId, c: NodeId) {
        let [a, b] = self.nodes[c].sib;
        if a != NIL {
            self.replace_sib(a, c, b);
        }
        if b != NIL {
            self.replace_sib(b, c, a);
        }
        let neighbour = if a != NIL { a } else { b };
        for i in 0..2 {
            if self.nodes[p].ends[i] == c {
                self.nodes[p].ends[i] = neighbour;
                if neighbour != NIL {
                    self.nodes[neighbour].parent = p;
                }
            }
        }
        self.nodes[c].sib = [NIL, NIL];
        self.nodes[c].parent = NIL;
        self.nodes[p].count -= 1;
    }

    /// Puts detached node `new` where `old` is and detaches `old`.
    pub(crate) fn replace_node(&mut self, old: NodeId, new: NodeId) {
        let (parent, in_q, sib) = {
            let o = &self.nodes[old];
            (o.parent, o.in_q, o.sib)
        };
        {
            let n = &mut self.nodes[new];
            n.parent = parent;
            n.in_q = in_q;
            n.sib = sib;
        }
        for s in sib {
            if s != NIL {
                self.replace_sib(s, old, new);
            }
        }
        if parent != NIL {
            for i in 0..2 {
                if self.nodes[parent].ends[i] == old {
                    self.nodes[parent].ends[i] = new;
                }
            }
        }
        if self.root == old {
            self.root = new;
        }
        let o = &mut self.nodes[old];
        o.sib = [NIL, NIL];
        o.parent = NIL;
    }

    fn kill(&mut self, x: NodeId) {
        let n = &mut self.nodes[x];
        n.kind = NodeKind::Dead;
        n.sib = [NIL, NIL];
        n.ends = [NIL, NIL];
        n.parent = NIL;
        n.count = 0;
    }

    fn touch(&mut self, x: NodeId) {
        self.touched.push(x);
    }

    fn reset_scratch(&mut self) {
        let touched = std::mem::take(&mut self.touched);
        for &x in &touched {
            let n = &mut self.nodes[x];
            n.mark = Mark::Unmarked;
            n.label = Label::Empty;
            n.pertinent_children = 0;
            n.pertinent_leaves = 0;
            n.full_children.clear();
            n.partial_children.clear();
        }
        self.touched = touched;
        self.touched.clear();
    }

    /// Reduces `set` in place. On error the tree is left in an unspecified
    /// state and must be discarded.
    pub(crate) fn reduce_in_place(&mut self, set: &[usize]) -> Result<(), Infeasible> {
        let mut leaves: Vec<NodeId> = set.iter().map(|&e| self.leaf_of[e]).collect();
        leaves.sort_unstable();
        leaves.dedup();
        if leaves.len() <= 1 || leaves.len() == self.elements() {
            return Ok(());
        }
        self.reset_scratch();
        let result = self
            .bubble(&leaves)
            .and_then(|()| self.apply_templates(&leaves));
        self.reset_scratch();
        result
    }

    fn bubble(&mut self, leaves: &[NodeId]) -> Result<(), Infeasible> {
        let mut queue: VecDeque<NodeId> = VecDeque::with_capacity(leaves.len());
        for &l in leaves {
            self.nodes[l].mark = Mark::Queued;
            self.touch(l);
            queue.push_back(l);
        }
        let mut block_count: usize = 0;
        let mut off_the_top: usize = 0;
        let mut blocked: Vec<NodeId> = Vec::new();

        while queue.len() + block_count + off_the_top > 1 {
            let x = queue.pop_front().ok_or(Infeasible)?;
            self.nodes[x].mark = Mark::Blocked;
            let sib = self.nodes[x].sib;
            let in_q = self.nodes[x].in_q;
            let mut blocked_sibs: [NodeId; 2] = [NIL, NIL];
            let mut unblocked_sib = NIL;
            if in_q {
                for (i, &s) in sib.iter().enumerate() {
                    if s == NIL {
                        continue;
                    }
                    match self.nodes[s].mark {
                        Mark::Blocked => blocked_sibs[i] = s,
                        Mark::Unblocked => unblocked_sib = s,
                        _ => {}
                    }
                }
            }
            let n_blocked = blocked_sibs.iter().filter(|&&s| s != NIL).count();
            let parent_known = !in_q || sib[0] == NIL || sib[1] == NIL;
            let y = if unblocked_sib != NIL {
                Some(self.nodes[unblocked_sib].parent)
            } else if parent_known {
                Some(self.nodes[x].parent)
            } else {
                None
            };
            match y {
                Some(y) => {
                    self.nodes[x].parent = y;
                    self.nodes[x].mark = Mark::Unblocked;
                    let mut freed = 0;
                    for &b in blocked_sibs.iter().filter(|&&s| s != NIL) {
                        let mut prev = x;
                        let mut cur = b;
                        while cur != NIL && self.nodes[cur].mark == Mark::Blocked {
                            self.nodes[cur].mark = Mark::Unblocked;
                            self.nodes[cur].parent = y;
                            freed += 1;
                            let next = self.other_sib(cur, prev);
                            prev = cur;
                            cur = next;
                        }
                    }
                    if y == NIL {
                        off_the_top = 1;
                    } else {
                        self.nodes[y].pertinent_children += 1 + freed;
                        if self.nodes[y].mark == Mark::Unmarked {
                            self.nodes[y].mark = Mark::Queued;
                            self.touch(y);
                            queue.push_back(y);
                        }
                    }
                    block_count -= n_blocked;
                }
                None => {
                    block_count = block_count + 1 - n_blocked;
                    blocked.push(x);
                }
            }
        }

        if block_count > 1 || (off_the_top == 1 && block_count != 0) {
            return Err(Infeasible);
        }
        if block_count == 1 {
            // The pertinent root lies strictly inside one Q-node: gather the
            // blocked run of siblings under a pseudonode.
            let start = *blocked
                .iter()
                .find(|&&b| self.nodes[b].mark == Mark::Blocked)
                .expect("blocked run without blocked node");
            let mut left = Vec::new();
            let mut chain = vec![start];
            for (i, &s) in self.nodes[start].sib.clone().iter().enumerate() {
                let mut prev = start;
                let mut cur = s;
                while cur != NIL && self.nodes[cur].mark == Mark::Blocked {
                    if i == 0 {
                        left.push(cur);
                    } else {
                        chain.push(cur);
                    }
                    let next = self.other_sib(cur, prev);
                    prev = cur;
                    cur = next;
                }
            }
            left.reverse();
            left.append(&mut chain);
            let chain = left;
            let pseudo = self.alloc(NodeKind::Q);
            let len = chain.len();
            self.nodes[pseudo].ends = [chain[0], chain[len - 1]];
            self.nodes[pseudo].count = len;
            self.nodes[pseudo].pertinent_children = len;
            self.nodes[pseudo].mark = Mark::Unblocked;
            for &c in &chain {
                self.nodes[c].parent = pseudo;
                self.nodes[c].mark = Mark::Unblocked;
            }
            self.pseudo = pseudo;
        } else {
            self.pseudo = NIL;
        }
        Ok(())
    }

    fn apply_templates(&mut self, leaves: &[NodeId]) -> Result<(), Infeasible> {
        let total = leaves.len();
        let mut queue: VecDeque<NodeId> = leaves.iter().copied().collect();
        for &l in leaves {
            self.nodes[l].pertinent_leaves = 1;
        }
        while let Some(x) = queue.pop_front() {
            let leaves_here = self.nodes[x].pertinent_leaves;
            if leaves_here < total {
                let y = self.nodes[x].parent;
                assert!(
                    y != NIL,
                    "pq-tree corrupted: pertinent node {x} has no parent"
                );
                let (node, label) = self.non_root_template(x)?;
                let py = &mut self.nodes[y];
                py.pertinent_leaves += leaves_here;
                py.pertinent_children -= 1;
                match label {
                    Label::Full => py.full_children.push(node),
                    Label::Partial => py.partial_children.push(node),
                    Label::Empty => unreachable!("pertinent node labelled empty"),
                }
                if py.pertinent_children == 0 {
                    queue.push_back(y);
                }
            } else {
                self.root_template(x)?;
                if self.pseudo != NIL {
                    let p = self.pseudo;
                    self.kill(p);
                    self.pseudo = NIL;
                }
                return Ok(());
            }
        }
        panic!("pq-tree corrupted: reduction never reached the pertinent root");
    }

    fn set_label(&mut self, x: NodeId, label: Label) {
        self.nodes[x].label = label;
        self.touch(x);
    }

    fn non_root_template(&mut self, x: NodeId) -> Result<(NodeId, Label), Infeasible> {
        match self.nodes[x].kind {
            NodeKind::Leaf(_) => {
                self.set_label(x, Label::Full);
                Ok((x, Label::Full))
            }
            NodeKind::P => self.p_non_root(x),
            NodeKind::Q => {
                let label = self.q_templates(x, false)?;
                self.set_label(x, label);
                Ok((x, label))
            }
            NodeKind::Dead => unreachable!(),
        }
    }

    fn root_template(&mut self, x: NodeId) -> Result<(), Infeasible> {
        match self.nodes[x].kind {
            NodeKind::Leaf(_) => Ok(()),
            NodeKind::P => self.p_root(x),
            NodeKind::Q if x == self.pseudo => self.pseudo_template(x),
            NodeKind::Q => self.q_templates(x, true).map(|_| ()),
            NodeKind::Dead => unreachable!(),
        }
    }

    /// Detaches the given full children of P-node `x` and groups them: a
    /// single child is returned as is, several go under a new full P-node.
    fn group_full(&mut self, x: NodeId, full: &[NodeId]) -> Option<NodeId> {
        for &c in full {
            self.remove_child(x, c);
        }
        match full {
            [] => None,
            [c] => Some(*c),
            _ => {
                let p = self.alloc(NodeKind::P);
                for &c in full {
                    self.append_child(p, c, 1);
                }
                self.set_label(p, Label::Full);
                Some(p)
            }
        }
    }

    /// Turns the remaining (empty) children of P-node `x` into one node:
    /// `x` itself if it keeps at least two, the lone child otherwise.
    /// `x` must already be detached from the tree.
    fn shrink_empty(&mut self, x: NodeId) -> Option<NodeId> {
        match self.nodes[x].count {
            0 => {
                self.kill(x);
                None
            }
            1 => {
                let c = self.nodes[x].ends[0];
                self.remove_child(x, c);
                self.kill(x);
                Some(c)
            }
            _ => {
                self.set_label(x, Label::Empty);
                Some(x)
            }
        }
    }

    fn full_end(&self, q: NodeId) -> usize {
        let ends = self.nodes[q].ends;
        if self.nodes[ends[0]].label == Label::Full {
            0
        } else {
            assert_eq!(
                self.nodes[ends[1]].label,
                Label::Full,
                "partial Q-node {q} has no full end"
            );
            1
        }
    }

    fn p_non_root(&mut self, x: NodeId) -> Result<(NodeId, Label), Infeasible> {
        let full = std::mem::take(&mut self.nodes[x].full_children);
        let partial = std::mem::take(&mut self.nodes[x].partial_children);
        let count = self.nodes[x].count;
        match partial.len() {
            // P1
            0 if full.len() == count => {
                self.set_label(x, Label::Full);
                Ok((x, Label::Full))
            }
            // P3
            0 => {
                let fg = self
                    .group_full(x, &full)
                    .expect("pertinent P-node without pertinent children");
                let q = self.alloc(NodeKind::Q);
                self.replace_node(x, q);
                let eg = self.shrink_empty(x).expect("P3 without empty children");
                self.append_child(q, eg, 1);
                self.append_child(q, fg, 1);
                self.set_label(fg, Label::Full);
                self.set_label(q, Label::Partial);
                Ok((q, Label::Partial))
            }
            // P5
            1 => {
                let y = partial[0];
                let fg = self.group_full(x, &full);
                self.remove_child(x, y);
                self.replace_node(x, y);
                let fe = self.full_end(y);
                if let Some(fg) = fg {
                    self.append_child(y, fg, fe);
                    self.set_label(fg, Label::Full);
                }
                if let Some(eg) = self.shrink_empty(x) {
                    self.append_child(y, eg, 1 - fe);
                }
                self.set_label(y, Label::Partial);
                Ok((y, Label::Partial))
            }
            _ => Err(Infeasible),
        }
    }

    fn p_root(&mut self, x: NodeId) -> Result<(), Infeasible> {
        let full = std::mem::take(&mut self.nodes[x].full_children);
        let partial = std::mem::take(&mut self.nodes[x].partial_children);
        let count = self.nodes[x].count;
        match partial.len() {
            // P1: nothing to do; P2: group the full children
            0 => {
                if full.len() >= 2 && full.len() < count {
                    let fg = self.group_full(x, &full).unwrap();
                    self.append_child(x, fg, 1);
                }
                Ok(())
            }
            // P4
            1 => {
                let y = partial[0];
                if let Some(fg) = self.group_full(x, &full) {
                    let fe = self.full_end(y);
                    self.append_child(y, fg, fe);
                    self.set_label(fg, Label::Full);
                }
                self.collapse_single_child(x);
                Ok(())
            }
            // P6
            2 => {
                let (y1, y2) = (partial[0], partial[1]);
                if let Some(fg) = self.group_full(x, &full) {
                    let fe = self.full_end(y1);
                    self.append_child(y1, fg, fe);
                    self.set_label(fg, Label::Full);
                }
                self.remove_child(x, y2);
                let fe1 = self.full_end(y1);
                let fe2 = self.full_end(y2);
                let f1 = self.nodes[y1].ends[fe1];
                let f2 = self.nodes[y2].ends[fe2];
                let e2 = self.nodes[y2].ends[1 - fe2];
                self.replace_sib(f1, NIL, f2);
                self.replace_sib(f2, NIL, f1);
                self.nodes[y1].ends[fe1] = e2;
                self.nodes[e2].parent = y1;
                let c2 = self.nodes[y2].count;
                self.nodes[y1].count += c2;
                self.kill(y2);
                self.collapse_single_child(x);
                Ok(())
            }
            _ => Err(Infeasible),
        }
    }

    /// Replaces an inner node left with a single child by that child.
    fn collapse_single_child(&mut self, x: NodeId) {
        if self.nodes[x].count == 1 {
            let c = self.nodes[x].ends[0];
            self.remove_child(x, c);
            self.replace_node(x, c);
            self.kill(x);
        }
    }

    /// Splices the children of partial Q-node `y` into its parent Q-node `x`
    /// in place of `y`, with the full end of `y` facing sibling `toward`
    /// (NIL means facing the end of `x`).
    fn splice_partial(&mut self, x: NodeId, y: NodeId, toward: NodeId) {
        let away = self.other_sib(y, toward);
        let fe = self.full_end(y);
        let f = self.nodes[y].ends[fe];
        let e = self.nodes[y].ends[1 - fe];
        self.replace_sib(f, NIL, toward);
        self.replace_sib(e, NIL, away);
        for (nb, child) in [(toward, f), (away, e)] {
            if nb != NIL {
                self.replace_sib(nb, y, child);
            } else if x != NIL {
                for i in 0..2 {
                    if self.nodes[x].ends[i] == y {
                        self.nodes[x].ends[i] = child;
                    }
                }
                self.nodes[child].parent = x;
            }
        }
        if x != NIL {
            let c = self.nodes[y].count;
            self.nodes[x].count += c - 1;
        }
        self.kill(y);
    }

    fn walk_pertinent(&self, start: NodeId, first: NodeId, through_full: bool) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut prev = start;
        let mut cur = first;
        while cur != NIL {
            match self.nodes[cur].label {
                Label::Full if through_full => out.push(cur),
                Label::Partial => {
                    out.push(cur);
                    break;
                }
                _ => break,
            }
            let next = self.other_sib(cur, prev);
            prev = cur;
            cur = next;
        }
        out
    }

    /// Q1, Q2 and (at the root) Q3. Returns the label of `x` afterwards.
    fn q_templates(&mut self, x: NodeId, is_root: bool) -> Result<Label, Infeasible> {
        let nf = self.nodes[x].full_children.len();
        let np = self.nodes[x].partial_children.len();
        if np > 2 || (!is_root && np > 1) {
            return Err(Infeasible);
        }
        let start = if nf > 0 {
            self.nodes[x].full_children[0]
        } else {
            self.nodes[x].partial_children[0]
        };
        let through = self.nodes[start].label == Label::Full;
        let sib = self.nodes[start].sib;
        let mut left = self.walk_pertinent(start, sib[0], through);
        let right = self.walk_pertinent(start, sib[1], through);
        if !through {
            // a partial start may only pair with one adjacent partial
            if !left.is_empty() && !right.is_empty() {
                return Err(Infeasible);
            }
        }
        left.reverse();
        let mut block = left;
        block.push(start);
        block.extend(right);
        if block.len() != nf + np {
            return Err(Infeasible);
        }
        let first = block[0];
        let last = *block.last().unwrap();
        let outer = |t: &PQTree, node: NodeId, inner: NodeId| t.other_sib(node, inner);
        let (first_outer, last_outer) = if block.len() > 1 {
            (
                outer(self, first, block[1]),
                outer(self, last, block[block.len() - 2]),
            )
        } else {
            (self.nodes[first].sib[0], self.nodes[first].sib[1])
        };
        if np == 0 && first_outer == NIL && last_outer == NIL {
            // Q1
            return Ok(Label::Full);
        }

        if !is_root {
            // Q2: the block sits at an end of x, partial child (if any) innermost
            let is_partial = |t: &PQTree, n: NodeId| t.nodes[n].label == Label::Partial;
            if block.len() == 1 {
                let s = self.nodes[first].sib;
                if s[0] != NIL && s[1] != NIL {
                    return Err(Infeasible);
                }
                if is_partial(self, first) {
                    self.splice_partial(x, first, NIL);
                }
                return Ok(Label::Partial);
            }
            let oriented = if first_outer == NIL && !is_partial(self, first) {
                Some(block.clone())
            } else if last_outer == NIL && !is_partial(self, last) {
                Some(block.iter().rev().copied().collect::<Vec<_>>())
            } else {
                None
            };
            let Some(b) = oriented else {
                return Err(Infeasible);
            };
            let tail = *b.last().unwrap();
            if is_partial(self, tail) {
                self.splice_partial(x, tail, b[b.len() - 2]);
            }
            return Ok(Label::Partial);
        }

        // Q3 at the root
        assert!(
            block.len() >= 2,
            "root Q-node with a single pertinent child"
        );
        if self.nodes[first].label == Label::Partial {
            self.splice_partial(x, first, block[1]);
        }
        if self.nodes[last].label == Label::Partial {
            let toward = block[block.len() - 2];
            // `toward` may itself have been a partial child just spliced away
            let toward = if self.nodes[toward].kind == NodeKind::Dead {
                self.other_sib(last, last_outer)
            } else {
                toward
            };
            self.splice_partial(x, last, toward);
        }
        Ok(Label::Full)
    }

    /// Q3 applied to a run of siblings gathered under a pseudonode.
    fn pseudo_template(&mut self, ps: NodeId) -> Result<(), Infeasible> {
        let len = self.nodes[ps].count;
        let nf = self.nodes[ps].full_children.len();
        let np = self.nodes[ps].partial_children.len();
        if nf + np != len || np > 2 {
            return Err(Infeasible);
        }
        let [e0, e1] = self.nodes[ps].ends;
        let mut run = Vec::with_capacity(len);
        let mut prev = NIL;
        // walk inward from e0: its neighbour outside the run is not pertinent
        let s = self.nodes[e0].sib;
        let inward = if len == 1 {
            NIL
        } else if s[0] != NIL && self.nodes[s[0]].parent == ps {
            s[0]
        } else {
            s[1]
        };
        let mut cur = e0;
        for i in 0..len {
            run.push(cur);
            let next = if i == 0 {
                inward
            } else {
                self.other_sib(cur, prev)
            };
            prev = cur;
            cur = next;
        }
        debug_assert_eq!(*run.last().unwrap(), e1);
        for &c in &run[1..len.saturating_sub(1)] {
            if self.nodes[c].label != Label::Full {
                return Err(Infeasible);
            }
        }
        if len >= 2 {
            if self.nodes[e0].label == Label::Partial {
                self.splice_partial(NIL, e0, run[1]);
            }
            if self.nodes[e1].label == Label::Partial {
                let toward = run[len - 2];
                let toward = if self.nodes[toward].kind == NodeKind::Dead {
                    // e0 was spliced and was adjacent to e1
                    let s = self.nodes[e1].sib;
                    if s[0] != NIL && self.nodes[s[0]].label == Label::Full {
                        s[0]
                    } else {
                        s[1]
                    }
                } else {
                    toward
                };
                self.splice_partial(NIL, e1, toward);
            }
        }
        Ok(())
    }
}
