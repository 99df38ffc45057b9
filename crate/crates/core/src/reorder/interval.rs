use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Handles, Incompatible, SortedEndpointSequence};
use crate::pq_tree::{NodeId, NodeKind, PQTree};

/// Handles of every node's leaf set, indexed by node id (entries of dead
/// nodes are meaningless).
pub fn compute_handles(t: &PQTree, seq: &SortedEndpointSequence) -> Vec<Handles> {
    assert_eq!(
        t.elements(),
        seq.len(),
        "sequence and tree have different element counts"
    );
    let mut h = vec![Handles::default(); t.node_count()];
    for x in t.post_order() {
        h[x] = match t.kind(x) {
            NodeKind::Leaf(e) => Handles {
                lower: seq.right_pos(e),
                upper: seq.left_pos(e),
            },
            _ => t.children(x).iter().fold(
                Handles {
                    lower: usize::MAX,
                    upper: 0,
                },
                |acc, &c| Handles {
                    lower: acc.lower.min(h[c].lower),
                    upper: acc.upper.max(h[c].upper),
                },
            ),
        };
    }
    h
}

/// Reorders `t` so that its frontier extends the interval order of `seq`.
///
/// For each inner node the handles of its children are listed in endpoint
/// order (one bucket pass over the whole sequence serves all nodes). A
/// P-node then repeatedly removes a minimal child, the lowest index among
/// ties. A Q-node keeps or reverses its order.
pub fn reorder_interval(
    mut t: PQTree,
    seq: &SortedEndpointSequence,
) -> Result<PQTree, Incompatible> {
    let Some(root) = t.root() else { return Ok(t) };
    let handles = compute_handles(&t, seq);
    let size = t.node_count();
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); size];
    let mut inner = Vec::new();
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        if matches!(t.kind(x), NodeKind::P | NodeKind::Q) {
            children[x] = t.children(x);
            stack.extend_from_slice(&children[x]);
            inner.push(x);
        }
    }

    // restricted[x] lists (child index, is_lower) in endpoint order
    let positions = 2 * seq.len();
    let mut bucket: Vec<Vec<(NodeId, u32, bool)>> = vec![Vec::new(); positions];
    for &x in &inner {
        if t.kind(x) != NodeKind::P {
            continue;
        }
        for (i, &c) in children[x].iter().enumerate() {
            bucket[handles[c].lower].push((x, i as u32, true));
            bucket[handles[c].upper].push((x, i as u32, false));
        }
    }
    let mut restricted: Vec<Vec<(u32, bool)>> = vec![Vec::new(); size];
    for items in bucket {
        for (x, i, lower) in items {
            restricted[x].push((i, lower));
        }
    }

    for &x in &inner {
        let ch = &children[x];
        let hs: Vec<Handles> = ch.iter().map(|&c| handles[c]).collect();
        match t.kind(x) {
            NodeKind::P => {
                let order = sort_p_children(&hs, &restricted[x]).ok_or(Incompatible)?;
                let new_order: Vec<NodeId> = order.iter().map(|&i| ch[i]).collect();
                t.set_child_order(x, &new_order);
            }
            NodeKind::Q => {
                if !q_order_valid(hs.iter()) {
                    if q_order_valid(hs.iter().rev()) {
                        t.reverse_q(x);
                    } else {
                        return Err(Incompatible);
                    }
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(t)
}

/// Whether listing the sets in this order never puts `c_j ⊴ c_i` for `j > i`.
fn q_order_valid<'a>(hs: impl DoubleEndedIterator<Item = &'a Handles>) -> bool {
    // scanning from the right, every upper handle must precede the smallest
    // lower handle seen so far
    let mut min_lower = usize::MAX;
    for h in hs.rev() {
        if min_lower < h.upper {
            return false;
        }
        min_lower = min_lower.min(h.lower);
    }
    true
}

/// Topological sort of the children of a P-node under `⊴`, driven by the
/// restricted handle ordering. Returns `None` on a cycle.
fn sort_p_children(hs: &[Handles], restricted: &[(u32, bool)]) -> Option<Vec<usize>> {
    let k = hs.len();
    let lowers: Vec<usize> = restricted
        .iter()
        .filter(|r| r.1)
        .map(|r| r.0 as usize)
        .collect();
    let uppers: Vec<usize> = restricted
        .iter()
        .filter(|r| !r.1)
        .map(|r| r.0 as usize)
        .collect();
    let mut removed = vec![false; k];
    let mut queued = vec![false; k];
    let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    let mut pending: Vec<usize> = Vec::new();
    // p1, p2: first and second remaining entries of `lowers`
    let (mut p1, mut p2) = (0usize, 0usize);
    let mut q = 0usize;
    let mut holder = usize::MAX;
    let mut out = Vec::with_capacity(k);

    while out.len() < k {
        while p1 < k && removed[lowers[p1]] {
            p1 += 1;
        }
        p2 = p2.max(p1 + 1);
        while p2 < k && removed[lowers[p2]] {
            p2 += 1;
        }
        let l1 = (p1 < k).then(|| hs[lowers[p1]].lower);
        let l2 = (p2 < k).then(|| hs[lowers[p2]].lower);
        let new_holder = if p1 < k { lowers[p1] } else { usize::MAX };
        if new_holder != holder {
            // everything waiting behind the old first lower handle is free now
            for c in pending.drain(..) {
                if !queued[c] {
                    queued[c] = true;
                    heap.push(Reverse(c));
                }
            }
            holder = new_holder;
        }
        while q < k && l2.is_none_or(|l2| hs[uppers[q]].upper < l2) {
            let c = uppers[q];
            q += 1;
            if removed[c] || queued[c] {
                continue;
            }
            if c == holder || l1.is_none_or(|l1| hs[c].upper < l1) {
                queued[c] = true;
                heap.push(Reverse(c));
            } else {
                pending.push(c);
            }
        }
        let Reverse(c) = heap.pop()?;
        removed[c] = true;
        out.push(c);
    }
    Some(out)
}
