use std::cmp::Reverse;
use std::collections::BinaryHeap;

use petgraph::unionfind::UnionFind;

use super::{DigraphOrder, Incompatible};
use crate::pq_tree::{NodeId, NodeKind, PQTree};

/// Reorders `t` so that its frontier extends `ord`, in O((e + m) α(e)).
///
/// Every arc is charged to the lowest common ancestor of its two leaves.
/// Nodes are then processed bottom-up; at a node each child subtree is
/// contracted to one vertex, so the arcs charged there form a digraph on the
/// children. A P-node takes a topological sort of it (lowest child index
/// first among ties), a Q-node keeps or reverses its order.
pub fn reorder_general(mut t: PQTree, ord: &DigraphOrder) -> Result<PQTree, Incompatible> {
    assert_eq!(
        t.elements(),
        ord.n(),
        "relation and tree have different element counts"
    );
    let Some(root) = t.root() else { return Ok(t) };
    if ord.arcs().is_empty() {
        return Ok(t);
    }
    let size = t.node_count();
    let order = t.post_order();
    let children: Vec<Vec<NodeId>> = (0..size)
        .map(|x| match t.kind(x) {
            NodeKind::P | NodeKind::Q => t.children(x),
            _ => Vec::new(),
        })
        .collect();
    let lca = offline_lca(&t, root, &children, ord);

    let mut charged: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, &x) in lca.iter().enumerate() {
        charged[x].push(i);
    }

    // leaves of each processed subtree form one set labelled with its top node
    let mut uf: UnionFind<usize> = UnionFind::new(size);
    let mut top: Vec<NodeId> = (0..size).collect();
    let mut child_index = vec![0usize; size];
    for &x in &order {
        let ch = &children[x];
        if ch.is_empty() {
            continue;
        }
        for (i, &c) in ch.iter().enumerate() {
            child_index[c] = i;
        }
        let k = ch.len();
        let arcs: Vec<(usize, usize)> = charged[x]
            .iter()
            .map(|&a| {
                let (u, v) = ord.arcs()[a];
                let cu = top[uf.find_mut(t.leaf(u))];
                let cv = top[uf.find_mut(t.leaf(v))];
                (child_index[cu], child_index[cv])
            })
            .collect();
        match t.kind(x) {
            NodeKind::P => {
                let sorted = topological_sort(k, &arcs).ok_or(Incompatible)?;
                let new_order: Vec<NodeId> = sorted.iter().map(|&i| ch[i]).collect();
                t.set_child_order(x, &new_order);
            }
            NodeKind::Q => {
                if arcs.iter().all(|&(a, b)| a < b) {
                } else if arcs.iter().all(|&(a, b)| a > b) {
                    t.reverse_q(x);
                } else {
                    return Err(Incompatible);
                }
            }
            _ => unreachable!(),
        }
        for &c in ch {
            uf.union(x, c);
        }
        top[uf.find_mut(x)] = x;
    }
    Ok(t)
}

/// Kahn's algorithm on `0..k`, always taking the lowest available index.
pub(crate) fn topological_sort(k: usize, arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; k];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(a, b) in arcs {
        indeg[b] += 1;
        out[a].push(b);
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..k).filter(|&i| indeg[i] == 0).map(Reverse).collect();
    let mut result = Vec::with_capacity(k);
    while let Some(Reverse(i)) = heap.pop() {
        result.push(i);
        for &j in &out[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                heap.push(Reverse(j));
            }
        }
    }
    (result.len() == k).then_some(result)
}

/// Tarjan's offline lowest common ancestors of the leaf pairs of every arc.
fn offline_lca(
    t: &PQTree,
    root: NodeId,
    children: &[Vec<NodeId>],
    ord: &DigraphOrder,
) -> Vec<NodeId> {
    let size = children.len();
    let mut queries: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t.elements()];
    for (i, &(a, b)) in ord.arcs().iter().enumerate() {
        queries[a].push((b, i));
        queries[b].push((a, i));
    }
    let mut uf: UnionFind<usize> = UnionFind::new(size);
    let mut ancestor: Vec<NodeId> = (0..size).collect();
    let mut done = vec![false; t.elements()];
    let mut lca = vec![usize::MAX; ord.arcs().len()];

    let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
    while let Some(&mut (x, ref mut next)) = stack.last_mut() {
        if *next < children[x].len() {
            let c = children[x][*next];
            *next += 1;
            stack.push((c, 0));
            continue;
        }
        stack.pop();
        if let NodeKind::Leaf(e) = t.kind(x) {
            done[e] = true;
            for &(other, i) in &queries[e] {
                if done[other] && lca[i] == usize::MAX {
                    lca[i] = ancestor[uf.find_mut(t.leaf(other))];
                }
            }
        }
        if let Some(&(p, _)) = stack.last() {
            uf.union(p, x);
            ancestor[uf.find_mut(p)] = p;
        }
    }
    lca
}
