//! Brute-force reference implementations for small inputs.
//!
//! Nothing here calls into the fast paths; the functions only rely on the
//! graph and rational containers.
//!
//! # Extension search
//!
//! Whether intervals realize a graph depends only on the left-to-right
//! order of their endpoints, with ties, relative to the pre-drawn ones. The
//! search builds that order as a sequence of coordinate *groups*. A group
//! opens some intervals and closes some (possibly the same) ones at one
//! shared coordinate. Groups at pre-drawn coordinates (anchors) contain
//! exactly the pre-drawn endpoints at that coordinate plus any free
//! endpoints; all other groups contain free endpoints only and lie strictly
//! between anchors. Every endpoint order is reached, up to merging two
//! neighbouring free groups when the first closes nothing or the second
//! opens nothing, which never changes any intersection. A found order is
//! realized with concrete rationals: anchors keep their value and free
//! groups are spread evenly inside their gap (or step by 1 past the ends).

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::graph::{ClosedInterval, Graph};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("instance too large for brute force ({what} = {got}, limit {limit})")]
pub struct TooLarge {
    pub what: &'static str,
    pub got: usize,
    pub limit: usize,
}

fn bound(what: &'static str, got: usize, limit: usize) -> Result<(), TooLarge> {
    if got > limit {
        Err(TooLarge { what, got, limit })
    } else {
        Ok(())
    }
}

/// All orderings of `0..elements` in which every set is consecutive.
pub fn brute_consecutive(
    elements: usize,
    sets: &[Vec<usize>],
) -> Result<BTreeSet<Vec<usize>>, TooLarge> {
    bound("elements", elements, 8)?;
    let mut out = BTreeSet::new();
    let mut perm: Vec<usize> = (0..elements).collect();
    heap_permutations(&mut perm, elements, &mut |p| {
        let ok = sets.iter().all(|s| {
            let idx: Vec<usize> = p
                .iter()
                .enumerate()
                .filter(|(_, e)| s.contains(e))
                .map(|(i, _)| i)
                .collect();
            idx.is_empty() || idx[idx.len() - 1] - idx[0] + 1 == idx.len()
        });
        if ok {
            out.insert(p.to_vec());
        }
    });
    Ok(out)
}

fn heap_permutations(a: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(a);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(a, k - 1, f);
        if k.is_multiple_of(2) {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
    heap_permutations(a, k - 1, f);
}

/// `I1 ⊴ I2` by definition: some `a ∈ I1`, `b ∈ I2` with `r_a ≤ ℓ_b`.
pub fn brute_set_precedes(i1: &[ClosedInterval], i2: &[ClosedInterval]) -> bool {
    i1.iter().any(|a| i2.iter().any(|b| a.right <= b.left))
}

/// Naive check that `rep` represents `g` with `predrawn` kept verbatim.
pub fn naive_is_extension(
    g: &Graph,
    predrawn: &[(usize, ClosedInterval)],
    rep: &[ClosedInterval],
) -> bool {
    if rep.len() != g.n() || predrawn.iter().any(|(v, iv)| rep[*v] != *iv) {
        return false;
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let meet = rep[u].left <= rep[v].right && rep[v].left <= rep[u].right;
            if meet != g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// A representation of `g` extending `predrawn`, if one exists.
pub fn brute_extend(
    g: &Graph,
    predrawn: &[(usize, ClosedInterval)],
) -> Result<Option<Vec<ClosedInterval>>, TooLarge> {
    bound("vertices", g.n(), 8)?;
    bound("pre-drawn intervals", predrawn.len(), 4)?;
    let n = g.n();
    let mut adj = vec![0u32; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut coords: Vec<Rational> = predrawn
        .iter()
        .flat_map(|(_, iv)| [iv.left.clone(), iv.right.clone()])
        .collect();
    coords.sort();
    coords.dedup();
    let mut fixed_mask = 0u32;
    let anchors: Vec<(u32, u32)> = coords
        .iter()
        .map(|x| {
            let mut open = 0u32;
            let mut close = 0u32;
            for (v, iv) in predrawn {
                if iv.left == *x {
                    open |= 1 << v;
                }
                if iv.right == *x {
                    close |= 1 << v;
                }
            }
            (open, close)
        })
        .collect();
    for (v, _) in predrawn {
        fixed_mask |= 1 << v;
    }
    let mut search = Search {
        n,
        adj,
        anchors: &anchors,
        fixed: fixed_mask,
        failed: HashSet::new(),
        groups: Vec::new(),
    };
    if !search.run(0, 0, 0, Prev::Anchor) {
        return Ok(None);
    }
    let rep = realize(n, &search.groups, &coords, predrawn);
    assert!(
        naive_is_extension(g, predrawn, &rep),
        "oracle produced an invalid witness"
    );
    Ok(Some(rep))
}

/// An interval representation of `g`, if one exists.
pub fn brute_interval(g: &Graph) -> Result<Option<Vec<ClosedInterval>>, TooLarge> {
    brute_extend(g, &[])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Prev {
    Anchor,
    FreeClosing,
    FreeOpeningOnly,
}

#[derive(Debug, Clone, Copy)]
struct Group {
    open: u32,
    close: u32,
    anchor: Option<usize>,
}

struct Search<'a> {
    n: usize,
    adj: Vec<u32>,
    anchors: &'a [(u32, u32)],
    fixed: u32,
    failed: HashSet<(u32, u32, usize, Prev)>,
    groups: Vec<Group>,
}

fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    // all submasks of `mask`, including 0 and `mask`
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & mask;
        }
        Some(cur)
    })
}

impl Search<'_> {
    fn all(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// Whether opening `open` now is consistent with what is open or closed.
    fn can_open(&self, opened: u32, closed: u32, open: u32) -> bool {
        let alive = opened & !closed;
        let mut rest = open;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let others = (alive | open) & !(1 << v);
            if self.adj[v] & others != others || self.adj[v] & closed != 0 {
                return false;
            }
        }
        true
    }

    fn run(&mut self, opened: u32, closed: u32, next_anchor: usize, prev: Prev) -> bool {
        let all = self.all();
        if closed == all && next_anchor == self.anchors.len() {
            return true;
        }
        let key = (opened, closed, next_anchor, prev);
        if self.failed.contains(&key) {
            return false;
        }
        let free = !self.fixed & all;
        // next group at the anchor
        if next_anchor < self.anchors.len() {
            let (a_open, a_close) = self.anchors[next_anchor];
            for extra_open in subsets(free & !opened) {
                let open = a_open | extra_open;
                if !self.can_open(opened, closed, open) {
                    continue;
                }
                let alive_now = (opened | open) & !closed;
                for extra_close in subsets(free & alive_now) {
                    let close = a_close | extra_close;
                    self.groups.push(Group {
                        open,
                        close,
                        anchor: Some(next_anchor),
                    });
                    if self.run(opened | open, closed | close, next_anchor + 1, Prev::Anchor) {
                        return true;
                    }
                    self.groups.pop();
                }
            }
        }
        // next group free
        if prev != Prev::FreeOpeningOnly {
            for open in subsets(free & !opened) {
                if prev == Prev::FreeClosing && open == 0 {
                    continue;
                }
                if !self.can_open(opened, closed, open) {
                    continue;
                }
                let alive_now = (opened | open) & !closed;
                for close in subsets(free & alive_now) {
                    if open == 0 && close == 0 {
                        continue;
                    }
                    let next = if close == 0 {
                        Prev::FreeOpeningOnly
                    } else {
                        Prev::FreeClosing
                    };
                    self.groups.push(Group {
                        open,
                        close,
                        anchor: None,
                    });
                    if self.run(opened | open, closed | close, next_anchor, next) {
                        return true;
                    }
                    self.groups.pop();
                }
            }
        }
        self.failed.insert(key);
        false
    }
}

fn realize(
    n: usize,
    groups: &[Group],
    coords: &[Rational],
    predrawn: &[(usize, ClosedInterval)],
) -> Vec<ClosedInterval> {
    let mut at: Vec<Rational> = vec![Rational::zero(); groups.len()];
    let mut i = 0;
    while i < groups.len() {
        if let Some(a) = groups[i].anchor {
            at[i] = coords[a].clone();
            i += 1;
            continue;
        }
        let mut j = i;
        while j < groups.len() && groups[j].anchor.is_none() {
            j += 1;
        }
        let run = j - i;
        let before = (i > 0).then(|| at[i - 1].clone());
        let after = groups.get(j).map(|g| coords[g.anchor.unwrap()].clone());
        for (step, slot) in (i..j).enumerate() {
            let s = step as i64 + 1;
            at[slot] = match (&before, &after) {
                (None, None) => Rational::from(s),
                (None, Some(b)) => b.add_int(s - run as i64 - 1),
                (Some(a), None) => a.add_int(s),
                (Some(a), Some(b)) => a + &(&(b - a) * &Rational::new(s, run as i64 + 1)),
            };
        }
        i = j;
    }
    let mut left = vec![Rational::zero(); n];
    let mut right = vec![Rational::zero(); n];
    for (g, x) in groups.iter().zip(&at) {
        for v in 0..n {
            if g.open >> v & 1 == 1 {
                left[v] = x.clone();
            }
            if g.close >> v & 1 == 1 {
                right[v] = x.clone();
            }
        }
    }
    let mut rep: Vec<ClosedInterval> = left
        .into_iter()
        .zip(right)
        .map(|(l, r)| ClosedInterval::new(l, r))
        .collect();
    for (v, iv) in predrawn {
        rep[*v] = iv.clone();
    }
    rep
}

/// Instance of simultaneous representation for the oracle: graphs and, per
/// graph, the local ids of the shared vertices in a common order.
pub struct SimInstanceRef<'a> {
    pub graphs: &'a [Graph],
    pub shared: &'a [Vec<usize>],
}

/// Simultaneous representations by trying every integer placement of the
/// shared intervals in `0..=2ℓ` (one per endpoint order) and
/// brute-force extending each graph.
pub fn brute_simultaneous(
    inst: &SimInstanceRef<'_>,
) -> Result<Option<Vec<Vec<ClosedInterval>>>, TooLarge> {
    let l = inst.shared.first().map_or(0, Vec::len);
    bound("shared vertices", l, 3)?;
    let top = 2 * l as i64;
    let mut choices: Vec<(i64, i64)> = Vec::new();
    for a in 0..=top {
        for b in a..=top {
            choices.push((a, b));
        }
    }
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut idx = vec![0usize; l];
    loop {
        let assign: Vec<(i64, i64)> = idx.iter().map(|&i| choices[i]).collect();
        // normalise to ranks so equivalent placements are tried once
        let mut vals: Vec<i64> = assign.iter().flat_map(|&(a, b)| [a, b]).collect();
        vals.sort_unstable();
        vals.dedup();
        let rank = |x: i64| vals.binary_search(&x).unwrap();
        let key: Vec<(usize, usize)> = assign.iter().map(|&(a, b)| (rank(a), rank(b))).collect();
        if seen.insert(key) {
            if let Some(reps) = try_assignment(inst, &assign)? {
                return Ok(Some(reps));
            }
        }
        // next assignment
        let mut k = 0;
        while k < l {
            idx[k] += 1;
            if idx[k] < choices.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == l {
            return Ok(None);
        }
    }
}

fn try_assignment(
    inst: &SimInstanceRef<'_>,
    assign: &[(i64, i64)],
) -> Result<Option<Vec<Vec<ClosedInterval>>>, TooLarge> {
    let mut reps = Vec::with_capacity(inst.graphs.len());
    for (g, shared) in inst.graphs.iter().zip(inst.shared) {
        let predrawn: Vec<(usize, ClosedInterval)> = shared
            .iter()
            .zip(assign)
            .map(|(&v, &(a, b))| (v, ClosedInterval::ints(a, b)))
            .collect();
        // pre-drawn intervals must already realize the shared subgraph
        for (i, (u, iu)) in predrawn.iter().enumerate() {
            for (v, iv) in &predrawn[i + 1..] {
                if (iu.left <= iv.right && iv.left <= iu.right) != g.has_edge(*u, *v) {
                    return Ok(None);
                }
            }
        }
        match brute_extend(g, &predrawn)? {
            Some(rep) => reps.push(rep),
            None => return Ok(None),
        }
    }
    Ok(Some(reps))
}
