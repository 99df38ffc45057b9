//! Left-to-right sweep computing where each clique-point may go.
//!
//! The distinct pre-drawn endpoint coordinates `x_1 < … < x_p` cut the line
//! into regions numbered `0..=2p`: region `2j` is the open part between
//! `x_j` and `x_{j+1}` (with `x_0 = -∞`, `x_{p+1} = +∞`) and region `2j+1` is
//! the single point `x_{j+1}`. A clique-point `cp(a)` may lie in a region
//! exactly when the region is covered by the pre-drawn intervals of `P(a)`
//! and by no others.

use crate::chordal::CliqueList;
use crate::graph::Graph;
use crate::rational::{Coord, Rational};
use crate::reorder::{Side, SortedEndpointSequence};

use super::PartialRepresentation;

/// The regions cut out by pre-drawn endpoints, with their cover counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parts {
    boundaries: Vec<Rational>,
    cover: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region<'a> {
    Point(&'a Rational),
    Open(Option<&'a Rational>, Option<&'a Rational>),
}

impl Parts {
    pub fn boundaries(&self) -> &[Rational] {
        &self.boundaries
    }

    pub fn region_count(&self) -> usize {
        2 * self.boundaries.len() + 1
    }

    /// Number of pre-drawn intervals covering region `r`.
    pub fn cover(&self, r: usize) -> usize {
        self.cover[r]
    }

    pub fn region(&self, r: usize) -> Region<'_> {
        let j = r / 2;
        if r % 2 == 1 {
            Region::Point(&self.boundaries[j])
        } else {
            let lo = j.checked_sub(1).map(|i| &self.boundaries[i]);
            Region::Open(lo, self.boundaries.get(j))
        }
    }

    /// Infimum of region `r`.
    pub fn inf(&self, r: usize) -> Coord {
        match self.region(r) {
            Region::Point(x) | Region::Open(Some(x), _) => Coord::At(x.clone()),
            Region::Open(None, _) => Coord::NegInf,
        }
    }

    /// Supremum of region `r`.
    pub fn sup(&self, r: usize) -> Coord {
        match self.region(r) {
            Region::Point(x) | Region::Open(_, Some(x)) => Coord::At(x.clone()),
            Region::Open(_, None) => Coord::PosInf,
        }
    }

    /// Length of the shortest bounded open part, if any exists.
    pub fn shortest_bounded(&self) -> Option<Rational> {
        self.boundaries.windows(2).map(|w| &w[1] - &w[0]).min()
    }
}

/// One class of cliques sharing the same set `P(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacementClass {
    /// Feasible regions, left to right.
    pub regions: Vec<usize>,
}

/// Feasible regions and the bounds `↶(a)`, `↷(a)` of every clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueConstraints {
    pub parts: Parts,
    pub classes: Vec<PlacementClass>,
    /// Class of each clique.
    pub class_of: Vec<usize>,
    /// `|P(a)|` per clique.
    pub predrawn_count: Vec<usize>,
}

impl CliqueConstraints {
    pub fn clique_count(&self) -> usize {
        self.class_of.len()
    }

    /// `↶(a)`: leftmost point where `cp(a)` may be placed (infimum).
    pub fn lo(&self, a: usize) -> Coord {
        let regions = &self.classes[self.class_of[a]].regions;
        self.parts.inf(regions[0])
    }

    /// `↷(a)`: rightmost point where `cp(a)` may be placed (supremum).
    pub fn hi(&self, a: usize) -> Coord {
        let regions = &self.classes[self.class_of[a]].regions;
        self.parts.sup(*regions.last().unwrap())
    }

    /// Boundary index of `↶(a)` / `↷(a)` on the scale `-∞ = 0`, `x_j = j`,
    /// `+∞ = p + 1`.
    fn lo_index(&self, a: usize) -> usize {
        let r = self.classes[self.class_of[a]].regions[0];
        if r % 2 == 1 {
            r / 2 + 1
        } else {
            r / 2
        }
    }

    fn hi_index(&self, a: usize) -> usize {
        let r = *self.classes[self.class_of[a]].regions.last().unwrap();
        r / 2 + 1
    }
}

/// No clique-point position exists for `clique`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unplaceable {
    pub clique: usize,
}

/// Computes the feasible regions of every clique in O(n + m) after the
/// endpoints are sorted.
pub fn sweep_constraints(
    g: &Graph,
    cliques: &CliqueList,
    partial: &PartialRepresentation,
) -> Result<CliqueConstraints, Unplaceable> {
    debug_assert_eq!(g.n(), partial.n());
    let c = cliques.len();
    let events = partial.sorted_events();

    let mut predrawn_count = vec![0usize; c];
    for (v, _) in partial.iter() {
        for &a in &cliques.member_of[v] {
            predrawn_count[a] += 1;
        }
    }

    let mut sweep = Sweep {
        classes: vec![PlacementClass {
            regions: Vec::new(),
        }],
        class_of: predrawn_count
            .iter()
            .map(|&s| if s == 0 { 0 } else { usize::MAX })
            .collect(),
        dead: vec![false; c],
        watched: vec![Vec::new(); partial.len() + 1],
    };
    let mut started = vec![0usize; c];
    let mut boundaries: Vec<Rational> = Vec::new();
    let mut cover: Vec<usize> = vec![0];
    let mut count = 0usize;
    sweep.record(0, 0);

    let mut i = 0;
    while i < events.len() {
        let x = partial.coord(&events[i]).clone();
        let mut j = i;
        while j < events.len() && *partial.coord(&events[j]) == x {
            j += 1;
        }
        let group = &events[i..j];
        for e in group.iter().filter(|e| e.side == Side::L) {
            count += 1;
            for &a in &cliques.member_of[e.vertex] {
                started[a] += 1;
                if started[a] == predrawn_count[a] && !sweep.dead[a] {
                    sweep.watched[predrawn_count[a]].push(a);
                }
            }
        }
        boundaries.push(x);
        let point_region = 2 * boundaries.len() - 1;
        sweep.record(point_region, count);
        cover.push(count);
        for e in group.iter().filter(|e| e.side == Side::R) {
            count -= 1;
            for &a in &cliques.member_of[e.vertex] {
                sweep.dead[a] = true;
            }
        }
        sweep.record(point_region + 1, count);
        cover.push(count);
        i = j;
    }

    let Sweep {
        classes, class_of, ..
    } = sweep;
    for a in 0..c {
        if class_of[a] == usize::MAX || classes[class_of[a]].regions.is_empty() {
            return Err(Unplaceable { clique: a });
        }
    }
    Ok(CliqueConstraints {
        parts: Parts { boundaries, cover },
        classes,
        class_of,
        predrawn_count,
    })
}

struct Sweep {
    classes: Vec<PlacementClass>,
    class_of: Vec<usize>,
    dead: Vec<bool>,
    // live watched cliques by |P(a)|
    watched: Vec<Vec<usize>>,
}

impl Sweep {
    /// Region `r` is covered by exactly `count` pre-drawn intervals. Every
    /// live watched clique with `|P(a)| = count` has all of `P(a)` over `r`,
    /// so they all share `P(a)` and are merged into one class.
    fn record(&mut self, r: usize, count: usize) {
        if count == 0 {
            self.classes[0].regions.push(r);
            return;
        }
        let dead = &self.dead;
        let bucket = &mut self.watched[count];
        bucket.retain(|&a| !dead[a]);
        if bucket.is_empty() {
            return;
        }
        let k = match bucket
            .iter()
            .map(|&a| self.class_of[a])
            .find(|&k| k != usize::MAX)
        {
            Some(k) => k,
            None => {
                self.classes.push(PlacementClass {
                    regions: Vec::new(),
                });
                self.classes.len() - 1
            }
        };
        for &a in bucket.iter() {
            self.class_of[a] = k;
        }
        bucket.truncate(1);
        self.classes[k].regions.push(r);
    }
}

/// The interval order `a ⊴ b ⟺ ↷(a) ≤ ↶(b)` as a sorted endpoint sequence
/// over cliques, built by bucketing on boundary indices in linear time.
pub fn build_clique_order(cc: &CliqueConstraints) -> SortedEndpointSequence {
    let c = cc.clique_count();
    let slots = cc.parts.boundaries.len() + 2;
    let mut rights: Vec<Vec<usize>> = vec![Vec::new(); slots];
    let mut lefts: Vec<Vec<usize>> = vec![Vec::new(); slots];
    for a in 0..c {
        lefts[cc.lo_index(a)].push(a);
        rights[cc.hi_index(a)].push(a);
    }
    let mut events = Vec::with_capacity(2 * c);
    for s in 0..slots {
        events.extend(rights[s].iter().map(|&a| (a, Side::R)));
        events.extend(lefts[s].iter().map(|&a| (a, Side::L)));
    }
    SortedEndpointSequence::from_events(c, events).expect("each clique has two bounds")
}
