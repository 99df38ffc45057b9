use crate::chordal::CliqueList;
use crate::graph::ClosedInterval;
use crate::rational::{Coord, Rational};

use super::sweep::{CliqueConstraints, Region};
use super::PartialRepresentation;

/// Places the clique-points in the given order, each as far left as the
/// feasible regions and the previous point allow.
///
/// Inside a bounded open part a point goes `ε` to the right of the infimum,
/// where `ε` is the shortest bounded part divided by `n`. The two unbounded
/// parts have no length, so there points step by 1: the left one starts at
/// `x_1 - c` for `c` cliques, the right one at `max(x_p, last) + 1`.
///
/// Panics if some clique has no feasible position after the previous one;
/// this cannot happen when `order` extends the interval order of `cc` and is
/// a consecutive ordering of the cliques.
pub fn place_clique_points(order: &[usize], cc: &CliqueConstraints, n: usize) -> Vec<Rational> {
    let c = cc.clique_count();
    assert_eq!(order.len(), c, "order must list every clique once");
    let parts = &cc.parts;
    let eps = parts.shortest_bounded().map(|len| len.div_int(n.max(1)));
    let mut cursor = vec![0usize; cc.classes.len()];
    let mut points = vec![Rational::zero(); c];
    let mut last: Option<Rational> = None;

    for &a in order {
        let k = cc.class_of[a];
        let regions = &cc.classes[k].regions;
        // a region is still usable if its supremum lies right of the last point
        let beyond = |r: usize| match (&last, parts.sup(r)) {
            (None, _) | (_, Coord::PosInf) => true,
            (Some(t), Coord::At(sup)) => sup > *t,
            (Some(_), Coord::NegInf) => false,
        };
        while cursor[k] < regions.len() && !beyond(regions[cursor[k]]) {
            cursor[k] += 1;
        }
        let Some(&r) = regions.get(cursor[k]) else {
            panic!("clique {a} has no feasible region after {last:?}");
        };
        let p = match parts.region(r) {
            Region::Point(x) => x.clone(),
            Region::Open(None, None) => last.as_ref().map_or_else(Rational::one, |t| t.add_int(1)),
            Region::Open(None, Some(x1)) => match &last {
                None => x1.add_int(-(c as i64)),
                Some(t) => t.add_int(1),
            },
            Region::Open(Some(xp), None) => match &last {
                Some(t) if t > xp => t.add_int(1),
                _ => xp.add_int(1),
            },
            Region::Open(Some(lo), Some(_)) => {
                let base = match &last {
                    Some(t) if t > lo => t,
                    _ => lo,
                };
                base + eps.as_ref().expect("bounded part without epsilon")
            }
        };
        if let Some(t) = &last {
            assert!(&p > t, "clique-points must strictly increase");
        }
        if let Region::Open(_, Some(hi)) = parts.region(r) {
            assert!(&p < hi, "clique {a}: point {p} beyond part bound {hi}");
        }
        points[a] = p.clone();
        last = Some(p);
    }
    points
}

/// Builds the full representation: pre-drawn intervals verbatim, every other
/// vertex spanning the clique-points of the cliques containing it.
pub fn build_intervals(
    cliques: &CliqueList,
    points: &[Rational],
    partial: &PartialRepresentation,
) -> Vec<ClosedInterval> {
    (0..partial.n())
        .map(|v| match partial.get(v) {
            Some(iv) => iv.clone(),
            None => {
                let mine = &cliques.member_of[v];
                let lo = mine
                    .iter()
                    .map(|&a| &points[a])
                    .min()
                    .expect("vertex in no clique");
                let hi = mine.iter().map(|&a| &points[a]).max().unwrap();
                ClosedInterval::new(lo.clone(), hi.clone())
            }
        })
        .collect()
}
