//! Seeded random instance generators used by the self-check, the tests and
//! the timing harness.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{intersection_graph, ClosedInterval, Graph};
use crate::pq_tree::ConsecutiveInstance;
use crate::repext::PartialRepresentation;
use crate::simrep::SimRepInstance;

/// Erdős–Rényi graph on `n` vertices with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

/// `n` intervals with integer endpoints in `[0, max]`.
pub fn random_int_intervals<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<ClosedInterval> {
    (0..n)
        .map(|_| {
            let a = rng.gen_range(0..=max);
            let b = rng.gen_range(0..=max);
            ClosedInterval::ints(a.min(b), a.max(b))
        })
        .collect()
}

/// A small extension instance: `n ≤ 7`, at most three pre-drawn intervals
/// with integer endpoints in `[0, 6]`.
///
/// Half of the graphs are intersection graphs of random intervals, the rest
/// are random graphs. Pre-drawn intervals either come from the generating
/// representation or are redrawn at random until the partial representation
/// is valid.
pub fn random_extend_instance<R: Rng>(rng: &mut R) -> (Graph, PartialRepresentation) {
    loop {
        let n = rng.gen_range(1..=7);
        let (g, source) = if rng.gen_bool(0.5) {
            let ivs = random_int_intervals(rng, n, 6);
            (intersection_graph(&ivs), Some(ivs))
        } else {
            let p = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
            (random_graph(rng, n, p), None)
        };
        let k = rng.gen_range(0..=3.min(n));
        let mut vertices: Vec<usize> = (0..n).collect();
        vertices.shuffle(rng);
        vertices.truncate(k);
        let redraw = source.is_none() || rng.gen_bool(0.3);
        for _ in 0..20 {
            let pairs: Vec<(usize, ClosedInterval)> = match (&source, redraw) {
                (Some(ivs), false) => vertices.iter().map(|&v| (v, ivs[v].clone())).collect(),
                _ => vertices
                    .iter()
                    .zip(random_int_intervals(rng, k, 6))
                    .map(|(&v, iv)| (v, iv))
                    .collect(),
            };
            if let Ok(p) = PartialRepresentation::from_pairs(&g, pairs) {
                return (g, p);
            }
        }
    }
}

/// A consecutive-ones instance on up to `max_elements` elements with at most
/// `max_sets` sets. Each set is, with equal odds, a window of a hidden
/// permutation or an arbitrary subset, so both outcomes occur.
pub fn random_consecutive_instance<R: Rng>(
    rng: &mut R,
    max_elements: usize,
    max_sets: usize,
) -> ConsecutiveInstance {
    let n = rng.gen_range(1..=max_elements);
    let mut hidden: Vec<usize> = (0..n).collect();
    hidden.shuffle(rng);
    let k = rng.gen_range(0..=max_sets);
    let sets = (0..k)
        .map(|_| {
            if rng.gen_bool(0.5) {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(a..n);
                hidden[a..=b].to_vec()
            } else {
                (0..n).filter(|_| rng.gen_bool(0.5)).collect()
            }
        })
        .filter(|s: &Vec<usize>| !s.is_empty())
        .collect();
    ConsecutiveInstance::new(n, sets).expect("generated sets are in range")
}

/// A large interval graph and a sorted partial representation for timing.
///
/// Left endpoints are uniform in `[0, 2n)` and lengths in `{0, 1, 2}`, which
/// keeps the expected edge count near `1.5 n`. Every `stride`-th vertex keeps
/// its generating interval as a pre-drawn one.
pub fn large_interval_instance<R: Rng>(
    rng: &mut R,
    n: usize,
    stride: usize,
) -> (Graph, PartialRepresentation) {
    let span = 2 * n as i64;
    let ivs: Vec<ClosedInterval> = (0..n)
        .map(|_| {
            let l = rng.gen_range(0..span);
            ClosedInterval::ints(l, l + rng.gen_range(0..3))
        })
        .collect();
    let g = intersection_graph(&ivs);
    let pairs = (0..n)
        .step_by(stride.max(1))
        .map(|v| (v, ivs[v].clone()))
        .collect();
    let p = PartialRepresentation::from_pairs(&g, pairs)
        .expect("generating intervals form a valid partial");
    (g, p)
}

/// A simultaneous-representation instance with `k ≤ 3` graphs of at most six
/// vertices sharing `ℓ ≤ 3` vertices. Local ids are shuffled per graph.
///
/// Half of the instances draw the shared intervals once and every graph from
/// intervals, so solvable instances are common; the rest use random edges
/// around a random shared graph.
pub fn random_simrep_instance<R: Rng>(rng: &mut R) -> SimRepInstance {
    let k = rng.gen_range(1..=3);
    let l = rng.gen_range(0..=3);
    let from_intervals = rng.gen_bool(0.5);
    let shared_ivs = random_int_intervals(rng, l, 6);
    let shared_graph = random_graph(rng, l, 0.5);
    let mut graphs = Vec::with_capacity(k);
    let mut shared = Vec::with_capacity(k);
    for _ in 0..k {
        let n = rng.gen_range(l.max(1)..=6);
        let base = if from_intervals {
            let mut ivs = shared_ivs.clone();
            ivs.extend(random_int_intervals(rng, n - l, 6));
            intersection_graph(&ivs)
        } else {
            let p = [0.3, 0.6][rng.gen_range(0..2)];
            let g = random_graph(rng, n, p);
            let mut edges: Vec<(usize, usize)> = g.edges().filter(|&(_, v)| v >= l).collect();
            edges.extend(shared_graph.edges());
            Graph::from_edges(n, &edges).expect("generated edges are in range")
        };
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let edges: Vec<(usize, usize)> = base.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        graphs.push(Graph::from_edges(n, &edges).expect("generated edges are in range"));
        shared.push(perm[..l].to_vec());
    }
    SimRepInstance::new(graphs, shared).expect("shared vertices induce the same graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extend_instances_are_within_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (g, p) = random_extend_instance(&mut rng);
            assert!(g.n() <= 7 && p.len() <= 3);
            for (_, iv) in p.iter() {
                assert!(iv.left >= crate::rational::Rational::zero());
                assert!(iv.right <= crate::rational::Rational::from(6));
            }
        }
    }

    #[test]
    fn large_instance_is_sparse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (g, p) = large_interval_instance(&mut rng, 2000, 10);
        assert!(g.m() <= 4 * g.n());
        assert_eq!(p.len(), 200);
    }
}
