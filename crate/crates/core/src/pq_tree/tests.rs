use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn consecutive(order: &[usize], set: &[usize]) -> bool {
    let pos: Vec<usize> = set
        .iter()
        .map(|&e| order.iter().position(|&x| x == e).unwrap())
        .collect();
    let lo = *pos.iter().min().unwrap();
    let hi = *pos.iter().max().unwrap();
    hi - lo + 1 == pos.len()
}

fn brute(n: usize, sets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    permutations(&(0..n).collect::<Vec<_>>())
        .into_iter()
        .filter(|o| sets.iter().all(|s| consecutive(o, s)))
        .collect()
}

fn labelled_orders(t: &PQTree, labels: &[&str]) -> BTreeSet<String> {
    t.enumerate_orderings(10_000)
        .unwrap()
        .into_iter()
        .map(|o| o.iter().map(|&e| labels[e]).collect())
        .collect()
}

const ABC: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn example_tree() -> PQTree {
    let sets: [&[&str]; 5] = [
        &["a", "b", "c"],
        &["b", "c"],
        &["d", "e"],
        &["e", "f", "g"],
        &["a", "h"],
    ];
    let inst = ConsecutiveInstance::from_labels(&ABC, &sets).unwrap();
    build_pq_tree(&inst).unwrap()
}

#[test]
fn example_orderings_feasible_and_infeasible() {
    let t = example_tree();
    t.check_invariants().unwrap();
    let orders = labelled_orders(&t, &ABC);
    assert!(orders.contains("hacbdefg") || orders.contains("gfedbcah"));
    for s in ["acdefgbh", "defhgabc"] {
        assert!(!orders.contains(s), "{s}");
    }
}

#[test]
fn three_element_reduction() {
    let t = PQTree::universal(3).reduce(&[0, 1]).unwrap();
    t.check_invariants().unwrap();
    let got = labelled_orders(&t, &["a", "b", "c"]);
    let want: BTreeSet<String> = ["abc", "bac", "cab", "cba"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(got, want);
}

#[test]
fn triangle_of_pairs_is_infeasible() {
    let inst = ConsecutiveInstance::new(3, vec![vec![0, 2], vec![0, 1], vec![1, 2]]).unwrap();
    assert_eq!(build_pq_tree(&inst).unwrap_err(), Infeasible);
}

#[test]
fn trivial_sets_change_nothing() {
    let t = PQTree::universal(4);
    let before = t.enumerate_orderings(100).unwrap();
    let t = t.reduce(&[2]).unwrap().reduce(&[0, 1, 2, 3]).unwrap();
    assert_eq!(t.enumerate_orderings(100).unwrap(), before);
}

#[test]
fn reduction_is_idempotent() {
    let t = example_tree();
    let a = t.to_bracket();
    let t = t.reduce(&[4, 5, 6]).unwrap();
    assert_eq!(t.to_bracket(), a);
}

#[test]
fn bracket_round_trip() {
    let t = PQTree::from_bracket("(a [b c d] (e f))").unwrap();
    t.check_invariants().unwrap();
    assert_eq!(t.to_bracket(), "(a [b c d] (e f))");
    assert_eq!(t.count_orderings(), 6 * 2 * 2);
    assert!(PQTree::from_bracket("(a)").is_err());
    assert!(PQTree::from_bracket("(a a)").is_err());
    assert!(PQTree::from_bracket("(a b").is_err());
}

#[test]
fn pseudonode_reduction() {
    // [a b c d e] reduced by {b, c}: the pertinent root sits inside the Q-node
    let t = PQTree::from_bracket("[a b c d e]").unwrap();
    let t = t.reduce(&[1, 2]).unwrap();
    t.check_invariants().unwrap();
    assert_eq!(t.count_orderings(), 2);
    let t = PQTree::from_bracket("[a (b c) (d e) f]").unwrap();
    let t = t.reduce(&[2, 3]).unwrap();
    t.check_invariants().unwrap();
    assert_eq!(t.frontier(), vec![0, 1, 2, 3, 4, 5]);
    assert_eq!(t.count_orderings(), 2);
}

fn random_sets(n: usize, raw: Vec<Vec<bool>>) -> Vec<Vec<usize>> {
    raw.into_iter()
        .map(|mask| (0..n).filter(|&i| mask[i]).collect::<Vec<_>>())
        .filter(|s| !s.is_empty())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn matches_brute_force(n in 1usize..7, raw in prop::collection::vec(prop::collection::vec(any::<bool>(), 7), 0..6)) {
        let sets = random_sets(n, raw);
        let want = brute(n, &sets);
        let inst = ConsecutiveInstance::new(n, sets.clone()).unwrap();
        match build_pq_tree(&inst) {
            Ok(t) => {
                prop_assert!(t.check_invariants().is_ok(), "{:?}", t.check_invariants());
                prop_assert_eq!(t.enumerate_orderings(10_000).unwrap(), want);
                let back = PQTree::from_bracket(&t.to_bracket());
                prop_assert!(back.is_ok());
            }
            Err(Infeasible) => prop_assert!(want.is_empty(), "tree rejected {:?}", sets),
        }
    }

    /// Sets that are intervals of a hidden order must always be feasible.
    #[test]
    fn hidden_order_is_accepted(n in 2usize..12, cuts in prop::collection::vec((0usize..12, 0usize..12), 1..12), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut hidden: Vec<usize> = (0..n).collect();
        hidden.shuffle(&mut rng);
        let sets: Vec<Vec<usize>> = cuts.iter().map(|&(a, b)| {
            let (lo, hi) = (a.min(b) % n, a.max(b) % n);
            let (lo, hi) = (lo.min(hi), lo.max(hi));
            hidden[lo..=hi].to_vec()
        }).collect();
        let t = build_pq_tree(&ConsecutiveInstance::new(n, sets.clone()).unwrap());
        prop_assert!(t.is_ok());
        let t = t.unwrap();
        prop_assert!(t.check_invariants().is_ok(), "{:?}", t.check_invariants());
        let f = t.frontier();
        prop_assert!(sets.iter().all(|s| consecutive(&f, s)));
    }
}
