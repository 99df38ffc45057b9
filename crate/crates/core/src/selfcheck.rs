//! Randomized agreement runs between the fast algorithms and the oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gen::{
    random_consecutive_instance, random_extend_instance, random_graph, random_int_intervals,
    random_simrep_instance,
};
use crate::graph::{verify_extension, Graph};
use crate::oracle::{
    brute_consecutive, brute_extend, brute_interval, brute_simultaneous, SimInstanceRef,
};
use crate::pq_tree::build_pq_tree;
use crate::rational::Coord;
use crate::reorder::{reorder_interval, SortedEndpointSequence};
use crate::repext::{extend, ExtendError, Extension, PartialRepresentation};
use crate::simrep::{simrep, DEFAULT_MAX_SHARED};

pub type ExtendFn = dyn Fn(&Graph, &PartialRepresentation) -> Result<Extension, ExtendError>;

/// A disagreement, with the instance written as files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub suite: &'static str,
    pub description: String,
    /// `(file name, contents)` pairs that reproduce the case.
    pub files: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }
}

pub fn run_selfcheck(seed: u64, iters: usize) -> Report {
    run_selfcheck_with(seed, iters, &extend)
}

/// Same as [`run_selfcheck`] with the extension step replaced by `extend_fn`.
pub fn run_selfcheck_with(seed: u64, iters: usize, extend_fn: &ExtendFn) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        consecutive_suite(&mut rng, iters),
        reorder_suite(&mut rng, iters),
        recognition_suite(&mut rng, iters, extend_fn),
        extension_suite(&mut rng, iters, extend_fn),
        simrep_suite(&mut rng, iters.div_ceil(4)),
    ];
    Report { suites }
}

fn consecutive_suite(rng: &mut ChaCha8Rng, iters: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for _ in 0..iters {
        let inst = random_consecutive_instance(rng, 7, 4);
        let want = brute_consecutive(inst.elements(), inst.sets()).expect("within oracle bounds");
        let got =
            build_pq_tree(&inst).map(|t| t.enumerate_orderings(usize::MAX).expect("no limit"));
        let agree = match &got {
            Ok(set) => *set == want,
            Err(_) => want.is_empty(),
        };
        if !agree {
            let text = std::iter::once(format!("{}", inst.elements()))
                .chain(
                    inst.sets()
                        .iter()
                        .map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")),
                )
                .collect::<Vec<_>>()
                .join("\n");
            failures.push(Counterexample {
                suite: "pq-tree",
                description: format!(
                    "{} orderings expected, got {:?}",
                    want.len(),
                    got.map(|s| s.len())
                ),
                files: vec![("sets.txt".into(), text + "\n")],
            });
        }
    }
    SuiteResult {
        name: "pq-tree",
        cases: iters,
        failures,
    }
}

fn reorder_suite(rng: &mut ChaCha8Rng, iters: usize) -> SuiteResult {
    let mut failures = Vec::new();
    let mut cases = 0;
    while cases < iters {
        let inst = random_consecutive_instance(rng, 7, 4);
        let Ok(tree) = build_pq_tree(&inst) else {
            continue;
        };
        cases += 1;
        let n = inst.elements();
        let span = rng.gen_range(1..=9);
        let ivs: Vec<(Coord, Coord)> = random_int_intervals(rng, n, span)
            .into_iter()
            .map(|iv| (Coord::At(iv.left), Coord::At(iv.right)))
            .collect();
        let seq = SortedEndpointSequence::from_intervals(&ivs);
        let rel = seq.induced_order();
        let feasible = tree
            .enumerate_orderings(usize::MAX)
            .expect("no limit")
            .iter()
            .any(|o| rel.is_extended_by(o));
        let got = reorder_interval(tree.clone(), &seq);
        let ok = match &got {
            Ok(t) => feasible && rel.is_extended_by(&t.frontier()),
            Err(_) => !feasible,
        };
        if !ok {
            let arcs: String = rel
                .arcs()
                .iter()
                .map(|(a, b)| format!("{a} {b}\n"))
                .collect();
            failures.push(Counterexample {
                suite: "reorder",
                description: format!(
                    "feasible = {feasible}, reorder_interval = {:?}",
                    got.map(|t| t.frontier())
                ),
                files: vec![
                    ("tree.txt".into(), tree.to_bracket() + "\n"),
                    ("arcs.txt".into(), arcs),
                ],
            });
        }
    }
    SuiteResult {
        name: "reorder",
        cases,
        failures,
    }
}

fn recognition_suite(rng: &mut ChaCha8Rng, iters: usize, extend_fn: &ExtendFn) -> SuiteResult {
    let mut failures = Vec::new();
    for _ in 0..iters {
        let n = rng.gen_range(1..=8);
        let p = [0.2, 0.5, 0.8][rng.gen_range(0..3)];
        let g = random_graph(rng, n, p);
        let want = brute_interval(&g).expect("within oracle bounds").is_some();
        let empty = PartialRepresentation::empty(n);
        let got = extend_fn(&g, &empty);
        let ok = match &got {
            Ok(e) => want && verify_extension(&g, &empty, &e.representation),
            Err(ExtendError::NotInterval) => !want,
            Err(_) => false,
        };
        if !ok {
            failures.push(Counterexample {
                suite: "recognition",
                description: format!("interval = {want}, recognize = {:?}", got.map(|_| ())),
                files: vec![("graph.txt".into(), g.to_text())],
            });
        }
    }
    SuiteResult {
        name: "recognition",
        cases: iters,
        failures,
    }
}

fn extension_suite(rng: &mut ChaCha8Rng, iters: usize, extend_fn: &ExtendFn) -> SuiteResult {
    let mut failures = Vec::new();
    for _ in 0..iters {
        let (g, partial) = random_extend_instance(rng);
        let pairs: Vec<_> = partial.iter().map(|(v, iv)| (v, iv.clone())).collect();
        let want = brute_extend(&g, &pairs)
            .expect("within oracle bounds")
            .is_some();
        let got = extend_fn(&g, &partial);
        let ok = match &got {
            Ok(e) => want && verify_extension(&g, &partial, &e.representation),
            Err(ExtendError::NotInterval | ExtendError::NotExtendible(_)) => !want,
            Err(_) => false,
        };
        if !ok {
            failures.push(Counterexample {
                suite: "extension",
                description: format!("extendible = {want}, extend = {:?}", got.map(|_| ())),
                files: vec![
                    ("graph.txt".into(), g.to_text()),
                    ("partial.txt".into(), partial.to_text()),
                ],
            });
        }
    }
    SuiteResult {
        name: "extension",
        cases: iters,
        failures,
    }
}

fn simrep_suite(rng: &mut ChaCha8Rng, iters: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for _ in 0..iters {
        let inst = random_simrep_instance(rng);
        let want = brute_simultaneous(&SimInstanceRef {
            graphs: inst.graphs(),
            shared: inst.shared(),
        })
        .expect("within oracle bounds")
        .is_some();
        let got = simrep(&inst, DEFAULT_MAX_SHARED);
        if got.is_ok() != want {
            failures.push(Counterexample {
                suite: "simrep",
                description: format!("solvable = {want}, simrep = {:?}", got.map(|_| ())),
                files: vec![("instance.txt".into(), inst.to_text())],
            });
        }
    }
    SuiteResult {
        name: "simrep",
        cases: iters,
        failures,
    }
}
