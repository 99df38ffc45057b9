use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use repext::graph::{check_extension, ClosedInterval, Graph};
use repext::rational::Rational;
use repext::repext::PartialRepresentation;
use tempfile::TempDir;

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        Files {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn write(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repext"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn parse_rep(text: &str, n: usize) -> Vec<ClosedInterval> {
    let mut rep = vec![None; n];
    for line in text.lines() {
        let f: Vec<&str> = line.split_whitespace().collect();
        let v: usize = f[0].parse().unwrap();
        rep[v] = Some(ClosedInterval::new(
            f[1].parse::<Rational>().unwrap(),
            f[2].parse::<Rational>().unwrap(),
        ));
    }
    rep.into_iter().map(Option::unwrap).collect()
}

const TWO_STARS: &str = "10 8\n0 2\n0 3\n0 4\n0 5\n1 6\n1 7\n1 8\n1 9\n";

#[test]
fn recognize_path_cycle_and_missing_file() {
    let f = Files::new();
    let p3 = f.write("p3.txt", "3 2\n0 1\n1 2\n");
    let out = run(&["recognize", p3.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let rep = parse_rep(&stdout(&out), 3);
    let g = Graph::parse("3 2\n0 1\n1 2\n").unwrap();
    assert!(check_extension(&g, &PartialRepresentation::empty(3), &rep).is_ok());

    let c4 = f.write("c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let out = run(&["recognize", c4.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "NOT_INTERVAL");

    let missing = f.dir.path().join("missing.txt");
    assert_eq!(code(&run(&["recognize", missing.to_str().unwrap()])), 2);
    let garbage = f.write("bad.txt", "3 x\n");
    assert_eq!(code(&run(&["recognize", garbage.to_str().unwrap()])), 2);
}

#[test]
fn extend_two_stars_output_verifies() {
    let f = Files::new();
    let g_path = f.write("g.txt", TWO_STARS);
    let p_path = f.write("p.txt", "1 2 3\n0 0 1\n");
    let out = run(&["extend", g_path.to_str().unwrap(), p_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("O(k log k)"));
    let g = Graph::parse(TWO_STARS).unwrap();
    let partial = PartialRepresentation::parse(&g, "1 2 3\n0 0 1\n", false).unwrap();
    let rep = parse_rep(&stdout(&out), 10);
    assert!(check_extension(&g, &partial, &rep).is_ok());

    // unsorted input with --assume-sorted is rejected
    let out = run(&[
        "extend",
        "--assume-sorted",
        g_path.to_str().unwrap(),
        p_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "INVALID_PARTIAL");
    let sorted = f.write("s.txt", "0 0 1\n1 2 3\n");
    let out = run(&[
        "extend",
        "--assume-sorted",
        g_path.to_str().unwrap(),
        sorted.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stderr.is_empty());
}

#[test]
fn extend_rejections() {
    let f = Files::new();
    let g = f.write("g.txt", "4 2\n0 1\n1 2\n");
    let blocker = f.write("b.txt", "0 0 1\n2 3 4\n3 3/2 5/2\n");
    let out = run(&["extend", g.to_str().unwrap(), blocker.to_str().unwrap()]);
    assert_eq!(
        (code(&out), stdout(&out).trim().to_string()),
        (1, "NOT_EXTENDIBLE".to_string())
    );

    let overlapping = f.write("o.txt", "0 0 2\n2 1 3\n");
    let out = run(&["extend", g.to_str().unwrap(), overlapping.to_str().unwrap()]);
    assert_eq!(
        (code(&out), stdout(&out).trim().to_string()),
        (1, "INVALID_PARTIAL".to_string())
    );

    let c4 = f.write("c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let empty = f.write("e.txt", "# nothing pre-drawn\n");
    let out = run(&["extend", c4.to_str().unwrap(), empty.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "NOT_INTERVAL");

    let malformed = f.write("m.txt", "0 1\n");
    assert_eq!(
        code(&run(&[
            "extend",
            g.to_str().unwrap(),
            malformed.to_str().unwrap()
        ])),
        2
    );
}

#[test]
fn extend_json() {
    let f = Files::new();
    let g = f.write("g.txt", "3 2\n0 1\n1 2\n");
    let p = f.write("p.txt", "1 0 1/2\n");
    let out = run(&["extend", "--json", g.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "OK");
    assert_eq!(v["representation"][1]["left"], "0");
    assert_eq!(v["representation"][1]["right"], "1/2");
    assert_eq!(v["clique_order"].as_array().unwrap().len(), 2);

    let blocker_g = f.write("bg.txt", "4 2\n0 1\n1 2\n");
    let blocker = f.write("b.txt", "0 0 1\n2 3 4\n3 3/2 5/2\n");
    let out = run(&[
        "extend",
        "--json",
        blocker_g.to_str().unwrap(),
        blocker.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "NOT_EXTENDIBLE");
}

#[test]
fn output_is_deterministic() {
    let f = Files::new();
    let g = f.write("g.txt", TWO_STARS);
    let p = f.write("p.txt", "0 0 1\n1 2 3\n");
    let a = run(&["extend", g.to_str().unwrap(), p.to_str().unwrap()]);
    let b = run(&["extend", g.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn simrep_exit_codes() {
    let f = Files::new();
    let ok = f.write(
        "ok.txt",
        "2 2\nshared 0 1\n3 3\n0 1\n1 2\n0 2\nshared 0 1\n3 2\n0 1\n1 2\n",
    );
    let out = run(&["simrep", ok.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let blocks: Vec<&str> = text.split("graph ").filter(|s| !s.is_empty()).collect();
    assert_eq!(blocks.len(), 2);
    let shared = |b: &str| {
        b.lines()
            .skip(1)
            .take(2)
            .map(|l| l.split_once(' ').unwrap().1.to_string())
            .collect::<Vec<_>>()
    };
    assert_eq!(shared(blocks[0]), shared(blocks[1]));

    let none_shared = f.write("e.txt", "2 0\nshared\n2 1\n0 1\nshared\n3 2\n0 1\n1 2\n");
    assert_eq!(code(&run(&["simrep", none_shared.to_str().unwrap()])), 0);

    let mut big = String::from("1 6\nshared 0 1 2 3 4 5\n6 0\n");
    big.push('\n');
    let big = f.write("big.txt", &big);
    assert_eq!(code(&run(&["simrep", big.to_str().unwrap()])), 3);
    assert_eq!(
        code(&run(&[
            "simrep",
            "--max-shared",
            "6",
            big.to_str().unwrap()
        ])),
        0
    );

    let conflict = f.write(
        "c.txt",
        "2 2\nshared 0 1\n6 8\n0 1\n0 2\n1 2\n1 3\n1 5\n2 3\n2 4\n3 4\nshared 0 1\n3 2\n0 1\n0 2\n",
    );
    let out = run(&["simrep", conflict.to_str().unwrap()]);
    assert_eq!(
        (code(&out), stdout(&out).trim().to_string()),
        (1, "NO_SIMREP".to_string())
    );

    let broken = f.write("x.txt", "2 2\nshared 0\n");
    assert_eq!(code(&run(&["simrep", broken.to_str().unwrap()])), 2);
}

#[test]
fn selfcheck_modes() {
    let out = run(&["selfcheck"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = run(&["selfcheck", "--iters", "0"]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "selfcheck",
        "--iters",
        "30",
        "--seed",
        "4",
        "--inject-fault",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("counterexample 0"));
    assert!(text.contains("--- graph.txt"));
}
