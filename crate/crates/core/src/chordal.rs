//! Maximal cliques of chordal graphs in linear time.
//!
//! Lexicographic BFS gives a visit order whose reverse is a perfect
//! elimination ordering exactly when the graph is chordal. Along that order,
//! every maximal clique is `{v} ∪ N⁻(v)` for some vertex `v`, where `N⁻(v)`
//! are the neighbours visited before `v`.

use crate::graph::Graph;

const NIL: usize = usize::MAX;

/// Maximal cliques with per-vertex membership lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueList {
    pub cliques: Vec<Vec<usize>>,
    pub member_of: Vec<Vec<usize>>,
}

impl CliqueList {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn total_size(&self) -> usize {
        self.cliques.iter().map(Vec::len).sum()
    }
}

/// The graph is not chordal: the earlier-visited neighbours of `vertex`
/// (in LexBFS order) do not form a clique; `u` and `w` are two of them that
/// are non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotChordal {
    pub vertex: usize,
    pub u: usize,
    pub w: usize,
}

/// Lexicographic BFS by partition refinement. Classes are kept as sorted
/// linked lists, so the next vertex is always the lowest id of the
/// lexicographically largest class.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    // vertex lists inside classes
    let mut vnext = vec![NIL; n];
    let mut vprev = vec![NIL; n];
    let mut class_of = vec![0usize; n];
    // class records
    let mut chead: Vec<usize> = vec![0];
    let mut ctail: Vec<usize> = vec![n - 1];
    let mut csize: Vec<usize> = vec![n];
    let mut cnext: Vec<usize> = vec![NIL];
    let mut cprev: Vec<usize> = vec![NIL];
    let mut csplit: Vec<usize> = vec![NIL];
    let mut cstamp: Vec<usize> = vec![NIL];
    for v in 0..n {
        vprev[v] = if v == 0 { NIL } else { v - 1 };
        vnext[v] = if v + 1 == n { NIL } else { v + 1 };
    }
    let mut first_class = 0usize;
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);

    macro_rules! unlink_vertex {
        ($v:expr) => {{
            let v = $v;
            let c = class_of[v];
            if vprev[v] != NIL {
                vnext[vprev[v]] = vnext[v];
            } else {
                chead[c] = vnext[v];
            }
            if vnext[v] != NIL {
                vprev[vnext[v]] = vprev[v];
            } else {
                ctail[c] = vprev[v];
            }
            vprev[v] = NIL;
            vnext[v] = NIL;
            csize[c] -= 1;
            c
        }};
    }

    let mut touched = Vec::new();
    for step in 0..n {
        while csize[first_class] == 0 {
            first_class = cnext[first_class];
            cprev[first_class] = NIL;
        }
        let v = chead[first_class];
        unlink_vertex!(v);
        visited[v] = true;
        order.push(v);

        touched.clear();
        for &w in g.neighbors(v) {
            if visited[w] {
                continue;
            }
            let c = class_of[w];
            if cstamp[c] != step {
                cstamp[c] = step;
                // new class placed immediately before c
                let nc = chead.len();
                chead.push(NIL);
                ctail.push(NIL);
                csize.push(0);
                cnext.push(c);
                cprev.push(cprev[c]);
                csplit.push(NIL);
                cstamp.push(NIL);
                if cprev[c] != NIL {
                    cnext[cprev[c]] = nc;
                } else {
                    first_class = nc;
                }
                cprev[c] = nc;
                csplit[c] = nc;
                touched.push(c);
            }
            let nc = csplit[c];
            unlink_vertex!(w);
            class_of[w] = nc;
            vprev[w] = ctail[nc];
            if ctail[nc] != NIL {
                vnext[ctail[nc]] = w;
            } else {
                chead[nc] = w;
            }
            ctail[nc] = w;
            csize[nc] += 1;
        }
        for &c in &touched {
            if csize[c] == 0 {
                if cprev[c] != NIL {
                    cnext[cprev[c]] = cnext[c];
                } else {
                    first_class = cnext[c];
                }
                if cnext[c] != NIL {
                    cprev[cnext[c]] = cprev[c];
                }
            }
        }
    }
    order
}

/// Maximal cliques of a chordal graph, or a witness that it is not chordal.
pub fn maximal_cliques(g: &Graph) -> Result<CliqueList, NotChordal> {
    let n = g.n();
    let order = lex_bfs(g);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // earlier-visited neighbours and the latest of them (the "parent")
    let mut earlier: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut parent = vec![NIL; n];
    for &v in &order {
        for &w in g.neighbors(v) {
            if pos[w] < pos[v] {
                earlier[v].push(w);
                if parent[v] == NIL || pos[w] > pos[parent[v]] {
                    parent[v] = w;
                }
            }
        }
    }

    // Perfect elimination check: earlier(v) \ {p} ⊆ earlier(p) for p = parent(v).
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if parent[v] != NIL {
            checks[parent[v]].push(v);
        }
    }
    let mut mark = vec![NIL; n];
    for p in 0..n {
        if checks[p].is_empty() {
            continue;
        }
        for &w in &earlier[p] {
            mark[w] = p;
        }
        for &v in &checks[p] {
            for &w in &earlier[v] {
                if w != p && mark[w] != p {
                    return Err(NotChordal {
                        vertex: v,
                        u: p.min(w),
                        w: p.max(w),
                    });
                }
            }
        }
    }

    // C(v) = {v} ∪ earlier(v) is non-maximal iff some child w of v has
    // |earlier(w)| = |earlier(v)| + 1.
    let mut maximal = vec![true; n];
    for w in 0..n {
        let p = parent[w];
        if p != NIL && earlier[w].len() == earlier[p].len() + 1 {
            maximal[p] = false;
        }
    }
    let mut cliques = Vec::new();
    let mut member_of = vec![Vec::new(); n];
    for &v in &order {
        if !maximal[v] {
            continue;
        }
        let id = cliques.len();
        let mut c = Vec::with_capacity(earlier[v].len() + 1);
        c.push(v);
        c.extend_from_slice(&earlier[v]);
        c.sort_unstable();
        for &u in &c {
            member_of[u].push(id);
        }
        cliques.push(c);
    }
    Ok(CliqueList { cliques, member_of })
}
