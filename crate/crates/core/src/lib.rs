pub mod chordal;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod pq_tree;
pub mod rational;
pub mod reorder;
pub mod repext;
pub mod selfcheck;
pub mod simrep;
