//! Extending partial interval representations.
//!
//! [`extend`] runs five steps: maximal cliques and their PQ-tree, a sweep
//! giving each clique the region of the line its clique-point may use, the
//! interval order those regions induce, a reordering of the PQ-tree
//! compatible with that order, and a greedy left-to-right placement of the
//! clique-points from which all intervals are read off.

mod partial;
mod place;
mod sweep;

use thiserror::Error;

use crate::chordal::{maximal_cliques, CliqueList};
use crate::graph::{check_extension, ClosedInterval, Graph};
use crate::pq_tree::{build_pq_tree, ConsecutiveInstance, PQTree};
use crate::rational::Rational;
use crate::reorder::reorder_interval;

pub use partial::{Event, PartialError, PartialRepresentation, Side};
pub use place::{build_intervals, place_clique_points};
pub use sweep::{
    build_clique_order, sweep_constraints, CliqueConstraints, Parts, PlacementClass, Region,
    Unplaceable,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Some clique-point has no admissible position at all.
    Unplaceable { clique: Vec<usize> },
    /// No consecutive ordering of the cliques extends the interval order.
    NoCompatibleOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("graph is not an interval graph")]
    NotInterval,
    #[error("partial representation is not extendible: {}", match .0 {
        Obstruction::Unplaceable { clique } => format!("no position for the clique-point of {clique:?}"),
        Obstruction::NoCompatibleOrder => "no clique ordering respects the pre-drawn intervals".to_string(),
    })]
    NotExtendible(Obstruction),
    #[error("invalid partial representation: {0}")]
    InvalidPartial(#[from] PartialError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// A verified extension together with the clique order behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub representation: Vec<ClosedInterval>,
    /// Maximal cliques (sorted vertex lists) from left to right.
    pub clique_order: Vec<Vec<usize>>,
    /// Clique-point of each entry of `clique_order`.
    pub clique_points: Vec<Rational>,
}

/// Maximal cliques and the PQ-tree of their consecutive orderings, or
/// `NotInterval`.
pub fn clique_tree(g: &Graph) -> Result<(CliqueList, PQTree), ExtendError> {
    let cliques = maximal_cliques(g).map_err(|_| ExtendError::NotInterval)?;
    let sets: Vec<Vec<usize>> = cliques
        .member_of
        .iter()
        .filter(|m| m.len() > 1)
        .cloned()
        .collect();
    let inst = ConsecutiveInstance::new(cliques.len(), sets)
        .map_err(|e| ExtendError::Internal(e.to_string()))?;
    let tree = build_pq_tree(&inst).map_err(|_| ExtendError::NotInterval)?;
    Ok((cliques, tree))
}

/// Extends `partial` to a representation of `g`, in O(n + m) given the
/// sorted pre-drawn endpoints.
pub fn extend(g: &Graph, partial: &PartialRepresentation) -> Result<Extension, ExtendError> {
    if partial.n() != g.n() {
        return Err(ExtendError::Internal(format!(
            "partial representation is for {} vertices, graph has {}",
            partial.n(),
            g.n()
        )));
    }
    let (cliques, tree) = clique_tree(g)?;
    let cc = sweep_constraints(g, &cliques, partial).map_err(|u| {
        ExtendError::NotExtendible(Obstruction::Unplaceable {
            clique: cliques.cliques[u.clique].clone(),
        })
    })?;
    let order = build_clique_order(&cc);
    let tree = reorder_interval(tree, &order)
        .map_err(|_| ExtendError::NotExtendible(Obstruction::NoCompatibleOrder))?;
    let frontier = tree.frontier();
    let points = place_clique_points(&frontier, &cc, g.n());
    let representation = build_intervals(&cliques, &points, partial);
    check_extension(g, partial, &representation)
        .map_err(|f| ExtendError::Internal(f.to_string()))?;
    Ok(Extension {
        representation,
        clique_points: frontier.iter().map(|&a| points[a].clone()).collect(),
        clique_order: frontier
            .into_iter()
            .map(|a| cliques.cliques[a].clone())
            .collect(),
    })
}

/// An interval representation of `g`, or `NotInterval`.
pub fn recognize(g: &Graph) -> Result<Extension, ExtendError> {
    extend(g, &PartialRepresentation::empty(g.n()))
}
