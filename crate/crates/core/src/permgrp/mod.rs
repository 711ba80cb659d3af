//! Permutation groups: stabiliser chains, orbits, transporters and graph
//! automorphism groups.

mod chain;
mod perm;
mod search;

pub use chain::{orbit_of, orbits_of, GroupChain};
pub use perm::Perm;
pub use search::{automorphism_group, automorphism_group_bounded, isomorphism, AutGroup, DEFAULT_VERTEX_BOUND};

use crate::error::GroupError;
use crate::graph::Graph;

/// Checks that every permutation preserves adjacency of `g`.
pub fn validate_automorphisms(g: &Graph, perms: &[Perm]) -> Result<(), GroupError> {
    for (index, p) in perms.iter().enumerate() {
        if p.degree() != g.order() {
            return Err(GroupError::DegreeMismatch { index, expected: g.order(), got: p.degree() });
        }
        for (u, v) in g.edges() {
            if !g.adjacent(p.image(u), p.image(v)) {
                return Err(GroupError::NotAutomorphism { index, u, v });
            }
        }
    }
    Ok(())
}
