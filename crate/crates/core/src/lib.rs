//! Finite highly symmetric graphs, permutation groups and a decision
//! procedure for k-connected-homogeneity.

pub mod census;
pub mod constructions;
pub mod error;
pub mod forms;
pub mod galois;
pub mod geometry;
pub mod graph;
pub mod homct;
pub mod io;
pub mod permgrp;

pub use error::{CheckError, FieldError, FormError, GraphError, GroupError, ParseError};
pub use graph::Graph;
