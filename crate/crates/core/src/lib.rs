//! Edge augmentation for leader-follower networks that keeps a distance-based
//! lower bound on the dimension of the strong structurally controllable
//! subspace.
//!
//! The crate is organised around four layers:
//!
//! * [`graph`], [`generate`] and [`laplacian`]: simple undirected graphs, BFS
//!   distances, seeded random models and weighted Laplacians.
//! * [`controllability`]: distance-to-leader vectors, PMI sequences, numerical
//!   rank validation and the Kirchhoff index.
//! * [`augmentation`]: the single-pair clique-chain solver, the intersection
//!   and randomized multi-pair algorithms, and the bounds that audit them.
//! * [`harness`]: the ensemble experiment runner behind the CLI.
//!
//! PMI solvers and augmentation algorithms are trait objects held in
//! name-keyed [`registry::Registry`] values, so callers pick them at runtime.

pub mod augmentation;
pub mod controllability;
pub mod error;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod laplacian;
pub mod registry;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, NodeId};
