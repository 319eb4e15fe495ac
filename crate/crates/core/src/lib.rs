//! Exact nonlinear spectral gaps of graphs mapped into graph metrics.
//!
//! * [`graph`], [`graph6`], [`families`], [`orbits`]: graphs, their metrics,
//!   interchange formats, named constructions and automorphism orbits.
//! * [`exact_gap`]: exact `lambda(G, H)` by pruned exhaustive search.
//! * [`spectral`]: the classical gap `lambda(G, R)` via Jacobi rotations.
//! * [`bounds`]: closed-form inequalities as checkable predicates.
//! * [`embedding`]: random-subset embeddings of finite metrics and their
//!   measured distortion.

pub mod bounds;
pub mod embedding;
pub mod exact_gap;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod orbits;
pub mod rational;
pub mod spectral;

pub use exact_gap::{lambda_exact, rayleigh_quotient, Assignment, GapError, GapOptions, GapResult};
pub use families::Family;
pub use graph::{apsp, DistanceMatrix, Graph, GraphError};
pub use graph6::{parse_graph6, to_graph6};
pub use rational::Rational;
