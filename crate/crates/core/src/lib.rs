//! Qubit placement and SWAP-insertion routing for coupling-constrained
//! quantum architectures.
//!
//! The crate provides:
//! - [`coupling`]: undirected coupling graphs with all-pairs shortest paths;
//! - [`circuit`]: a flat gate-list IR, two text formats, generators, and
//!   the fixed gate cost model;
//! - [`placement`]: partial placements, the offset-tracking SWAP-cost
//!   estimate, and a greedy one-qubit-at-a-time placement search;
//! - [`router`]: a seeded baseline SWAP-insertion router plus a semantic
//!   replay verifier;
//! - [`bench`]: a deterministic trial harness with summary tables.
//!
//! Cost arithmetic is generic over [`CostScalar`] (any `f32`/`f64`-like
//! float); [`Cost`] is the default concrete choice used by the harness and
//! the CLI.

pub mod bench;
pub mod circuit;
pub mod coupling;
pub mod placement;
pub mod rng;
pub mod router;

/// Default scalar for placement cost arithmetic.
pub type Cost = f64;

pub use circuit::{Circuit, CircuitError, Cnot, Gate};
pub use coupling::{CouplingGraph, DistanceMatrix, GraphError};
pub use placement::{
    active_cnots, attenuation, estimate_swaps, evaluate_cost, greedy_place, trivial_placement,
    CostBreakdown, CostScalar, OffsetRegister, PartialPlacement, PlacementError, SearchConfig,
};
pub use router::{route, verify_semantics, Layout, RouteError, RoutedResult};
