//! Approximation pipeline for the EPR Hamiltonian on weighted graphs.
//!
//! The crate solves the level-2 quantum moment-SoS relaxation of the EPR
//! Hamiltonian, derives per-edge rotation angles from a piecewise schedule,
//! simulates the depth-1 commuting ansatz exactly, validates the
//! monogamy-of-entanglement bounds on solver output, and certifies the
//! worst-edge ratio analysis numerically.
//!
//! Modules mirror the pipeline stages:
//! - [`graph`]: instances, parsing, generators and small-graph enumeration
//! - [`pauli`]: exact phase-tracked Pauli monomial algebra
//! - [`sdp`]: the moment-matrix relaxation and its operator-splitting solver
//! - [`angles`]: monogamy caps and the angle schedule
//! - [`ansatz`]: statevector simulation, energy bounds and eigenvalues
//! - [`moe`]: monogamy-of-entanglement validators over solver output
//! - [`certifier`]: numeric verification of the ratio analysis

pub mod angles;
pub mod ansatz;
pub mod certifier;
pub mod graph;
pub mod moe;
pub mod pauli;
pub mod sdp;

pub use angles::ScheduleParams;
pub use ansatz::AnsatzRun;
pub use certifier::CertificateReport;
pub use graph::WeightedGraph;
pub use sdp::MomentSolution;
