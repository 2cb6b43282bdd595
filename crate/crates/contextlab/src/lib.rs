//! Contextuality inequalities on small multi-qubit Hilbert spaces.
//!
//! The crate bundles two fully-contextual inequality scenarios, one on
//! dimension eight with five four-projector measurement contexts and one on
//! dimension four with ten binary measurements, together with the machinery
//! to study them:
//!
//! - [`hilbert`]: dense complex states, operators, tensor products,
//!   rotations, expectation values and fidelity.
//! - [`pauli`]: Pauli-string decomposition and reconstruction of Hermitian
//!   operators and the aggregate inequality observables.
//! - [`scenario`]: scenario definitions, exclusivity validation, inequality
//!   evaluation and rotation sweeps.
//! - [`graphbounds`]: orthogonality graphs, independence number
//!   (non-contextual bound) and fractional packing number (generalized
//!   probabilistic bound).
//! - [`nmrsim`]: observable-to-sigma_z readout mappings, pseudopure states
//!   and shot-noise estimates.
//! - [`tables`]: published operator dictionaries kept for term-by-term
//!   verification against the derived expansions.
//! - [`cli`]: the `contextlab` command-line entry points.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod cli;
pub mod graphbounds;
pub mod hilbert;
pub mod nmrsim;
pub mod pauli;
pub mod scenario;
pub mod tables;

pub use graphbounds::{bounds_report, build_graph, BoundReport, OrthogonalityGraph};
pub use hilbert::{
    embed_rotation, expectation, fidelity, projector_from_vector, rotation_unitary,
    tensor_product, ComplexMatrix, DensityOperator, StateVector,
};
pub use nmrsim::{
    builtin_mappings, compose_unitary, measure_inequality, pps_state, GateStep,
    MeasurementMapping, PseudopureModel, ReadoutOptions, Shots,
};
pub use pauli::{aggregate_observable, decompose, pauli_matrix, reconstruct, PauliPolynomial, PauliString};
pub use scenario::{
    evaluate, evaluate_via_pauli, fully_contextual_c_scenario, kcbs_twin_scenario,
    rotation_sweep, validate_exclusivity, ContextualityScenario, SweepRecord,
};
