//! Gray-code bosonic encoding and Trotterized beam-splitter circuits.
//!
//! The crate lowers truncated bosonic ladder operators onto qubits, builds the
//! two-mode beam-splitter interaction as a sum of Pauli strings, synthesizes
//! first-order Trotter circuits from it and executes them on a dense
//! statevector backend. [`experiments`] ties the pieces together into the
//! Hong-Ou-Mandel runs exposed by the `hom` binary.
//!
//! Conventions used throughout:
//!
//! * qubit 0 is the leftmost character of every bitstring label and the
//!   highest-order bit of an amplitude index;
//! * in two-mode registers mode B occupies qubits `0..q` and mode A qubits
//!   `q..2q`, where `q` is the number of qubits per mode;
//! * rotation gates use the half-angle convention, `RZ(t) = exp(-i t Z / 2)`.

pub mod beamsplitter;
pub mod circuit;
pub mod error;
pub mod exec;
pub mod experiments;
mod fmt;
pub mod gray;
pub mod linalg;
pub mod pauli;
pub mod statevector;

pub use beamsplitter::{exact_unitary, interaction, reduced_interaction, Interaction};
pub use circuit::{export_qasm, metrics, rotation_circuit, synthesize, trotter_sequence, Circuit, CircuitMetrics, Gate};
pub use error::{Error, Result};
pub use exec::Exec;
pub use gray::FockEncoding;
pub use linalg::CMatrix;
pub use pauli::{PauliAxis, PauliOp, PauliTerm};
pub use statevector::{Histogram, StateVector};

pub use num_complex::Complex64;
