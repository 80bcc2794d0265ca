//! Connectivity-aware synthesis of CNOT, CNOT+Rz and Clifford+T circuits.
//!
//! Row elimination over GF(2) is guided by Steiner trees on the device
//! coupling graph, so every emitted CNOT acts on a coupled pair.

pub mod bench;
pub mod circuit;
pub mod cnot;
pub mod error;
pub mod gf2;
pub mod graph;
pub mod optimizer;
pub mod phase;
pub mod report;
pub mod sim;
pub mod universal;

pub use circuit::{Angle, Circuit, Gate, GateCounts};
pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BitVector, RowOp};
pub use graph::{ConnectivityGraph, SteinerTree};
pub use report::{Method, SynthesisReport};
