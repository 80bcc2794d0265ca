//! Synthesis reports.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateCounts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Steiner-tree elimination of a CNOT circuit.
    SteinerCnot,
    /// Parity network plus Steiner-tree fixup for CNOT+Rz.
    SteinerCnotRz,
    /// Segment-wise resynthesis of a Clifford+T circuit.
    SteinerUniversal,
    /// Full-connectivity PMH synthesis.
    Pmh,
    /// PMH followed by template expansion.
    PmhTemplates,
    /// Gray-code style parity network with PMH fixup, then templates.
    GrayPmhTemplates,
    /// Template expansion of the input circuit.
    Templates,
}

/// Summary of one synthesis run. Serialises to the JSON report schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub method: Method,
    pub graph: String,
    pub counts: GateCounts,
    pub depth: usize,
    pub elapsed_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Steiner trees built per column, elimination phase first, then the
    /// phase after the transpose.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub column_trees: Vec<u8>,
}

impl SynthesisReport {
    pub fn new(method: Method, graph: &str, circuit: &Circuit, elapsed: Duration) -> Self {
        SynthesisReport {
            method,
            graph: graph.to_string(),
            counts: circuit.counts(),
            depth: circuit.depth(),
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
            seed: None,
            column_trees: Vec::new(),
        }
    }

    pub fn cnot_count(&self) -> usize {
        self.counts.cnot
    }

    pub fn elapsed(&self) -> Duration {
        Duration::from_secs_f64(self.elapsed_ms / 1e3)
    }

    /// Refreshes counts and depth after the circuit was post-processed.
    pub fn recount(&mut self, circuit: &Circuit) {
        self.counts = circuit.counts();
        self.depth = circuit.depth();
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}
