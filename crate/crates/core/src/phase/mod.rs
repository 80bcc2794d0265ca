//! CNOT+Rz circuits in sum-over-paths form.
//!
//! A circuit over `{CNOT, Rz}` acts as `|x> -> e^{2πi f(x)} |Ax>` where the
//! phase polynomial `f` is a sum of angles attached to parities of the input
//! bits. [`synthesize_cnot_rz`] rebuilds such a circuit for a coupling graph:
//! a parity network realises every parity of `f`, then a constrained CNOT
//! circuit fixes up the linear part.

mod network;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use network::{synth_parity_network, synth_parity_network_constrained};

use crate::circuit::{Angle, Circuit, Gate};
use crate::cnot::synthesize_constrained;
use crate::error::{parse_err, Error, Result};
use crate::gf2::{BinaryMatrix, BitVector, RowOp};
use crate::graph::ConnectivityGraph;
use crate::report::{Method, SynthesisReport};

/// A parity `x · y` of the input bits, stored as `y`.
pub type ParityVector = BitVector;

/// Map from parities to their (nonzero) angles.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PhasePolynomial {
    n: usize,
    terms: BTreeMap<ParityVector, Angle>,
}

impl PhasePolynomial {
    pub fn new(n: usize) -> Self {
        PhasePolynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Adds `angle` to the coefficient of `parity`, dropping the term if it
    /// becomes zero.
    pub fn add_term(&mut self, parity: ParityVector, angle: Angle) -> Result<()> {
        if parity.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: parity.len(),
            });
        }
        if parity.is_zero() {
            return Err(Error::Config("the zero parity only contributes a global phase".into()));
        }
        let sum = self.terms.get(&parity).copied().unwrap_or(Angle::ZERO) + angle;
        if sum.is_zero() {
            self.terms.remove(&parity);
        } else {
            self.terms.insert(parity, sum);
        }
        Ok(())
    }

    pub fn get(&self, parity: &ParityVector) -> Option<Angle> {
        self.terms.get(parity).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending parity order.
    pub fn iter(&self) -> impl Iterator<Item = (&ParityVector, Angle)> {
        self.terms.iter().map(|(p, &a)| (p, a))
    }

    /// Text form: one `bits num/den` line per term, bit 0 first.
    pub fn to_text(&self) -> String {
        self.iter()
            .map(|(p, a)| format!("{} {a}\n", p.to_bit_string()))
            .collect()
    }

    pub fn parse_text(n: usize, text: &str) -> Result<Self> {
        let mut f = PhasePolynomial::new(n);
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (bits, angle) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| parse_err(idx + 1, "expected `bits num/den`"))?;
            let parity = BitVector::parse_bit_string(bits)
                .filter(|p| p.len() == n)
                .ok_or_else(|| parse_err(idx + 1, format!("expected {n} bits, found `{bits}`")))?;
            let angle: Angle = angle.trim().parse().map_err(|e: String| parse_err(idx + 1, e))?;
            f.add_term(parity, angle).map_err(|e| parse_err(idx + 1, e.to_string()))?;
        }
        Ok(f)
    }
}

impl fmt::Debug for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().map(|(p, a)| (p.to_bit_string(), a)))
            .finish()
    }
}

/// The pair `(f, A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumOverPaths {
    pub phase: PhasePolynomial,
    pub linear: BinaryMatrix,
}

impl SumOverPaths {
    pub fn new(phase: PhasePolynomial, linear: BinaryMatrix) -> Result<Self> {
        if phase.num_qubits() != linear.dim() {
            return Err(Error::DimensionMismatch {
                expected: linear.dim(),
                found: phase.num_qubits(),
            });
        }
        linear.invert()?;
        Ok(SumOverPaths { phase, linear })
    }

    pub fn num_qubits(&self) -> usize {
        self.linear.dim()
    }

    /// Random instance: a uniformly random invertible linear part and up to
    /// `max_terms` distinct random parities, each with a nonzero multiple of
    /// 1/8 turn.
    pub fn random(n: usize, max_terms: usize, seed: u64) -> Result<Self> {
        let linear = BinaryMatrix::random_invertible(n, seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_f5e7);
        let mut phase = PhasePolynomial::new(n);
        let count = rng.gen_range(0..=max_terms);
        let mut guard = 0;
        while phase.len() < count && guard < 100 * (count + 1) {
            guard += 1;
            let bits: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            let parity = BitVector::from_bools(&bits);
            if parity.is_zero() || phase.get(&parity).is_some() {
                continue;
            }
            phase.add_term(parity, Angle::new(rng.gen_range(1..8), 8))?;
        }
        Ok(SumOverPaths { phase, linear })
    }
}

/// Parity columns, one per support element, in ascending parity order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityMatrix {
    n: usize,
    columns: Vec<ParityVector>,
}

impl ParityMatrix {
    pub fn num_rows(&self) -> usize {
        self.n
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[ParityVector] {
        &self.columns
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    /// Rows as '0'/'1' strings.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.n)
            .map(|r| {
                self.columns
                    .iter()
                    .map(|c| if c.get(r) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

/// Reads off `(f, A)` from a circuit over `{CNOT, Rz}`.
pub fn extract_sum_over_paths(c: &Circuit) -> Result<SumOverPaths> {
    let n = c.num_qubits();
    let mut wires = BinaryMatrix::identity(n);
    let mut phase = PhasePolynomial::new(n);
    for (position, gate) in c.gates().iter().enumerate() {
        match *gate {
            Gate::Cnot { control, target } => wires.row_op_unchecked(RowOp::new(control, target)),
            Gate::Rz { angle, target } => phase.add_term(wires.row(target).clone(), angle)?,
            Gate::H { .. } => {
                return Err(Error::UnsupportedGate {
                    position,
                    gate: gate.to_string(),
                    context: "sum-over-paths extraction needs CNOT and Rz only",
                })
            }
        }
    }
    Ok(SumOverPaths { phase, linear: wires })
}

pub fn build_parity_matrix(s: &SumOverPaths) -> ParityMatrix {
    ParityMatrix {
        n: s.num_qubits(),
        columns: s.phase.iter().map(|(p, _)| p.clone()).collect(),
    }
}

/// Builds a circuit with sum-over-paths form `s` whose CNOTs all lie on
/// edges of `g`.
pub fn synthesize_cnot_rz(s: &SumOverPaths, g: &ConnectivityGraph) -> Result<(Circuit, SynthesisReport)> {
    let start = Instant::now();
    if s.num_qubits() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            found: s.num_qubits(),
        });
    }
    let (mut circuit, c) = synth_parity_network_constrained(s, g)?;
    let fix = s.linear.multiply(&c.invert()?)?;
    let (tail, _) = synthesize_constrained(&fix, g)?;
    circuit.append(&tail)?;
    let report = SynthesisReport::new(Method::SteinerCnotRz, g.name(), &circuit, start.elapsed());
    Ok((circuit, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 4-qubit example with symbolic angles a..f set to distinct values.
    pub(crate) fn phase_example_circuit(angles: [Angle; 6]) -> Circuit {
        let [a, b, c, d, e, f] = angles;
        Circuit::from_gates(
            4,
            vec![
                Gate::rz(a, 0),
                Gate::rz(b, 1),
                Gate::cnot(2, 3),
                Gate::rz(e, 3),
                Gate::cnot(0, 1),
                Gate::cnot(1, 0),
                Gate::rz(c, 0),
                Gate::cnot(1, 2),
                Gate::rz(d, 2),
                Gate::cnot(2, 3),
                Gate::rz(f, 3),
            ],
        )
        .unwrap()
    }

    fn angles() -> [Angle; 6] {
        [1, 2, 3, 4, 5, 6].map(|k| Angle::new(k, 16))
    }

    fn bits(s: &str) -> BitVector {
        BitVector::parse_bit_string(s).unwrap()
    }

    #[test]
    fn example_extraction() {
        let [a, b, c, d, e, f] = angles();
        let sop = extract_sum_over_paths(&phase_example_circuit(angles())).unwrap();
        let mut want = PhasePolynomial::new(4);
        want.add_term(bits("1000"), a).unwrap();
        want.add_term(bits("0100"), b + c).unwrap();
        want.add_term(bits("1110"), d).unwrap();
        want.add_term(bits("0011"), e).unwrap();
        want.add_term(bits("1101"), f).unwrap();
        assert_eq!(sop.phase, want);
        let a_mat = BinaryMatrix::from_u8_rows(&[&[0, 1, 0, 0], &[1, 1, 0, 0], &[1, 1, 1, 0], &[1, 1, 0, 1]]).unwrap();
        assert_eq!(sop.linear, a_mat);
    }

    #[test]
    fn example_parity_matrix() {
        let sop = extract_sum_over_paths(&phase_example_circuit(angles())).unwrap();
        let p = build_parity_matrix(&sop);
        assert_eq!(p.row_strings(), vec!["10110", "01110", "00101", "00011"]);
        assert_eq!(p.num_columns(), 5);
    }

    #[test]
    fn trivial_extractions() {
        let sop = extract_sum_over_paths(&Circuit::new(3)).unwrap();
        assert!(sop.phase.is_empty());
        assert!(sop.linear.is_identity());
        assert_eq!(build_parity_matrix(&sop).num_columns(), 0);

        let c = Circuit::from_gates(2, vec![Gate::t(0), Gate::t(0)]).unwrap();
        let sop = extract_sum_over_paths(&c).unwrap();
        assert_eq!(sop.phase.len(), 1);
        assert_eq!(sop.phase.get(&bits("10")), Some(Angle::S));

        let c = Circuit::from_gates(2, vec![Gate::t(1), Gate::rz(Angle::TDG, 1)]).unwrap();
        assert!(extract_sum_over_paths(&c).unwrap().phase.is_empty());

        let c = Circuit::from_gates(2, vec![Gate::h(1)]).unwrap();
        assert!(matches!(
            extract_sum_over_paths(&c),
            Err(Error::UnsupportedGate { position: 0, .. })
        ));
    }

    #[test]
    fn unit_support_gives_identity_pattern() {
        let mut f = PhasePolynomial::new(3);
        for q in 0..3 {
            f.add_term(BitVector::unit(3, q), Angle::T).unwrap();
        }
        let p = build_parity_matrix(&SumOverPaths::new(f, BinaryMatrix::identity(3)).unwrap());
        assert_eq!(p.row_strings(), vec!["100", "010", "001"]);
    }

    #[test]
    fn phase_text_round_trip() {
        let sop = extract_sum_over_paths(&phase_example_circuit(angles())).unwrap();
        let text = sop.phase.to_text();
        assert_eq!(PhasePolynomial::parse_text(4, &text).unwrap(), sop.phase);
        assert!(PhasePolynomial::parse_text(4, "101 1/8\n").is_err());
        assert!(PhasePolynomial::parse_text(3, "000 1/8\n").is_err());
        assert!(PhasePolynomial::parse_text(3, "100 x\n").is_err());
    }

    fn round_trip(s: &SumOverPaths, g: &ConnectivityGraph) {
        let (c, report) = synthesize_cnot_rz(s, g).unwrap();
        assert_eq!(&extract_sum_over_paths(&c).unwrap(), s);
        for gate in c.gates() {
            if let Gate::Cnot { control, target } = *gate {
                assert!(g.has_edge(control, target));
            }
        }
        assert_eq!(report.cnot_count(), c.cnot_count());
    }

    #[test]
    fn example_on_a_line() {
        let sop = extract_sum_over_paths(&phase_example_circuit(angles())).unwrap();
        round_trip(&sop, &ConnectivityGraph::line(4));
    }

    #[test]
    fn reductions() {
        let g = ConnectivityGraph::line(4);
        let empty = SumOverPaths::new(PhasePolynomial::new(4), BinaryMatrix::identity(4)).unwrap();
        assert!(synthesize_cnot_rz(&empty, &g).unwrap().0.is_empty());

        let a = BinaryMatrix::random_invertible(4, 3).unwrap();
        let linear_only = SumOverPaths::new(PhasePolynomial::new(4), a.clone()).unwrap();
        assert_eq!(
            synthesize_cnot_rz(&linear_only, &g).unwrap().0,
            synthesize_constrained(&a, &g).unwrap().0
        );
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..40 {
            let n = 2 + seed as usize % 9;
            let s = SumOverPaths::random(n, 3 * n, seed).unwrap();
            let g = ConnectivityGraph::random_connected(n, 0.2 + 0.1 * (seed % 5) as f64, seed).unwrap();
            round_trip(&s, &g);
        }
    }
}
