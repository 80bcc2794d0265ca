//! Parity network synthesis by recursive cofactoring of the parity matrix.

use crate::circuit::{Angle, Circuit, Gate};
use crate::cnot::plan_pre_transpose;
use crate::error::Result;
use crate::gf2::{cnot_skeleton_matrix, BinaryMatrix, BitVector};
use crate::graph::{steiner_approx, ConnectivityGraph};

use super::SumOverPaths;

/// Pending parities, each written in the basis of the current wire values:
/// column `k` is realised on wire `w` exactly when `z[k]` is the unit vector
/// `e_w`.
struct Network<'g> {
    graph: Option<&'g ConnectivityGraph>,
    z: Vec<BitVector>,
    angles: Vec<Angle>,
    done: Vec<bool>,
    circuit: Circuit,
}

impl Network<'_> {
    fn emit_if_unit(&mut self, k: usize) {
        if let Some(w) = self.z[k].single_one() {
            self.circuit.push_unchecked(Gate::rz(self.angles[k], w));
            self.done[k] = true;
        }
    }

    fn cnot(&mut self, control: usize, target: usize) {
        self.circuit.push_unchecked(Gate::cnot(control, target));
        for k in 0..self.z.len() {
            if !self.done[k] && self.z[k].get(target) {
                self.z[k].flip(control);
                self.emit_if_unit(k);
            }
        }
    }

    /// XORs wire `root`'s coordinate into every wire in `rows`, along a
    /// Steiner tree when constrained.
    fn clear_rows(&mut self, root: usize, rows: &[usize]) -> Result<()> {
        match self.graph {
            None => {
                for &j in rows {
                    self.cnot(j, root);
                }
            }
            Some(g) => {
                let mut terminals = rows.to_vec();
                terminals.push(root);
                let tree = steiner_approx(g, &terminals)?.rerooted(root)?;
                for op in plan_pre_transpose(&tree).ops() {
                    // Adding coordinate row `control` into row `target` is a
                    // CNOT controlled on `target`.
                    self.cnot(op.target, op.control);
                }
            }
        }
        Ok(())
    }

    fn active(&self, cols: &[usize]) -> Vec<usize> {
        cols.iter().copied().filter(|&k| !self.done[k]).collect()
    }
}

fn run(s: &SumOverPaths, graph: Option<&ConnectivityGraph>) -> Result<(Circuit, BinaryMatrix)> {
    let n = s.num_qubits();
    let (z, angles): (Vec<BitVector>, Vec<Angle>) = s.phase.iter().map(|(p, a)| (p.clone(), a)).unzip();
    let m = z.len();
    let mut net = Network {
        graph,
        z,
        angles,
        done: vec![false; m],
        circuit: Circuit::new(n),
    };
    for k in 0..m {
        net.emit_if_unit(k);
    }

    let mut stack: Vec<(Vec<usize>, Vec<usize>, Option<usize>)> = vec![((0..m).collect(), (0..n).collect(), None)];
    while let Some((cols, rows, target)) = stack.pop() {
        let mut cols = net.active(&cols);
        if cols.is_empty() {
            continue;
        }
        if let Some(i) = target {
            loop {
                let ones: Vec<usize> = (0..n)
                    .filter(|&j| j != i && cols.iter().all(|&k| net.z[k].get(j)))
                    .collect();
                if ones.is_empty() {
                    break;
                }
                net.clear_rows(i, &ones)?;
                cols = net.active(&cols);
                if cols.is_empty() {
                    break;
                }
            }
            if cols.is_empty() {
                continue;
            }
        }
        if rows.is_empty() {
            // Every row has been split on; finish the leftovers one by one.
            for k in cols {
                if net.done[k] {
                    continue;
                }
                let support: Vec<usize> = net.z[k].ones().collect();
                net.clear_rows(support[0], &support[1..])?;
                debug_assert!(net.done[k]);
            }
            continue;
        }
        let j = *rows
            .iter()
            .max_by_key(|&&j| {
                let ones = cols.iter().filter(|&&k| net.z[k].get(j)).count();
                (ones.max(cols.len() - ones), std::cmp::Reverse(j))
            })
            .unwrap();
        let (cols1, cols0): (Vec<usize>, Vec<usize>) = cols.iter().partition(|&&k| net.z[k].get(j));
        let rest: Vec<usize> = rows.iter().copied().filter(|&r| r != j).collect();
        stack.push((cols1, rest.clone(), target.or(Some(j))));
        stack.push((cols0, rest, target));
    }
    debug_assert!(net.done.iter().all(|&d| d));
    let c = cnot_skeleton_matrix(&net.circuit);
    Ok((net.circuit, c))
}

/// Parity network for the phase of `s` using CNOTs on edges of `g` only.
/// Each Rz is placed as soon as its parity first appears on a wire. Returns
/// the circuit and the linear map of its CNOTs.
pub fn synth_parity_network_constrained(s: &SumOverPaths, g: &ConnectivityGraph) -> Result<(Circuit, BinaryMatrix)> {
    run(s, Some(g))
}

/// The same recursion for a fully connected device.
pub fn synth_parity_network(s: &SumOverPaths) -> Result<(Circuit, BinaryMatrix)> {
    run(s, None)
}
