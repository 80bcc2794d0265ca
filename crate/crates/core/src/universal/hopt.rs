//! Reducing the number of Hadamard gates.

use crate::circuit::{Angle, Circuit, Gate};

fn next_on_wire(gates: &[Option<Gate>], from: usize, q: usize) -> Option<usize> {
    (from + 1..gates.len()).find(|&k| gates[k].is_some_and(|g| g.acts_on(q)))
}

fn prev_on_wire(gates: &[Option<Gate>], from: usize, q: usize) -> Option<usize> {
    (0..from).rev().find(|&k| gates[k].is_some_and(|g| g.acts_on(q)))
}

fn is_h_on(g: Option<Gate>, q: usize) -> bool {
    g == Some(Gate::h(q))
}

/// One sweep of the rewrites; returns whether anything changed.
fn sweep(gates: &mut [Option<Gate>]) -> bool {
    let mut changed = false;
    for i in 0..gates.len() {
        let Some(g) = gates[i] else { continue };
        match g {
            Gate::H { target: q } => {
                let Some(j) = next_on_wire(gates, i, q) else { continue };
                if is_h_on(gates[j], q) {
                    gates[i] = None;
                    gates[j] = None;
                    changed = true;
                    continue;
                }
                // H S H = S† H S† and H S† H = S H S, up to global phase.
                if let Some(Gate::Rz { angle, .. }) = gates[j] {
                    if angle == Angle::S || angle == Angle::SDG {
                        if let Some(k) = next_on_wire(gates, j, q) {
                            if is_h_on(gates[k], q) {
                                let flipped = Gate::rz(-angle, q);
                                gates[i] = Some(flipped);
                                gates[j] = Some(Gate::h(q));
                                gates[k] = Some(flipped);
                                changed = true;
                            }
                        }
                    }
                }
            }
            Gate::Cnot { control: a, target: b } => {
                // Hadamards on both wires before and after reverse the CNOT.
                let around = |q: usize| {
                    let p = prev_on_wire(gates, i, q)?;
                    let n = next_on_wire(gates, i, q)?;
                    (is_h_on(gates[p], q) && is_h_on(gates[n], q)).then_some((p, n))
                };
                if let (Some((pa, na)), Some((pb, nb))) = (around(a), around(b)) {
                    for k in [pa, na, pb, nb] {
                        gates[k] = None;
                    }
                    gates[i] = Some(Gate::cnot(b, a));
                    changed = true;
                }
            }
            Gate::Rz { .. } => {}
        }
    }
    changed
}

/// Removes and merges Hadamards with local rewrites until none applies:
/// cancellation of `H H` on a wire, `H S H -> S† H S†` (and its adjoint),
/// and `(H ⊗ H) CNOT (H ⊗ H) -> ` reversed CNOT. Equal up to global phase.
pub fn merge_delete_h(c: &Circuit) -> Circuit {
    let mut gates: Vec<Option<Gate>> = c.gates().iter().copied().map(Some).collect();
    while sweep(&mut gates) {}
    let mut out = Circuit::new(c.num_qubits());
    for g in gates.into_iter().flatten() {
        out.push_unchecked(g);
    }
    out
}
