//! Peephole cleanup by commutation and cancellation.

use crate::circuit::{Circuit, Gate};
use crate::universal::commutes;

/// How many live gates ahead [`cancel_pass`] looks for a partner.
pub const WINDOW: usize = 32;

fn partner(a: &Gate, b: &Gate) -> Option<Option<Gate>> {
    match (*a, *b) {
        (Gate::Cnot { .. }, Gate::Cnot { .. }) | (Gate::H { .. }, Gate::H { .. }) if a == b => Some(None),
        (Gate::Rz { angle: x, target: p }, Gate::Rz { angle: y, target: q }) if p == q => {
            let sum = x + y;
            Some((!sum.is_zero()).then(|| Gate::rz(sum, p)))
        }
        _ => None,
    }
}

fn sweep(gates: &mut [Option<Gate>]) -> bool {
    let mut changed = false;
    for i in 0..gates.len() {
        let Some(a) = gates[i] else { continue };
        let mut seen = 0;
        for j in i + 1..gates.len() {
            let Some(b) = gates[j] else { continue };
            if let Some(merged) = partner(&a, &b) {
                gates[i] = merged;
                gates[j] = None;
                changed = true;
                break;
            }
            seen += 1;
            if seen >= WINDOW || !commutes(&a, &b) {
                break;
            }
        }
    }
    changed
}

/// Cancels CNOT and H pairs and merges Rz gates on a wire, commuting gates
/// past each other where [`commutes`] allows, until nothing changes. The
/// result is equivalent up to global phase and never longer than `c`.
pub fn cancel_pass(c: &Circuit) -> Circuit {
    let mut gates: Vec<Option<Gate>> = c.gates().iter().copied().map(Some).collect();
    while sweep(&mut gates) {}
    let mut out = Circuit::new(c.num_qubits());
    for g in gates.into_iter().flatten() {
        out.push_unchecked(g);
    }
    out
}
