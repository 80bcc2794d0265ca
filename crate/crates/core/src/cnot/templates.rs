//! Routing long-range CNOTs with nearest-neighbour templates.

use crate::circuit::{Circuit, Gate};
use crate::error::Result;
use crate::gf2::RowOp;
use crate::graph::ConnectivityGraph;

use super::plan::path_plan;

/// Nearest-neighbour CNOTs equivalent to `CNOT(control, target)`, along the
/// shortest path between them: the bare gate when adjacent, otherwise a
/// ladder of `4(l - 1)` CNOTs for distance `l`.
pub fn template_cnot(control: usize, target: usize, g: &ConnectivityGraph) -> Result<Vec<Gate>> {
    let path = g.shortest_path(control, target)?;
    Ok(path_plan(&path)
        .ops()
        .into_iter()
        .map(|op| Gate::cnot(op.control, op.target))
        .collect())
}

/// SWAP-chain routing of `CNOT(control, target)`: swap the control along the
/// path up to the target, apply the gate, swap back. `1 + 6(l - 1)` CNOTs.
pub fn naive_swap_cnot(control: usize, target: usize, g: &ConnectivityGraph) -> Result<Vec<Gate>> {
    let path = g.shortest_path(control, target)?;
    let l = path.len() - 1;
    let swap = |a: usize, b: usize| [Gate::cnot(a, b), Gate::cnot(b, a), Gate::cnot(a, b)];
    let mut out = Vec::with_capacity(1 + 6 * l.saturating_sub(1));
    for k in 0..l.saturating_sub(1) {
        out.extend(swap(path[k], path[k + 1]));
    }
    if l > 0 {
        out.push(Gate::cnot(path[l - 1], target));
    }
    for k in (0..l.saturating_sub(1)).rev() {
        out.extend(swap(path[k], path[k + 1]));
    }
    Ok(out)
}

/// Replaces every CNOT between non-adjacent wires by its template. Other
/// gates pass through.
pub fn expand_templates(c: &Circuit, g: &ConnectivityGraph) -> Result<Circuit> {
    let mut out = Circuit::new(c.num_qubits());
    for gate in c.gates() {
        match *gate {
            Gate::Cnot { control, target } if !g.has_edge(control, target) => {
                for t in template_cnot(control, target, g)? {
                    out.push(t)?;
                }
            }
            other => out.push(other)?,
        }
    }
    Ok(out)
}

/// Total CNOTs after routing each operation with [`template_cnot`].
pub fn template_cost(ops: &[RowOp], g: &ConnectivityGraph) -> Result<usize> {
    ops.iter().try_fold(0, |acc, op| {
        let l = g.distance(op.control, op.target)?;
        Ok(acc + if l <= 1 { l } else { 4 * (l - 1) })
    })
}
