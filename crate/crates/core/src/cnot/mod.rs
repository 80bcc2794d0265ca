//! Synthesis of linear reversible (CNOT-only) circuits.
//!
//! [`synthesize_constrained`] reduces the matrix to upper-triangular form
//! column by column, clearing each column with row operations planned on a
//! Steiner tree of the coupling graph, then transposes and repeats. The
//! baselines ([`pmh_synthesize`] and [`expand_templates`]) ignore the graph
//! during synthesis and route long-range CNOTs afterwards.

mod plan;
mod pmh;
mod templates;

use std::time::Instant;

pub use plan::{plan_post_transpose, plan_pre_transpose, EliminationPlan, Subtree};
pub use pmh::{assemble, pmh_synthesize};
pub use templates::{expand_templates, naive_swap_cnot, template_cnot, template_cost};

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, RowOp};
use crate::graph::{steiner_approx, ConnectivityGraph, SteinerTree};
use crate::report::{Method, SynthesisReport};

/// Which half of the algorithm a step belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Reduction to upper-triangular form.
    Upper,
    /// Reduction of the transposed matrix to the identity.
    Transposed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    /// A row below was added to the diagonal row to make the pivot 1.
    Pivot { from: usize },
    /// Rows below the diagonal were cleared.
    Eliminate,
}

/// One recorded step of [`synthesize_traced`].
#[derive(Debug, Clone)]
pub struct TraceStep {
    pub phase: Phase,
    pub column: usize,
    pub kind: StepKind,
    pub tree: SteinerTree,
    pub ops: Vec<RowOp>,
    /// Working matrix after the step.
    pub matrix: BinaryMatrix,
}

fn check_input(a: &BinaryMatrix, g: &ConnectivityGraph) -> Result<()> {
    if a.dim() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            found: a.dim(),
        });
    }
    a.invert().map(|_| ())
}

struct Run {
    upper_ops: Vec<RowOp>,
    lower_ops: Vec<RowOp>,
    column_trees: Vec<u8>,
    trace: Vec<TraceStep>,
}

fn run(a: &BinaryMatrix, g: &ConnectivityGraph, keep_trace: bool) -> Result<Run> {
    check_input(a, g)?;
    let n = a.dim();
    let mut out = Run {
        upper_ops: Vec::new(),
        lower_ops: Vec::new(),
        column_trees: Vec::with_capacity(2 * n),
        trace: Vec::new(),
    };
    let mut m = a.clone();

    let record = |out: &mut Run, m: &BinaryMatrix, phase, column, kind, tree: SteinerTree, ops: Vec<RowOp>| {
        if keep_trace {
            out.trace.push(TraceStep {
                phase,
                column,
                kind,
                tree,
                ops,
                matrix: m.clone(),
            });
        }
    };

    for i in 0..n {
        let mut trees = 0u8;
        if !m.get(i, i) {
            let dist = g.distances_from(i);
            let j = (i + 1..n)
                .filter(|&j| m.get(j, i))
                .min_by_key(|&j| (dist[j], j))
                .ok_or(Error::Singular { column: i })?;
            let path = g.shortest_path(j, i)?;
            let tree = SteinerTree::new(g, &[i, j], j, path.windows(2).map(|w| (w[0], w[1])))?;
            let ops = plan_pre_transpose(&tree).ops();
            for &op in &ops {
                m.row_op_unchecked(op);
            }
            trees += 1;
            out.upper_ops.extend_from_slice(&ops);
            record(&mut out, &m, Phase::Upper, i, StepKind::Pivot { from: j }, tree, ops);
        }
        let terminals: Vec<usize> = std::iter::once(i).chain((i + 1..n).filter(|&j| m.get(j, i))).collect();
        if terminals.len() > 1 {
            let tree = steiner_approx(g, &terminals)?.rerooted(i)?;
            let ops = plan_pre_transpose(&tree).ops();
            for &op in &ops {
                m.row_op_unchecked(op);
            }
            trees += 1;
            out.upper_ops.extend_from_slice(&ops);
            record(&mut out, &m, Phase::Upper, i, StepKind::Eliminate, tree, ops);
        }
        out.column_trees.push(trees);
    }
    debug_assert!(m.is_upper_triangular());

    let mut m = m.transpose();
    for i in 0..n {
        debug_assert!(m.get(i, i));
        let terminals: Vec<usize> = std::iter::once(i).chain((i + 1..n).filter(|&j| m.get(j, i))).collect();
        if terminals.len() > 1 {
            let tree = steiner_approx(g, &terminals)?;
            debug_assert_eq!(tree.root(), i);
            let ops = plan_post_transpose(&tree)?.ops();
            for &op in &ops {
                m.row_op_unchecked(op);
            }
            out.lower_ops.extend_from_slice(&ops);
            out.column_trees.push(1);
            record(&mut out, &m, Phase::Transposed, i, StepKind::Eliminate, tree, ops);
        } else {
            out.column_trees.push(0);
        }
    }
    debug_assert!(m.is_identity());
    Ok(out)
}

/// Synthesizes `a` into a circuit whose CNOTs all lie on edges of `g`.
pub fn synthesize_constrained(a: &BinaryMatrix, g: &ConnectivityGraph) -> Result<(Circuit, SynthesisReport)> {
    let start = Instant::now();
    let r = run(a, g, false)?;
    let circuit = assemble(a.dim(), &r.upper_ops, &r.lower_ops);
    let mut report = SynthesisReport::new(Method::SteinerCnot, g.name(), &circuit, start.elapsed());
    report.column_trees = r.column_trees;
    Ok((circuit, report))
}

/// Like [`synthesize_constrained`], also returning every intermediate step.
pub fn synthesize_traced(a: &BinaryMatrix, g: &ConnectivityGraph) -> Result<(Circuit, Vec<TraceStep>)> {
    let r = run(a, g, true)?;
    Ok((assemble(a.dim(), &r.upper_ops, &r.lower_ops), r.trace))
}

/// CNOT count of clearing `rows` with `control` through one Steiner tree,
/// as done before the transpose.
pub fn eliminate_column_cost(rows: &[usize], control: usize, g: &ConnectivityGraph) -> Result<usize> {
    let mut terminals = rows.to_vec();
    terminals.push(control);
    let tree = steiner_approx(g, &terminals)?.rerooted(control)?;
    Ok(plan_pre_transpose(&tree).len())
}

/// CNOT count of clearing `rows` with one long-range CNOT from `control` to
/// each, every CNOT routed by the nearest-neighbour template.
pub fn template_column_cost(rows: &[usize], control: usize, g: &ConnectivityGraph) -> Result<usize> {
    let ops: Vec<RowOp> = rows.iter().map(|&r| RowOp::new(control, r)).collect();
    template_cost(&ops, g)
}
