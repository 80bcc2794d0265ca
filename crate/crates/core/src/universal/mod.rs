//! Routing of circuits over {CNOT, H, Rz}.
//!
//! Hadamards are reduced first, the circuit is then cut into alternating
//! blocks of Hadamards and {CNOT, Rz} gates, and every {CNOT, Rz} block is
//! replaced by a constrained re-synthesis of its sum-over-paths form. The
//! qubit placement is fixed: every block implements its full linear part.

mod commute;
mod hopt;

use std::time::Instant;

use rayon::prelude::*;

pub use commute::commutes;
pub use hopt::merge_delete_h;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::graph::ConnectivityGraph;
use crate::phase::{extract_sum_over_paths, synthesize_cnot_rz};
use crate::report::{Method, SynthesisReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    /// CNOT and Rz gates.
    CnotBlock,
    /// Hadamards only.
    HBlock,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub gates: Vec<Gate>,
}

impl Segment {
    pub fn to_circuit(&self, n: usize) -> Result<Circuit> {
        Circuit::from_gates(n, self.gates.clone())
    }
}

fn kind_of(g: &Gate) -> SegmentKind {
    if g.is_h() {
        SegmentKind::HBlock
    } else {
        SegmentKind::CnotBlock
    }
}

type Block = (SegmentKind, Vec<(usize, Gate)>);

fn locate(blocks: &[Block], id: usize) -> (usize, usize) {
    for (b, (_, gates)) in blocks.iter().enumerate() {
        if let Some(p) = gates.iter().position(|&(k, _)| k == id) {
            return (b, p);
        }
    }
    unreachable!("gate {id} lost during partitioning")
}

/// Later blocks the gate at `(b, p)` can be commuted to the front of.
fn reachable_forward(blocks: &[Block], b: usize, p: usize) -> Vec<usize> {
    let g = blocks[b].1[p].1;
    let mut out = Vec::new();
    if !blocks[b].1[p + 1..].iter().all(|(_, h)| commutes(&g, h)) {
        return out;
    }
    for (bb, (kind, gates)) in blocks.iter().enumerate().skip(b + 1) {
        if *kind == SegmentKind::CnotBlock {
            out.push(bb);
        }
        if !gates.iter().all(|(_, h)| commutes(&g, h)) {
            break;
        }
    }
    out
}

/// Earlier blocks the gate at `(b, p)` can be commuted to the end of.
fn reachable_backward(blocks: &[Block], b: usize, p: usize) -> Vec<usize> {
    let g = blocks[b].1[p].1;
    let mut out = Vec::new();
    if !blocks[b].1[..p].iter().all(|(_, h)| commutes(&g, h)) {
        return out;
    }
    for bb in (0..b).rev() {
        let (kind, gates) = &blocks[bb];
        if *kind == SegmentKind::CnotBlock {
            out.push(bb);
        }
        if !gates.iter().all(|(_, h)| commutes(&g, h)) {
            break;
        }
    }
    out
}

/// Moves gate `id` into the largest reachable block, own block included.
/// Equal sizes go to the earlier block.
fn relocate(blocks: &mut [Block], id: usize, forward: bool) {
    let (b, p) = locate(blocks, id);
    let candidates = if forward {
        reachable_forward(blocks, b, p)
    } else {
        reachable_backward(blocks, b, p)
    };
    let mut best = (blocks[b].1.len(), b);
    for bb in candidates {
        let size = blocks[bb].1.len() + 1;
        if size > best.0 || (size == best.0 && bb < best.1) {
            best = (size, bb);
        }
    }
    let target = best.1;
    if target == b {
        return;
    }
    let item = blocks[b].1.remove(p);
    if forward {
        blocks[target].1.insert(0, item);
    } else {
        blocks[target].1.push(item);
    }
}

fn normalize(blocks: Vec<Block>) -> Vec<Segment> {
    let mut out: Vec<Segment> = Vec::new();
    for (kind, gates) in blocks {
        if gates.is_empty() {
            continue;
        }
        match out.last_mut() {
            Some(last) if last.kind == kind => last.gates.extend(gates.into_iter().map(|(_, g)| g)),
            _ => out.push(Segment {
                kind,
                gates: gates.into_iter().map(|(_, g)| g).collect(),
            }),
        }
    }
    out
}

/// Splits `c` into alternating Hadamard and {CNOT, Rz} blocks, commuting
/// gates so that {CNOT, Rz} blocks are as large as possible.
///
/// Starting from the maximal runs of the circuit, every non-H gate, from
/// last to first, moves to the front of the largest later block it can
/// commute to; then, from first to last, to the end of the largest earlier
/// block it can reach.
pub fn partition_segments(c: &Circuit) -> Vec<Segment> {
    let mut blocks: Vec<Block> = Vec::new();
    for (id, g) in c.gates().iter().enumerate() {
        let kind = kind_of(g);
        match blocks.last_mut() {
            Some((k, gates)) if *k == kind => gates.push((id, *g)),
            _ => blocks.push((kind, vec![(id, *g)])),
        }
    }
    let movable: Vec<usize> = c
        .gates()
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_h())
        .map(|(id, _)| id)
        .collect();
    for &id in movable.iter().rev() {
        relocate(&mut blocks, id, true);
    }
    for &id in &movable {
        relocate(&mut blocks, id, false);
    }
    normalize(blocks)
}

/// A {CNOT, Rz} block before and after re-synthesis.
#[derive(Debug, Clone)]
pub struct RoutedSegment {
    pub original: Circuit,
    pub routed: Circuit,
}

fn check_gates(c: &Circuit, g: &ConnectivityGraph) -> Result<()> {
    if c.num_qubits() != g.node_count() {
        return Err(Error::DimensionMismatch {
            expected: g.node_count(),
            found: c.num_qubits(),
        });
    }
    Ok(())
}

/// Re-synthesizes every {CNOT, Rz} block of the partitioned circuit.
/// Hadamard blocks are returned with `original == routed`.
pub fn route_segments(c: &Circuit, g: &ConnectivityGraph) -> Result<Vec<RoutedSegment>> {
    check_gates(c, g)?;
    let n = c.num_qubits();
    let segments = partition_segments(&merge_delete_h(c));
    segments
        .par_iter()
        .map(|seg| {
            let original = seg.to_circuit(n)?;
            let routed = match seg.kind {
                SegmentKind::HBlock => original.clone(),
                SegmentKind::CnotBlock => synthesize_cnot_rz(&extract_sum_over_paths(&original)?, g)?.0,
            };
            Ok(RoutedSegment { original, routed })
        })
        .collect()
}

/// Routes `c` onto `g`. The result equals `c` up to global phase and uses
/// only CNOTs on edges of `g`.
pub fn route_universal(c: &Circuit, g: &ConnectivityGraph) -> Result<(Circuit, SynthesisReport)> {
    let start = Instant::now();
    let mut out = Circuit::new(c.num_qubits());
    for seg in route_segments(c, g)? {
        out.append(&seg.routed)?;
    }
    let report = SynthesisReport::new(Method::SteinerUniversal, g.name(), &out, start.elapsed());
    Ok((out, report))
}
