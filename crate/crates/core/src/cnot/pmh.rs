//! Patel-Markov-Hayes synthesis for full connectivity.

use std::collections::HashMap;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BitVector, RowOp};

/// Builds the circuit from the two elimination passes: the operations after
/// the transpose with control and target exchanged, in order, followed by
/// the operations before the transpose in reverse order.
pub fn assemble(n: usize, upper_ops: &[RowOp], lower_ops: &[RowOp]) -> Circuit {
    let mut c = Circuit::new(n);
    for op in lower_ops {
        c.push_unchecked(Gate::cnot(op.target, op.control));
    }
    for op in upper_ops.iter().rev() {
        c.push_unchecked(Gate::cnot(op.control, op.target));
    }
    c
}

fn section_bits(row: &BitVector, cols: std::ops::Range<usize>) -> u64 {
    cols.enumerate()
        .fold(0, |acc, (k, c)| acc | (u64::from(row.get(c)) << k))
}

/// Clears everything below the diagonal, returning the row operations.
fn lower_synth(m: &mut BinaryMatrix, section: usize, partition: bool) -> Result<Vec<RowOp>> {
    let n = m.dim();
    let mut ops = Vec::new();
    let apply = |m: &mut BinaryMatrix, ops: &mut Vec<RowOp>, c: usize, t: usize| {
        m.row_op_unchecked(RowOp::new(c, t));
        ops.push(RowOp::new(c, t));
    };
    for start in (0..n).step_by(section) {
        let end = (start + section).min(n);
        if partition {
            let mut seen: HashMap<u64, usize> = HashMap::new();
            for row in start..n {
                let key = section_bits(m.row(row), start..end);
                if key == 0 {
                    continue;
                }
                match seen.get(&key) {
                    Some(&first) => apply(m, &mut ops, first, row),
                    None => {
                        seen.insert(key, row);
                    }
                }
            }
        }
        for col in start..end {
            let mut diag = m.get(col, col);
            for row in col + 1..n {
                if m.get(row, col) {
                    if !diag {
                        apply(m, &mut ops, row, col);
                        diag = true;
                    }
                    apply(m, &mut ops, col, row);
                }
            }
            if !diag {
                return Err(Error::Singular { column: col });
            }
        }
    }
    Ok(ops)
}

/// Synthesizes `a` for a fully connected device. With `partition` the
/// columns are processed in sections of `floor(log2 n)` and duplicate
/// sub-rows inside a section are cancelled first; without it this is plain
/// Gaussian elimination.
pub fn pmh_synthesize(a: &BinaryMatrix, partition: bool) -> Result<Circuit> {
    let n = a.dim();
    let section = if n < 2 { 1 } else { (usize::BITS - 1 - n.leading_zeros()) as usize }.clamp(1, 64);
    let mut m = a.clone();
    let upper = lower_synth(&mut m, section, partition)?;
    let mut t = m.transpose();
    let lower = lower_synth(&mut t, section, partition)?;
    debug_assert!(t.is_identity());
    Ok(assemble(n, &upper, &lower))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::simulate_cnot_circuit;

    #[test]
    fn identity_is_empty() {
        assert!(pmh_synthesize(&BinaryMatrix::identity(6), true).unwrap().is_empty());
    }

    #[test]
    fn reproduces_input() {
        let small = BinaryMatrix::from_u8_rows(&[&[1, 0, 1, 1], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 1, 1]]).unwrap();
        for p in [false, true] {
            assert_eq!(simulate_cnot_circuit(&pmh_synthesize(&small, p).unwrap()).unwrap(), small);
        }
        for seed in 0..40 {
            let a = BinaryMatrix::random_invertible(1 + seed as usize % 17, seed).unwrap();
            for p in [false, true] {
                assert_eq!(simulate_cnot_circuit(&pmh_synthesize(&a, p).unwrap()).unwrap(), a);
            }
        }
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            pmh_synthesize(&BinaryMatrix::zeros(3), true),
            Err(Error::Singular { column: 0 })
        ));
    }

    #[test]
    fn partitioning_helps_on_average() {
        let (mut with, mut without) = (0usize, 0usize);
        for seed in 0..60 {
            let a = BinaryMatrix::random_invertible(20, 1000 + seed).unwrap();
            with += pmh_synthesize(&a, true).unwrap().len();
            without += pmh_synthesize(&a, false).unwrap().len();
        }
        assert!(with < without, "{with} vs {without}");
    }
}
