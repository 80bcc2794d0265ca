use nisqsynth::cnot::{eliminate_column_cost, synthesize_traced, template_column_cost, Phase, StepKind};
use nisqsynth::gf2::simulate_cnot_circuit;
use nisqsynth::graph::builtin_architecture;
use nisqsynth::{BinaryMatrix, RowOp};

fn m(rows: &[&[u8]]) -> BinaryMatrix {
    BinaryMatrix::from_u8_rows(rows).unwrap()
}

fn input() -> BinaryMatrix {
    m(&[
        &[1, 1, 0, 1, 1, 0],
        &[0, 0, 1, 1, 0, 1],
        &[1, 0, 1, 0, 1, 0],
        &[1, 1, 0, 1, 0, 0],
        &[1, 1, 1, 1, 0, 0],
        &[0, 1, 0, 1, 0, 1],
    ])
}

#[test]
fn first_column_matches_the_hand_computation() {
    let g = builtin_architecture("example6").unwrap();
    let (_, trace) = synthesize_traced(&input(), &g).unwrap();
    let first = &trace[0];
    assert_eq!((first.phase, first.column, first.kind), (Phase::Upper, 0, StepKind::Eliminate));
    let ops: Vec<(usize, usize)> = first.ops.iter().map(|o| (o.control, o.target)).collect();
    assert_eq!(ops, [(3, 4), (2, 3), (1, 2), (0, 1), (1, 2), (0, 1)]);
    assert_eq!(
        first.matrix,
        m(&[
            &[1, 1, 0, 1, 1, 0],
            &[0, 0, 1, 1, 0, 1],
            &[0, 1, 1, 1, 0, 0],
            &[0, 1, 1, 1, 1, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 1, 0, 1, 0, 1],
        ])
    );
}

#[test]
fn second_column_pivot() {
    let g = builtin_architecture("example6").unwrap();
    let (_, trace) = synthesize_traced(&input(), &g).unwrap();
    let pivot = &trace[1];
    assert_eq!((pivot.column, pivot.kind), (1, StepKind::Pivot { from: 2 }));
    assert_eq!(pivot.ops, vec![RowOp::new(2, 1)]);
    assert_eq!(pivot.matrix.row(1).to_bit_string(), "010001");
}

#[test]
fn whole_run() {
    let g = builtin_architecture("example6").unwrap();
    let (c, trace) = synthesize_traced(&input(), &g).unwrap();
    assert_eq!(simulate_cnot_circuit(&c).unwrap(), input());
    let upper = trace.iter().rev().find(|s| s.phase == Phase::Upper).unwrap();
    assert!(upper.matrix.is_upper_triangular());
    assert!(trace.last().unwrap().matrix.is_identity());
    for step in &trace {
        for op in &step.ops {
            assert!(g.has_edge(op.control, op.target));
        }
    }
}

#[test]
fn one_tree_beats_three_routed_cnots() {
    let g = builtin_architecture("example6").unwrap();
    assert_eq!(template_column_cost(&[2, 3, 4], 0, &g).unwrap(), 16);
    assert_eq!(eliminate_column_cost(&[2, 3, 4], 0, &g).unwrap(), 6);
}
