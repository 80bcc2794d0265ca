use crate::circuit::Gate;

/// Conservative commutation test: `true` only when the two gate matrices
/// are known to commute.
///
/// Rules: gates on disjoint wires; identical gates; two Rz; CNOTs that share
/// only their control or only their target; an Rz on the control wire of a
/// CNOT. An H commutes with nothing else that touches its wire.
pub fn commutes(a: &Gate, b: &Gate) -> bool {
    if !a.shares_wire(b) || a == b {
        return true;
    }
    match (*a, *b) {
        (Gate::Rz { .. }, Gate::Rz { .. }) => true,
        (Gate::Cnot { control: c1, target: t1 }, Gate::Cnot { control: c2, target: t2 }) => {
            // Overlap on a wire that is a control of one and a target of the
            // other breaks commutation.
            c1 != t2 && c2 != t1
        }
        (Gate::Rz { target: q, .. }, Gate::Cnot { control, .. })
        | (Gate::Cnot { control, .. }, Gate::Rz { target: q, .. }) => q == control,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Angle, Circuit};
    use crate::sim::unitary;

    fn all_gates(n: usize) -> Vec<Gate> {
        let mut out = Vec::new();
        for q in 0..n {
            out.push(Gate::h(q));
            for a in [Angle::T, Angle::S, Angle::Z, Angle::TDG, Angle::new(1, 3)] {
                out.push(Gate::rz(a, q));
            }
            for t in 0..n {
                if t != q {
                    out.push(Gate::cnot(q, t));
                }
            }
        }
        out
    }

    fn matrices_commute(a: &Gate, b: &Gate, n: usize) -> bool {
        let ab = unitary(&Circuit::from_gates(n, vec![*a, *b]).unwrap()).unwrap();
        let ba = unitary(&Circuit::from_gates(n, vec![*b, *a]).unwrap()).unwrap();
        let dim = 1 << n;
        (0..dim).all(|r| (0..dim).all(|c| (ab.get(r, c) - ba.get(r, c)).norm() < 1e-12))
    }

    #[test]
    fn sound_on_all_pairs_up_to_three_qubits() {
        for n in 1..=3 {
            let gates = all_gates(n);
            for a in &gates {
                for b in &gates {
                    if commutes(a, b) {
                        assert!(matrices_commute(a, b, n), "{a} / {b} claimed to commute");
                    }
                }
            }
        }
    }

    #[test]
    fn named_cases() {
        assert!(commutes(&Gate::cnot(0, 1), &Gate::cnot(0, 2)));
        assert!(commutes(&Gate::cnot(0, 2), &Gate::cnot(1, 2)));
        assert!(commutes(&Gate::rz(Angle::T, 0), &Gate::cnot(0, 1)));
        assert!(!commutes(&Gate::rz(Angle::T, 1), &Gate::cnot(0, 1)));
        assert!(!commutes(&Gate::h(0), &Gate::cnot(0, 1)));
        assert!(!commutes(&Gate::cnot(0, 1), &Gate::cnot(1, 2)));
        assert!(!commutes(&Gate::cnot(0, 1), &Gate::cnot(1, 0)));
        assert!(commutes(&Gate::h(0), &Gate::t(1)));
        assert!(matrices_commute(&Gate::cnot(0, 1), &Gate::cnot(0, 2), 3));
        assert!(matrices_commute(&Gate::rz(Angle::T, 0), &Gate::cnot(0, 1), 3));
        assert!(!matrices_commute(&Gate::h(0), &Gate::cnot(0, 1), 3));
    }
}
