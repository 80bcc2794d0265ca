//! Dense state-vector simulation and equivalence checks.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::gf2::simulate_cnot_circuit;

/// Largest register accepted by [`unitary`].
pub const DENSE_CAP: usize = 8;

/// Tolerance for unitary equivalence.
pub const TOLERANCE: f64 = 1e-9;

/// A `2^n x 2^n` matrix in column-major order. Qubit `k` is bit `k` of the
/// basis-state index.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    n: usize,
    data: Vec<Complex64>,
}

impl Unitary {
    pub fn identity(n: usize) -> Result<Self> {
        if n > DENSE_CAP {
            return Err(Error::TooManyQubits { n, cap: DENSE_CAP });
        }
        let dim = 1usize << n;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            data[k * dim + k] = Complex64::new(1.0, 0.0);
        }
        Ok(Unitary { n, data })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Entry `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[col * self.dim() + row]
    }

    /// Left-multiplies by `gate`.
    pub fn apply(&mut self, gate: &Gate) {
        let dim = self.dim();
        for col in self.data.chunks_mut(dim) {
            apply_to_state(col, gate);
        }
    }

    /// Largest deviation of `U^dagger U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for a in 0..dim {
            for b in 0..dim {
                let s: Complex64 = (0..dim).map(|k| self.get(k, a).conj() * self.get(k, b)).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s - want).norm());
            }
        }
        worst
    }

    /// Largest entry-wise difference after rotating `other` onto `self` by
    /// the global phase read off at `self`'s largest-modulus entry.
    pub fn phase_deviation(&self, other: &Unitary) -> f64 {
        assert_eq!(self.n, other.n, "register sizes differ");
        let (k, _) = self
            .data
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (k, z)| if z.norm() > best.1 { (k, z.norm()) } else { best });
        let ratio = other.data[k] / self.data[k];
        if ratio.norm() < 1e-12 {
            return f64::INFINITY;
        }
        let phase = ratio / ratio.norm();
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Applies one gate to a state vector in place.
pub fn apply_to_state(state: &mut [Complex64], gate: &Gate) {
    match *gate {
        Gate::Cnot { control, target } => {
            let (cm, tm) = (1usize << control, 1usize << target);
            for idx in 0..state.len() {
                if idx & cm != 0 && idx & tm == 0 {
                    state.swap(idx, idx | tm);
                }
            }
        }
        Gate::Rz { angle, target } => {
            let tm = 1usize << target;
            let phase = Complex64::from_polar(1.0, 2.0 * PI * angle.turns());
            for (idx, amp) in state.iter_mut().enumerate() {
                if idx & tm != 0 {
                    *amp *= phase;
                }
            }
        }
        Gate::H { target } => {
            let tm = 1usize << target;
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for idx in 0..state.len() {
                if idx & tm == 0 {
                    let (a, b) = (state[idx], state[idx | tm]);
                    state[idx] = (a + b) * s;
                    state[idx | tm] = (a - b) * s;
                }
            }
        }
    }
}

/// The unitary of `c`, for at most [`DENSE_CAP`] qubits.
pub fn unitary(c: &Circuit) -> Result<Unitary> {
    let mut u = Unitary::identity(c.num_qubits())?;
    for g in c.gates() {
        u.apply(g);
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Exact GF(2) matrix comparison of CNOT-only circuits.
    Gf2,
    /// Dense unitary comparison up to global phase.
    Unitary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub mode: VerifyMode,
    pub pass: bool,
    /// Zero or one in GF(2) mode; max entry-wise deviation otherwise.
    pub deviation: f64,
}

/// Compares two circuits on the same register.
pub fn verify_equivalence(a: &Circuit, b: &Circuit, mode: VerifyMode) -> Result<VerifyReport> {
    if a.num_qubits() != b.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: a.num_qubits(),
            found: b.num_qubits(),
        });
    }
    let deviation = match mode {
        VerifyMode::Gf2 => {
            if simulate_cnot_circuit(a)? == simulate_cnot_circuit(b)? {
                0.0
            } else {
                1.0
            }
        }
        VerifyMode::Unitary => unitary(a)?.phase_deviation(&unitary(b)?),
    };
    Ok(VerifyReport {
        mode,
        pass: deviation < TOLERANCE,
        deviation,
    })
}
