//! Gates, circuits and the line-based circuit text format.
//!
//! ```text
//! qubits 3
//! cnot 0 1
//! rz 3/8 1
//! h 2
//! t 0
//! ```
//!
//! `s`, `t`, `sdg` and `tdg` are aliases for `rz` by 1/4, 1/8, 3/4 and 7/8 of
//! a turn. `rz θ` denotes `diag(1, e^{2πiθ})`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An exact rational fraction of a full turn, reduced into `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    num: u64,
    den: u64,
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };
    pub const T: Angle = Angle { num: 1, den: 8 };
    pub const S: Angle = Angle { num: 1, den: 4 };
    pub const Z: Angle = Angle { num: 1, den: 2 };
    pub const SDG: Angle = Angle { num: 3, den: 4 };
    pub const TDG: Angle = Angle { num: 7, den: 8 };

    /// `num / den` turns, normalized modulo one. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Angle {
        assert!(den > 0, "angle denominator must be positive");
        let den = den as i128;
        let r = (num as i128).rem_euclid(den);
        Self::reduce(r as u128, den as u128)
    }

    fn reduce(num: u128, den: u128) -> Angle {
        let num = num % den;
        if num == 0 {
            return Angle::ZERO;
        }
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        Angle {
            num: u64::try_from(num).expect("angle numerator overflow"),
            den: u64::try_from(den).expect("angle denominator overflow"),
        }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Value in turns as a float (for dense simulation only).
    pub fn turns(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn radians(self) -> f64 {
        std::f64::consts::TAU * self.turns()
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        let (a, b) = (self.num as u128, self.den as u128);
        let (c, d) = (rhs.num as u128, rhs.den as u128);
        let g = gcd(b, d);
        let den = b / g * d;
        Angle::reduce(a * (d / g) + c * (b / g), den)
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        if self.num == 0 {
            self
        } else {
            Angle {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl Sub for Angle {
    type Output = Angle;

    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl std::iter::Sum for Angle {
    fn sum<I: Iterator<Item = Angle>>(iter: I) -> Angle {
        iter.fold(Angle::ZERO, Add::add)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Angle, String> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: i64 = n.parse().map_err(|_| format!("bad angle numerator `{n}`"))?;
        let den: u64 = d.parse().map_err(|_| format!("bad angle denominator `{d}`"))?;
        if den == 0 {
            return Err("angle denominator must be positive".into());
        }
        Ok(Angle::new(num, den))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Rz { angle: Angle, target: usize },
    H { target: usize },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control, target }
    }

    pub fn rz(angle: Angle, target: usize) -> Gate {
        Gate::Rz { angle, target }
    }

    pub fn h(target: usize) -> Gate {
        Gate::H { target }
    }

    pub fn t(target: usize) -> Gate {
        Gate::rz(Angle::T, target)
    }

    pub fn s(target: usize) -> Gate {
        Gate::rz(Angle::S, target)
    }

    pub fn is_cnot(&self) -> bool {
        matches!(self, Gate::Cnot { .. })
    }

    pub fn is_h(&self) -> bool {
        matches!(self, Gate::H { .. })
    }

    /// Wires the gate acts on, control first for CNOT.
    pub fn wires(&self) -> ([usize; 2], usize) {
        match *self {
            Gate::Cnot { control, target } => ([control, target], 2),
            Gate::Rz { target, .. } | Gate::H { target } => ([target, target], 1),
        }
    }

    pub fn acts_on(&self, wire: usize) -> bool {
        let (w, k) = self.wires();
        w[..k].contains(&wire)
    }

    pub fn shares_wire(&self, other: &Gate) -> bool {
        let (w, k) = self.wires();
        w[..k].iter().any(|&q| other.acts_on(q))
    }

    pub fn max_wire(&self) -> usize {
        let (w, k) = self.wires();
        w[..k].iter().copied().max().unwrap_or(0)
    }

    /// The inverse gate.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rz { angle, target } => Gate::Rz {
                angle: -angle,
                target,
            },
            g => g,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot { control, target } => write!(f, "cnot {control} {target}"),
            Gate::Rz { angle, target } => write!(f, "rz {angle} {target}"),
            Gate::H { target } => write!(f, "h {target}"),
        }
    }
}

/// Gate tallies used in reports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub cnot: usize,
    pub rz: usize,
    pub h: usize,
    pub total: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(num_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn validate(&self, g: &Gate) -> Result<()> {
        let (w, k) = g.wires();
        for &q in &w[..k] {
            if q >= self.num_qubits {
                return Err(Error::IndexOutOfRange {
                    index: q,
                    dim: self.num_qubits,
                });
            }
        }
        if let Gate::Cnot { control, target } = *g {
            if control == target {
                return Err(Error::SameControlTarget(control));
            }
        }
        Ok(())
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        self.validate(&g)?;
        self.gates.push(g);
        Ok(())
    }

    /// Appends all gates of `other`, which must have the same width.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: other.num_qubits,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, g: Gate) {
        debug_assert!(self.validate(&g).is_ok(), "invalid gate {g}");
        self.gates.push(g);
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_cnot()).count()
    }

    pub fn h_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_h()).count()
    }

    pub fn counts(&self) -> GateCounts {
        let cnot = self.cnot_count();
        let h = self.h_count();
        GateCounts {
            cnot,
            h,
            rz: self.gates.len() - cnot - h,
            total: self.gates.len(),
        }
    }

    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let (w, k) = g.wires();
            let l = w[..k].iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
            for &q in &w[..k] {
                level[q] = l;
            }
            depth = depth.max(l);
        }
        depth
    }

    /// The inverse circuit (reversed order, inverted gates).
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn emit(&self) -> String {
        let mut s = format!("qubits {}\n", self.num_qubits);
        for g in &self.gates {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let Some(c) = circuit.as_mut() else {
                match tokens.as_slice() {
                    ["qubits", n] => {
                        let n = n
                            .parse()
                            .map_err(|_| parse_err(line_no, format!("bad qubit count `{n}`")))?;
                        circuit = Some(Circuit::new(n));
                        continue;
                    }
                    _ => return Err(parse_err(line_no, "expected `qubits <n>` header")),
                }
            };
            let wire = |s: &str| -> Result<usize> {
                s.parse()
                    .map_err(|_| parse_err(line_no, format!("bad wire index `{s}`")))
            };
            let gate = match tokens.as_slice() {
                ["cnot", c, t] => Gate::cnot(wire(c)?, wire(t)?),
                ["rz", a, t] => {
                    let angle: Angle = a.parse().map_err(|e: String| parse_err(line_no, e))?;
                    Gate::rz(angle, wire(t)?)
                }
                ["h", t] => Gate::h(wire(t)?),
                ["s", t] => Gate::rz(Angle::S, wire(t)?),
                ["t", t] => Gate::rz(Angle::T, wire(t)?),
                ["sdg", t] => Gate::rz(Angle::SDG, wire(t)?),
                ["tdg", t] => Gate::rz(Angle::TDG, wire(t)?),
                [name, ..] => {
                    return Err(parse_err(
                        line_no,
                        format!("unknown gate or wrong arity: `{name}`"),
                    ))
                }
                [] => unreachable!(),
            };
            c.push(gate).map_err(|e| parse_err(line_no, e.to_string()))?;
        }
        circuit.ok_or_else(|| parse_err(1, "missing `qubits <n>` header"))
    }
}

impl fmt::Debug for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circuit({}; ", self.num_qubits)?;
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Circuit> {
        Circuit::parse(s)
    }
}
