//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words so a row XOR costs `O(n / 64)`. Row `q`
//! of a matrix produced by [`simulate_cnot_circuit`] is the parity carried by
//! qubit `q`, expressed over the input variables.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, Gate};
use crate::error::{parse_err, Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A fixed-length vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from the low `len` bits of `value` (bit `i` is entry `i`).
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len.min(64) {
            v.set(i, (value >> i) & 1 == 1);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Index of the single set bit, if exactly one bit is set.
    pub fn single_one(&self) -> Option<usize> {
        if self.count_ones() == 1 {
            self.ones().next()
        } else {
            None
        }
    }

    /// Entries as a '0'/'1' string, entry 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn parse_bit_string(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_bit_string())
    }
}

/// Orders vectors as the integers `sum_i bit_i * 2^i`, so entry 0 is least
/// significant.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An elementary row operation `row[target] ^= row[control]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RowOp {
    pub control: usize,
    pub target: usize,
}

impl RowOp {
    pub fn new(control: usize, target: usize) -> Self {
        Self { control, target }
    }

    /// The same pair with roles exchanged.
    pub fn flipped(self) -> Self {
        Self {
            control: self.target,
            target: self.control,
        }
    }
}

/// A square matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: Vec<BitVector>,
}

impl BinaryMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            rows: vec![BitVector::zeros(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self { rows })
    }

    /// Convenience constructor from nested 0/1 literals.
    pub fn from_u8_rows(rows: &[&[u8]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| BitVector::from_bools(&r.iter().map(|&b| b != 0).collect::<Vec<_>>()))
                .collect(),
        )
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].set(col, value);
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.single_one() == Some(i))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.ones().all(|j| j >= i))
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.ones().all(|j| j <= i))
    }

    fn check_op(&self, op: RowOp) -> Result<()> {
        let n = self.dim();
        for index in [op.control, op.target] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, dim: n });
            }
        }
        if op.control == op.target {
            return Err(Error::SameControlTarget(op.control));
        }
        Ok(())
    }

    /// Applies `row[target] ^= row[control]` in place.
    pub fn row_op(&mut self, op: RowOp) -> Result<()> {
        self.check_op(op)?;
        self.row_op_unchecked(op);
        Ok(())
    }

    #[inline]
    pub(crate) fn row_op_unchecked(&mut self, op: RowOp) {
        let (c, t) = (op.control, op.target);
        if c < t {
            let (lo, hi) = self.rows.split_at_mut(t);
            hi[0].xor_assign(&lo[c]);
        } else {
            let (lo, hi) = self.rows.split_at_mut(c);
            lo[t].xor_assign(&hi[0]);
        }
    }

    pub fn apply_ops<'a>(&mut self, ops: impl IntoIterator<Item = &'a RowOp>) -> Result<()> {
        for &op in ops {
            self.row_op(op)?;
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut t = Self::zeros(n);
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn multiply(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let n = self.dim();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVector::zeros(n);
                for k in r.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BinaryMatrix { rows })
    }

    /// Matrix-vector product `M x`.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.dim());
        for (i, r) in self.rows.iter().enumerate() {
            out.set(i, r.dot(x));
        }
        out
    }

    pub fn rank(&self) -> usize {
        let n = self.dim();
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            for r in 0..n {
                if r != rank && rows[r].get(col) {
                    let pivot = rows[rank].clone();
                    rows[r].xor_assign(&pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim()
    }

    /// Gauss-Jordan inverse. Fails with the first column lacking a pivot.
    pub fn invert(&self) -> Result<BinaryMatrix> {
        let n = self.dim();
        let mut m = self.clone();
        let mut inv = BinaryMatrix::identity(n);
        for col in 0..n {
            let p = (col..n)
                .find(|&r| m.rows[r].get(col))
                .ok_or(Error::Singular { column: col })?;
            m.rows.swap(col, p);
            inv.rows.swap(col, p);
            for r in 0..n {
                if r != col && m.rows[r].get(col) {
                    m.row_op_unchecked(RowOp::new(col, r));
                    inv.row_op_unchecked(RowOp::new(col, r));
                }
            }
        }
        Ok(inv)
    }

    /// Uniform rejection sampling of an invertible `n x n` matrix.
    pub fn random_invertible(n: usize, seed: u64) -> Result<BinaryMatrix> {
        const CAP: usize = 1000;
        if n == 0 {
            return Err(Error::Config("matrix dimension must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..CAP {
            let rows = (0..n)
                .map(|_| {
                    let mut r = BitVector::zeros(n);
                    for j in 0..n {
                        r.set(j, rng.gen::<bool>());
                    }
                    r
                })
                .collect();
            let m = BinaryMatrix { rows };
            if m.is_invertible() {
                return Ok(m);
            }
        }
        Err(Error::RetryCap {
            attempts: CAP,
            what: "sampling an invertible matrix",
        })
    }

    /// Text form: `n` on the first line, then `n` rows of '0'/'1'.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.dim());
        for r in &self.rows {
            s.push_str(&r.to_bit_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<BinaryMatrix> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let n: usize = first
            .parse()
            .map_err(|_| parse_err(1, format!("expected dimension, found `{first}`")))?;
        if n == 0 {
            return Err(parse_err(1, "dimension must be positive"));
        }
        let mut rows = Vec::with_capacity(n);
        for (idx, line) in lines {
            if rows.len() == n {
                if line.is_empty() {
                    continue;
                }
                return Err(parse_err(idx + 1, "trailing content after matrix"));
            }
            if line.len() != n {
                return Err(parse_err(
                    idx + 1,
                    format!("expected {n} characters, found {}", line.len()),
                ));
            }
            let row = BitVector::parse_bit_string(line)
                .ok_or_else(|| parse_err(idx + 1, "row must contain only '0' and '1'"))?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(parse_err(
                rows.len() + 2,
                format!("expected {n} rows, found {}", rows.len()),
            ));
        }
        Ok(BinaryMatrix { rows })
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix({})", self.dim())?;
        for r in &self.rows {
            writeln!(f, "  {}", r.to_bit_string())?;
        }
        Ok(())
    }
}

impl FromStr for BinaryMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

/// Returns a copy of `m` with `op` applied.
pub fn apply_row_op(m: &BinaryMatrix, op: RowOp) -> Result<BinaryMatrix> {
    let mut out = m.clone();
    out.row_op(op)?;
    Ok(out)
}

/// The GF(2) matrix of a CNOT-only circuit, folding gates left to right from
/// the identity.
pub fn simulate_cnot_circuit(c: &Circuit) -> Result<BinaryMatrix> {
    let mut m = BinaryMatrix::identity(c.num_qubits());
    for (position, gate) in c.gates().iter().enumerate() {
        match *gate {
            Gate::Cnot { control, target } => m.row_op(RowOp::new(control, target))?,
            _ => return Err(Error::NonCnotGate { position }),
        }
    }
    Ok(m)
}

/// Like [`simulate_cnot_circuit`] but skips non-CNOT gates.
pub fn cnot_skeleton_matrix(c: &Circuit) -> BinaryMatrix {
    let mut m = BinaryMatrix::identity(c.num_qubits());
    for gate in c.gates() {
        if let Gate::Cnot { control, target } = *gate {
            m.row_op_unchecked(RowOp::new(control, target));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_factors() -> [BinaryMatrix; 3] {
        [
            BinaryMatrix::from_u8_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
                .unwrap(),
            BinaryMatrix::from_u8_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 1, 1]])
                .unwrap(),
            BinaryMatrix::from_u8_rows(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
                .unwrap(),
        ]
    }

    fn product_matrix() -> BinaryMatrix {
        BinaryMatrix::from_u8_rows(&[&[1, 0, 1, 1], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 1, 1]])
            .unwrap()
    }

    #[test]
    fn single_row_op() {
        let m = apply_row_op(&BinaryMatrix::identity(2), RowOp::new(0, 1)).unwrap();
        assert_eq!(m, BinaryMatrix::from_u8_rows(&[&[1, 0], &[1, 1]]).unwrap());
    }

    #[test]
    fn row_op_is_involutive() {
        let m = BinaryMatrix::random_invertible(6, 3).unwrap();
        let op = RowOp::new(4, 1);
        assert_eq!(apply_row_op(&apply_row_op(&m, op).unwrap(), op).unwrap(), m);
    }

    #[test]
    fn row_op_errors() {
        let m = BinaryMatrix::identity(3);
        assert_eq!(
            apply_row_op(&m, RowOp::new(0, 3)),
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        );
        assert_eq!(apply_row_op(&m, RowOp::new(1, 1)), Err(Error::SameControlTarget(1)));
    }

    #[test]
    fn elementary_factors_compose_to_product() {
        // Each factor is I + e(target, control); composing them onto the
        // identity from the rightmost factor outwards.
        let ops = [RowOp::new(0, 1), RowOp::new(2, 3), RowOp::new(3, 0)];
        let mut m = BinaryMatrix::identity(4);
        m.apply_ops(&ops).unwrap();
        assert_eq!(m, product_matrix());

        let [a, b, c] = product_factors();
        let prod = a.multiply(&b).unwrap().multiply(&c).unwrap();
        assert_eq!(prod, product_matrix());
    }

    #[test]
    fn simulate_small_circuits() {
        let empty = Circuit::new(4);
        assert_eq!(simulate_cnot_circuit(&empty).unwrap(), BinaryMatrix::identity(4));

        let mut twice = Circuit::new(2);
        twice.push(Gate::cnot(0, 1)).unwrap();
        twice.push(Gate::cnot(0, 1)).unwrap();
        assert!(simulate_cnot_circuit(&twice).unwrap().is_identity());

        let mut small = Circuit::new(4);
        for (c, t) in [(0, 1), (2, 3), (3, 0)] {
            small.push(Gate::cnot(c, t)).unwrap();
        }
        assert_eq!(simulate_cnot_circuit(&small).unwrap(), product_matrix());
    }

    #[test]
    fn simulate_rejects_other_gates() {
        let mut c = Circuit::new(2);
        c.push(Gate::cnot(0, 1)).unwrap();
        c.push(Gate::h(0)).unwrap();
        assert_eq!(simulate_cnot_circuit(&c), Err(Error::NonCnotGate { position: 1 }));
    }

    #[test]
    fn inverse_and_rank() {
        assert_eq!(BinaryMatrix::identity(5).invert().unwrap(), BinaryMatrix::identity(5));
        let singular =
            BinaryMatrix::from_u8_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(singular.rank(), 2);
        assert_eq!(singular.invert(), Err(Error::Singular { column: 1 }));
    }

    #[test]
    fn random_inverse_round_trip() {
        for seed in 0..100 {
            let m = BinaryMatrix::random_invertible(8, seed).unwrap();
            let inv = m.invert().unwrap();
            assert!(m.multiply(&inv).unwrap().is_identity());
            assert!(inv.multiply(&m).unwrap().is_identity());
            assert_eq!(inv.invert().unwrap(), m);
        }
    }

    #[test]
    fn random_invertible_contract() {
        assert_eq!(BinaryMatrix::random_invertible(1, 9).unwrap(), BinaryMatrix::identity(1));
        for n in [2, 7, 20, 65] {
            let a = BinaryMatrix::random_invertible(n, 42).unwrap();
            assert_eq!(a.rank(), n);
            assert_eq!(a, BinaryMatrix::random_invertible(n, 42).unwrap());
        }
    }

    #[test]
    fn multi_word_rows() {
        let a = BinaryMatrix::random_invertible(130, 1).unwrap();
        let b = BinaryMatrix::random_invertible(130, 2).unwrap();
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab.rank(), 130);
        assert!(ab.multiply(&b.invert().unwrap()).unwrap() == a);
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn text_format() {
        let m = product_matrix();
        let text = m.to_text();
        assert_eq!(text, "4\n1011\n1100\n0010\n0011\n");
        assert_eq!(BinaryMatrix::parse_text(&text).unwrap(), m);
        assert!(matches!(
            BinaryMatrix::parse_text("2\n10\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            BinaryMatrix::parse_text("2\n10\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn bitvector_order_is_numeric_with_entry_zero_lowest() {
        let x1 = BitVector::from_u64(4, 0b0001);
        let x3x4 = BitVector::from_u64(4, 0b1100);
        let x1x2x3 = BitVector::from_u64(4, 0b0111);
        assert!(x1 < x1x2x3 && x1x2x3 < x3x4);
    }
}
