//! C interface to `nisqsynth`.
//!
//! Objects are opaque handles created by `nsq_*_parse`/`nsq_*_new`-style
//! calls and released with the matching `nsq_*_free`. Every fallible call
//! returns an [`NsqStatus`]; on failure, [`nsq_last_error`] describes the
//! error on the calling thread. Output pointers are written only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nisqsynth::cnot::synthesize_constrained;
use nisqsynth::graph::builtin_architecture;
use nisqsynth::optimizer::cancel_pass;
use nisqsynth::phase::{extract_sum_over_paths, synthesize_cnot_rz};
use nisqsynth::sim::{verify_equivalence, VerifyMode};
use nisqsynth::universal::route_universal;
use nisqsynth::{BinaryMatrix, Circuit, ConnectivityGraph, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Singular = 5,
    UnsupportedGate = 6,
    TooLarge = 7,
    Panic = 99,
}

/// Values for the `mode` argument of [`nsq_verify`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsqVerifyMode {
    Gf2 = 0,
    Unitary = 1,
}

/// An invertible binary matrix.
pub struct NsqMatrix(BinaryMatrix);

/// A coupling graph.
pub struct NsqGraph(ConnectivityGraph);

/// A circuit over CNOT, Rz and H.
pub struct NsqCircuit(Circuit);

/// Gate counts of a circuit.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NsqCounts {
    pub cnot: usize,
    pub rz: usize,
    pub h: usize,
    pub total: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(NsqStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => NsqStatus::Parse,
            Error::Singular { .. } => NsqStatus::Singular,
            Error::NonCnotGate { .. } | Error::UnsupportedGate { .. } => NsqStatus::UnsupportedGate,
            Error::TooManyQubits { .. } | Error::InstanceTooLarge { .. } => NsqStatus::TooLarge,
            _ => NsqStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NsqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NsqStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            NsqStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(NsqStatus::NullPointer, "null pointer argument".into())
}

unsafe fn utf8<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(NsqStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nsq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a matrix: `n`, then `n` rows of '0'/'1'.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_matrix_parse(text: *const c_char, out: *mut *mut NsqMatrix) -> NsqStatus {
    guard(|| put(out, NsqMatrix(BinaryMatrix::parse_text(utf8(text)?)?)))
}

/// Uniformly random invertible `n x n` matrix.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_matrix_random(n: usize, seed: u64, out: *mut *mut NsqMatrix) -> NsqStatus {
    guard(|| put(out, NsqMatrix(BinaryMatrix::random_invertible(n, seed)?)))
}

/// # Safety
/// `m` must be a live matrix handle.
#[no_mangle]
pub unsafe extern "C" fn nsq_matrix_dim(m: *const NsqMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// # Safety
/// `m` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nsq_matrix_free(m: *mut NsqMatrix) {
    release(m)
}

/// Parses a graph: `n m`, then `m` lines `u v`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_graph_parse(text: *const c_char, out: *mut *mut NsqGraph) -> NsqStatus {
    guard(|| put(out, NsqGraph(ConnectivityGraph::parse_text(utf8(text)?)?)))
}

/// A built-in device such as `tokyo20`, `line5` or `grid3x4`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_graph_builtin(name: *const c_char, out: *mut *mut NsqGraph) -> NsqStatus {
    guard(|| put(out, NsqGraph(builtin_architecture(utf8(name)?)?)))
}

/// Random connected graph; each edge is present with probability `sparseness`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_graph_random(n: usize, sparseness: f64, seed: u64, out: *mut *mut NsqGraph) -> NsqStatus {
    guard(|| put(out, NsqGraph(ConnectivityGraph::random_connected(n, sparseness, seed)?)))
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn nsq_graph_node_count(g: *const NsqGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.node_count())
}

/// # Safety
/// `g` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nsq_graph_free(g: *mut NsqGraph) {
    release(g)
}

/// Parses the line-based circuit format (`qubits n`, `cnot c t`, ...).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_circuit_parse(text: *const c_char, out: *mut *mut NsqCircuit) -> NsqStatus {
    guard(|| put(out, NsqCircuit(Circuit::parse(utf8(text)?)?)))
}

/// Writes the circuit text to `*out`; release it with [`nsq_string_free`].
///
/// # Safety
/// `c` must be a live circuit handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_circuit_emit(c: *const NsqCircuit, out: *mut *mut c_char) -> NsqStatus {
    guard(|| {
        let c = borrow(c)?;
        if out.is_null() {
            return Err(null());
        }
        *out = CString::new(c.0.emit()).expect("no interior nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `c` must be a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn nsq_circuit_num_qubits(c: *const NsqCircuit) -> usize {
    c.as_ref().map_or(0, |c| c.0.num_qubits())
}

/// Gate counts; all zero for NULL.
///
/// # Safety
/// `c` must be NULL or a live circuit handle.
#[no_mangle]
pub unsafe extern "C" fn nsq_circuit_counts(c: *const NsqCircuit) -> NsqCounts {
    c.as_ref().map_or(NsqCounts::default(), |c| {
        let k = c.0.counts();
        NsqCounts {
            cnot: k.cnot,
            rz: k.rz,
            h: k.h,
            total: k.total,
        }
    })
}

/// # Safety
/// `c` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nsq_circuit_free(c: *mut NsqCircuit) {
    release(c)
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nsq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// CNOT circuit implementing `m` with every CNOT on an edge of `g`.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_synthesize_cnot(m: *const NsqMatrix, g: *const NsqGraph, out: *mut *mut NsqCircuit) -> NsqStatus {
    guard(|| {
        let (c, _) = synthesize_constrained(&borrow(m)?.0, &borrow(g)?.0)?;
        put(out, NsqCircuit(c))
    })
}

/// Re-synthesizes a CNOT+Rz circuit onto `g`, keeping its phase polynomial
/// and linear part.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_synthesize_phase(c: *const NsqCircuit, g: *const NsqGraph, out: *mut *mut NsqCircuit) -> NsqStatus {
    guard(|| {
        let s = extract_sum_over_paths(&borrow(c)?.0)?;
        let (routed, _) = synthesize_cnot_rz(&s, &borrow(g)?.0)?;
        put(out, NsqCircuit(routed))
    })
}

/// Routes a circuit with Hadamards onto `g`, equal up to global phase.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_route(c: *const NsqCircuit, g: *const NsqGraph, out: *mut *mut NsqCircuit) -> NsqStatus {
    guard(|| {
        let (routed, _) = route_universal(&borrow(c)?.0, &borrow(g)?.0)?;
        put(out, NsqCircuit(routed))
    })
}

/// Cancels and merges gates by commutation.
///
/// # Safety
/// `c` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_cancel_pass(c: *const NsqCircuit, out: *mut *mut NsqCircuit) -> NsqStatus {
    guard(|| put(out, NsqCircuit(cancel_pass(&borrow(c)?.0))))
}

/// Compares two circuits; `mode` is an [`NsqVerifyMode`] value. Writes
/// whether they match and the deviation.
///
/// # Safety
/// Handles must be live; `equal` and `deviation` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nsq_verify(
    a: *const NsqCircuit,
    b: *const NsqCircuit,
    mode: u32,
    equal: *mut bool,
    deviation: *mut f64,
) -> NsqStatus {
    guard(|| {
        let mode = match mode {
            m if m == NsqVerifyMode::Gf2 as u32 => VerifyMode::Gf2,
            m if m == NsqVerifyMode::Unitary as u32 => VerifyMode::Unitary,
            m => return Err(Failure(NsqStatus::InvalidArgument, format!("unknown verify mode {m}"))),
        };
        if equal.is_null() || deviation.is_null() {
            return Err(null());
        }
        let r = verify_equivalence(&borrow(a)?.0, &borrow(b)?.0, mode)?;
        *equal = r.pass;
        *deviation = r.deviation;
        Ok(())
    })
}
