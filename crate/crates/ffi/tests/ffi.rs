use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use nisqsynth_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = nsq_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn synthesize_and_verify() {
    unsafe {
        let mut m = ptr::null_mut();
        let mut g = ptr::null_mut();
        let mut c = ptr::null_mut();
        assert_eq!(nsq_matrix_random(9, 3, &mut m), NsqStatus::Ok);
        assert_eq!(nsq_graph_builtin(cstr("grid3x3").as_ptr(), &mut g), NsqStatus::Ok);
        assert_eq!(nsq_matrix_dim(m), 9);
        assert_eq!(nsq_graph_node_count(g), 9);
        assert_eq!(nsq_synthesize_cnot(m, g, &mut c), NsqStatus::Ok);
        assert_eq!(nsq_circuit_num_qubits(c), 9);
        let counts = nsq_circuit_counts(c);
        assert!(counts.cnot > 0 && counts.cnot == counts.total);

        let mut text = ptr::null_mut();
        assert_eq!(nsq_circuit_emit(c, &mut text), NsqStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(nsq_circuit_parse(text, &mut back), NsqStatus::Ok);
        let (mut equal, mut dev) = (false, 1.0);
        assert_eq!(nsq_verify(c, back, NsqVerifyMode::Gf2 as u32, &mut equal, &mut dev), NsqStatus::Ok);
        assert!(equal);
        assert_eq!(dev, 0.0);

        nsq_string_free(text);
        nsq_circuit_free(back);
        nsq_circuit_free(c);
        nsq_graph_free(g);
        nsq_matrix_free(m);
    }
}

#[test]
fn phase_and_route() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(nsq_graph_parse(cstr("3 2\n0 1\n1 2\n").as_ptr(), &mut g), NsqStatus::Ok);
        let mut c = ptr::null_mut();
        let src = cstr("qubits 3\nt 0\ncnot 0 2\nh 1\ncnot 2 0\ns 2\n");
        assert_eq!(nsq_circuit_parse(src.as_ptr(), &mut c), NsqStatus::Ok);

        let mut routed = ptr::null_mut();
        assert_eq!(nsq_route(c, g, &mut routed), NsqStatus::Ok);
        let (mut equal, mut dev) = (false, 1.0);
        assert_eq!(nsq_verify(c, routed, NsqVerifyMode::Unitary as u32, &mut equal, &mut dev), NsqStatus::Ok);
        assert!(equal, "deviation {dev}");

        let mut phase = ptr::null_mut();
        assert_eq!(nsq_synthesize_phase(c, g, &mut phase), NsqStatus::UnsupportedGate);
        assert!(phase.is_null());
        assert!(last_error().contains("not allowed"));

        let mut cz = ptr::null_mut();
        assert_eq!(nsq_circuit_parse(cstr("qubits 3\ncnot 0 2\nt 2\ncnot 0 2\n").as_ptr(), &mut cz), NsqStatus::Ok);
        assert_eq!(nsq_synthesize_phase(cz, g, &mut phase), NsqStatus::Ok);
        assert_eq!(nsq_verify(cz, phase, NsqVerifyMode::Unitary as u32, &mut equal, &mut dev), NsqStatus::Ok);
        assert!(equal);

        for p in [c, routed, cz, phase] {
            nsq_circuit_free(p);
        }
        nsq_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(nsq_matrix_parse(cstr("2\n1x\n01\n").as_ptr(), &mut m), NsqStatus::Parse);
        assert!(m.is_null());
        assert!(last_error().starts_with("line 2"));
        assert_eq!(nsq_matrix_parse(ptr::null(), &mut m), NsqStatus::NullPointer);
        assert_eq!(nsq_matrix_random(3, 1, ptr::null_mut()), NsqStatus::NullPointer);

        let mut g = ptr::null_mut();
        assert_eq!(nsq_graph_builtin(cstr("nowhere").as_ptr(), &mut g), NsqStatus::InvalidArgument);
        let bytes = [0xffu8, 0];
        assert_eq!(nsq_graph_builtin(bytes.as_ptr().cast(), &mut g), NsqStatus::InvalidUtf8);
        assert_eq!(nsq_graph_random(5, 0.0, 1, &mut g), NsqStatus::InvalidArgument);

        let mut a = ptr::null_mut();
        let mut b = ptr::null_mut();
        assert_eq!(nsq_circuit_parse(cstr("qubits 9\n").as_ptr(), &mut a), NsqStatus::Ok);
        assert_eq!(nsq_circuit_parse(cstr("qubits 9\n").as_ptr(), &mut b), NsqStatus::Ok);
        let (mut equal, mut dev) = (false, 0.0);
        assert_eq!(nsq_verify(a, b, NsqVerifyMode::Unitary as u32, &mut equal, &mut dev), NsqStatus::TooLarge);
        assert_eq!(nsq_verify(a, b, 7, &mut equal, &mut dev), NsqStatus::InvalidArgument);
        assert_eq!(nsq_circuit_counts(ptr::null()).total, 0);
        nsq_circuit_free(a);
        nsq_circuit_free(b);
        nsq_circuit_free(ptr::null_mut());
        nsq_string_free(ptr::null_mut());
    }
}

/// Compiles and runs a C program against the generated header and the
/// static library.
#[test]
fn c_program_links() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libnisqsynth_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler on PATH; skipping");
        return;
    }
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C build failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program failed: {}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("cnot="));
}
