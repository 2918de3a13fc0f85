use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use quandlekit_ffi::*;

fn handle(f: impl FnOnce(*mut *mut QkQuandle) -> QkStatus) -> *mut QkQuandle {
    let mut q = ptr::null_mut();
    assert_eq!(f(&mut q), QkStatus::Ok);
    assert!(!q.is_null());
    q
}

fn last_error() -> String {
    let p = qk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn construct_query_free() {
    unsafe {
        let r3 = handle(|o| qk_quandle_dihedral(3, o));
        let mut n = 0;
        assert_eq!(qk_quandle_size(r3, &mut n), QkStatus::Ok);
        assert_eq!(n, 3);
        let mut v = 0;
        assert_eq!(qk_quandle_op(r3, 0, 1, &mut v), QkStatus::Ok);
        assert_eq!(v, 2);
        assert_eq!(qk_quandle_op(r3, 3, 0, &mut v), QkStatus::InvalidArgument);

        let mut lambda = [9usize; 3];
        assert_eq!(qk_quandle_partition_type(r3, lambda.as_mut_ptr(), 3), QkStatus::Ok);
        assert_eq!(lambda, [0, 0, 1]);
        assert_eq!(qk_quandle_partition_type(r3, lambda.as_mut_ptr(), 2), QkStatus::InvalidArgument);

        let (mut r, mut ro, mut l) = (false, false, false);
        assert_eq!(qk_quandle_transitivity(r3, &mut r, &mut ro, &mut l), QkStatus::Ok);
        assert!(r && ro);

        let mut violated = false;
        assert_eq!(qk_power_assoc_violated(r3, &mut violated), QkStatus::Ok);
        assert!(violated);

        let mut s = ptr::null_mut();
        assert_eq!(qk_delta_quotient(r3, 1, &mut s), QkStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "Z_3");
        qk_string_free(s);

        qk_quandle_free(r3);
    }
}

#[test]
fn json_and_table_round_trip() {
    unsafe {
        let table: [u32; 9] = [0, 2, 1, 2, 1, 0, 1, 0, 2];
        let a = handle(|o| qk_quandle_from_table(3, table.as_ptr(), o));
        let mut s = ptr::null_mut();
        assert_eq!(qk_quandle_to_json(a, &mut s), QkStatus::Ok);
        let b = handle(|o| qk_quandle_from_json(s, o));
        qk_string_free(s);
        let mut iso = false;
        assert_eq!(qk_quandles_isomorphic(a, b, &mut iso), QkStatus::Ok);
        assert!(iso);
        let t = handle(|o| qk_quandle_trivial(3, o));
        assert_eq!(qk_quandles_isomorphic(a, t, &mut iso), QkStatus::Ok);
        assert!(!iso);
        for q in [a, b, t] {
            qk_quandle_free(q);
        }
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut q = ptr::null_mut();
        let bad: [u32; 4] = [0, 0, 0, 1];
        assert_eq!(qk_quandle_from_table(2, bad.as_ptr(), &mut q), QkStatus::AxiomViolation);
        assert!(q.is_null());
        assert!(last_error().contains("axiom"));

        let junk = CString::new("{\"n\": 2").unwrap();
        assert_eq!(qk_quandle_from_json(junk.as_ptr(), &mut q), QkStatus::Parse);
        assert_eq!(qk_quandle_alexander(6, 2, &mut q), QkStatus::InvalidArgument);
        assert_eq!(qk_quandle_dihedral(3, ptr::null_mut()), QkStatus::NullPointer);
        let mut count = 0;
        assert_eq!(qk_enumerate_count(7, &mut count), QkStatus::Capacity);
        assert_eq!(qk_enumerate_count(4, &mut count), QkStatus::Ok);
        assert_eq!(count, 7);
        assert_eq!(qk_quandle_size(ptr::null(), &mut count), QkStatus::NullPointer);

        let msg = CStr::from_ptr(qk_status_str(QkStatus::Capacity));
        assert_eq!(msg.to_str().unwrap(), "capacity exceeded");
        qk_string_free(ptr::null_mut());
        qk_quandle_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/quandlekit.h")).unwrap();
    for name in ["qk_quandle_dihedral", "qk_quandle_free", "qk_last_error", "QK_STATUS_CAPACITY = 5", "typedef struct QkQuandle QkQuandle"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a small C program against the static library, when a C
/// compiler and the archive are available.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let target = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let archive = target.join("libquandlekit_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or {} missing", archive.display());
        return;
    }
    let dir = tempfile::TempDir::new().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "quandlekit.h"
int main(void) {
    QkQuandle *q = NULL;
    if (qk_quandle_dihedral(8, &q) != QK_STATUS_OK) return 1;
    char *shape = NULL;
    if (qk_delta_quotient(q, 1, &shape) != QK_STATUS_OK) return 2;
    printf("%s\n", shape);
    qk_string_free(shape);
    qk_quandle_free(q);
    return qk_quandle_dihedral(0, &q) == QK_STATUS_PARSE ? 0 : 3;
}
"#,
    )
    .unwrap();
    let bin: PathBuf = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "Z ⊕ Z_4");
}
