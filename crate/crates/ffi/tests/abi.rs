use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use turan_ffi::*;

fn named(name: &str) -> *mut TuranGraph {
    let c = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { turan_graph_named(c.as_ptr(), &mut g) }, TuranStatus::Ok);
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(turan_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn graph_handles() {
    unsafe {
        let k4 = named("K4");
        assert_eq!(turan_graph_order(k4), 4);
        assert_eq!(turan_graph_edge_count(k4), 6);
        let mut code = ptr::null_mut();
        assert_eq!(turan_graph_to_graph6(k4, &mut code), TuranStatus::Ok);
        assert_eq!(CStr::from_ptr(code).to_str().unwrap(), "C~");
        let mut back = ptr::null_mut();
        assert_eq!(turan_graph_from_graph6(code, &mut back), TuranStatus::Ok);
        turan_string_free(code);
        let mut iso = false;
        assert_eq!(turan_is_isomorphic(k4, back, &mut iso), TuranStatus::Ok);
        assert!(iso);

        let mut c = 0usize;
        assert_eq!(turan_circumference(k4, &mut c), TuranStatus::Ok);
        assert_eq!(c, 4);
        let k3 = named("K3");
        let mut has = false;
        assert_eq!(turan_contains(k4, k3, &mut has), TuranStatus::Ok);
        assert!(has);
        let mut p = 0u64;
        assert_eq!(turan_p_value(k4, &mut p), TuranStatus::Ok);
        assert_eq!(p, TURAN_P_INFINITE);
        let k23 = named("K23");
        assert_eq!(turan_p_value(k23, &mut p), TuranStatus::Ok);
        assert_eq!(p, 2);

        for g in [k4, back, k3, k23] {
            turan_graph_free(g);
        }
        turan_graph_free(ptr::null_mut());
        turan_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let bad = CString::new("not a graph").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(turan_graph_named(bad.as_ptr(), &mut g), TuranStatus::UnknownGraph);
        assert!(last_error().contains("unknown graph"));
        assert!(g.is_null());
        let bad = CString::new("~~~").unwrap();
        assert_eq!(turan_graph_from_graph6(bad.as_ptr(), &mut g), TuranStatus::InvalidGraph6);
        assert_eq!(turan_graph_from_graph6(ptr::null(), &mut g), TuranStatus::NullPointer);
        let k4 = named("K4");
        assert_eq!(last_error(), "");
        assert_eq!(turan_circumference(k4, ptr::null_mut()), TuranStatus::NullPointer);
        turan_graph_free(k4);
        let mut fam = ptr::null_mut();
        assert_eq!(turan_family_new(2, &mut fam), TuranStatus::InvalidArgument);
    }
}

#[test]
fn exact_values() {
    unsafe {
        let mut fam = ptr::null_mut();
        assert_eq!(turan_family_new(6, &mut fam), TuranStatus::Ok);
        let k5 = named("K5");
        assert_eq!(turan_family_add(fam, k5), TuranStatus::Ok);
        turan_graph_free(k5);
        let (mut v, mut has) = (0u64, false);
        assert_eq!(turan_ex_exact(9, fam, TuranConnectivity::Any, 0, &mut v, &mut has), TuranStatus::Ok);
        assert!(has);
        assert_eq!(v, 18);
        assert_eq!(turan_ex_exact(9, fam, TuranConnectivity::Any, 1, &mut v, &mut has), TuranStatus::BudgetExceeded);
        turan_family_free(fam);

        let mut fam = ptr::null_mut();
        assert_eq!(turan_family_new(4, &mut fam), TuranStatus::Ok);
        let mut codes = ptr::null_mut();
        assert_eq!(turan_extremal_graph6(5, fam, TuranConnectivity::Any, 0, &mut codes), TuranStatus::Ok);
        let list = CStr::from_ptr(codes).to_str().unwrap().to_string();
        turan_string_free(codes);
        assert_eq!(list, "DK{");
        // a 2-connected graph on 3 vertices has a cycle of length 3 < 4
        assert_eq!(turan_ex_exact(3, fam, TuranConnectivity::TwoConnected, 0, &mut v, &mut has), TuranStatus::Ok);
        assert!(has);
        assert_eq!(v, 3);
        assert_eq!(turan_ex_exact(5, fam, TuranConnectivity::TwoConnected, 0, &mut v, &mut has), TuranStatus::Ok);
        assert!(!has);
        turan_family_free(fam);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/turan.h")).unwrap();
    for name in [
        "turan_graph_from_graph6",
        "turan_graph_named",
        "turan_graph_free",
        "turan_graph_to_graph6",
        "turan_string_free",
        "turan_ex_exact",
        "turan_extremal_graph6",
        "turan_family_new",
        "turan_last_error",
        "typedef struct TuranGraph TuranGraph",
        "TURAN_STATUS_BUDGET_EXCEEDED = 5",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let out = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(crate_dir().join("include/turan.h"))
        .output()
        .expect("a C compiler on PATH");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "turan.h"

int main(void) {
    TuranFamily *fam = NULL;
    TuranGraph *k4 = NULL;
    if (turan_family_new(7, &fam) != TURAN_STATUS_OK) return 1;
    if (turan_graph_named("K4", &k4) != TURAN_STATUS_OK) return 2;
    turan_family_add(fam, k4);
    uint64_t value = 0;
    bool has = false;
    if (turan_ex_exact(8, fam, TURAN_CONNECTIVITY_TWO_CONNECTED, 0, &value, &has) != TURAN_STATUS_OK) return 3;
    printf("%d %llu\n", has, (unsigned long long)value);
    TuranGraph *bad = NULL;
    if (turan_graph_from_graph6("", &bad) != TURAN_STATUS_INVALID_GRAPH6) return 4;
    if (strlen(turan_last_error()) == 0) return 5;
    turan_graph_free(k4);
    turan_family_free(fam);
    return 0;
}
"#;

#[test]
fn links_from_c() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libturan_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let dir = tempfile_dir();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = std::process::Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    // 2-connected {C>=7, K4}-free graphs on 8 vertices: 3n - 7
    assert_eq!(String::from_utf8_lossy(&out.stdout), "1 17\n");
}

fn tempfile_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c-link");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
