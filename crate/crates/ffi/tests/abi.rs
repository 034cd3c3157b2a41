use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use fptool_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { fpt_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fpt_last_error()) }.to_str().unwrap().to_string()
}

fn ring(p: u64, vars: &str) -> *mut FptRing {
    let vars = CString::new(vars).unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { fpt_ring_new(p, vars.as_ptr(), ptr::null(), &mut r) }, FptStatus::Ok);
    r
}

fn ideal(r: *const FptRing, gens: &str) -> *mut FptIdeal {
    let gens = CString::new(gens).unwrap();
    let mut i = ptr::null_mut();
    assert_eq!(unsafe { fpt_ideal_parse(r, gens.as_ptr(), &mut i) }, FptStatus::Ok, "{}", last_error());
    i
}

#[test]
fn ring_and_ideal_lifecycle() {
    let r = ring(2, "x,y");
    let i = ideal(r, "x^2, x*y, y");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fpt_ideal_to_string(i, &mut s) }, FptStatus::Ok);
    assert_eq!(take(s), "(x^2, y)");
    let m = ideal(r, "x, y");
    let mut yes = false;
    assert_eq!(unsafe { fpt_ideal_contains(m, i, &mut yes) }, FptStatus::Ok);
    assert!(yes);
    assert_eq!(unsafe { fpt_ideal_equal(m, i, &mut yes) }, FptStatus::Ok);
    assert!(!yes);
    unsafe {
        fpt_ideal_free(i);
        fpt_ideal_free(m);
        fpt_ring_free(r);
    }
}

#[test]
fn invariants() {
    let r = ring(2, "x,y");
    let m = ideal(r, "x, y");
    let mut v = 0u64;
    assert_eq!(unsafe { fpt_nu(m, 2, &mut v) }, FptStatus::Ok);
    assert_eq!(v, 6);

    let i = ideal(r, "x^3*y^2");
    let mut root = ptr::null_mut();
    assert_eq!(unsafe { fpt_pe_root(i, 1, &mut root) }, FptStatus::Ok);
    let mut s = ptr::null_mut();
    unsafe { fpt_ideal_to_string(root, &mut s) };
    assert_eq!(take(s), "(x*y)");

    let mut tau = ptr::null_mut();
    assert_eq!(unsafe { fpt_test_ideal(m, 2, 1, 2, &mut tau) }, FptStatus::Ok);
    let mut same = false;
    unsafe { fpt_ideal_equal(tau, m, &mut same) };
    assert!(same);

    let poly = CString::new("x^3*y^3 + x").unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { fpt_trace(r, poly.as_ptr(), 1, &mut t) }, FptStatus::Ok);
    assert_eq!(take(t), "x*y");
    unsafe {
        fpt_ideal_free(tau);
        fpt_ideal_free(root);
        fpt_ideal_free(i);
        fpt_ideal_free(m);
        fpt_ring_free(r);
    }
}

#[test]
fn split_rows() {
    let beta = [3u64, 4];
    let mut rows = [0u64; 2];
    assert_eq!(unsafe { fpt_split(beta.as_ptr(), 2, 1, 8, rows.as_mut_ptr()) }, FptStatus::Ok);
    assert_eq!(rows, [3, 4]);
    assert_eq!(unsafe { fpt_split(beta.as_ptr(), 2, 1, 4, rows.as_mut_ptr()) }, FptStatus::InvalidArgument);
}

#[test]
fn error_codes() {
    let vars = CString::new("x").unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { fpt_ring_new(4, vars.as_ptr(), ptr::null(), &mut r) }, FptStatus::NotPrime);
    assert!(last_error().contains("characteristic must be prime"));
    assert_eq!(unsafe { fpt_ring_new(2, ptr::null(), ptr::null(), &mut r) }, FptStatus::NullPointer);

    let r = ring(2, "x");
    let bad = CString::new("x + z").unwrap();
    let mut i = ptr::null_mut();
    assert_eq!(unsafe { fpt_ideal_parse(r, bad.as_ptr(), &mut i) }, FptStatus::Parse);
    assert!(last_error().contains("position"));

    let other = ring(3, "x");
    let a = ideal(r, "x");
    let b = ideal(other, "x");
    let mut yes = false;
    assert_eq!(unsafe { fpt_ideal_contains(a, b, &mut yes) }, FptStatus::RingMismatch);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { fpt_ideal_to_string(a, &mut s) }, FptStatus::Ok);
    assert_eq!(last_error(), "");
    take(s);
    unsafe {
        fpt_ideal_free(a);
        fpt_ideal_free(b);
        fpt_ring_free(r);
        fpt_ring_free(other);
    }
}

#[test]
fn cli_through_abi() {
    let args: Vec<CString> = ["nu", "--p", "2", "--vars", "x,y", "--ideal", "x,y", "--e", "1"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|s| s.as_ptr()).collect();
    let (mut code, mut out, mut err) = (-1, ptr::null_mut(), ptr::null_mut());
    let st = unsafe { fpt_run_cli(ptrs.len(), ptrs.as_ptr(), &mut code, &mut out, &mut err) };
    assert_eq!(st, FptStatus::Ok);
    assert_eq!(code, 0);
    assert_eq!(take(out), "nu=2\n");
    assert_eq!(take(err), "");
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let lib = target_dir().join("libfptool_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler not available");
        return;
    }
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "fptool.h"
int main(void) {
    FptRing *r = NULL;
    FptIdeal *m = NULL;
    uint64_t v = 0;
    if (fpt_ring_new(2, "x,y", NULL, &r) != FPT_STATUS_OK) return 1;
    if (fpt_ideal_parse(r, "x, y", &m) != FPT_STATUS_OK) return 2;
    if (fpt_nu(m, 1, &v) != FPT_STATUS_OK || v != 2) return 3;
    if (fpt_ring_new(6, "x", NULL, &r) != FPT_STATUS_NOT_PRIME) return 4;
    if (strstr(fpt_last_error(), "prime") == NULL) return 5;
    fpt_ideal_free(m);
    printf("nu=%llu\n", (unsigned long long)v);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "nu=2\n");
}
