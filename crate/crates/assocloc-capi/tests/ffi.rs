//! Exercises the C entry points from Rust (same symbols, same ABI) and
//! once from an actual C translation unit compiled against the generated
//! header and the static library.

use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use assocloc_capi::*;

fn corpus(name: &str) -> CString {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn last_error_string() -> String {
    unsafe {
        let p = assocloc_last_error();
        assert!(!p.is_null(), "expected an error message");
        CStr::from_ptr(p).to_str().unwrap().to_string()
    }
}

#[test]
fn algebra_handle_round_trip() {
    let text = corpus("m2f2.alg");
    let mut alg: *mut AssoclocAlgebra = ptr::null_mut();
    unsafe {
        assert_eq!(assocloc_algebra_parse(text.as_ptr(), &mut alg), AssoclocStatus::Ok);
        assert_eq!(assocloc_algebra_dim(alg), 4);
        assert_eq!(assocloc_algebra_modulus(alg), 2);
        assert!(!assocloc_algebra_is_commutative(alg));
        let name = assocloc_algebra_name(alg);
        assert_eq!(CStr::from_ptr(name).to_str().unwrap(), "m2f2");
        assocloc_string_free(name);
        assocloc_algebra_free(alg);
    }
}

#[test]
fn localize_natural_module_through_the_boundary() {
    let alg_text = corpus("m2f2.alg");
    let mod_text = corpus("m2f2_nat.mod");
    unsafe {
        let mut alg: *mut AssoclocAlgebra = ptr::null_mut();
        assert_eq!(assocloc_algebra_parse(alg_text.as_ptr(), &mut alg), AssoclocStatus::Ok);
        let mut module: *mut AssoclocModule = ptr::null_mut();
        assert_eq!(
            assocloc_module_parse(mod_text.as_ptr(), alg, &mut module),
            AssoclocStatus::Ok
        );
        assert_eq!(assocloc_module_dim(module), 2);

        let summands = [module as *const AssoclocModule];
        let mut ring: *mut AssoclocLocalRing = ptr::null_mut();
        assert_eq!(
            assocloc_localize(alg, summands.as_ptr(), 1, 0, 1 << 16, &mut ring),
            AssoclocStatus::Ok
        );
        assert_eq!(assocloc_local_ring_dim(ring), 4);
        assert_eq!(assocloc_local_ring_kernel_dim(ring), 0);
        assert_eq!(assocloc_local_ring_num_denominators(ring), 1);
        assert!(!assocloc_local_ring_truncated(ring));

        assocloc_local_ring_free(ring);
        assocloc_module_free(module);
        assocloc_algebra_free(alg);
    }
}

#[test]
fn null_arguments_are_rejected_not_dereferenced() {
    unsafe {
        let mut alg: *mut AssoclocAlgebra = ptr::null_mut();
        assert_eq!(
            assocloc_algebra_parse(ptr::null(), &mut alg),
            AssoclocStatus::NullArgument
        );
        let text = corpus("f4.alg");
        assert_eq!(
            assocloc_algebra_parse(text.as_ptr(), ptr::null_mut()),
            AssoclocStatus::NullArgument
        );
        assert_eq!(assocloc_algebra_dim(ptr::null()), 0);
        assert_eq!(assocloc_algebra_modulus(ptr::null()), 0);
        assert!(!assocloc_algebra_is_commutative(ptr::null()));
        assert!(assocloc_algebra_name(ptr::null()).is_null());
        assert_eq!(assocloc_module_dim(ptr::null()), 0);
        assert_eq!(assocloc_local_ring_dim(ptr::null()), 0);
        // frees tolerate NULL
        assocloc_algebra_free(ptr::null_mut());
        assocloc_module_free(ptr::null_mut());
        assocloc_local_ring_free(ptr::null_mut());
        assocloc_string_free(ptr::null_mut());
    }
}

#[test]
fn parse_and_validation_failures_set_the_error_message() {
    unsafe {
        let mut alg: *mut AssoclocAlgebra = ptr::null_mut();
        let garbage = CString::new("not an algebra file").unwrap();
        assert_eq!(
            assocloc_algebra_parse(garbage.as_ptr(), &mut alg),
            AssoclocStatus::ParseError
        );
        assert!(last_error_string().contains("line 1"));

        let broken = corpus("broken.alg");
        assert_eq!(
            assocloc_algebra_parse(broken.as_ptr(), &mut alg),
            AssoclocStatus::InvalidInput
        );
        assert!(last_error_string().contains("associativity"));

        let bad_utf8 = CString::new(vec![0xffu8, 0xfe]).unwrap();
        assert_eq!(
            assocloc_algebra_parse(bad_utf8.as_ptr(), &mut alg),
            AssoclocStatus::InvalidUtf8
        );
    }
}

#[test]
fn non_simple_summand_is_a_math_error() {
    use assocloc::format::{parse_algebra, serialize_module};
    use assocloc::module::ModuleRep;
    use std::sync::Arc;

    // the regular module of F_2×F_2 decomposes, so localizing at it must
    // be refused
    let alg_text = corpus("f2xf2.alg");
    let parsed = parse_algebra(alg_text.to_str().unwrap()).unwrap();
    let reg = ModuleRep::regular(&Arc::new(parsed.presentation));
    let reg_text = CString::new(serialize_module(&reg)).unwrap();
    unsafe {
        let mut alg: *mut AssoclocAlgebra = ptr::null_mut();
        assert_eq!(assocloc_algebra_parse(alg_text.as_ptr(), &mut alg), AssoclocStatus::Ok);
        let mut module: *mut AssoclocModule = ptr::null_mut();
        assert_eq!(
            assocloc_module_parse(reg_text.as_ptr(), alg, &mut module),
            AssoclocStatus::Ok
        );
        let summands = [module as *const AssoclocModule];
        let mut ring: *mut AssoclocLocalRing = ptr::null_mut();
        assert_eq!(
            assocloc_localize(alg, summands.as_ptr(), 1, 0, 1 << 16, &mut ring),
            AssoclocStatus::MathError
        );
        assert!(last_error_string().contains("simple"));
        assocloc_module_free(module);
        assocloc_algebra_free(alg);
    }
}

#[test]
fn verify_reports_pass_and_fail_counts() {
    unsafe {
        // semisimple: everything passes
        let text = corpus("m2f2.alg");
        let mut alg: *mut AssoclocAlgebra = ptr::null_mut();
        assert_eq!(assocloc_algebra_parse(text.as_ptr(), &mut alg), AssoclocStatus::Ok);
        let mut report: *mut std::ffi::c_char = ptr::null_mut();
        let mut failures: usize = 99;
        assert_eq!(
            assocloc_verify(alg, 0, 1 << 16, &mut report, &mut failures),
            AssoclocStatus::Ok
        );
        let rendered = CStr::from_ptr(report).to_str().unwrap().to_string();
        assert_eq!(failures, 0, "{rendered}");
        assert!(rendered.contains("checks.chop_partition: pass"));
        assocloc_string_free(report);
        assocloc_algebra_free(alg);

        // dual numbers: the documented comparison failure is counted
        let text = corpus("f2x2.alg");
        let mut alg: *mut AssoclocAlgebra = ptr::null_mut();
        assert_eq!(assocloc_algebra_parse(text.as_ptr(), &mut alg), AssoclocStatus::Ok);
        let mut report: *mut std::ffi::c_char = ptr::null_mut();
        let mut failures: usize = 0;
        assert_eq!(
            assocloc_verify(alg, 0, 1 << 16, &mut report, &mut failures),
            AssoclocStatus::Ok
        );
        let rendered = CStr::from_ptr(report).to_str().unwrap().to_string();
        assert_eq!(failures, 1, "{rendered}");
        assert!(rendered.contains("checks.lemma_AM_iso_Am: fail"));
        assocloc_string_free(report);
        assocloc_algebra_free(alg);
    }
}

/// Compile and run a C program against the generated header and the
/// static library — the proof that the boundary is usable from C.
#[test]
fn c_translation_unit_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let staticlib = manifest.join("../../target/debug/libassocloc_capi.a");
    assert!(staticlib.exists(), "staticlib not built at {}", staticlib.display());

    let c_src = r#"
#include "assocloc.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    const char *src =
        "algebra f4 p=2 dim=2\n"
        "basis one x\n"
        "unit 1 0\n"
        "mul 0 0 : 1 0\n"
        "mul 0 1 : 0 1\n"
        "mul 1 0 : 0 1\n"
        "mul 1 1 : 1 1\n";
    AssoclocAlgebra *alg = NULL;
    if (assocloc_algebra_parse(src, &alg) != ASSOCLOC_STATUS_OK) return 1;
    if (assocloc_algebra_dim(alg) != 2) return 2;
    if (!assocloc_algebra_is_commutative(alg)) return 3;
    char *report = NULL;
    uintptr_t failures = 99;
    if (assocloc_verify(alg, 0, 65536, &report, &failures) != ASSOCLOC_STATUS_OK) return 4;
    if (failures != 0) return 5;
    if (strstr(report, "checks.lemma_AM_iso_Am: pass") == NULL) return 6;
    assocloc_string_free(report);
    assocloc_algebra_free(alg);
    if (assocloc_algebra_parse("nonsense", &alg) != ASSOCLOC_STATUS_PARSE_ERROR) return 7;
    if (assocloc_last_error() == NULL) return 8;
    return 0;
}
"#;
    let dir = std::env::temp_dir().join(format!("assocloc-capi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src_path = dir.join("smoke.c");
    let bin_path = dir.join("smoke");
    std::fs::write(&src_path, c_src).unwrap();

    let compile = Command::new("cc")
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src_path)
        .arg(&staticlib)
        .arg("-lpthread")
        .arg("-ldl")
        .arg("-lm")
        .arg("-o")
        .arg(&bin_path)
        .output()
        .expect("cc is installed");
    assert!(
        compile.status.success(),
        "compile failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin_path).output().unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(run.status.code(), Some(0), "C smoke test exited nonzero");
}
