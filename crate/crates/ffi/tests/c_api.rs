use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use twisted_double_ffi::*;

const V4: &str = "order 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";
const ALPHA: &str = "cocycle N=2\n2 1 1\n2 3 1\n3 1 1\n3 3 1\n";

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = td_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn twisted_klein_four_through_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(td_group_from_text(c(V4).as_ptr(), &mut g), TdStatus::Ok);
        let mut co = ptr::null_mut();
        assert_eq!(td_cocycle_from_text(g, c(ALPHA).as_ptr(), &mut co), TdStatus::Ok);
        let mut valid = false;
        assert_eq!(td_cocycle_is_valid(co, &mut valid), TdStatus::Ok);
        assert!(valid);
        let mut a = ptr::null_mut();
        assert_eq!(td_algebra_new(co, &mut a), TdStatus::Ok);
        let (mut center, mut classes, mut ss) = (0usize, 0usize, false);
        assert_eq!(td_algebra_center_dim(a, &mut center), TdStatus::Ok);
        assert_eq!(td_algebra_regular_class_count(a, &mut classes), TdStatus::Ok);
        assert_eq!(td_algebra_is_semisimple(a, &mut ss), TdStatus::Ok);
        assert_eq!((center, classes, ss), (1, 1, true));

        let mut len = 0usize;
        assert_eq!(td_algebra_simple_dims(a, 1e-9, 3, ptr::null_mut(), 0, &mut len), TdStatus::BufferTooSmall);
        assert_eq!(len, 1);
        let mut dims = [0usize; 1];
        assert_eq!(td_algebra_simple_dims(a, 1e-9, 3, dims.as_mut_ptr(), 1, &mut len), TdStatus::Ok);
        assert_eq!(dims, [2]);

        let mut json = ptr::null_mut();
        assert_eq!(td_algebra_report_json(a, 1e-9, 3, &mut json), TdStatus::Ok);
        let text = CStr::from_ptr(json).to_string_lossy().into_owned();
        assert!(text.contains("\"center_dim\": 1"));
        td_string_free(json);

        td_algebra_free(a);
        td_cocycle_free(co);
        td_group_free(g);
    }
}

#[test]
fn double_over_two_fixed_points() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(td_group_symmetric(3, &mut g), TdStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(td_gset_trivial(g, 2, &mut s), TdStatus::Ok);
        let mut sc = ptr::null_mut();
        assert_eq!(td_set_cocycle_from_text(s, c("cocycle N=1\n").as_ptr(), &mut sc), TdStatus::Ok);
        let mut d = ptr::null_mut();
        assert_eq!(td_double_new(sc, &mut d), TdStatus::Ok);
        let (mut dim, mut center) = (0usize, 0usize);
        assert_eq!(td_double_dim(d, &mut dim), TdStatus::Ok);
        assert_eq!(td_double_center_dim(d, &mut center), TdStatus::Ok);
        assert_eq!((dim, center), (12, 6));
        let mut json = ptr::null_mut();
        assert_eq!(td_double_report_json(d, 1e-9, 0, &mut json), TdStatus::Ok);
        assert!(CStr::from_ptr(json).to_string_lossy().contains("\"zlt_path\": \"formula\""));
        td_string_free(json);
        td_double_free(d);
        td_set_cocycle_free(sc);
        td_gset_free(s);
        td_group_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(td_group_from_text(c("order 2\n0 1\n").as_ptr(), &mut g), TdStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().contains("table rows"));
        assert_eq!(td_group_from_text(ptr::null(), &mut g), TdStatus::NullPointer);
        let mut order = 0usize;
        assert_eq!(td_group_order(ptr::null(), &mut order), TdStatus::NullPointer);

        assert_eq!(td_group_from_text(c("order 2\n0 1\n1 0\n").as_ptr(), &mut g), TdStatus::Ok);
        assert!(td_last_error_message().is_null());
        let mut co = ptr::null_mut();
        assert_eq!(td_cocycle_from_text(g, c("cocycle N=2\n0 1 1\n").as_ptr(), &mut co), TdStatus::Ok);
        let mut a = ptr::null_mut();
        assert_eq!(td_algebra_new(co, &mut a), TdStatus::Validation);
        assert!(a.is_null());
        td_cocycle_free(co);
        td_group_free(g);
        td_group_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libtwisted_double_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = std::env::temp_dir().join(format!("td_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "C smoke test exited with {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
