use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use prefix_graphs_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { pg_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pg_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

fn alphabet(spec: &str) -> *mut PgAlphabet {
    let spec = CString::new(spec).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(
        unsafe { pg_alphabet_parse(spec.as_ptr(), &mut a) },
        PgStatus::Ok
    );
    a
}

#[test]
fn tree_round_trip_and_hooks() {
    let a = alphabet("a:2,c:3");
    let term = CString::new("a[ c[*,*,*], a[*,*] ]").unwrap();
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(pg_tree_parse(a, term.as_ptr(), &mut t), PgStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(pg_tree_render(t, &mut s), PgStatus::Ok);
        assert_eq!(take(s), "a[c[*,*,*],a[*,*]]");
        let mut d = 0usize;
        assert_eq!(pg_tree_degree(t, &mut d), PgStatus::Ok);
        assert_eq!(d, 3);
        assert_eq!(pg_tree_hook(t, &mut s), PgStatus::Ok);
        assert_eq!(take(s), "2");
        assert_eq!(pg_tree_twisted_hook(t, &mut s), PgStatus::Ok);
        assert_eq!(take(s), "1");
        pg_tree_free(t);
        pg_alphabet_free(a);
    }
}

#[test]
fn path_series_as_csv() {
    let a = alphabet("a:2,c:3");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(pg_paths_series(a, PgGraph::Prefix, 4, &mut s), PgStatus::Ok);
        assert_eq!(take(s), "1,2,10,82,938");
        assert_eq!(
            pg_paths_series(a, PgGraph::Twisted, 4, &mut s),
            PgStatus::Ok
        );
        assert_eq!(take(s), "1,2,10,70,606");
        pg_alphabet_free(a);
    }
}

#[test]
fn duality_checks_report_witnesses() {
    let a = alphabet("a:2");
    let mut w = ptr::null_mut();
    unsafe {
        assert_eq!(pg_check_duality(a, 4, &mut w), PgStatus::Ok);
        assert!(w.is_null());
        pg_alphabet_free(a);

        let comp = CString::new("comp").unwrap();
        assert_eq!(
            pg_operad_check_duality(comp.as_ptr(), PgPair::Uv, 4, ptr::null_mut()),
            PgStatus::Ok
        );
        let dias = CString::new("dias").unwrap();
        assert_eq!(
            pg_operad_check_duality(dias.as_ptr(), PgPair::Uu, 4, ptr::null_mut()),
            PgStatus::Ok
        );
        assert_eq!(
            pg_operad_check_duality(dias.as_ptr(), PgPair::Uv, 4, &mut w),
            PgStatus::NotDiagonal
        );
        assert_eq!(take(w), "1,0");
    }
}

#[test]
fn errors_are_codes_with_messages() {
    let bad = CString::new("a:0").unwrap();
    let mut a = ptr::null_mut();
    unsafe {
        assert_eq!(pg_alphabet_parse(bad.as_ptr(), &mut a), PgStatus::Parse);
        assert!(a.is_null());
        assert!(last_error().contains("arity"), "{}", last_error());
        assert_eq!(
            pg_alphabet_parse(ptr::null(), &mut a),
            PgStatus::NullPointer
        );

        let a = alphabet("a:2");
        let term = CString::new("a[*]").unwrap();
        let mut t = ptr::null_mut();
        assert_eq!(pg_tree_parse(a, term.as_ptr(), &mut t), PgStatus::Parse);
        assert!(!last_error().is_empty());
        let mut s = ptr::null_mut();
        assert_eq!(pg_tree_render(ptr::null(), &mut s), PgStatus::NullPointer);
        let unknown = CString::new("zinbiel").unwrap();
        assert_eq!(
            pg_operad_check_duality(unknown.as_ptr(), PgPair::Uv, 2, ptr::null_mut()),
            PgStatus::Parse
        );
        assert_eq!(
            pg_alphabet_parse(CString::new("a:2").unwrap().as_ptr(), &mut ptr::null_mut()),
            PgStatus::Ok
        );
        assert_eq!(last_error(), "");
        pg_alphabet_free(a);
        pg_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_valid_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/prefix_graphs.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "pg_alphabet_parse",
        "pg_tree_hook",
        "pg_operad_check_duality",
        "pg_string_free",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler found; skipped the compile check");
        return;
    };
    assert!(status.success());
}
