use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use jetpairs_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(jp_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    jp_string_free(s);
    out
}

unsafe fn parse(text: &str) -> *mut JpMatPoly {
    let c = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(jp_matpoly_parse(c.as_ptr(), &mut h), JpStatus::Ok, "{}", last_error());
    h
}

const J3: &str = "matpoly 3 1 101\n0 1 0\n0 0 1\n0 0 0\n\n0 0 0\n0 0 0\n0 0 0\n";
const J3_SQ: &str = "matpoly 3 1 101\n0 0 1\n0 0 0\n0 0 0\n\n1 0 0\n0 1 0\n0 0 1\n";
const E12: &str = "matpoly 3 1 101\n0 1 0\n0 0 0\n0 0 0\n\n0 0 0\n0 0 0\n0 0 0\n";
const E21: &str = "matpoly 3 1 101\n0 0 0\n1 0 0\n0 0 0\n\n0 0 0\n0 0 0\n0 0 0\n";

#[test]
fn header_lists_entry_points() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/jetpairs.h")).unwrap();
    assert!(h.contains("#ifndef JETPAIRS_H"));
    for name in [
        "jp_last_error", "jp_string_free", "jp_matpoly_new", "jp_matpoly_parse", "jp_matpoly_free",
        "jp_matpoly_set", "jp_matpoly_get_str", "jp_commutes", "jp_commutant_dim", "jp_tangent_dim",
        "jp_lift", "jp_red_bounds", "jp_red_thresholds", "jp_export_ideal", "jp_certify",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

#[test]
fn handles_round_trip() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(jp_matpoly_new(0, 2, 1, &mut h), JpStatus::Ok);
        let v = CString::new("-5/7").unwrap();
        assert_eq!(jp_matpoly_set(h, 1, 0, 1, v.as_ptr()), JpStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(jp_matpoly_get_str(h, 1, 0, 1, &mut s), JpStatus::Ok);
        assert_eq!(take(s), "-5/7");

        let (mut n, mut k, mut ch) = (0, 0, 7);
        assert_eq!(jp_matpoly_shape(h, &mut n, &mut k, &mut ch), JpStatus::Ok);
        assert_eq!((n, k, ch), (2, 1, 0));

        assert_eq!(jp_matpoly_to_string(h, &mut s), JpStatus::Ok);
        let text = take(s);
        assert!(text.starts_with("matpoly 2 1 0"));
        let again = parse(&text);
        assert_eq!(jp_matpoly_get_str(again, 1, 0, 1, &mut s), JpStatus::Ok);
        assert_eq!(take(s), "-5/7");
        jp_matpoly_free(again);
        jp_matpoly_free(h);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(jp_matpoly_new(4, 2, 1, &mut h), JpStatus::InvalidArgument);
        assert!(!last_error().is_empty());
        assert_eq!(jp_matpoly_new(101, 0, 1, &mut h), JpStatus::InvalidArgument);
        assert_eq!(jp_matpoly_new(101, 2, 1, ptr::null_mut()), JpStatus::NullPointer);

        let bad = CString::new("matpoly 2 0 101\n1 2\n3\n").unwrap();
        assert_eq!(jp_matpoly_parse(bad.as_ptr(), &mut h), JpStatus::Parse);
        assert!(last_error().contains('3'), "{}", last_error());

        assert_eq!(jp_matpoly_new(101, 2, 0, &mut h), JpStatus::Ok);
        assert!(last_error().is_empty());
        let v = CString::new("1").unwrap();
        assert_eq!(jp_matpoly_set(h, 1, 0, 0, v.as_ptr()), JpStatus::InvalidArgument);
        let junk = CString::new("x").unwrap();
        assert_eq!(jp_matpoly_set(h, 0, 0, 0, junk.as_ptr()), JpStatus::Parse);

        let mut q = ptr::null_mut();
        assert_eq!(jp_matpoly_new(0, 2, 0, &mut q), JpStatus::Ok);
        let mut yes = false;
        assert_eq!(jp_commutes(h, q, &mut yes), JpStatus::FieldMismatch);
        assert_eq!(jp_commutes(ptr::null(), q, &mut yes), JpStatus::NullPointer);
        jp_matpoly_free(q);
        jp_matpoly_free(h);
        jp_matpoly_free(ptr::null_mut());
        jp_string_free(ptr::null_mut());
    }
}

#[test]
fn commutant_tangent_and_lift() {
    unsafe {
        let (a, b, e21) = (parse(J3), parse(J3_SQ), parse(E21));
        let mut yes = false;
        assert_eq!(jp_commutes(a, b, &mut yes), JpStatus::Ok);
        assert!(yes);
        assert_eq!(jp_commutes(a, e21, &mut yes), JpStatus::Ok);
        assert!(!yes);

        let mut d = 0;
        assert_eq!(jp_commutant_dim(a, &mut d), JpStatus::Ok);
        assert_eq!(d, 6);
        assert_eq!(jp_tangent_dim(a, b, &mut d), JpStatus::Ok);
        assert_eq!(d, 24);
        assert_eq!(jp_tangent_dim(a, e21, &mut d), JpStatus::NonCommuting);

        let mut next = ptr::null_mut();
        assert_eq!(jp_matpoly_new(101, 3, 0, &mut next), JpStatus::Ok);
        let mut lifted = ptr::null_mut();
        assert_eq!(jp_lift(a, b, next, &mut lifted), JpStatus::Ok, "{}", last_error());
        let (mut n, mut k, mut ch) = (0, 0, 0);
        assert_eq!(jp_matpoly_shape(lifted, &mut n, &mut k, &mut ch), JpStatus::Ok);
        assert_eq!((n, k, ch), (3, 0, 101));
        assert_eq!(jp_lift(a, b, a, &mut lifted), JpStatus::ShapeMismatch);

        for h in [a, b, e21, next, lifted] {
            jp_matpoly_free(h);
        }
    }
}

#[test]
fn reducibility_numbers() {
    let mut r = JpBounds::default();
    assert_eq!(unsafe { jp_red_bounds(8, 5, 1, &mut r) }, JpStatus::Ok);
    assert_eq!((r.inequality_value, r.reducible), (0, true));
    assert_eq!(unsafe { jp_red_bounds(0, 1, 1, &mut r) }, JpStatus::Precondition);
    let mut t = JpThresholds::default();
    assert_eq!(unsafe { jp_red_thresholds(1, &mut t) }, JpStatus::Ok);
    assert!(t.n_k > 0 && t.mu > 0 && t.beta > 0);
}

#[test]
fn ideal_export_flavors() {
    unsafe {
        for flavor in [JP_EXPORT_GENERIC, JP_EXPORT_MACAULAY2, JP_EXPORT_SINGULAR] {
            let mut s = ptr::null_mut();
            assert_eq!(jp_export_ideal(32003, 2, 1, flavor, &mut s), JpStatus::Ok);
            assert!(!take(s).is_empty());
        }
        let mut s = ptr::null_mut();
        assert_eq!(jp_export_ideal(32003, 2, 1, 9, &mut s), JpStatus::InvalidArgument);
    }
}

#[test]
fn certificates() {
    unsafe {
        let (a, b, e12) = (parse(J3), parse(J3_SQ), parse(E12));
        let mut text = ptr::null_mut();
        let mut terminal: c_int = -1;
        assert_eq!(jp_certify(a, b, 7, &mut text, &mut terminal), JpStatus::Ok);
        assert_eq!(terminal, JP_TERMINAL_IN_U);
        assert!(take(text).starts_with("closure-certificate 3 1 101"));

        assert_eq!(jp_certify(e12, e12, 7, &mut text, &mut terminal), JpStatus::Ok, "{}", last_error());
        assert_ne!(terminal, JP_TERMINAL_STALLED);
        assert!(take(text).contains("move"));

        let e21 = parse(E21);
        assert_eq!(jp_certify(a, e21, 7, &mut text, &mut terminal), JpStatus::NonCommuting);
        for h in [a, b, e12, e21] {
            jp_matpoly_free(h);
        }
    }
}
