use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use leavitt_ffi::*;

const L2: &str = r#"{"kind":"finite","vertices":["v"],"edges":[{"id":"e","range":"v","source":"v"},{"id":"f","range":"v","source":"v"}]}"#;
const CHAIN: &str = r#"{"kind":"finite","vertices":["v","w"],"edges":[{"id":"e","range":"v","source":"w"}]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    lv_string_free(s);
    out
}

unsafe fn graph(json: &str) -> *mut LvGraph {
    let mut g = ptr::null_mut();
    assert_eq!(lv_graph_from_json(c(json).as_ptr(), 0, &mut g), LvStatus::Ok);
    g
}

unsafe fn element(g: *const LvGraph, expr: &str) -> *mut LvElement {
    let mut x = ptr::null_mut();
    assert_eq!(lv_element_parse(g, c(expr).as_ptr(), &mut x), LvStatus::Ok);
    x
}

#[test]
fn normal_forms_and_products() {
    unsafe {
        let g = graph(L2);
        let x = element(g, "[e|e]");
        let mut s = ptr::null_mut();
        assert_eq!(lv_element_to_string(x, &mut s), LvStatus::Ok);
        assert_eq!(take(s), "[v|v] - [f|f]");

        let a = element(g, "[e|f]");
        let b = element(g, "[f|e]");
        let mut p = ptr::null_mut();
        assert_eq!(lv_element_mul(a, b, &mut p), LvStatus::Ok);
        let ee = element(g, "[e|e]");
        let mut eq = false;
        assert_eq!(lv_element_equals(p, ee, &mut eq), LvStatus::Ok);
        assert!(eq);

        let mut st = ptr::null_mut();
        assert_eq!(lv_element_star(a, &mut st), LvStatus::Ok);
        assert_eq!(lv_element_equals(st, b, &mut eq), LvStatus::Ok);
        assert!(eq);

        let (mut hom, mut deg) = (false, 0i64);
        let d = element(g, "[e e|v]");
        assert_eq!(lv_element_degree(d, &mut hom, &mut deg), LvStatus::Ok);
        assert!(hom);
        assert_eq!(deg, 2);

        for h in [x, a, b, p, ee, st, d] {
            lv_element_free(h);
        }
        lv_graph_free(g);
    }
}

#[test]
fn errors_carry_status_and_message() {
    unsafe {
        let g = graph(L2);
        let mut x = ptr::null_mut();
        assert_eq!(lv_element_parse(g, c("[e|z]").as_ptr(), &mut x), LvStatus::UnknownId);
        let msg = CStr::from_ptr(lv_last_error()).to_str().unwrap();
        assert!(msg.contains('z'));
        assert_eq!(lv_element_parse(g, c("[e|").as_ptr(), &mut x), LvStatus::Syntax);
        assert_eq!(lv_element_parse(ptr::null(), c("[e|e]").as_ptr(), &mut x), LvStatus::NullPointer);
        let mut bad = ptr::null_mut();
        assert_eq!(lv_graph_from_json(c("{\"kind\":").as_ptr(), 0, &mut bad), LvStatus::Syntax);
        lv_graph_free(g);
    }
}

#[test]
fn reports_and_certificates() {
    unsafe {
        let g = graph(CHAIN);
        let mut s = ptr::null_mut();
        assert_eq!(lv_analyze_json(g, false, &mut s), LvStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(report["strongly_graded"], false);
        assert_eq!(report["no_sources"]["evidence"], "sources: w");
        assert_eq!(
            lv_factor_unit_json(g, c("w").as_ptr(), 1, LvDirection::PosNeg, 4, &mut s),
            LvStatus::Unsupported
        );
        lv_graph_free(g);

        let g = graph(L2);
        let mut d = 0usize;
        assert_eq!(lv_fd_dimension(g, 1, 2, &mut d), LvStatus::Ok);
        assert_eq!(d, 4);
        assert_eq!(lv_core_embed_json(g, c("[e|f]").as_ptr(), &mut s), LvStatus::Ok);
        let cert = CString::new(take(s)).unwrap();
        assert_eq!(lv_verify_certificate(cert.as_ptr()), LvStatus::Ok);
        assert_eq!(lv_factor_unit_json(g, c("v").as_ptr(), 2, LvDirection::NegPos, 4, &mut s), LvStatus::Ok);
        let cert = take(s);
        assert_eq!(lv_verify_certificate(c(&cert).as_ptr()), LvStatus::Ok);
        let forged = cert.replacen("[e e|v]", "[e f|v]", 1);
        assert_ne!(forged, cert);
        assert_eq!(lv_verify_certificate(c(&forged).as_ptr()), LvStatus::CertificateRejected);
        lv_graph_free(g);

        let ladder = graph(r#"{"kind":"ladder","table":[],"slope":1,"offset":0}"#);
        assert_eq!(lv_property_y_json(ladder, false, &mut s), LvStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["holds"], false);
        let cert = serde_json::to_string(&v["certificate"]).unwrap();
        assert_eq!(lv_verify_certificate(c(&cert).as_ptr()), LvStatus::Ok);
        lv_graph_free(ladder);
    }
}
