use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::ptr;

use adjoint_kit_ffi::*;
use serde_json::Value;

fn scenario(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/scenarios").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    ak_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { take(ak_last_error_message()) }
}

fn parse(name: &str) -> *mut AkScenario {
    let text = scenario(name);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ak_scenario_parse(text.as_ptr(), &mut s) }, AkStatus::Ok);
    s
}

#[test]
fn run_and_prove_through_handles() {
    let s = parse("coin-honest.scn");
    unsafe {
        let mut n = 0;
        assert_eq!(ak_scenario_query_count(s, &mut n), AkStatus::Ok);
        assert_eq!(n, 6);
        let mut name = ptr::null_mut();
        assert_eq!(ak_scenario_name(s, &mut name), AkStatus::Ok);
        assert_eq!(take(name), "coin-honest");

        let (mut json, mut code) = (ptr::null_mut(), -1);
        assert_eq!(ak_scenario_run_json(s, 0, &mut json, &mut code), AkStatus::Ok);
        let doc: Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(code, 0);
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["verdicts"].as_array().unwrap().len(), 6);

        let id = CString::new("q4").unwrap();
        assert_eq!(ak_scenario_prove_json(s, id.as_ptr(), 0, &mut json, &mut code), AkStatus::Ok);
        let doc: Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(code, 0);
        assert_eq!(doc["verdicts"][0]["proof"]["rule"], "AdjUnfoldAfter");

        let id = CString::new("q1").unwrap();
        assert_eq!(ak_scenario_query_json(s, id.as_ptr(), 0, &mut json, ptr::null_mut()), AkStatus::Ok);
        let doc: Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(doc["verdicts"][0]["success"], true);

        let id = CString::new("missing").unwrap();
        assert_eq!(ak_scenario_prove_json(s, id.as_ptr(), 0, &mut json, &mut code), AkStatus::Ok);
        assert_eq!(code, 3);
        ak_string_free(json);

        let mut text = ptr::null_mut();
        assert_eq!(ak_scenario_serialize(s, &mut text), AkStatus::Ok);
        let text = CString::new(take(text)).unwrap();
        let mut again = ptr::null_mut();
        assert_eq!(ak_scenario_parse(text.as_ptr(), &mut again), AkStatus::Ok);
        ak_scenario_free(again);
        ak_scenario_free(s);
    }
}

#[test]
fn flags_reach_the_engine() {
    let s = parse("coin-lying.scn");
    let id = CString::new("q3").unwrap();
    unsafe {
        let (mut json, mut code) = (ptr::null_mut(), -1);
        let status = ak_scenario_prove_json(s, id.as_ptr(), AK_FLAG_NO_KERNEL_SHORTCUT, &mut json, &mut code);
        assert_eq!(status, AkStatus::Ok);
        assert_eq!(code, 0);
        assert!(take(json).contains("NoMiracle"));
        ak_scenario_free(s);
    }
    let s = parse("broken-miracle.scn");
    unsafe {
        let (mut json, mut code) = (ptr::null_mut(), -1);
        assert_eq!(ak_scenario_validate_json(s, 0, &mut json, &mut code), AkStatus::Ok);
        assert_eq!(code, 2);
        ak_string_free(json);
        ak_scenario_free(s);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("version 1\nscenario x\nmode semantic\nworlds a\nagnt A\n").unwrap();
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(ak_scenario_parse(bad.as_ptr(), &mut s), AkStatus::ParseError);
        assert!(s.is_null());
        assert!(last_error().contains("5:1"));
        assert_eq!(ak_scenario_parse(ptr::null(), &mut s), AkStatus::NullArgument);
        assert_eq!(last_error(), "text is null");
        let not_utf8 = [0xffu8, 0];
        assert_eq!(ak_scenario_parse(not_utf8.as_ptr().cast(), &mut s), AkStatus::InvalidUtf8);

        let mut n = 0;
        assert_eq!(ak_lattice_size(ptr::null(), &mut n), AkStatus::NullArgument);
        // a success clears the message
        let text = scenario("chain3.scn");
        assert_eq!(ak_scenario_parse(text.as_ptr(), &mut s), AkStatus::Ok);
        assert!(ak_last_error_message().is_null());
        ak_scenario_free(s);
        ak_scenario_free(ptr::null_mut());
        ak_string_free(ptr::null_mut());
    }
}

#[test]
fn lattice_and_map_handles() {
    let worlds: Vec<CString> = ["h", "t"].iter().map(|w| CString::new(*w).unwrap()).collect();
    let ptrs: Vec<*const c_char> = worlds.iter().map(|w| w.as_ptr()).collect();
    unsafe {
        let mut l = ptr::null_mut();
        assert_eq!(ak_lattice_powerset(ptrs.as_ptr(), ptrs.len(), &mut l), AkStatus::Ok);
        let mut n = 0;
        ak_lattice_size(l, &mut n);
        assert_eq!(n, 4);
        let mut joined = 0;
        assert_eq!(ak_lattice_join(l, 1, 2, &mut joined), AkStatus::Ok);
        assert_eq!(joined, 3);
        let mut name = ptr::null_mut();
        ak_lattice_name(l, 3, &mut name);
        assert_eq!(take(name), "{h,t}");

        // both worlds look alike
        let (from, to) = ([1usize, 2], [3usize, 3]);
        let mut f = ptr::null_mut();
        assert_eq!(ak_map_from_generators(l, from.as_ptr(), to.as_ptr(), 2, &mut f), AkStatus::Ok);
        let mut fs = ptr::null_mut();
        assert_eq!(ak_map_right_adjoint(f, &mut fs), AkStatus::Ok);
        let images: Vec<usize> = (0..4)
            .map(|x| {
                let mut y = 0;
                assert_eq!(ak_map_apply(fs, x, &mut y), AkStatus::Ok);
                y
            })
            .collect();
        assert_eq!(images, [0, 0, 0, 3]);
        let mut y = 0;
        assert_eq!(ak_map_apply(fs, 9, &mut y), AkStatus::AlgebraError);

        let bad = [0usize, 3, 3, 3];
        let mut g = ptr::null_mut();
        assert_eq!(ak_map_from_table(l, bad.as_ptr(), 4, &mut g), AkStatus::Ok);
        ak_map_free(g);
        let bad = [1usize, 1, 2, 3];
        assert_eq!(ak_map_from_table(l, bad.as_ptr(), 4, &mut g), AkStatus::AlgebraError);

        ak_map_free(fs);
        ak_map_free(f);
        ak_lattice_free(l);
    }
}

#[test]
fn lattice_from_order_validates() {
    let labels: Vec<CString> = ["0", "a", "b", "1"].iter().map(|w| CString::new(*w).unwrap()).collect();
    let ptrs: Vec<*const c_char> = labels.iter().map(|w| w.as_ptr()).collect();
    unsafe {
        let (lo, hi) = ([0usize, 0, 1, 2], [1usize, 2, 3, 3]);
        let mut l = ptr::null_mut();
        assert_eq!(ak_lattice_from_order(ptrs.as_ptr(), 4, lo.as_ptr(), hi.as_ptr(), 4, &mut l), AkStatus::Ok);
        let (mut a, mut b, mut m) = (0, 0, 0);
        let (na, nb) = (CString::new("a").unwrap(), CString::new("b").unwrap());
        ak_lattice_find(l, na.as_ptr(), &mut a);
        ak_lattice_find(l, nb.as_ptr(), &mut b);
        ak_lattice_meet(l, a, b, &mut m);
        let mut leq = false;
        ak_lattice_leq(l, m, a, &mut leq);
        assert!(leq);
        ak_lattice_free(l);

        // no top
        let (lo, hi) = ([0usize, 0], [1usize, 2]);
        let status = ak_lattice_from_order(ptrs.as_ptr(), 3, lo.as_ptr(), hi.as_ptr(), 2, &mut l);
        assert_eq!(status, AkStatus::AlgebraError);
        assert!(!last_error().is_empty());
        let (lo, hi) = ([0usize], [7usize]);
        let status = ak_lattice_from_order(ptrs.as_ptr(), 4, lo.as_ptr(), hi.as_ptr(), 1, &mut l);
        assert_eq!(status, AkStatus::AlgebraError);
    }
}
