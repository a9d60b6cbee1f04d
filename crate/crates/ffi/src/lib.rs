//! C interface to adjoint-kit.
//!
//! Every call returns an [`AkStatus`]. Results come back through out
//! pointers; on failure the message is kept per thread and can be fetched
//! with [`ak_last_error_message`]. Handles are opaque and owned by the caller
//! until passed to the matching `_free` function. Strings returned by the
//! library are released with [`ak_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;
use std::sync::Arc;

use adjoint_kit::cli::{execute_source, Command, Flags};
use adjoint_kit::scenario::{parse_scenario, serialize, ScenarioDoc};
use adjoint_kit::{Elem, FiniteLattice, LatticeMap};

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AkStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// The scenario text failed to parse or resolve.
    ParseError = 3,
    /// An algebraic precondition failed: bad element, non-lattice, map not join-preserving.
    AlgebraError = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Require the converse of fact stability.
pub const AK_FLAG_STRICT_FACTS: u32 = 1;
/// Require the equality forms of the no-miracle and lift laws.
pub const AK_FLAG_NON_PARANOID: u32 = 2;
/// Restrict kernel discharge to modality-free right-hand sides.
pub const AK_FLAG_NO_KERNEL_SHORTCUT: u32 = 4;
/// Check no-miracle on every element.
pub const AK_FLAG_FULL_LATTICE_AXIOMS: u32 = 8;

/// A parsed scenario document.
pub struct AkScenario {
    text: String,
    doc: ScenarioDoc,
}

/// A finite lattice.
pub struct AkLattice(Arc<FiniteLattice>);

/// A join-preserving map on a lattice, or the right adjoint of one.
pub struct AkMap(LatticeMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Fail(AkStatus, String);

type Res<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> Res<()>) -> AkStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error: panic caught at the C boundary");
            AkStatus::Internal
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(AkStatus::NullArgument, format!("{what} is null"))
}

fn algebra(e: impl std::fmt::Display) -> Fail {
    Fail(AkStatus::AlgebraError, e.to_string())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(AkStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Res<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Res<()> {
    let s = CString::new(s.replace('\0', " ")).expect("nul bytes removed");
    put(out, s.into_raw())
}

unsafe fn strings(p: *const *const c_char, len: usize, what: &str) -> Res<Vec<String>> {
    slice(p, len, what)?
        .iter()
        .map(|&s| str_arg(s, what).map(str::to_string))
        .collect()
}

fn elem(l: &FiniteLattice, i: usize) -> Res<Elem> {
    l.check(Elem::new(i)).map_err(algebra)
}

/// The message of the last failed call on this thread, or null. The string
/// belongs to the caller.
#[no_mangle]
pub extern "C" fn ak_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ak_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and resolves scenario text.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_parse(text: *const c_char, out: *mut *mut AkScenario) -> AkStatus {
    guard(|| {
        let text = str_arg(text, "text")?.to_string();
        let doc = parse_scenario(&text).map_err(|e| Fail(AkStatus::ParseError, e.to_string()))?;
        put(out, Box::into_raw(Box::new(AkScenario { text, doc })))
    })
}

/// # Safety
/// `s` must come from [`ak_scenario_parse`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_free(s: *mut AkScenario) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// The scenario name.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_name(s: *const AkScenario, out: *mut *mut c_char) -> AkStatus {
    guard(|| put_string(out, handle(s, "scenario")?.doc.name.value.clone()))
}

/// Number of queries in the scenario.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_query_count(s: *const AkScenario, out: *mut usize) -> AkStatus {
    guard(|| put(out, handle(s, "scenario")?.doc.queries.len()))
}

/// Canonical text of the scenario.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_serialize(s: *const AkScenario, out: *mut *mut c_char) -> AkStatus {
    guard(|| put_string(out, serialize(&handle(s, "scenario")?.doc)))
}

fn flags(bits: u32) -> Flags {
    Flags {
        json: true,
        strict_facts: bits & AK_FLAG_STRICT_FACTS != 0,
        non_paranoid: bits & AK_FLAG_NON_PARANOID != 0,
        no_kernel_shortcut: bits & AK_FLAG_NO_KERNEL_SHORTCUT != 0,
        full_lattice_axioms: bits & AK_FLAG_FULL_LATTICE_AXIOMS != 0,
        ..Flags::default()
    }
}

unsafe fn report(
    s: *const AkScenario,
    cmd: impl FnOnce(PathBuf) -> Command,
    bits: u32,
    out_json: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> Res<()> {
    let s = handle(s, "scenario")?;
    let cmd = cmd(PathBuf::from(format!("{}.scn", s.doc.name.value)));
    let outcome = execute_source(&cmd, &s.text, &flags(bits));
    if !out_exit_code.is_null() {
        out_exit_code.write(outcome.code);
    }
    put_string(out_json, outcome.stdout)
}

/// Validates the scenario and runs every query. Writes the JSON report and,
/// when `out_exit_code` is non-null, the command-line exit code (0 ok,
/// 1 query failed, 2 axiom violated, 3 resolution error, 4 internal).
///
/// # Safety
/// `s` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_run_json(
    s: *const AkScenario,
    flag_bits: u32,
    out_json: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> AkStatus {
    guard(|| report(s, |file| Command::Run { file }, flag_bits, out_json, out_exit_code))
}

/// Axiom report only.
///
/// # Safety
/// As for [`ak_scenario_run_json`].
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_validate_json(
    s: *const AkScenario,
    flag_bits: u32,
    out_json: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> AkStatus {
    guard(|| report(s, |file| Command::Validate { file }, flag_bits, out_json, out_exit_code))
}

/// Runs the derivation engine on one query; the proof tree is in the verdict.
///
/// # Safety
/// As for [`ak_scenario_run_json`]; `query_id` must be a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_prove_json(
    s: *const AkScenario,
    query_id: *const c_char,
    flag_bits: u32,
    out_json: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> AkStatus {
    guard(|| {
        let id = str_arg(query_id, "query id")?.to_string();
        report(s, |file| Command::Prove { file, id }, flag_bits, out_json, out_exit_code)
    })
}

/// Evaluates one query semantically.
///
/// # Safety
/// As for [`ak_scenario_prove_json`].
#[no_mangle]
pub unsafe extern "C" fn ak_scenario_query_json(
    s: *const AkScenario,
    query_id: *const c_char,
    flag_bits: u32,
    out_json: *mut *mut c_char,
    out_exit_code: *mut i32,
) -> AkStatus {
    guard(|| {
        let id = str_arg(query_id, "query id")?.to_string();
        report(s, |file| Command::Query { file, id }, flag_bits, out_json, out_exit_code)
    })
}

/// The powerset of `count` named worlds. Element `i` is the set whose bit
/// `k` says whether world `k` is a member.
///
/// # Safety
/// `worlds` must hold `count` nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_powerset(
    worlds: *const *const c_char,
    count: usize,
    out: *mut *mut AkLattice,
) -> AkStatus {
    guard(|| {
        let names = strings(worlds, count, "worlds")?;
        let l = FiniteLattice::powerset(&names).map_err(algebra)?;
        put(out, Box::into_raw(Box::new(AkLattice(Arc::new(l)))))
    })
}

/// A lattice from labels and order pairs `labels[lower[i]] <= labels[upper[i]]`.
/// The reflexive-transitive closure is taken, then validated. Elements are
/// numbered in a linear extension of the order; use [`ak_lattice_find`] to
/// map labels to indices.
///
/// # Safety
/// `labels` must hold `count` strings; `lower` and `upper` must hold
/// `pair_count` indices each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_from_order(
    labels: *const *const c_char,
    count: usize,
    lower: *const usize,
    upper: *const usize,
    pair_count: usize,
    out: *mut *mut AkLattice,
) -> AkStatus {
    guard(|| {
        let names = strings(labels, count, "labels")?;
        let lo = slice(lower, pair_count, "lower")?;
        let hi = slice(upper, pair_count, "upper")?;
        let mut pairs = Vec::with_capacity(pair_count);
        for (&a, &b) in lo.iter().zip(hi) {
            let label = |i: usize| {
                names
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Fail(AkStatus::AlgebraError, format!("label index {i} out of range")))
            };
            pairs.push((label(a)?, label(b)?));
        }
        let l = FiniteLattice::build_from_order(&names, &pairs).map_err(algebra)?;
        put(out, Box::into_raw(Box::new(AkLattice(Arc::new(l)))))
    })
}

/// # Safety
/// `l` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_free(l: *mut AkLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Number of elements.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_size(l: *const AkLattice, out: *mut usize) -> AkStatus {
    guard(|| put(out, handle(l, "lattice")?.0.size()))
}

/// Index of a label (or of a world set written `{w1,w2}` on powersets).
///
/// # Safety
/// `l` must be a live handle; `name` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_find(l: *const AkLattice, name: *const c_char, out: *mut usize) -> AkStatus {
    guard(|| {
        let l = &handle(l, "lattice")?.0;
        let name = str_arg(name, "name")?;
        let e = l
            .find(name)
            .ok_or_else(|| Fail(AkStatus::AlgebraError, format!("no element named `{name}`")))?;
        put(out, e.index())
    })
}

/// Display name of an element.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_name(l: *const AkLattice, e: usize, out: *mut *mut c_char) -> AkStatus {
    guard(|| {
        let l = &handle(l, "lattice")?.0;
        put_string(out, l.name(elem(l, e)?))
    })
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_leq(l: *const AkLattice, a: usize, b: usize, out: *mut bool) -> AkStatus {
    guard(|| {
        let l = &handle(l, "lattice")?.0;
        put(out, l.leq(elem(l, a)?, elem(l, b)?))
    })
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_join(l: *const AkLattice, a: usize, b: usize, out: *mut usize) -> AkStatus {
    guard(|| {
        let l = &handle(l, "lattice")?.0;
        put(out, l.join(elem(l, a)?, elem(l, b)?).index())
    })
}

/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_lattice_meet(l: *const AkLattice, a: usize, b: usize, out: *mut usize) -> AkStatus {
    guard(|| {
        let l = &handle(l, "lattice")?.0;
        put(out, l.meet(elem(l, a)?, elem(l, b)?).index())
    })
}

/// A join-preserving map from a full table, `values[x]` being the image of `x`.
///
/// # Safety
/// `l` must be a live handle; `values` must hold `count` indices; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_map_from_table(
    l: *const AkLattice,
    values: *const usize,
    count: usize,
    out: *mut *mut AkMap,
) -> AkStatus {
    guard(|| {
        let l = &handle(l, "lattice")?.0;
        let values = slice(values, count, "values")?
            .iter()
            .map(|&v| elem(l, v))
            .collect::<Res<Vec<_>>>()?;
        let f = LatticeMap::from_table(l, values)
            .and_then(LatticeMap::into_join_preserving)
            .map_err(algebra)?;
        put(out, Box::into_raw(Box::new(AkMap(f))))
    })
}

/// A join-preserving map from images of join-irreducibles, `from[i] ↦ to[i]`.
///
/// # Safety
/// `l` must be a live handle; `from` and `to` must hold `count` indices; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ak_map_from_generators(
    l: *const AkLattice,
    from: *const usize,
    to: *const usize,
    count: usize,
    out: *mut *mut AkMap,
) -> AkStatus {
    guard(|| {
        let l = &handle(l, "lattice")?.0;
        let from = slice(from, count, "from")?;
        let to = slice(to, count, "to")?;
        let gens = from
            .iter()
            .zip(to)
            .map(|(&a, &b)| Ok((elem(l, a)?, elem(l, b)?)))
            .collect::<Res<Vec<_>>>()?;
        let f = LatticeMap::from_generators(l, &gens).map_err(algebra)?;
        put(out, Box::into_raw(Box::new(AkMap(f))))
    })
}

/// # Safety
/// `m` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ak_map_free(m: *mut AkMap) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_map_apply(m: *const AkMap, x: usize, out: *mut usize) -> AkStatus {
    guard(|| {
        let m = &handle(m, "map")?.0;
        put(out, m.try_apply(Elem::new(x)).map_err(algebra)?.index())
    })
}

/// The right adjoint `f*(b) = ⋁{x | f(x) ≤ b}`, as a new handle.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ak_map_right_adjoint(m: *const AkMap, out: *mut *mut AkMap) -> AkStatus {
    guard(|| {
        let pair = handle(m, "map")?.0.right_adjoint().map_err(algebra)?;
        put(out, Box::into_raw(Box::new(AkMap(pair.right().clone()))))
    })
}
