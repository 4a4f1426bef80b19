//! C interface to `syncreach`.
//!
//! Automata live behind the opaque `SrDfa` handle. Every fallible call returns
//! an `SrStatus`; on failure `sr_last_error` describes the problem. Strings
//! handed out by the library are released with `sr_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use syncreach::families::{Family, DEFAULT_LETTER_CAP};
use syncreach::power::{self, DEFAULT_FRONTIER_CAP};
use syncreach::rank::{self, DEFAULT_CLOSURE_CAP};
use syncreach::{Dfa, Error, StateSet, Word};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    CapExceeded = 5,
    Internal = 6,
}

/// Opaque automaton handle.
pub struct SrDfa {
    dfa: Dfa,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SrStatus {
    match e {
        Error::Syntax { .. }
        | Error::StateRange { .. }
        | Error::DuplicateLetter(_)
        | Error::InvalidLetterName(_)
        | Error::TooManyStates(_) => SrStatus::Parse,
        Error::CapExceeded { .. } => SrStatus::CapExceeded,
        Error::SelfCheck(_) => SrStatus::Internal,
        _ => SrStatus::InvalidArgument,
    }
}

/// Runs `f`, records any error or panic and converts it to a status.
fn guard<F: FnOnce() -> Result<(), (SrStatus, String)>>(f: F) -> SrStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SrStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SrStatus::Internal
        }
    }
}

fn lib(e: Error) -> (SrStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SrStatus, String) {
    (SrStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (SrStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: the caller passes a nul-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| (SrStatus::InvalidUtf8, format!("`{what}` is not valid UTF-8")))
}

unsafe fn dfa_arg<'a>(p: *const SrDfa) -> Result<&'a Dfa, (SrStatus, String)> {
    // SAFETY: the caller passes a live handle or null.
    unsafe { p.as_ref() }.map(|h| &h.dfa).ok_or_else(|| null("dfa"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior nul removed")
        .into_raw()
}

fn cap_or(cap: usize, default: usize) -> usize {
    if cap == 0 {
        default
    } else {
        cap
    }
}

unsafe fn write_word(dfa: &Dfa, w: Option<Word>, found: *mut bool, word: *mut *mut c_char, len: *mut usize) {
    // SAFETY: out-pointers were checked for null by the caller.
    unsafe {
        *found = w.is_some();
        if !len.is_null() {
            *len = w.as_ref().map_or(0, Word::len);
        }
        if !word.is_null() {
            *word = match w {
                Some(w) => into_c_string(dfa.format_word(&w)),
                None => ptr::null_mut(),
            };
        }
    }
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sr_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses the text format into a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_dfa_parse(text: *const c_char, out: *mut *mut SrDfa) -> SrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = unsafe { str_arg(text, "text") }?;
        let dfa = Dfa::parse(text).map_err(lib)?;
        unsafe { *out = Box::into_raw(Box::new(SrDfa { dfa })) };
        Ok(())
    })
}

/// Builds a named automaton (`cerny`, `fig2`, `p2n`, `p3n`, `fig5`, `bv`).
/// `n == 0` selects the family's default size.
///
/// # Safety
/// `family` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_dfa_generate(family: *const c_char, n: usize, out: *mut *mut SrDfa) -> SrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let family: Family = unsafe { str_arg(family, "family") }?.parse().map_err(lib)?;
        let n = if n == 0 { None } else { Some(n) };
        let dfa = family.generate(n, DEFAULT_LETTER_CAP).map_err(lib)?;
        unsafe { *out = Box::into_raw(Box::new(SrDfa { dfa })) };
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `dfa` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sr_dfa_free(dfa: *mut SrDfa) {
    if !dfa.is_null() {
        // SAFETY: allocated by `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(dfa) });
    }
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `dfa` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sr_dfa_num_states(dfa: *const SrDfa) -> usize {
    unsafe { dfa.as_ref() }.map_or(0, |h| h.dfa.n())
}

/// Number of letters, or 0 for a null handle.
///
/// # Safety
/// `dfa` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sr_dfa_num_letters(dfa: *const SrDfa) -> usize {
    unsafe { dfa.as_ref() }.map_or(0, |h| h.dfa.num_letters())
}

/// Text serialization; free the result with `sr_string_free`.
///
/// # Safety
/// `dfa` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_dfa_serialize(dfa: *const SrDfa, out: *mut *mut c_char) -> SrStatus {
    guard(|| {
        let dfa = unsafe { dfa_arg(dfa) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { *out = into_c_string(dfa.serialize()) };
        Ok(())
    })
}

/// Graphviz rendering; free the result with `sr_string_free`.
///
/// # Safety
/// `dfa` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_dfa_to_dot(dfa: *const SrDfa, out: *mut *mut c_char) -> SrStatus {
    guard(|| {
        let dfa = unsafe { dfa_arg(dfa) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { *out = into_c_string(dfa.to_dot()) };
        Ok(())
    })
}

/// Shortest synchronizing word. `cap == 0` uses the default frontier cap.
/// `word` and `len` may be null; a returned word must be freed.
///
/// # Safety
/// `dfa` must be a live handle and `found` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_shortest_sync_word(
    dfa: *const SrDfa,
    cap: usize,
    found: *mut bool,
    word: *mut *mut c_char,
    len: *mut usize,
) -> SrStatus {
    guard(|| {
        let dfa = unsafe { dfa_arg(dfa) }?;
        if found.is_null() {
            return Err(null("found"));
        }
        let w = power::shortest_synchronizing_word(dfa, cap_or(cap, DEFAULT_FRONTIER_CAP)).map_err(lib)?;
        unsafe { write_word(dfa, w, found, word, len) };
        Ok(())
    })
}

/// Shortest word `w` with `Qw` equal to the target (or contained in it when
/// `into` is set). Bit `i` of `target` stands for state `i + 1`.
///
/// # Safety
/// `dfa` must be a live handle and `found` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_shortest_reaching_word(
    dfa: *const SrDfa,
    target: u64,
    into: bool,
    cap: usize,
    found: *mut bool,
    word: *mut *mut c_char,
    len: *mut usize,
) -> SrStatus {
    guard(|| {
        let dfa = unsafe { dfa_arg(dfa) }?;
        if found.is_null() {
            return Err(null("found"));
        }
        let target = StateSet::from_bits(target);
        if target.is_empty() || !target.is_subset(dfa.states()) {
            return Err((
                SrStatus::InvalidArgument,
                format!("target {target} is not a nonempty set of states"),
            ));
        }
        let cap = cap_or(cap, DEFAULT_FRONTIER_CAP);
        let w = if into {
            power::shortest_word_into(dfa, target, cap).map_err(lib)?
        } else {
            let index = power::power_bfs(dfa, dfa.states(), cap).map_err(lib)?;
            power::shortest_reaching_word(&index, target)
        };
        unsafe { write_word(dfa, w, found, word, len) };
        Ok(())
    })
}

/// Complete reachability. When the answer is negative and `missing` is not
/// null, it receives the smallest unreachable subset as a bit mask.
///
/// # Safety
/// `dfa` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_is_completely_reachable(
    dfa: *const SrDfa,
    cap: usize,
    out: *mut bool,
    missing: *mut u64,
) -> SrStatus {
    guard(|| {
        let dfa = unsafe { dfa_arg(dfa) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cr = power::is_completely_reachable(dfa, cap_or(cap, DEFAULT_FRONTIER_CAP)).map_err(lib)?;
        unsafe {
            *out = cr.complete;
            if !missing.is_null() {
                *missing = cr.missing.map_or(0, StateSet::bits);
            }
        }
        Ok(())
    })
}

/// Strong connectivity of the graph of rank-`n - 1` words.
/// `cap == 0` uses the default closure cap.
///
/// # Safety
/// `dfa` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_gamma1_strongly_connected(dfa: *const SrDfa, cap: usize, out: *mut bool) -> SrStatus {
    guard(|| {
        let dfa = unsafe { dfa_arg(dfa) }?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = rank::gamma1(dfa, cap_or(cap, DEFAULT_CLOSURE_CAP)).map_err(lib)?;
        unsafe { *out = rank::is_strongly_connected(&g) };
        Ok(())
    })
}

/// Number of subsets of size `k` whose shortest word exceeds `n(n - k)`.
/// With `included` set, words landing inside the subset count too.
///
/// # Safety
/// `dfa` must be a live handle and `count` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sr_don_violations(
    dfa: *const SrDfa,
    included: bool,
    cap: usize,
    count: *mut usize,
) -> SrStatus {
    guard(|| {
        let dfa = unsafe { dfa_arg(dfa) }?;
        if count.is_null() {
            return Err(null("count"));
        }
        let report = power::don_audit(dfa, cap_or(cap, DEFAULT_FRONTIER_CAP)).map_err(lib)?;
        if included && report.included.is_none() {
            return Err((
                SrStatus::InvalidArgument,
                format!(
                    "included audit is limited to {} states",
                    power::MAX_INCLUDED_AUDIT_STATES
                ),
            ));
        }
        unsafe { *count = report.violations(included).len() };
        Ok(())
    })
}
