//! C ABI over `prefix-graphs`.
//!
//! Objects are opaque handles created by `*_parse` and released by `*_free`.
//! Every fallible call returns a [`PgStatus`]; on failure the message is kept
//! per thread and read with [`pg_last_error`]. Strings returned through `char**`
//! out-parameters are owned by the caller and released with [`pg_string_free`].
//! Large integers cross the boundary as decimal strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use prefix_graphs::free_graphs::{
    hook_closed_form, phi_free, twisted_hook, FreePrefixGraph, FreeTwistedGraph,
};
use prefix_graphs::graded_graph::{initial_paths_series, GradedGraphPair};
use prefix_graphs::operads::{check_operad_duality, OperadSelector, Pair};
use prefix_graphs::tree::parse_term;
use prefix_graphs::{with_operad, Alphabet, Error, SyntaxTree};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotDiagonal = 5,
    Panic = 6,
}

/// Which graph on the trees of an alphabet.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgGraph {
    Prefix = 0,
    Twisted = 1,
}

/// Which commutator an operad duality check uses.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgPair {
    Uv = 0,
    Uu = 1,
}

/// An alphabet of letters with arities.
pub struct PgAlphabet(Alphabet);

/// A syntax tree.
pub struct PgTree {
    tree: SyntaxTree,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(PgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidAlphabet(_)
            | Error::Syntax { .. }
            | Error::UnknownLetter { .. }
            | Error::ArityMismatch { .. }
            | Error::InvalidElement(_)
            | Error::UnknownOperad(_) => PgStatus::Parse,
            Error::NotDiagonal { .. } => PgStatus::NotDiagonal,
            _ => PgStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

/// Runs `f`, recording its error message and converting panics.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> PgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PgStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(PgStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(PgStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let c =
        CString::new(s).map_err(|_| Failure(PgStatus::InvalidArgument, "embedded NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// The message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an alphabet such as `a:2,c:3`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pg_alphabet_parse(
    spec: *const c_char,
    out: *mut *mut PgAlphabet,
) -> PgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let a: Alphabet = read_str(spec)?.parse()?;
        *out = Box::into_raw(Box::new(PgAlphabet(a)));
        Ok(())
    })
}

/// # Safety
/// `a` must come from [`pg_alphabet_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pg_alphabet_free(a: *mut PgAlphabet) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Parses a tree such as `a[*,c[*,*,*]]` over an alphabet.
///
/// # Safety
/// Pointers must be valid; `term` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn pg_tree_parse(
    alphabet: *const PgAlphabet,
    term: *const c_char,
    out: *mut *mut PgTree,
) -> PgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let a = deref(alphabet)?;
        let tree = parse_term(read_str(term)?, &a.0)?;
        *out = Box::into_raw(Box::new(PgTree { tree }));
        Ok(())
    })
}

/// # Safety
/// `t` must come from [`pg_tree_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pg_tree_free(t: *mut PgTree) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// The canonical rendering of a tree.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pg_tree_render(t: *const PgTree, out: *mut *mut c_char) -> PgStatus {
    guard(|| write_string(out, deref(t)?.tree.to_string()))
}

/// Number of internal nodes.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pg_tree_degree(t: *const PgTree, out: *mut usize) -> PgStatus {
    guard(|| {
        let d = deref(t)?.tree.degree();
        *out.as_mut().ok_or_else(null)? = d;
        Ok(())
    })
}

/// Hook coefficient of the tree in the prefix graph, in decimal.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pg_tree_hook(t: *const PgTree, out: *mut *mut c_char) -> PgStatus {
    guard(|| write_string(out, hook_closed_form(&deref(t)?.tree).to_string()))
}

/// Hook coefficient of the tree in the twisted prefix graph, in decimal.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pg_tree_twisted_hook(t: *const PgTree, out: *mut *mut c_char) -> PgStatus {
    guard(|| write_string(out, twisted_hook(&deref(t)?.tree).to_string()))
}

/// Numbers of initial paths of ranks `0..=max`, comma-separated.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn pg_paths_series(
    alphabet: *const PgAlphabet,
    graph: PgGraph,
    max: usize,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        let a = deref(alphabet)?.0.clone();
        let series = match graph {
            PgGraph::Prefix => initial_paths_series(&FreePrefixGraph::new(a), max),
            PgGraph::Twisted => initial_paths_series(&FreeTwistedGraph::new(a), max),
        };
        let csv: Vec<String> = series
            .coefficients(max + 1)
            .iter()
            .map(|c| c.to_string())
            .collect();
        write_string(out, csv.join(","))
    })
}

/// Writes `s` into `witness` when the caller asked for it.
unsafe fn report_witness(witness: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if !witness.is_null() {
        write_string(witness, s.clone())?;
    }
    Err(Failure(PgStatus::NotDiagonal, s))
}

/// Checks `V★U − UV★ = #letters · nf` on all trees of degree `≤ max`.
/// Returns `PG_STATUS_NOT_DIAGONAL` on failure and, when `witness` is not
/// null, stores the failing tree there.
///
/// # Safety
/// `alphabet` must be valid; `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn pg_check_duality(
    alphabet: *const PgAlphabet,
    max: usize,
    witness: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        let a = &deref(alphabet)?.0;
        let (u, v) = (
            FreePrefixGraph::new(a.clone()),
            FreeTwistedGraph::new(a.clone()),
        );
        let report = GradedGraphPair::new(&u, &v).check_phi_diagonal(|t| phi_free(t, a), max);
        match report.failure {
            None => Ok(()),
            Some(w) => report_witness(witness, w.element.to_string()),
        }
    })
}

/// Checks the declared duality of an operad (`as`, `dias`, `comp`, `motz`,
/// `fcat:<m>`) on elements of degree `≤ max`. Pairs without a declared
/// diagonal are checked for being diagonal at all. The failing element is
/// stored in `witness` when it is not null.
///
/// # Safety
/// `operad` must be NUL-terminated; `witness` may be null.
#[no_mangle]
pub unsafe extern "C" fn pg_operad_check_duality(
    operad: *const c_char,
    pair: PgPair,
    max: usize,
    witness: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        let sel: OperadSelector = read_str(operad)?.parse()?;
        let pair = match pair {
            PgPair::Uv => Pair::UV,
            PgPair::Uu => Pair::UU,
        };
        let failure = with_operad!(sel, op => check_operad_duality(op, pair, max)
            .failure
            .map(|w| w.element.to_string()));
        match failure {
            None => Ok(()),
            Some(w) => report_witness(witness, w),
        }
    })
}
