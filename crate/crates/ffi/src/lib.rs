//! C ABI over `packetmult`.
//!
//! Every fallible function returns a [`PmStatus`]; on failure the message is
//! available from [`pm_last_error`] on the same thread. Handles are opaque
//! and must be released with their `*_free` function. Strings returned
//! through `char **` are owned by the caller and released with
//! [`pm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use packetmult::cases::sl4_enumerate;
use packetmult::engine::{
    analyze_parameter, kottwitz_sign, multiplicity_from_packet_cards, PacketReport,
};
use packetmult::group::{
    build_group, character_table, CentralCharacterQuery, CharacterTable, FiniteGroup, GroupSpec,
};
use packetmult::padic::{square_divisor_bound, PAdicField};
use packetmult::scenario::ScenarioRecord;
use packetmult::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    OrderCap = 4,
    Precondition = 5,
    /// Valid input contradicting a packet identity.
    Finding = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A group with its character table.
pub struct PmGroup {
    group: FiniteGroup,
    table: CharacterTable,
}

/// An analyzed packet report.
pub struct PmReport {
    report: PacketReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(err: &Error) -> PmStatus {
    match err {
        Error::Domain(_) | Error::InvalidGroup(_) => PmStatus::InvalidArgument,
        Error::Precondition(_) => PmStatus::Precondition,
        Error::OrderCap { .. } => PmStatus::OrderCap,
        Error::Parse { .. } => PmStatus::ParseError,
        Error::Finding(_) => PmStatus::Finding,
    }
}

/// Runs `body`, recording errors and converting panics.
fn guard(body: impl FnOnce() -> Result<(), (PmStatus, String)>) -> PmStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PmStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PmStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (PmStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (PmStatus, String) {
    (PmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (PmStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    // SAFETY: caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| (PmStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (PmStatus, String)> {
    if out.is_null() {
        return Err(null_err(what));
    }
    // SAFETY: checked non-null; caller provides writable storage.
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), (PmStatus, String)> {
    let c =
        CString::new(text).map_err(|_| (PmStatus::InvalidArgument, "interior NUL".to_string()))?;
    unsafe { write_out(out, c.into_raw(), "out") }
}

/// Copies `values` into `buf[0..cap]`; `len` receives the full length.
unsafe fn write_slice(
    values: &[u64],
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> Result<(), (PmStatus, String)> {
    unsafe { write_out(len, values.len(), "len")? };
    if values.len() > cap {
        return Err((
            PmStatus::BufferTooSmall,
            format!("need {} entries, buffer holds {cap}", values.len()),
        ));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null_err("buf"));
        }
        // SAFETY: buf holds at least cap >= values.len() entries.
        unsafe { ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len()) };
    }
    Ok(())
}

/// Last error message on this thread, or NULL. Valid until the next call
/// into this library on the same thread.
#[no_mangle]
pub extern "C" fn pm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by CString::into_raw.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds a group from its text description (e.g. "Q8", "heisenberg(3)").
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_group_new(spec: *const c_char, out: *mut *mut PmGroup) -> PmStatus {
    guard(|| {
        let text = unsafe { read_str(spec, "spec")? };
        let spec: GroupSpec = text.parse().map_err(lib_err)?;
        let group = build_group(&spec).map_err(lib_err)?;
        let table = character_table(&group).map_err(lib_err)?;
        let handle = Box::into_raw(Box::new(PmGroup { group, table }));
        unsafe { write_out(out, handle, "out") }.inspect_err(|_| {
            // SAFETY: just allocated above.
            drop(unsafe { Box::from_raw(handle) });
        })
    })
}

/// # Safety
/// `g` is NULL or a handle from [`pm_group_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pm_group_free(g: *mut PmGroup) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

unsafe fn group_ref<'a>(g: *const PmGroup) -> Result<&'a PmGroup, (PmStatus, String)> {
    // SAFETY: caller passes a live handle or NULL.
    unsafe { g.as_ref() }.ok_or_else(|| null_err("group"))
}

/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_group_order(g: *const PmGroup, out: *mut usize) -> PmStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        unsafe { write_out(out, g.group.order(), "out") }
    })
}

/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_group_class_count(g: *const PmGroup, out: *mut usize) -> PmStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        unsafe { write_out(out, g.table.classes().len(), "out") }
    })
}

/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_group_center_order(g: *const PmGroup, out: *mut usize) -> PmStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        unsafe { write_out(out, g.group.center().len(), "out") }
    })
}

/// Irreducible degrees in table order.
///
/// # Safety
/// `g` is a live handle; `buf` holds `cap` entries; `len` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_group_degrees(
    g: *const PmGroup,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> PmStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        unsafe { write_slice(g.table.degrees(), buf, cap, len) }
    })
}

/// Degrees of the irreducibles whose central character on the (cyclic)
/// center sends its canonical generator to `exp(2 pi i k / |Z|)`.
///
/// # Safety
/// As for [`pm_group_degrees`].
#[no_mangle]
pub unsafe extern "C" fn pm_group_central_degrees(
    g: *const PmGroup,
    zeta_exponent: u64,
    buf: *mut u64,
    cap: usize,
    len: *mut usize,
) -> PmStatus {
    guard(|| {
        let g = unsafe { group_ref(g)? };
        let query = CentralCharacterQuery::center(&g.group, zeta_exponent).map_err(lib_err)?;
        let degrees = g.table.degrees_with_central_character(&query);
        unsafe { write_slice(&degrees, buf, cap, len) }
    })
}

/// `|F^x / (F^x)^n|` as a decimal string.
///
/// # Safety
/// `out` is writable; release the string with [`pm_string_free`].
#[no_mangle]
pub unsafe extern "C" fn pm_coset_card(
    p: u64,
    e: u32,
    f: u32,
    a: u32,
    n: u64,
    out: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let field = PAdicField::new(p, e, f, a).map_err(lib_err)?;
        let c = field.coset_card(n).map_err(lib_err)?;
        unsafe { write_string(out, c.to_string()) }
    })
}

/// Largest `A` with `A^2 | c`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_square_divisor_bound(c: u64, out: *mut u64) -> PmStatus {
    guard(|| {
        let b = square_divisor_bound(&c.into()).map_err(lib_err)?;
        let b = u64::try_from(b).expect("bound of a u64 fits in u64");
        unsafe { write_out(out, b, "out") }
    })
}

/// `sqrt(card_star / card_g)`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_multiplicity_from_packet_cards(
    card_star: u64,
    card_g: u64,
    out: *mut u64,
) -> PmStatus {
    guard(|| {
        let m = multiplicity_from_packet_cards(card_star, card_g).map_err(lib_err)?;
        unsafe { write_out(out, m, "out") }
    })
}

/// `(-1)^(m(d-1))`, or 0 when `m` or `d` is 0.
#[no_mangle]
pub extern "C" fn pm_kottwitz_sign(m: u64, d: u64) -> i32 {
    if m == 0 || d == 0 {
        0
    } else {
        kottwitz_sign(m, d) as i32
    }
}

/// Analyzes one scenario record given as JSON
/// (`{label, m, d, group, central_subgroup, zeta_exponent, field?}`).
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_analyze_scenario_json(
    json: *const c_char,
    out: *mut *mut PmReport,
) -> PmStatus {
    guard(|| {
        let text = unsafe { read_str(json, "json")? };
        let record: ScenarioRecord =
            serde_json::from_str(text).map_err(|e| (PmStatus::ParseError, e.to_string()))?;
        let scenario = record.resolve(None).map_err(lib_err)?;
        let report = analyze_parameter(&scenario).map_err(lib_err)?;
        let handle = Box::into_raw(Box::new(PmReport { report }));
        unsafe { write_out(out, handle, "out") }.inspect_err(|_| {
            drop(unsafe { Box::from_raw(handle) });
        })
    })
}

/// # Safety
/// `r` is NULL or a handle from [`pm_analyze_scenario_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pm_report_free(r: *mut PmReport) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

fn report_field(r: *const PmReport, get: impl Fn(&PacketReport) -> u64) -> u64 {
    // SAFETY: callers pass a live handle or NULL.
    unsafe { r.as_ref() }.map_or(0, |r| get(&r.report))
}

/// `|Pi(G*)|`, or 0 for NULL.
///
/// # Safety
/// `r` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_report_card_star(r: *const PmReport) -> u64 {
    report_field(r, |r| r.card_star)
}

/// `|Pi(G)|`, or 0 for NULL.
///
/// # Safety
/// `r` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_report_card_g(r: *const PmReport) -> u64 {
    report_field(r, |r| r.card_g)
}

/// Multiplicity, or 0 for NULL.
///
/// # Safety
/// `r` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_report_multiplicity(r: *const PmReport) -> u64 {
    report_field(r, |r| r.multiplicity)
}

/// `|S|`, or 0 for NULL.
///
/// # Safety
/// `r` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_report_s_card(r: *const PmReport) -> u64 {
    report_field(r, |r| r.s_card)
}

/// Signed endoscopic coefficient, or 0 for NULL.
///
/// # Safety
/// `r` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_report_endoscopic_coefficient(r: *const PmReport) -> i64 {
    unsafe { r.as_ref() }.map_or(0, |r| r.report.endoscopic_coefficient)
}

/// The full report as JSON.
///
/// # Safety
/// `r` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_report_to_json(r: *const PmReport, out: *mut *mut c_char) -> PmStatus {
    guard(|| {
        let r = unsafe { r.as_ref() }.ok_or_else(|| null_err("report"))?;
        let text = serde_json::to_string(&r.report).expect("serializable");
        unsafe { write_string(out, text) }
    })
}

/// Writes the `SL(4)` triples as consecutive `(card_star, card_g, mult)`
/// entries; `count` receives the number of triples.
///
/// # Safety
/// `buf` holds `3 * cap_triples` entries; `count` is writable.
#[no_mangle]
pub unsafe extern "C" fn pm_sl4_enumerate(
    coset: u64,
    buf: *mut u64,
    cap_triples: usize,
    count: *mut usize,
) -> PmStatus {
    guard(|| {
        let rows = sl4_enumerate(coset).map_err(lib_err)?;
        let flat: Vec<u64> = rows.iter().flat_map(|&(a, b, c)| [a, b, c]).collect();
        let mut len = 0usize;
        let res = unsafe { write_slice(&flat, buf, cap_triples.saturating_mul(3), &mut len) };
        unsafe { write_out(count, rows.len(), "count")? };
        res
    })
}
