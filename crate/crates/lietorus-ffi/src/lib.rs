//! C ABI over the scenario runner and the integer normal form, so other
//! languages can drive the library: opaque report handles, status codes,
//! JSON strings in and out, and a thread-local last-error message.
//!
//! Memory contract: every `LtReport` returned through an out-pointer must
//! be released with `lt_report_free`; strings returned by
//! `lt_report_json` are owned by the report and live until it is freed;
//! `lt_last_error` returns a thread-local buffer valid until the next
//! failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lietorus::classify::{normalize_mod_ideal, solve_congruence_system, Modulus};
use lietorus::intmat::IMat;
use lietorus::scenario::{run, ScenarioSpec};

/// Status codes mirroring the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum LtStatus {
    /// All requested checks passed.
    LtOk = 0,
    /// The run completed but a check failed.
    LtCheckFailed = 1,
    /// Malformed input or an unsupported request.
    LtInvalidInput = 2,
    /// The working cyclotomic field is too small for the request.
    LtFieldTooSmall = 3,
    /// Internal failure (a panic was caught at the boundary).
    LtInternal = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(clean).unwrap_or_default();
    });
}

/// Message for the most recent failure on this thread; empty when the last
/// call succeeded.  The pointer is valid until the next failing call.
#[no_mangle]
pub extern "C" fn lt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lt_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// A finished scenario run: the deterministic JSON report and its verdict.
pub struct LtReport {
    json: CString,
    pass: bool,
}

/// Run a scenario given as a JSON document (the same schema the CLI's
/// `run` subcommand accepts).  On success `*out` receives a report handle.
///
/// # Safety
/// `spec_json` must be a valid NUL-terminated UTF-8 string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lt_run_scenario_json(
    spec_json: *const c_char,
    out: *mut *mut LtReport,
) -> LtStatus {
    if spec_json.is_null() || out.is_null() {
        set_error("null pointer");
        return LtStatus::LtInvalidInput;
    }
    *out = ptr::null_mut();
    let text = match CStr::from_ptr(spec_json).to_str() {
        Ok(t) => t.to_owned(),
        Err(_) => {
            set_error("spec is not valid UTF-8");
            return LtStatus::LtInvalidInput;
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| -> Result<LtReport, (LtStatus, String)> {
        let spec: ScenarioSpec = serde_json::from_str(&text)
            .map_err(|e| (LtStatus::LtInvalidInput, format!("schema error: {e}")))?;
        let report = run(&spec).map_err(|e| {
            let code = match e.exit_code() {
                3 => LtStatus::LtFieldTooSmall,
                _ => LtStatus::LtInvalidInput,
            };
            (code, e.to_string())
        })?;
        let json = CString::new(report.to_canonical_json())
            .map_err(|_| (LtStatus::LtInternal, "report contains NUL".to_string()))?;
        Ok(LtReport { json, pass: report.pass })
    }));
    match result {
        Ok(Ok(report)) => {
            let pass = report.pass;
            *out = Box::into_raw(Box::new(report));
            if pass {
                LtStatus::LtOk
            } else {
                LtStatus::LtCheckFailed
            }
        }
        Ok(Err((code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("panic at the library boundary");
            LtStatus::LtInternal
        }
    }
}

/// The canonical JSON text of a report; owned by the report handle.
///
/// # Safety
/// `report` must be a live handle from `lt_run_scenario_json`.
#[no_mangle]
pub unsafe extern "C" fn lt_report_json(report: *const LtReport) -> *const c_char {
    if report.is_null() {
        return ptr::null();
    }
    (*report).json.as_ptr()
}

/// Did every requested check pass?
///
/// # Safety
/// `report` must be a live handle from `lt_run_scenario_json`.
#[no_mangle]
pub unsafe extern "C" fn lt_report_pass(report: *const LtReport) -> bool {
    if report.is_null() {
        return false;
    }
    (*report).pass
}

/// Release a report handle.
///
/// # Safety
/// `report` must be a handle from `lt_run_scenario_json`, freed once.
#[no_mangle]
pub unsafe extern "C" fn lt_report_free(report: *mut LtReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Normalize an n x n integer matrix modulo the right ideal of the
/// divisibility chain `moduli` (m[i+1] | m[i]).  `matrix` is row-major
/// n*n; `witness` may be null, in which case one is solved from the
/// congruence.  On success `*out_p` receives the orbit invariant and
/// `out_transform` (row-major n*n, caller-allocated) the unimodular
/// column transform.
///
/// # Safety
/// All pointers must be valid for the documented lengths.
#[no_mangle]
pub unsafe extern "C" fn lt_normalize_mod_ideal(
    n: usize,
    moduli: *const i64,
    matrix: *const i64,
    witness: *const i64,
    out_p: *mut i64,
    out_transform: *mut i64,
) -> LtStatus {
    if n == 0 || moduli.is_null() || matrix.is_null() || out_p.is_null() {
        set_error("null pointer or empty size");
        return LtStatus::LtInvalidInput;
    }
    let result = catch_unwind(AssertUnwindSafe(|| -> Result<(i64, IMat), String> {
        let m = std::slice::from_raw_parts(moduli, n).to_vec();
        let modulus = Modulus::new(m.clone()).map_err(|e| e.to_string())?;
        let a_flat = std::slice::from_raw_parts(matrix, n * n);
        let a = IMat::from_rows(a_flat.chunks(n).map(|c| c.to_vec()).collect());
        let b = if witness.is_null() {
            let mut b = IMat::zero(n, n);
            for j in 0..n {
                let mut e = vec![0i64; n];
                e[j] = 1;
                let col = solve_congruence_system(&a, &m, &e)
                    .ok_or_else(|| "matrix has no witness modulo the chain".to_string())?;
                for i in 0..n {
                    b.set(i, j, col[i]);
                }
            }
            b
        } else {
            let b_flat = std::slice::from_raw_parts(witness, n * n);
            IMat::from_rows(b_flat.chunks(n).map(|c| c.to_vec()).collect())
        };
        let nf = normalize_mod_ideal(&a, &modulus, &b).map_err(|e| e.to_string())?;
        Ok((nf.p, nf.p_matrix))
    }));
    match result {
        Ok(Ok((p, t))) => {
            *out_p = p;
            if !out_transform.is_null() {
                let out = std::slice::from_raw_parts_mut(out_transform, n * n);
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = t.at(i, j);
                    }
                }
            }
            LtStatus::LtOk
        }
        Ok(Err(msg)) => {
            set_error(&msg);
            LtStatus::LtInvalidInput
        }
        Err(_) => {
            set_error("panic at the library boundary");
            LtStatus::LtInternal
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    #[test]
    fn scenario_round_trip() {
        let spec = CString::new(
            r#"{"command":"normalize","modulus":[5,5],"matrix":[[1,0],[0,2]]}"#,
        )
        .unwrap();
        let mut out: *mut LtReport = ptr::null_mut();
        let status = unsafe { lt_run_scenario_json(spec.as_ptr(), &mut out) };
        assert!(matches!(status, LtStatus::LtOk));
        assert!(!out.is_null());
        unsafe {
            assert!(lt_report_pass(out));
            let json = CStr::from_ptr(lt_report_json(out)).to_str().unwrap();
            let v: serde_json::Value = serde_json::from_str(json).unwrap();
            assert_eq!(v["data"]["p"], serde_json::json!(2));
            lt_report_free(out);
        }
    }

    #[test]
    fn schema_error_sets_message() {
        let spec = CString::new(r#"{"command":"bogus"}"#).unwrap();
        let mut out: *mut LtReport = ptr::null_mut();
        let status = unsafe { lt_run_scenario_json(spec.as_ptr(), &mut out) };
        assert!(matches!(status, LtStatus::LtInvalidInput));
        assert!(out.is_null());
        let msg = unsafe { CStr::from_ptr(lt_last_error()) }.to_str().unwrap();
        assert!(msg.contains("bogus") || msg.contains("unknown"));
    }

    #[test]
    fn direct_normalize() {
        let moduli = [4i64, 4];
        let matrix = [1i64, 0, 0, 3];
        let mut p = -1i64;
        let mut transform = [0i64; 4];
        let status = unsafe {
            lt_normalize_mod_ideal(
                2,
                moduli.as_ptr(),
                matrix.as_ptr(),
                ptr::null(),
                &mut p,
                transform.as_mut_ptr(),
            )
        };
        assert!(matches!(status, LtStatus::LtOk));
        assert_eq!(p, 1);
    }

    #[test]
    fn check_scenario_via_ffi() {
        let spec = CString::new(
            r#"{"command":"check","algebra":{"named":{"name":"A2"}},"automorphisms":[{"diagram":{"perm":[1,0]}}]}"#,
        )
        .unwrap();
        let mut out: *mut LtReport = ptr::null_mut();
        let status = unsafe { lt_run_scenario_json(spec.as_ptr(), &mut out) };
        assert!(matches!(status, LtStatus::LtOk));
        unsafe {
            assert!(lt_report_pass(out));
            lt_report_free(out);
        }
    }

    #[test]
    fn version_is_set() {
        let v = unsafe { CStr::from_ptr(lt_version()) }.to_str().unwrap();
        assert!(!v.is_empty());
    }
}
