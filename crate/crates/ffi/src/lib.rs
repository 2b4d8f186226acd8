//! C ABI for rydgate.
//!
//! Objects are opaque handles created by `rg_*_new`/`rg_*_parse`/`rg_*_simulate`
//! and released with the matching `rg_*_free`. Every fallible call returns an
//! [`RgStatus`]; on failure the message is available from
//! [`rg_last_error_message`] on the same thread. Strings handed out by the
//! library are released with [`rg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rydgate::cli::output::records_json;
use rydgate::cli::{catalog, run_config, CliError, ExperimentConfig, RunRecord};
use rydgate::metrics::pedersen_fidelity;
use rydgate::protocols::{self as p, simulate, GateResult, PulseSchedule, SimOptions};
use rydgate::qcore::{CMat, C64};

/// Status codes. `RG_STATUS_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidUtf8 = 3,
    UnknownProtocol = 4,
    Schema = 5,
    ResourceLimit = 6,
    Numerical = 7,
    BufferSize = 8,
    OutOfRange = 9,
    Io = 10,
    Panic = 11,
}

/// Pulse schedule for one gate.
pub struct RgGate(PulseSchedule);

/// Simulated gate: realized map and derived figures of merit.
pub struct RgResult(GateResult);

/// Validated experiment config.
pub struct RgExperiment(ExperimentConfig);

/// Records from one experiment run, in sweep order.
pub struct RgRecords {
    protocol: &'static str,
    seed: Option<u64>,
    records: Vec<RunRecord>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Fail(RgStatus, String);

type Res<T> = Result<T, Fail>;

impl From<rydgate::Error> for Fail {
    fn from(e: rydgate::Error) -> Self {
        use rydgate::Error as E;
        let status = match &e {
            E::InvalidArgument(_) | E::UnknownLabel(_) | E::InvalidSpin(_) | E::Parse(_) => {
                RgStatus::InvalidArgument
            }
            E::DimensionLimit { .. } => RgStatus::ResourceLimit,
            _ => RgStatus::Numerical,
        };
        Fail(status, e.to_string())
    }
}

impl From<CliError> for Fail {
    fn from(e: CliError) -> Self {
        let status = match &e {
            CliError::UnknownProtocol(_) => RgStatus::UnknownProtocol,
            CliError::Schema(_) => RgStatus::Schema,
            CliError::ResourceLimit(_) => RgStatus::ResourceLimit,
            CliError::Io(_) => RgStatus::Io,
            CliError::Numerical(_) | CliError::Regression(_) => RgStatus::Numerical,
        };
        Fail(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Res<()>) -> RgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RgStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            RgStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref()
        .ok_or_else(|| Fail(RgStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Res<&'a mut T> {
    p.as_mut()
        .ok_or_else(|| Fail(RgStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Res<&'a str> {
    if s.is_null() {
        return Err(Fail(RgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(RgStatus::InvalidUtf8, format!("{what}: {e}")))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn c_string(s: String) -> Res<*mut c_char> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Fail(RgStatus::InvalidArgument, e.to_string()))
}

unsafe fn read_matrix(re: *const f64, im: *const f64, dim: usize, what: &str) -> Res<CMat> {
    if re.is_null() || im.is_null() {
        return Err(Fail(RgStatus::NullPointer, format!("{what} is null")));
    }
    let n = dim * dim;
    let (re, im) = (
        std::slice::from_raw_parts(re, n),
        std::slice::from_raw_parts(im, n),
    );
    Ok(CMat::from_iterator(
        dim,
        dim,
        re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)),
    ))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn rg_status_name(status: RgStatus) -> *const c_char {
    let s: &'static str = match status {
        RgStatus::Ok => "ok\0",
        RgStatus::NullPointer => "null_pointer\0",
        RgStatus::InvalidArgument => "invalid_argument\0",
        RgStatus::InvalidUtf8 => "invalid_utf8\0",
        RgStatus::UnknownProtocol => "unknown_protocol\0",
        RgStatus::Schema => "schema_violation\0",
        RgStatus::ResourceLimit => "resource_limit\0",
        RgStatus::Numerical => "numerical_failure\0",
        RgStatus::BufferSize => "buffer_size\0",
        RgStatus::OutOfRange => "out_of_range\0",
        RgStatus::Io => "io_error\0",
        RgStatus::Panic => "panic\0",
    };
    s.as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn rg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// pi - 2pi - pi blockade CZ. Frequencies in rad/us.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_gate_blockade_cz(
    omega: f64,
    v: f64,
    delta: f64,
    out: *mut *mut RgGate,
) -> RgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(RgGate(p::blockade_cz(omega, v, delta)?));
        Ok(())
    })
}

/// Detuned two-pulse phase gate for conditional phase `theta`, branch chosen automatically.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_gate_detuned_phase(
    theta: f64,
    omega: f64,
    v: f64,
    blockade_correction: bool,
    out: *mut *mut RgGate,
) -> RgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let sol = p::detuned_phase_solve(theta, None)?;
        *out = boxed(RgGate(p::detuned_phase_schedule(
            &sol,
            omega,
            v,
            blockade_correction,
        )?));
        Ok(())
    })
}

/// Weak-interaction wait-phase gate.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_gate_wait_phase(
    omega: f64,
    v: f64,
    phi: f64,
    compensate: bool,
    out: *mut *mut RgGate,
) -> RgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = boxed(RgGate(p::wait_phase_gate(omega, v, phi, compensate)?));
        Ok(())
    })
}

/// Gate duration in us.
///
/// # Safety
/// `gate` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rg_gate_duration(gate: *const RgGate, out: *mut f64) -> RgStatus {
    guard(|| {
        *out_ptr(out, "out")? = deref(gate, "gate")?.0.duration;
        Ok(())
    })
}

/// Simulates the gate, optionally with Rydberg decay.
///
/// # Safety
/// `gate` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rg_gate_simulate(
    gate: *const RgGate,
    decay: bool,
    out: *mut *mut RgResult,
) -> RgStatus {
    guard(|| {
        let g = deref(gate, "gate")?;
        let out = out_ptr(out, "out")?;
        let opts = if decay {
            SimOptions::default().with_decay()
        } else {
            SimOptions::default()
        };
        *out = boxed(RgResult(simulate(&g.0, &opts)?));
        Ok(())
    })
}

/// # Safety
/// `gate` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rg_gate_free(gate: *mut RgGate) {
    if !gate.is_null() {
        drop(Box::from_raw(gate));
    }
}

/// Headline fidelity of a simulated gate.
///
/// # Safety
/// `result` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rg_result_fidelity(result: *const RgResult, out: *mut f64) -> RgStatus {
    guard(|| {
        *out_ptr(out, "out")? = deref(result, "result")?.0.fidelity();
        Ok(())
    })
}

/// Conditional phase of the realized map, in (-pi, pi].
///
/// # Safety
/// `result` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rg_result_conditional_phase(
    result: *const RgResult,
    out: *mut f64,
) -> RgStatus {
    guard(|| {
        *out_ptr(out, "out")? = deref(result, "result")?.0.conditional_phase();
        Ok(())
    })
}

/// Side length of the realized map.
///
/// # Safety
/// `result` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rg_result_map_dim(result: *const RgResult, out: *mut usize) -> RgStatus {
    guard(|| {
        *out_ptr(out, "out")? = deref(result, "result")?.0.map.nrows();
        Ok(())
    })
}

/// Copies the realized map column-major into `re`/`im`, each of length `len = dim * dim`.
///
/// # Safety
/// `re` and `im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rg_result_map(
    result: *const RgResult,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> RgStatus {
    guard(|| {
        let m = &deref(result, "result")?.0.map;
        if re.is_null() || im.is_null() {
            return Err(Fail(RgStatus::NullPointer, "output buffer is null".into()));
        }
        if len != m.len() {
            return Err(Fail(
                RgStatus::BufferSize,
                format!("buffer holds {len} entries, map has {}", m.len()),
            ));
        }
        let (re, im) = (
            std::slice::from_raw_parts_mut(re, len),
            std::slice::from_raw_parts_mut(im, len),
        );
        for (i, z) in m.iter().enumerate() {
            re[i] = z.re;
            im[i] = z.im;
        }
        Ok(())
    })
}

/// # Safety
/// `result` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rg_result_free(result: *mut RgResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Phase-insensitive gate fidelity of `u` against `ideal`, both dim x dim column-major.
///
/// # Safety
/// Each array must hold `dim * dim` doubles.
#[no_mangle]
pub unsafe extern "C" fn rg_pedersen_fidelity(
    u_re: *const f64,
    u_im: *const f64,
    ideal_re: *const f64,
    ideal_im: *const f64,
    dim: usize,
    out: *mut f64,
) -> RgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if dim == 0 {
            return Err(Fail(
                RgStatus::InvalidArgument,
                "dim must be positive".into(),
            ));
        }
        let u = read_matrix(u_re, u_im, dim, "u")?;
        let ideal = read_matrix(ideal_re, ideal_im, dim, "ideal")?;
        *out = pedersen_fidelity(&u, &ideal)?;
        Ok(())
    })
}

/// Parses and validates a TOML experiment config (frequencies in MHz).
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_experiment_parse(
    toml: *const c_char,
    out: *mut *mut RgExperiment,
) -> RgStatus {
    guard(|| {
        let t = text(toml, "toml")?;
        let out = out_ptr(out, "out")?;
        *out = boxed(RgExperiment(ExperimentConfig::parse(t)?));
        Ok(())
    })
}

/// Evaluates every sweep point. Output paths in the config are ignored.
///
/// # Safety
/// `exp` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rg_experiment_run(
    exp: *const RgExperiment,
    out: *mut *mut RgRecords,
) -> RgStatus {
    guard(|| {
        let cfg = &deref(exp, "experiment")?.0;
        let out = out_ptr(out, "out")?;
        let records = run_config(cfg)?;
        *out = boxed(RgRecords {
            protocol: cfg.protocol.name,
            seed: cfg.seed,
            records,
        });
        Ok(())
    })
}

/// # Safety
/// `exp` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rg_experiment_free(exp: *mut RgExperiment) {
    if !exp.is_null() {
        drop(Box::from_raw(exp));
    }
}

/// Number of records (sweep points).
///
/// # Safety
/// `records` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rg_records_len(records: *const RgRecords, out: *mut usize) -> RgStatus {
    guard(|| {
        *out_ptr(out, "out")? = deref(records, "records")?.records.len();
        Ok(())
    })
}

/// Mean and standard error of metric `name` at record `index`.
///
/// # Safety
/// `name` must be NUL-terminated; the other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rg_records_metric(
    records: *const RgRecords,
    index: usize,
    name: *const c_char,
    mean: *mut f64,
    se: *mut f64,
) -> RgStatus {
    guard(|| {
        let r = deref(records, "records")?;
        let name = text(name, "name")?;
        let (mean, se) = (out_ptr(mean, "mean")?, out_ptr(se, "se")?);
        let rec = r.records.get(index).ok_or_else(|| {
            Fail(
                RgStatus::OutOfRange,
                format!("record {index} of {}", r.records.len()),
            )
        })?;
        let s = rec.metric(name).ok_or_else(|| {
            Fail(
                RgStatus::InvalidArgument,
                format!("metric '{name}' was not requested"),
            )
        })?;
        *mean = s.mean;
        *se = s.se;
        Ok(())
    })
}

/// Records as the JSON document `rydgate run` writes. Free with `rg_string_free`.
///
/// # Safety
/// `records` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rg_records_to_json(
    records: *const RgRecords,
    out: *mut *mut c_char,
) -> RgStatus {
    guard(|| {
        let r = deref(records, "records")?;
        let out = out_ptr(out, "out")?;
        let json = records_json(r.protocol, r.seed, &r.records);
        *out = c_string(
            serde_json::to_string_pretty(&json).map_err(|e| Fail(RgStatus::Io, e.to_string()))?,
        )?;
        Ok(())
    })
}

/// # Safety
/// `records` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rg_records_free(records: *mut RgRecords) {
    if !records.is_null() {
        drop(Box::from_raw(records));
    }
}

/// Protocol catalog with parameter schemas, as JSON. Free with `rg_string_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_catalog_json(out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = c_string(
            serde_json::to_string_pretty(&catalog())
                .map_err(|e| Fail(RgStatus::Io, e.to_string()))?,
        )?;
        Ok(())
    })
}
