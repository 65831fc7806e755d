//! C ABI over the juristat library.
//!
//! Every entry point follows the same contract: inputs are plain values or
//! const pointers, results come back through out pointers, and the return
//! value is a [`JuristatStatus`]. On any status other than `Ok` the out
//! pointers are left untouched and a thread-local message describing the
//! failure is available from [`juristat_last_error_message`].
//!
//! Handles ([`JuristatSeries`], [`JuristatReport`]) are opaque boxes freed by
//! their paired `_free` function; returned strings are freed with
//! [`juristat_string_free`]. Passing a handle after freeing it, or a pointer
//! that does not satisfy a function's documented safety contract, is
//! undefined behavior, as usual for C.

#![deny(unsafe_op_in_unsafe_fn)]

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use juristat::decision::{conviction_rate, expected_daily_loss, hand_rule, HandInputs};
use juristat::error::Error;
use juristat::forecast::{fits, FitsOptions, ForecastReport, ModelId};
use juristat::jury::{majority_prob, majority_prob_mc, min_panel_size, PanelSpec};
use juristat::series::{parse_series_csv, serialize_series_csv, TimeSeries};
use juristat::textassoc::{stiles_association, AssocCounts};

/// Outcome of a call. Mirrors the library's stable error codes one to one,
/// with three conditions only the boundary itself can produce.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JuristatStatus {
    /// Success; all out pointers were filled.
    Ok = 0,
    /// A CSV data row could not be parsed.
    MalformedRow = 1,
    /// CSV dates are not strictly increasing at the expected stride.
    NonContiguous = 2,
    /// The input contained a header but no data rows.
    Empty = 3,
    /// A series is too short for the requested operation.
    TooShort = 4,
    /// Two sequences that must have equal lengths do not.
    LengthMismatch = 5,
    /// Panel sizes must be odd so a strict majority always exists.
    EvenPanel = 6,
    /// The panel-size search hit its cap before reaching the target.
    CapExceeded = 7,
    /// More convictions than accusations.
    Inconsistent = 8,
    /// A conviction rate needs at least one accused person.
    ZeroAccused = 9,
    /// Every prior-likelihood product is zero.
    ZeroEvidence = 10,
    /// An argument fell outside its documented range.
    OutOfRange = 11,
    /// A term occurs in no document or in every document.
    DegenerateTerm = 12,
    /// The continuity correction absorbs the whole deviation.
    CorrectionDominates = 13,
    /// A regression design matrix with no usable solution.
    SingularDesign = 14,
    /// Every candidate model was demoted during selection.
    AllModelsFailed = 15,
    /// CSV serialization only covers monthly and yearly cadences.
    UnsupportedFrequency = 16,
    /// A precondition on plain arguments was violated.
    InvalidInput = 17,
    /// A file path did not resolve.
    FileNotFound = 18,
    /// An underlying I/O operation failed.
    IoFailure = 19,
    /// A required pointer argument was NULL.
    NullPointer = 20,
    /// The library panicked; state is consistent but the call did nothing.
    Panic = 21,
}

/// The candidate forecasting models, in comparison order.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JuristatModel {
    AutoAr = 0,
    HoltWinters = 1,
    SeasonalNaive = 2,
    Nnar = 3,
}

impl From<ModelId> for JuristatModel {
    fn from(id: ModelId) -> Self {
        match id {
            ModelId::AutoAr => JuristatModel::AutoAr,
            ModelId::HoltWinters => JuristatModel::HoltWinters,
            ModelId::SeasonalNaive => JuristatModel::SeasonalNaive,
            ModelId::Nnar => JuristatModel::Nnar,
        }
    }
}

impl From<JuristatModel> for ModelId {
    fn from(model: JuristatModel) -> Self {
        match model {
            JuristatModel::AutoAr => ModelId::AutoAr,
            JuristatModel::HoltWinters => ModelId::HoltWinters,
            JuristatModel::SeasonalNaive => ModelId::SeasonalNaive,
            JuristatModel::Nnar => ModelId::Nnar,
        }
    }
}

/// An owned time series. Opaque; create with `juristat_series_parse_csv` or
/// `juristat_series_from_values`, release with `juristat_series_free`.
pub struct JuristatSeries {
    inner: TimeSeries,
}

/// An owned model-comparison report. Opaque; create with `juristat_fits`,
/// release with `juristat_report_free`.
pub struct JuristatReport {
    inner: ForecastReport,
}

/// Options for `juristat_fits`. Obtain a baseline from
/// `juristat_fits_options_default` and override fields as needed.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct JuristatFitsOptions {
    /// Leading fraction of the series used for training, in (0, 1).
    pub train_fraction: f64,
    /// Forecast horizon; 0 means "the holdout length".
    pub steps: usize,
    /// Keep only this many trailing points before splitting.
    pub max_points: usize,
    /// Base seed for the randomized candidate.
    pub seed: u64,
    /// Attach residual-bootstrap intervals when the winner supports them.
    pub intervals: bool,
    /// Fit the candidates on one thread each instead of sequentially.
    pub parallel: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).ok();
    });
}

/// Records the message and maps the library error onto the status table.
fn fail(err: &Error) -> JuristatStatus {
    set_last_error(&err.to_string());
    match err {
        Error::MalformedRow { .. } => JuristatStatus::MalformedRow,
        Error::NonContiguous { .. } => JuristatStatus::NonContiguous,
        Error::Empty => JuristatStatus::Empty,
        Error::TooShort(_) => JuristatStatus::TooShort,
        Error::LengthMismatch { .. } => JuristatStatus::LengthMismatch,
        Error::EvenPanel(_) => JuristatStatus::EvenPanel,
        Error::CapExceeded { .. } => JuristatStatus::CapExceeded,
        Error::Inconsistent { .. } => JuristatStatus::Inconsistent,
        Error::ZeroAccused => JuristatStatus::ZeroAccused,
        Error::ZeroEvidence => JuristatStatus::ZeroEvidence,
        Error::OutOfRange(_) => JuristatStatus::OutOfRange,
        Error::DegenerateTerm(_) => JuristatStatus::DegenerateTerm,
        Error::CorrectionDominates => JuristatStatus::CorrectionDominates,
        Error::SingularDesign => JuristatStatus::SingularDesign,
        Error::AllModelsFailed(_) => JuristatStatus::AllModelsFailed,
        Error::UnsupportedFrequency(_) => JuristatStatus::UnsupportedFrequency,
        Error::InvalidInput(_) => JuristatStatus::InvalidInput,
        Error::Io(e) if e.kind() == std::io::ErrorKind::NotFound => JuristatStatus::FileNotFound,
        Error::Io(_) => JuristatStatus::IoFailure,
    }
}

fn null_pointer(what: &str) -> JuristatStatus {
    set_last_error(&format!("{what} must not be NULL"));
    JuristatStatus::NullPointer
}

/// Runs a fallible body, translating panics into a status instead of letting
/// them unwind across the boundary.
fn guarded(body: impl FnOnce() -> JuristatStatus) -> JuristatStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unidentified panic".to_string());
            set_last_error(&format!("library panic: {message}"));
            JuristatStatus::Panic
        }
    }
}

fn give_string(text: String, out: *mut *mut c_char) -> JuristatStatus {
    match CString::new(text.replace('\0', " ")) {
        Ok(s) => {
            // Safety contract of the callers: `out` is a valid writable slot.
            unsafe { *out = s.into_raw() };
            JuristatStatus::Ok
        }
        Err(_) => {
            set_last_error("string could not be represented");
            JuristatStatus::InvalidInput
        }
    }
}

/// Returns the message from this thread's most recent failing call, or NULL
/// if none has failed yet. The pointer stays valid until the next failing
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn juristat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Frees a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a pointer previously returned through a `char**` out
/// parameter of this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn juristat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses CSV text (`yearMonth,count` header, day-01 dates, contiguous
/// periods) into a new series handle.
///
/// # Safety
/// `text` must point to a NUL-terminated byte string; `out` must be a valid
/// writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_series_parse_csv(
    text: *const c_char,
    out: *mut *mut JuristatSeries,
) -> JuristatStatus {
    if text.is_null() {
        return null_pointer("text");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    guarded(|| {
        let bytes = unsafe { CStr::from_ptr(text) }.to_bytes();
        let text = match std::str::from_utf8(bytes) {
            Ok(t) => t,
            Err(e) => {
                set_last_error(&format!("text is not UTF-8: {e}"));
                return JuristatStatus::InvalidInput;
            }
        };
        match parse_series_csv(text) {
            Ok(series) => {
                let handle = Box::new(JuristatSeries { inner: series });
                unsafe { *out = Box::into_raw(handle) };
                JuristatStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Builds a series from raw values.
///
/// # Safety
/// `values` must point to `len` readable doubles; `out` must be a valid
/// writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_series_from_values(
    values: *const f64,
    len: usize,
    start_year: i32,
    start_period: u32,
    frequency: u32,
    out: *mut *mut JuristatSeries,
) -> JuristatStatus {
    if values.is_null() && len > 0 {
        return null_pointer("values");
    }
    if out.is_null() {
        return null_pointer("out");
    }
    let values = if len == 0 {
        Vec::new()
    } else {
        unsafe { std::slice::from_raw_parts(values, len) }.to_vec()
    };
    match TimeSeries::new(values, start_year, start_period, frequency) {
        Ok(series) => {
            let handle = Box::new(JuristatSeries { inner: series });
            unsafe { *out = Box::into_raw(handle) };
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Number of points in the series; 0 for NULL.
///
/// # Safety
/// `series` must be NULL or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn juristat_series_len(series: *const JuristatSeries) -> usize {
    unsafe { series.as_ref() }.map_or(0, |s| s.inner.len())
}

/// Periods per year (12 monthly, 1 yearly); 0 for NULL.
///
/// # Safety
/// `series` must be NULL or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn juristat_series_frequency(series: *const JuristatSeries) -> u32 {
    unsafe { series.as_ref() }.map_or(0, |s| s.inner.frequency())
}

/// First period of the series.
///
/// # Safety
/// `series` must be a live series handle; `out_year` and `out_period` must
/// be valid writable slots.
#[no_mangle]
pub unsafe extern "C" fn juristat_series_start(
    series: *const JuristatSeries,
    out_year: *mut i32,
    out_period: *mut u32,
) -> JuristatStatus {
    let Some(series) = (unsafe { series.as_ref() }) else {
        return null_pointer("series");
    };
    if out_year.is_null() || out_period.is_null() {
        return null_pointer("out_year/out_period");
    }
    let (year, period) = series.inner.period_at(0);
    unsafe {
        *out_year = year;
        *out_period = period;
    }
    JuristatStatus::Ok
}

/// Copies the series values into `buf`, which must hold exactly
/// `juristat_series_len` doubles.
///
/// # Safety
/// `series` must be a live series handle; `buf` must point to `len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn juristat_series_copy_values(
    series: *const JuristatSeries,
    buf: *mut f64,
    len: usize,
) -> JuristatStatus {
    let Some(series) = (unsafe { series.as_ref() }) else {
        return null_pointer("series");
    };
    if buf.is_null() {
        return null_pointer("buf");
    }
    let values = series.inner.values();
    if values.len() != len {
        return fail(&Error::LengthMismatch {
            left: values.len(),
            right: len,
        });
    }
    unsafe { std::slice::from_raw_parts_mut(buf, len) }.copy_from_slice(values);
    JuristatStatus::Ok
}

/// Serializes the series back to CSV. The returned string is owned by the
/// caller; free with `juristat_string_free`.
///
/// # Safety
/// `series` must be a live series handle; `out` must be a valid writable
/// slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_series_to_csv(
    series: *const JuristatSeries,
    out: *mut *mut c_char,
) -> JuristatStatus {
    let Some(series) = (unsafe { series.as_ref() }) else {
        return null_pointer("series");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    match serialize_series_csv(&series.inner) {
        Ok(csv) => give_string(csv, out),
        Err(e) => fail(&e),
    }
}

/// Releases a series handle. NULL is a no-op.
///
/// # Safety
/// `series` must be NULL or a live series handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn juristat_series_free(series: *mut JuristatSeries) {
    if !series.is_null() {
        drop(unsafe { Box::from_raw(series) });
    }
}

/// Probability that an n-member panel of independent jurors, each correct
/// with probability `theta`, reaches the correct majority verdict.
///
/// # Safety
/// `out` must be a valid writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_majority_prob(
    n: u64,
    theta: f64,
    out: *mut f64,
) -> JuristatStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    match PanelSpec::new(n, theta) {
        Ok(spec) => {
            unsafe { *out = majority_prob(&spec) };
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Monte Carlo counterpart of `juristat_majority_prob`, simulating `trials`
/// panels from the given seed.
///
/// # Safety
/// `out` must be a valid writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_majority_prob_mc(
    n: u64,
    theta: f64,
    trials: u64,
    seed: u64,
    out: *mut f64,
) -> JuristatStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    let outcome = PanelSpec::new(n, theta).and_then(|spec| majority_prob_mc(&spec, trials, seed));
    match outcome {
        Ok(p) => {
            unsafe { *out = p };
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Smallest odd panel size whose majority reliability reaches `target`.
///
/// # Safety
/// `out` must be a valid writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_min_panel_size(
    theta: f64,
    target: f64,
    out: *mut u64,
) -> JuristatStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    match min_panel_size(theta, target) {
        Ok(n) => {
            unsafe { *out = n };
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Negligence comparison: liable when `burden < probability * loss`.
///
/// # Safety
/// `out_liable` and `out_expected_harm` must be valid writable slots.
#[no_mangle]
pub unsafe extern "C" fn juristat_hand_rule(
    burden: f64,
    probability: f64,
    loss: f64,
    out_liable: *mut bool,
    out_expected_harm: *mut f64,
) -> JuristatStatus {
    if out_liable.is_null() || out_expected_harm.is_null() {
        return null_pointer("out_liable/out_expected_harm");
    }
    match HandInputs::new(burden, probability, loss) {
        Ok(inputs) => {
            let ruling = hand_rule(&inputs);
            unsafe {
                *out_liable = ruling.liable;
                *out_expected_harm = ruling.expected_harm;
            }
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Expected revenue lost per business day of an out-of-service practice.
/// `out_text` may be NULL when only the number is wanted; otherwise it
/// receives the report sentence (free with `juristat_string_free`).
///
/// # Safety
/// `out_value` must be a valid writable slot; `out_text` must be NULL or a
/// valid writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_expected_daily_loss(
    consultations_per_month: f64,
    hire_rate: f64,
    avg_ticket: f64,
    business_days: f64,
    out_value: *mut f64,
    out_text: *mut *mut c_char,
) -> JuristatStatus {
    if out_value.is_null() {
        return null_pointer("out_value");
    }
    match expected_daily_loss(consultations_per_month, hire_rate, avg_ticket, business_days) {
        Ok(loss) => {
            if !out_text.is_null() {
                let status = give_string(loss.text, out_text);
                if status != JuristatStatus::Ok {
                    return status;
                }
            }
            unsafe { *out_value = loss.value };
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Fraction of accused persons convicted.
///
/// # Safety
/// `out` must be a valid writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_conviction_rate(
    convicted: u64,
    accused: u64,
    out: *mut f64,
) -> JuristatStatus {
    if out.is_null() {
        return null_pointer("out");
    }
    match conviction_rate(convicted, accused) {
        Ok(rate) => {
            unsafe { *out = rate };
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Association between two index terms: `a` and `b` document frequencies,
/// `f` co-occurrences, `n` documents. `out_negative` is set when the terms
/// co-occur less than independence would predict.
///
/// # Safety
/// `out_magnitude` and `out_negative` must be valid writable slots.
#[no_mangle]
pub unsafe extern "C" fn juristat_stiles_association(
    a: u64,
    b: u64,
    f: u64,
    n: u64,
    out_magnitude: *mut f64,
    out_negative: *mut bool,
) -> JuristatStatus {
    if out_magnitude.is_null() || out_negative.is_null() {
        return null_pointer("out_magnitude/out_negative");
    }
    let outcome = AssocCounts::new(a, b, f, n).and_then(|c| stiles_association(&c));
    match outcome {
        Ok(assoc) => {
            unsafe {
                *out_magnitude = assoc.magnitude;
                *out_negative = assoc.negative;
            }
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// The options `juristat_fits` uses when given NULL.
#[no_mangle]
pub extern "C" fn juristat_fits_options_default() -> JuristatFitsOptions {
    let defaults = FitsOptions::default();
    JuristatFitsOptions {
        train_fraction: defaults.train_fraction,
        steps: defaults.steps.unwrap_or(0),
        max_points: defaults.max_points,
        seed: defaults.seed,
        intervals: defaults.intervals,
        parallel: defaults.parallel,
    }
}

/// Compares the candidate models on a holdout split of `series` and
/// forecasts with the winner. `options` may be NULL for the defaults.
///
/// # Safety
/// `series` must be a live series handle; `options` must be NULL or point to
/// a readable options struct; `out` must be a valid writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_fits(
    series: *const JuristatSeries,
    options: *const JuristatFitsOptions,
    out: *mut *mut JuristatReport,
) -> JuristatStatus {
    let Some(series) = (unsafe { series.as_ref() }) else {
        return null_pointer("series");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    let opts = match unsafe { options.as_ref() } {
        Some(o) => FitsOptions {
            train_fraction: o.train_fraction,
            steps: if o.steps == 0 { None } else { Some(o.steps) },
            max_points: o.max_points,
            seed: o.seed,
            intervals: o.intervals,
            parallel: o.parallel,
        },
        None => FitsOptions::default(),
    };
    guarded(|| match fits(&series.inner, &opts) {
        Ok(report) => {
            let handle = Box::new(JuristatReport { inner: report });
            unsafe { *out = Box::into_raw(handle) };
            JuristatStatus::Ok
        }
        Err(e) => fail(&e),
    })
}

/// Winner of the comparison.
///
/// # Safety
/// `report` must be a live report handle; `out` must be a valid writable
/// slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_best_model(
    report: *const JuristatReport,
    out: *mut JuristatModel,
) -> JuristatStatus {
    let Some(report) = (unsafe { report.as_ref() }) else {
        return null_pointer("report");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    unsafe { *out = report.inner.best_model.into() };
    JuristatStatus::Ok
}

/// Holdout mean squared error of one candidate. Fails with
/// `JURISTAT_STATUS_INVALID_INPUT` when the candidate was dropped from the
/// comparison.
///
/// # Safety
/// `report` must be a live report handle; `model` must be a valid enum
/// value; `out` must be a valid writable slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_mse(
    report: *const JuristatReport,
    model: JuristatModel,
    out: *mut f64,
) -> JuristatStatus {
    let Some(report) = (unsafe { report.as_ref() }) else {
        return null_pointer("report");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    match report.inner.mse_per_model.get(&ModelId::from(model)) {
        Some(&mse) => {
            unsafe { *out = mse };
            JuristatStatus::Ok
        }
        None => {
            set_last_error("model was dropped from the comparison");
            JuristatStatus::InvalidInput
        }
    }
}

/// Number of point forecasts in the report; 0 for NULL.
///
/// # Safety
/// `report` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_forecast_len(report: *const JuristatReport) -> usize {
    unsafe { report.as_ref() }.map_or(0, |r| r.inner.point_forecasts.len())
}

/// First forecast period (the one after the observed series ends).
///
/// # Safety
/// `report` must be a live report handle; `out_year` and `out_period` must
/// be valid writable slots.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_forecast_start(
    report: *const JuristatReport,
    out_year: *mut i32,
    out_period: *mut u32,
) -> JuristatStatus {
    let Some(report) = (unsafe { report.as_ref() }) else {
        return null_pointer("report");
    };
    if out_year.is_null() || out_period.is_null() {
        return null_pointer("out_year/out_period");
    }
    let (year, period) = report.inner.point_forecasts.period_at(0);
    unsafe {
        *out_year = year;
        *out_period = period;
    }
    JuristatStatus::Ok
}

/// Copies the point forecasts into `buf`, which must hold exactly
/// `juristat_report_forecast_len` doubles.
///
/// # Safety
/// `report` must be a live report handle; `buf` must point to `len` writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_forecast_values(
    report: *const JuristatReport,
    buf: *mut f64,
    len: usize,
) -> JuristatStatus {
    let Some(report) = (unsafe { report.as_ref() }) else {
        return null_pointer("report");
    };
    if buf.is_null() {
        return null_pointer("buf");
    }
    let values = report.inner.point_forecasts.values();
    if values.len() != len {
        return fail(&Error::LengthMismatch {
            left: values.len(),
            right: len,
        });
    }
    unsafe { std::slice::from_raw_parts_mut(buf, len) }.copy_from_slice(values);
    JuristatStatus::Ok
}

/// Whether the report carries prediction intervals.
///
/// # Safety
/// `report` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_has_intervals(report: *const JuristatReport) -> bool {
    unsafe { report.as_ref() }.map_or(false, |r| r.inner.intervals.is_some())
}

/// Copies the interval bounds into two buffers of exactly
/// `juristat_report_forecast_len` doubles each. Fails with
/// `JURISTAT_STATUS_INVALID_INPUT` when the report carries no intervals.
///
/// # Safety
/// `report` must be a live report handle; `lower` and `upper` must each
/// point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_intervals(
    report: *const JuristatReport,
    lower: *mut f64,
    upper: *mut f64,
    len: usize,
) -> JuristatStatus {
    let Some(report) = (unsafe { report.as_ref() }) else {
        return null_pointer("report");
    };
    if lower.is_null() || upper.is_null() {
        return null_pointer("lower/upper");
    }
    let Some(intervals) = report.inner.intervals.as_ref() else {
        set_last_error("report carries no prediction intervals");
        return JuristatStatus::InvalidInput;
    };
    if intervals.lower.len() != len {
        return fail(&Error::LengthMismatch {
            left: intervals.lower.len(),
            right: len,
        });
    }
    unsafe {
        std::slice::from_raw_parts_mut(lower, len).copy_from_slice(&intervals.lower);
        std::slice::from_raw_parts_mut(upper, len).copy_from_slice(&intervals.upper);
    }
    JuristatStatus::Ok
}

/// Serializes the whole report as JSON (the same document the CLI prints).
/// The returned string is owned by the caller; free with
/// `juristat_string_free`.
///
/// # Safety
/// `report` must be a live report handle; `out` must be a valid writable
/// slot.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_to_json(
    report: *const JuristatReport,
    out: *mut *mut c_char,
) -> JuristatStatus {
    let Some(report) = (unsafe { report.as_ref() }) else {
        return null_pointer("report");
    };
    if out.is_null() {
        return null_pointer("out");
    }
    match serde_json::to_string(&report.inner) {
        Ok(json) => give_string(json, out),
        Err(e) => {
            set_last_error(&format!("serialization failed: {e}"));
            JuristatStatus::InvalidInput
        }
    }
}

/// Releases a report handle. NULL is a no-op.
///
/// # Safety
/// `report` must be NULL or a live report handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn juristat_report_free(report: *mut JuristatReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}
