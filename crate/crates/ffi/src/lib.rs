//! C interface to `relieve-core`.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `*_free` function. Every fallible call returns a
//! [`RelieveStatus`]; on failure [`relieve_last_error`] describes the cause.
//! Strings returned to the caller are owned and must be released with
//! [`relieve_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use relieve_core::datamodel::SchemaHint;
use relieve_core::double::ProgressiveSchedule;
use relieve_core::evalharness::criteria;
use relieve_core::probstats::EmpiricalPDM;
use relieve_core::redundancy::{redundancy_level, Optimum, RedundancyOptions};
use relieve_core::relief::{DiffMetric, Iterations, DEFAULT_K};
use relieve_core::synthgen::{self, GroundTruth, Monk};
use relieve_core::weighting::{weigh, Algorithm, WeighParams};
use relieve_core::{Dataset, Error, FeatureWeights};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelieveStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Usage = 4,
    Parameter = 5,
    UnknownFeature = 6,
    TooExpensive = 7,
    Io = 8,
    Json = 9,
    Internal = 10,
    Panic = 11,
}

impl From<&Error> for RelieveStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => RelieveStatus::Parse,
            Error::UnknownFeature(_) => RelieveStatus::UnknownFeature,
            Error::Usage(_) => RelieveStatus::Usage,
            Error::Parameter(_) => RelieveStatus::Parameter,
            Error::TooExpensive { .. } => RelieveStatus::TooExpensive,
            Error::Internal(_) => RelieveStatus::Internal,
            Error::Io(_) => RelieveStatus::Io,
            Error::Json(_) => RelieveStatus::Json,
        }
    }
}

/// A parsed dataset.
pub struct RelieveDataset {
    inner: Dataset,
}

/// One weight per feature, in dataset feature order.
pub struct RelieveWeights {
    inner: FeatureWeights,
}

/// Relevant/irrelevant feature split of a synthetic dataset.
pub struct RelieveTruth {
    inner: GroundTruth,
}

/// Options for [`relieve_weigh`]; start from [`relieve_weigh_options_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct RelieveWeighOptions {
    /// Nearest hits and misses per class.
    pub k: usize,
    /// Iterations; 0 means one per instance.
    pub m: usize,
    pub seed: u64,
    /// Probability-based difference for missing values.
    pub relief_d: bool,
    /// Add-one smoothing for `relief_d`.
    pub laplace: bool,
    /// Fixed steepness for pdrelieff; 0 or less selects `2 / ln m`.
    pub steepness: f64,
    /// Positive value for PCF and binary CCF, or NULL.
    pub positive: *const c_char,
    /// Class reported by PCF, or NULL.
    pub class_value: *const c_char,
    pub vdm_classic: bool,
}

/// Scores of a weight vector against ground truth.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RelieveCriteria {
    pub separability: f64,
    pub usability: f64,
    pub minimality: f64,
    pub completeness: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Utf8(&'static str),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(Error::Json(e))
    }
}

/// Runs `f`, converting errors and panics into a status plus last-error text.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RelieveStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RelieveStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("{what} must not be NULL"));
            RelieveStatus::NullArgument
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_last_error(format!("{what} is not valid UTF-8"));
            RelieveStatus::InvalidUtf8
        }
        Ok(Err(Failure::Core(e))) => {
            set_last_error(e.to_string());
            RelieveStatus::from(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("internal panic: {msg}"));
            RelieveStatus::Panic
        }
    }
}

/// # Safety
/// `p` is NULL or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

/// # Safety
/// As [`str_arg`]; NULL maps to `None`.
unsafe fn opt_str_arg<'a>(p: *const c_char, what: &'static str) -> Result<Option<&'a str>, Failure> {
    if p.is_null() {
        Ok(None)
    } else {
        str_arg(p, what).map(Some)
    }
}

/// # Safety
/// `p` is NULL or points to a live `T`.
unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

/// # Safety
/// `out` is NULL or writable.
unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: &str) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message of the last failed call on this thread, or NULL if none. The
/// caller owns the returned string.
#[no_mangle]
pub extern "C" fn relieve_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn relieve_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn relieve_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses CSV text (header row, class in the last column). `schema_json`
/// maps feature names to `"nominal"` or `"linear"` and may be NULL.
///
/// # Safety
/// String arguments are NULL or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_dataset_parse(
    csv: *const c_char,
    schema_json: *const c_char,
    out: *mut *mut RelieveDataset,
) -> RelieveStatus {
    guard(|| {
        let text = str_arg(csv, "csv")?;
        let hint = parse_hint(opt_str_arg(schema_json, "schema_json")?)?;
        let d = relieve_core::parse_dataset(text, hint.as_ref())?;
        put(out, boxed(RelieveDataset { inner: d }), "out")
    })
}

/// Loads a CSV file; see [`relieve_dataset_parse`].
///
/// # Safety
/// String arguments are NULL or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_dataset_load(
    path: *const c_char,
    schema_json: *const c_char,
    out: *mut *mut RelieveDataset,
) -> RelieveStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        let hint = parse_hint(opt_str_arg(schema_json, "schema_json")?)?;
        let d = relieve_core::load_dataset(Path::new(path), hint.as_ref())?;
        put(out, boxed(RelieveDataset { inner: d }), "out")
    })
}

fn parse_hint(json: Option<&str>) -> Result<Option<SchemaHint>, Failure> {
    Ok(match json {
        Some(j) => Some(serde_json::from_str(j)?),
        None => None,
    })
}

/// # Safety
/// `d` is NULL or a live handle, released at most once.
#[no_mangle]
pub unsafe extern "C" fn relieve_dataset_free(d: *mut RelieveDataset) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Instance count, or 0 for NULL.
///
/// # Safety
/// `d` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn relieve_dataset_n_instances(d: *const RelieveDataset) -> usize {
    d.as_ref().map_or(0, |d| d.inner.n_instances())
}

/// Feature count (class excluded), or 0 for NULL.
///
/// # Safety
/// `d` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn relieve_dataset_n_features(d: *const RelieveDataset) -> usize {
    d.as_ref().map_or(0, |d| d.inner.n_features())
}

/// Name of feature `index`, as an owned string.
///
/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_dataset_feature_name(
    d: *const RelieveDataset,
    index: usize,
    out: *mut *mut c_char,
) -> RelieveStatus {
    guard(|| {
        let d = &handle(d, "dataset")?.inner;
        if index >= d.n_features() {
            return Err(Error::Usage(format!("feature index {index} out of range")).into());
        }
        put(out, owned_string(&d.feature(index).name), "out")
    })
}

/// The dataset as CSV text (owned string).
///
/// # Safety
/// `d` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_dataset_to_csv(
    d: *const RelieveDataset,
    out: *mut *mut c_char,
) -> RelieveStatus {
    guard(|| {
        let d = &handle(d, "dataset")?.inner;
        put(out, owned_string(&d.to_csv()), "out")
    })
}

/// # Safety
/// Output pointers are writable.
unsafe fn emit_generated(
    generated: relieve_core::Result<(Dataset, GroundTruth)>,
    out_data: *mut *mut RelieveDataset,
    out_truth: *mut *mut RelieveTruth,
) -> Result<(), Failure> {
    if out_data.is_null() {
        return Err(Failure::Null("out_data"));
    }
    if out_truth.is_null() {
        return Err(Failure::Null("out_truth"));
    }
    let (d, t) = generated?;
    out_data.write(boxed(RelieveDataset { inner: d }));
    out_truth.write(boxed(RelieveTruth { inner: t }));
    Ok(())
}

/// Modulo-p: class = sum of `important` features mod `p`, plus `random`
/// uniform features.
///
/// # Safety
/// Output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_gen_modulo(
    p: usize,
    important: usize,
    random: usize,
    n: usize,
    seed: u64,
    out_data: *mut *mut RelieveDataset,
    out_truth: *mut *mut RelieveTruth,
) -> RelieveStatus {
    guard(|| emit_generated(synthgen::gen_modulo(p, important, random, n, seed), out_data, out_truth))
}

/// CorrAl; `n == 0` selects the canonical 64-row set.
///
/// # Safety
/// Output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_gen_corral(
    n: usize,
    seed: u64,
    out_data: *mut *mut RelieveDataset,
    out_truth: *mut *mut RelieveTruth,
) -> RelieveStatus {
    guard(|| {
        let g = if n == 0 {
            synthgen::corral_exhaustive()
        } else {
            synthgen::gen_corral(n, seed)
        };
        emit_generated(g, out_data, out_truth)
    })
}

/// Seven-segment LED digits with `noise` segment flips and `irrelevant`
/// extra features.
///
/// # Safety
/// Output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_gen_led(
    n: usize,
    irrelevant: usize,
    noise: f64,
    seed: u64,
    out_data: *mut *mut RelieveDataset,
    out_truth: *mut *mut RelieveTruth,
) -> RelieveStatus {
    guard(|| emit_generated(synthgen::gen_led(n, irrelevant, noise, seed), out_data, out_truth))
}

/// Monk-1 or Monk-3 (`which`). `n == 0` enumerates all 432 attribute
/// configurations; a negative `noise` selects the problem's default.
///
/// # Safety
/// Output pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_gen_monk(
    which: u8,
    n: usize,
    noise: f64,
    seed: u64,
    out_data: *mut *mut RelieveDataset,
    out_truth: *mut *mut RelieveTruth,
) -> RelieveStatus {
    guard(|| {
        let monk = Monk::from_number(which)?;
        let noise = if noise < 0.0 { monk.default_noise() } else { noise };
        let g = if n == 0 {
            synthgen::monk_exhaustive(monk, noise, seed)
        } else {
            synthgen::gen_monk(monk, n, noise, seed)
        };
        emit_generated(g, out_data, out_truth)
    })
}

/// Ground truth from JSON `{"relevant": [...], "irrelevant": [...]}`.
///
/// # Safety
/// `json` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_truth_parse(
    json: *const c_char,
    out: *mut *mut RelieveTruth,
) -> RelieveStatus {
    guard(|| {
        let t: GroundTruth = serde_json::from_str(str_arg(json, "json")?)?;
        put(out, boxed(RelieveTruth { inner: t }), "out")
    })
}

/// # Safety
/// `t` is NULL or a live handle, released at most once.
#[no_mangle]
pub unsafe extern "C" fn relieve_truth_free(t: *mut RelieveTruth) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Defaults: k = 10, one iteration per instance, seed 0, basic difference,
/// automatic steepness.
#[no_mangle]
pub extern "C" fn relieve_weigh_options_default() -> RelieveWeighOptions {
    RelieveWeighOptions {
        k: DEFAULT_K,
        m: 0,
        seed: 0,
        relief_d: false,
        laplace: false,
        steepness: 0.0,
        positive: ptr::null(),
        class_value: ptr::null(),
        vdm_classic: false,
    }
}

/// Weighs every feature of `d` with `algorithm` (e.g. `"relieff"`,
/// `"pdrelieff"`, `"ig"`). `opts` may be NULL for defaults.
///
/// # Safety
/// `d` is a live handle; `algorithm` is NUL-terminated; `opts` is NULL or
/// valid with NULL or NUL-terminated string fields; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_weigh(
    d: *const RelieveDataset,
    algorithm: *const c_char,
    opts: *const RelieveWeighOptions,
    out: *mut *mut RelieveWeights,
) -> RelieveStatus {
    guard(|| {
        let d = &handle(d, "dataset")?.inner;
        let algorithm: Algorithm = str_arg(algorithm, "algorithm")?.parse()?;
        let o = opts.as_ref().copied().unwrap_or_else(|| relieve_weigh_options_default());
        let params = WeighParams {
            k: o.k,
            m: if o.m == 0 { Iterations::All } else { Iterations::Count(o.m) },
            seed: o.seed,
            diff: if o.relief_d { DiffMetric::relief_d(o.laplace) } else { DiffMetric::heom() },
            schedule: if o.steepness > 0.0 {
                ProgressiveSchedule::fixed(o.steepness)?
            } else {
                ProgressiveSchedule::auto()
            },
            positive: opt_str_arg(o.positive, "positive")?.map(str::to_string),
            class: opt_str_arg(o.class_value, "class_value")?.map(str::to_string),
            vdm_classic: o.vdm_classic,
        };
        let w = weigh(d, algorithm, &params)?;
        put(out, boxed(RelieveWeights { inner: w }), "out")
    })
}

/// # Safety
/// `w` is NULL or a live handle, released at most once.
#[no_mangle]
pub unsafe extern "C" fn relieve_weights_free(w: *mut RelieveWeights) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Number of weights, or 0 for NULL.
///
/// # Safety
/// `w` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn relieve_weights_len(w: *const RelieveWeights) -> usize {
    w.as_ref().map_or(0, |w| w.inner.weights.len())
}

/// Weight at position `index` (dataset feature order).
///
/// # Safety
/// `w` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_weights_value(
    w: *const RelieveWeights,
    index: usize,
    out: *mut f64,
) -> RelieveStatus {
    guard(|| {
        let w = &handle(w, "weights")?.inner;
        let (_, v) = w
            .weights
            .get_index(index)
            .ok_or_else(|| Error::Usage(format!("weight index {index} out of range")))?;
        put(out, *v, "out")
    })
}

/// Weight of the named feature.
///
/// # Safety
/// `w` is a live handle; `feature` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_weights_get(
    w: *const RelieveWeights,
    feature: *const c_char,
    out: *mut f64,
) -> RelieveStatus {
    guard(|| {
        let w = &handle(w, "weights")?.inner;
        let name = str_arg(feature, "feature")?;
        let v = w.get(name).ok_or_else(|| Error::UnknownFeature(name.to_string()))?;
        put(out, v, "out")
    })
}

/// The full result (algorithm, weights, parameters, notes) as JSON.
///
/// # Safety
/// `w` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_weights_to_json(
    w: *const RelieveWeights,
    out: *mut *mut c_char,
) -> RelieveStatus {
    guard(|| {
        let w = &handle(w, "weights")?.inner;
        put(out, owned_string(&serde_json::to_string(w)?), "out")
    })
}

/// Separability, usability, minimality and completeness of `w`.
///
/// # Safety
/// Handles are live; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_criteria(
    w: *const RelieveWeights,
    truth: *const RelieveTruth,
    out: *mut RelieveCriteria,
) -> RelieveStatus {
    guard(|| {
        let r = criteria(&handle(w, "weights")?.inner, &handle(truth, "truth")?.inner)?;
        let c = RelieveCriteria {
            separability: r.separability,
            usability: r.usability,
            minimality: r.minimality,
            completeness: r.completeness,
        };
        put(out, c, "out")
    })
}

/// Redundancy level of `feature` among the comma-separated `universe`
/// (features and/or the class; NULL for every column). `as_printed` maximizes
/// the discrepancy instead of minimizing it. `out_subset`, if not NULL,
/// receives the best subset as an owned comma-separated string.
///
/// # Safety
/// `d` is a live handle; strings are NULL or NUL-terminated; `out_level` is
/// writable; `out_subset` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn relieve_redundancy_level(
    d: *const RelieveDataset,
    feature: *const c_char,
    universe: *const c_char,
    as_printed: bool,
    out_level: *mut f64,
    out_subset: *mut *mut c_char,
) -> RelieveStatus {
    guard(|| {
        let d = &handle(d, "dataset")?.inner;
        let feature = str_arg(feature, "feature")?;
        let universe: Option<Vec<&str>> =
            opt_str_arg(universe, "universe")?.map(|u| u.split(',').map(str::trim).collect());
        let mut vars: Vec<&str> = d.feature_names().collect();
        vars.push(d.class_name());
        let pdm = EmpiricalPDM::from_dataset(d, &vars)?;
        let opts = RedundancyOptions {
            optimum: if as_printed { Optimum::AsPrinted } else { Optimum::Min },
            ..RedundancyOptions::default()
        };
        let r = redundancy_level(&pdm, feature, universe.as_deref(), &opts)?;
        put(out_level, r.level, "out_level")?;
        if !out_subset.is_null() {
            out_subset.write(owned_string(&r.best_subset.join(",")));
        }
        Ok(())
    })
}
