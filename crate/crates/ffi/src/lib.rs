//! C ABI over `linkrank`.
//!
//! All objects are opaque handles created and destroyed through this API.
//! Every fallible call returns an [`LrStatus`]; on failure the message is
//! available from [`lr_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufReader;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use linkrank::graph::read_edge_list;
use linkrank::{
    blend_reserved, buyer_seller, cosine, hits, hits_accelerated, ingest_edge_list, pagerank, spearman,
    traderank, BlendInput, EdgeRow, Error, Mode, Network, RankResult, RunConfig,
};

/// Status codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Config = 4,
    Parse = 5,
    InvalidWeight = 6,
    MissingLabel = 7,
    WrongMode = 8,
    DimensionMismatch = 9,
    NonFinite = 10,
    EmptyNetwork = 11,
    ZeroVector = 12,
    InsufficientData = 13,
    Io = 14,
    BufferTooSmall = 15,
    Panic = 16,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrMode {
    Www = 0,
    Trading = 1,
}

impl From<LrMode> for Mode {
    fn from(m: LrMode) -> Self {
        match m {
            LrMode::Www => Mode::Www,
            LrMode::Trading => Mode::Trading,
        }
    }
}

/// Ranking algorithms. Two-sided algorithms fill both outputs of
/// [`lr_rank`]: HITS gives (authority, hub), buyer/seller gives (buyer, seller).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrAlgorithm {
    PageRank = 0,
    Hits = 1,
    HitsAccelerated = 2,
    TradeRank = 3,
    BuyerSeller = 4,
}

/// Opaque network handle.
pub struct LrNetwork(Network);

/// Opaque configuration handle.
pub struct LrConfig(RunConfig);

/// Opaque ranking handle.
pub struct LrRanking(RankResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> LrStatus {
    match err {
        Error::NegativeWeight { .. } | Error::NonUnitWeight { .. } | Error::NegativeEntry { .. } => {
            LrStatus::InvalidWeight
        }
        Error::MissingLabel { .. } => LrStatus::MissingLabel,
        Error::Parse { .. } => LrStatus::Parse,
        Error::Config(_) => LrStatus::Config,
        Error::InvalidArgument(_) => LrStatus::InvalidArgument,
        Error::NonFinite { .. } => LrStatus::NonFinite,
        Error::WrongMode { .. } => LrStatus::WrongMode,
        Error::DimensionMismatch { .. } => LrStatus::DimensionMismatch,
        Error::ZeroVector => LrStatus::ZeroVector,
        Error::EmptyNetwork => LrStatus::EmptyNetwork,
        Error::InsufficientData(_) => LrStatus::InsufficientData,
        Error::Io { .. } => LrStatus::Io,
    }
}

struct Failure(LrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LrStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            LrStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(LrStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(LrStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn lr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Build a network from parallel arrays of `n_edges` edges. `weights` may be
/// null (all weights 1); `resources` may be null.
///
/// # Safety
/// Every non-null array must hold `n_edges` valid elements, and strings must be
/// NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn lr_network_from_edges(
    sources: *const *const c_char,
    targets: *const *const c_char,
    weights: *const f64,
    resources: *const *const c_char,
    n_edges: usize,
    mode: LrMode,
    out: *mut *mut LrNetwork,
) -> LrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let s = slice_arg(sources, n_edges, "sources")?;
        let t = slice_arg(targets, n_edges, "targets")?;
        let w = if weights.is_null() { None } else { Some(slice_arg(weights, n_edges, "weights")?) };
        let r = if resources.is_null() { None } else { Some(slice_arg(resources, n_edges, "resources")?) };
        let mut rows = Vec::with_capacity(n_edges);
        for i in 0..n_edges {
            let mut row = EdgeRow::new(str_arg(s[i], "source")?, str_arg(t[i], "target")?, 1.0);
            row.weight = w.map(|w| w[i]);
            if let Some(r) = r {
                if !r[i].is_null() {
                    row.resource = Some(str_arg(r[i], "resource")?.to_owned());
                }
            }
            rows.push(row);
        }
        *out = boxed(LrNetwork(ingest_edge_list(&rows, mode.into())?));
        Ok(())
    })
}

/// Read an edge-list file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lr_network_read_file(
    path: *const c_char,
    mode: LrMode,
    out: *mut *mut LrNetwork,
) -> LrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let path = str_arg(path, "path")?;
        let file = File::open(path).map_err(|e| Failure(LrStatus::Io, format!("{path}: {e}")))?;
        let rows = read_edge_list(BufReader::new(file))?;
        *out = boxed(LrNetwork(ingest_edge_list(&rows, mode.into())?));
        Ok(())
    })
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_network_vertex_count(net: *const LrNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.vertex_count())
}

/// Number of distinct non-loop links, or 0 for a null handle.
///
/// # Safety
/// `net` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_network_link_count(net: *const LrNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.0.link_count())
}

/// Copy the id of vertex `index` into `buf` (NUL-terminated). `needed`, if
/// non-null, receives the buffer size required including the terminator.
///
/// # Safety
/// `buf` must hold `buf_len` bytes or be null with `buf_len == 0`.
#[no_mangle]
pub unsafe extern "C" fn lr_network_vertex_id(
    net: *const LrNetwork,
    index: usize,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> LrStatus {
    guard(|| {
        let net = &handle(net, "net")?.0;
        let id = net.ids().get(index).ok_or_else(|| {
            Failure(
                LrStatus::InvalidArgument,
                format!("vertex index {index} out of range for {} vertices", net.vertex_count()),
            )
        })?;
        let bytes = id.as_bytes();
        if let Some(n) = needed.as_mut() {
            *n = bytes.len() + 1;
        }
        if buf_len < bytes.len() + 1 {
            return Err(Failure(LrStatus::BufferTooSmall, format!("need {} bytes", bytes.len() + 1)));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(bytes.as_ptr(), buf.cast::<u8>(), bytes.len());
        *buf.add(bytes.len()) = 0;
        Ok(())
    })
}

/// # Safety
/// `net` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_network_free(net: *mut LrNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// New configuration with default settings.
#[no_mangle]
pub extern "C" fn lr_config_new() -> *mut LrConfig {
    boxed(LrConfig(RunConfig::default()))
}

/// Set one configuration key (alpha, beta, zeta, c, tolerance,
/// max_iterations, seed, degree_weighting). The configuration is unchanged on
/// failure.
///
/// # Safety
/// `cfg` must be a live handle; `key` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn lr_config_set(
    cfg: *mut LrConfig,
    key: *const c_char,
    value: *const c_char,
) -> LrStatus {
    guard(|| {
        let cfg = out_arg(cfg, "cfg")?;
        let key = str_arg(key, "key")?;
        let value = str_arg(value, "value")?;
        cfg.0 = cfg.0.to_builder().set(key, value)?.build()?;
        Ok(())
    })
}

/// # Safety
/// `cfg` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_config_free(cfg: *mut LrConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Run `algo` on `net`. `cfg` may be null for defaults. `secondary` receives
/// the second ranking of two-sided algorithms and may be null if unwanted; it
/// is set to null for one-sided ones.
///
/// # Safety
/// Handles must be live; `primary` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lr_rank(
    net: *const LrNetwork,
    cfg: *const LrConfig,
    algo: LrAlgorithm,
    primary: *mut *mut LrRanking,
    secondary: *mut *mut LrRanking,
) -> LrStatus {
    guard(|| {
        let primary = out_arg(primary, "primary")?;
        *primary = ptr::null_mut();
        let mut secondary = secondary.as_mut();
        if let Some(s) = secondary.as_deref_mut() {
            *s = ptr::null_mut();
        }
        let net = &handle(net, "net")?.0;
        let default = RunConfig::default();
        let cfg = cfg.as_ref().map_or(&default, |c| &c.0);
        let (a, b) = match algo {
            LrAlgorithm::PageRank => (pagerank(net, cfg)?, None),
            LrAlgorithm::Hits => {
                let r = hits(net, cfg)?;
                (r.authority, Some(r.hub))
            }
            LrAlgorithm::HitsAccelerated => {
                let r = hits_accelerated(net, cfg)?;
                (r.authority, Some(r.hub))
            }
            LrAlgorithm::TradeRank => (traderank(net, cfg)?, None),
            LrAlgorithm::BuyerSeller => {
                let (buyer, seller) = buyer_seller(net, cfg)?;
                (buyer, Some(seller))
            }
        };
        *primary = boxed(LrRanking(a));
        if let (Some(s), Some(b)) = (secondary, b) {
            *s = boxed(LrRanking(b));
        }
        Ok(())
    })
}

/// Blend a converged ranking with reserved amounts:
/// `c·scores + (1−c)·reserved/Σreserved`.
///
/// # Safety
/// `rank` must be live, `reserved` must hold `len` values, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_blend(
    rank: *const LrRanking,
    reserved: *const f64,
    len: usize,
    c: f64,
    out: *mut *mut LrRanking,
) -> LrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let rank = &handle(rank, "rank")?.0;
        let u = slice_arg(reserved, len, "reserved")?.to_vec();
        let blended = blend_reserved(rank, &BlendInput::new(u, c)?)?;
        *out = boxed(LrRanking(blended));
        Ok(())
    })
}

/// Number of scores, or 0 for a null handle.
///
/// # Safety
/// `rank` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_len(rank: *const LrRanking) -> usize {
    rank.as_ref().map_or(0, |r| r.0.scores.len())
}

/// Copy the scores into `out`, which must hold at least `len` values.
///
/// # Safety
/// `out` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_scores(rank: *const LrRanking, out: *mut f64, len: usize) -> LrStatus {
    guard(|| {
        let scores = &handle(rank, "rank")?.0.scores;
        if len < scores.len() {
            return Err(Failure(LrStatus::BufferTooSmall, format!("need {} values", scores.len())));
        }
        if scores.is_empty() {
            return Ok(());
        }
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(scores.as_ptr(), out, scores.len());
        Ok(())
    })
}

/// Iterations performed, or 0 for a null handle.
///
/// # Safety
/// `rank` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_iterations(rank: *const LrRanking) -> usize {
    rank.as_ref().map_or(0, |r| r.0.iterations)
}

/// Whether the residual fell below the tolerance.
///
/// # Safety
/// `rank` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_converged(rank: *const LrRanking) -> bool {
    rank.as_ref().is_some_and(|r| r.0.converged)
}

/// Last residual, NaN if none was recorded.
///
/// # Safety
/// `rank` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_final_residual(rank: *const LrRanking) -> f64 {
    rank.as_ref().and_then(|r| r.0.final_residual()).unwrap_or(f64::NAN)
}

/// # Safety
/// `rank` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lr_ranking_free(rank: *mut LrRanking) {
    if !rank.is_null() {
        drop(Box::from_raw(rank));
    }
}

/// Cosine similarity of two vectors of length `len`.
///
/// # Safety
/// `x` and `y` must hold `len` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lr_cosine(x: *const f64, y: *const f64, len: usize, out: *mut f64) -> LrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = cosine(slice_arg(x, len, "x")?, slice_arg(y, len, "y")?)?;
        Ok(())
    })
}

/// Spearman rank correlation of two score vectors of length `len`.
///
/// # Safety
/// `x` and `y` must hold `len` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lr_spearman(x: *const f64, y: *const f64, len: usize, out: *mut f64) -> LrStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = spearman(slice_arg(x, len, "x")?, slice_arg(y, len, "y")?)?;
        Ok(())
    })
}
