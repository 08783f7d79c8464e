//! C ABI for the gridtrees engine.
//!
//! Conventions:
//! - Every fallible function returns a [`GtStatus`]; outputs go through
//!   out-pointers that are written only on `GT_STATUS_OK`.
//! - Grids are opaque handles created by [`gt_grid_new`] and released by
//!   [`gt_grid_free`].
//! - Exact values cross the boundary as decimal strings allocated by this
//!   library; release them with [`gt_string_free`].

use gridtrees::grid::{GridGraph, SpanningTree, Topology};
use gridtrees::mst_exact::{
    mst_balance_probability_bruteforce, mst_balance_probability_exact,
};
use gridtrees::quadratic::Quadratic;
use gridtrees::sampling::{
    binomial_log10_pvalue, estimate_balance_probability, Distribution, RandomSource, Tail,
    TreeSampler,
};
use gridtrees::sequences::{
    balanced_count, limit_constant, tree_count, ust_balance_probability, Parity,
};
use gridtrees::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::ffi::{c_char, CStr, CString};
use std::str::FromStr;

/// Result codes mirrored into the generated header.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtStatus {
    /// Success.
    Ok = 0,
    /// A caller-supplied argument violates a precondition.
    InvalidArgument = 1,
    /// A configured resource cap was exceeded.
    ResourceLimit = 2,
    /// An internal exactness invariant failed.
    Computation = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
}

impl From<&Error> for GtStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::InvalidArgument(_) => GtStatus::InvalidArgument,
            Error::ResourceLimit(_) => GtStatus::ResourceLimit,
            Error::Computation(_) => GtStatus::Computation,
        }
    }
}

/// Spanning-tree distribution selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtDistribution {
    Ust = 0,
    Mst = 1,
}

impl From<GtDistribution> for Distribution {
    fn from(value: GtDistribution) -> Self {
        match value {
            GtDistribution::Ust => Distribution::Ust,
            GtDistribution::Mst => Distribution::Mst,
        }
    }
}

/// Column-count parity selector for the limit constants.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtParity {
    Odd = 0,
    Even = 1,
}

/// Binomial tail selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtTail {
    Greater = 0,
    Less = 1,
}

/// Method selector for exact MST probabilities.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtMstMethod {
    Extensions = 0,
    Bruteforce = 1,
}

/// Monte Carlo estimate, mirrored from the core summary type.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GtMonteCarloSummary {
    pub n: u32,
    pub distribution: GtDistribution,
    pub samples: u64,
    pub successes: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub seed: u64,
}

/// Opaque grid handle.
pub struct GtGrid {
    grid: GridGraph,
}

fn string_out(value: String, out: *mut *mut c_char) -> GtStatus {
    match CString::new(value) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            GtStatus::Ok
        }
        Err(_) => GtStatus::Computation,
    }
}

/// Creates a 2-by-`columns` grid. On success writes a handle that must be
/// released with `gt_grid_free`.
///
/// # Safety
/// `out` must be a valid pointer to a `GtGrid*` slot.
#[no_mangle]
pub unsafe extern "C" fn gt_grid_new(columns: u32, out: *mut *mut GtGrid) -> GtStatus {
    if out.is_null() {
        return GtStatus::NullPointer;
    }
    match GridGraph::new(columns as usize) {
        Ok(grid) => {
            *out = Box::into_raw(Box::new(GtGrid { grid }));
            GtStatus::Ok
        }
        Err(e) => GtStatus::from(&e),
    }
}

/// Releases a grid handle. Null is a no-op.
///
/// # Safety
/// `grid` must be null or a pointer previously returned by `gt_grid_new`
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn gt_grid_free(grid: *mut GtGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Number of vertices of the grid (2n). Returns 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle from `gt_grid_new`.
#[no_mangle]
pub unsafe extern "C" fn gt_grid_vertex_count(grid: *const GtGrid) -> u32 {
    grid.as_ref().map_or(0, |g| g.grid.vertex_count() as u32)
}

/// Number of edges of the grid (3n-2). Returns 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle from `gt_grid_new`.
#[no_mangle]
pub unsafe extern "C" fn gt_grid_edge_count(grid: *const GtGrid) -> u32 {
    grid.as_ref().map_or(0, |g| g.grid.edge_count() as u32)
}

/// Releases a string allocated by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string pointer previously produced by one of the
/// `gt_*` functions, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the spanning-tree count of the 2-by-n grid as a decimal string.
///
/// # Safety
/// `out` must be a valid pointer to a `char*` slot.
#[no_mangle]
pub unsafe extern "C" fn gt_tree_count(n: u32, out: *mut *mut c_char) -> GtStatus {
    if out.is_null() {
        return GtStatus::NullPointer;
    }
    string_out(tree_count(n as usize).to_string(), out)
}

/// Writes the balanced spanning-tree count as a decimal string.
/// Fails with `GT_STATUS_INVALID_ARGUMENT` when `n` is zero.
///
/// # Safety
/// `out` must be a valid pointer to a `char*` slot.
#[no_mangle]
pub unsafe extern "C" fn gt_balanced_count(n: u32, out: *mut *mut c_char) -> GtStatus {
    if out.is_null() {
        return GtStatus::NullPointer;
    }
    if n == 0 {
        return GtStatus::InvalidArgument;
    }
    string_out(balanced_count(n as usize).to_string(), out)
}

/// Writes the exact UST balance probability as reduced numerator and
/// denominator strings plus a six-decimal rendering.
///
/// # Safety
/// `out_num`, `out_den`, and `out_6dp` must be valid pointers to `char*`
/// slots.
#[no_mangle]
pub unsafe extern "C" fn gt_ust_probability(
    n: u32,
    out_num: *mut *mut c_char,
    out_den: *mut *mut c_char,
    out_6dp: *mut *mut c_char,
) -> GtStatus {
    if out_num.is_null() || out_den.is_null() || out_6dp.is_null() {
        return GtStatus::NullPointer;
    }
    if n == 0 {
        return GtStatus::InvalidArgument;
    }
    let ratio = ust_balance_probability(n as usize);
    let status = string_out(ratio.numer().to_string(), out_num);
    if status != GtStatus::Ok {
        return status;
    }
    let status = string_out(ratio.denom().to_string(), out_den);
    if status != GtStatus::Ok {
        gt_string_free(*out_num);
        return status;
    }
    let status = string_out(
        gridtrees::decimal::rational_to_decimal(&ratio, 6),
        out_6dp,
    );
    if status != GtStatus::Ok {
        gt_string_free(*out_num);
        gt_string_free(*out_den);
    }
    status
}

/// Writes one limit constant rendered to `places` decimals (at most 64).
///
/// # Safety
/// `out` must be a valid pointer to a `char*` slot.
#[no_mangle]
pub unsafe extern "C" fn gt_limit_constant(
    parity: GtParity,
    places: u32,
    out: *mut *mut c_char,
) -> GtStatus {
    if out.is_null() {
        return GtStatus::NullPointer;
    }
    if places > 64 {
        return GtStatus::InvalidArgument;
    }
    let constant: Quadratic = match parity {
        GtParity::Odd => limit_constant(Parity::Odd),
        GtParity::Even => limit_constant(Parity::Even),
    };
    string_out(constant.to_decimal(places), out)
}

/// Writes the exact MST balance probability of the grid as reduced
/// numerator and denominator strings. `GT_STATUS_RESOURCE_LIMIT` signals
/// that the grid exceeds the chosen method's cap.
///
/// # Safety
/// `grid` must be a live handle; `out_num` and `out_den` must be valid
/// pointers to `char*` slots.
#[no_mangle]
pub unsafe extern "C" fn gt_mst_probability_exact(
    grid: *const GtGrid,
    method: GtMstMethod,
    out_num: *mut *mut c_char,
    out_den: *mut *mut c_char,
) -> GtStatus {
    if grid.is_null() || out_num.is_null() || out_den.is_null() {
        return GtStatus::NullPointer;
    }
    let grid = &(*grid).grid;
    let result = match method {
        GtMstMethod::Extensions => mst_balance_probability_exact(grid),
        GtMstMethod::Bruteforce => mst_balance_probability_bruteforce(grid),
    };
    match result {
        Ok(ratio) => {
            let status = string_out(ratio.numer().to_string(), out_num);
            if status != GtStatus::Ok {
                return status;
            }
            let status = string_out(ratio.denom().to_string(), out_den);
            if status != GtStatus::Ok {
                gt_string_free(*out_num);
            }
            status
        }
        Err(e) => GtStatus::from(&e),
    }
}

/// Runs the Monte Carlo balance-probability estimator.
///
/// # Safety
/// `grid` must be a live handle; `out` must point to writable summary
/// storage.
#[no_mangle]
pub unsafe extern "C" fn gt_estimate_balance_probability(
    grid: *const GtGrid,
    distribution: GtDistribution,
    samples: u64,
    seed: u64,
    out: *mut GtMonteCarloSummary,
) -> GtStatus {
    if grid.is_null() || out.is_null() {
        return GtStatus::NullPointer;
    }
    let grid = &(*grid).grid;
    match estimate_balance_probability(grid, distribution.into(), samples, seed) {
        Ok(summary) => {
            *out = GtMonteCarloSummary {
                n: summary.n,
                distribution,
                samples: summary.samples,
                successes: summary.successes,
                estimate: summary.estimate,
                std_error: summary.std_error,
                ci95_low: summary.ci95_low,
                ci95_high: summary.ci95_high,
                seed: summary.seed,
            };
            GtStatus::Ok
        }
        Err(e) => GtStatus::from(&e),
    }
}

/// Draws the spanning tree with the given sample index and writes its
/// sorted edge ids. `edge_ids` must hold at least `vertex_count - 1` slots
/// (`capacity` says how many are available).
///
/// # Safety
/// `grid` must be a live handle; `edge_ids` must point to at least
/// `capacity` writable `uint32_t` slots; `written` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gt_sample_tree(
    grid: *const GtGrid,
    distribution: GtDistribution,
    seed: u64,
    sample_index: u64,
    edge_ids: *mut u32,
    capacity: usize,
    written: *mut usize,
) -> GtStatus {
    if grid.is_null() || edge_ids.is_null() || written.is_null() {
        return GtStatus::NullPointer;
    }
    let grid = &(*grid).grid;
    let needed = grid.vertex_count() - 1;
    if capacity < needed {
        return GtStatus::InvalidArgument;
    }
    let mut sampler = match TreeSampler::new(grid) {
        Ok(s) => s,
        Err(e) => return GtStatus::from(&e),
    };
    let mut stream = RandomSource::new(seed).stream(sample_index);
    let tree = sampler.sample(distribution.into(), &mut stream);
    let ids = tree.edge_ids();
    std::ptr::copy_nonoverlapping(ids.as_ptr(), edge_ids, ids.len());
    *written = ids.len();
    GtStatus::Ok
}

/// Reports whether the given edge set is a balanced spanning tree of the
/// grid. Fails when the edges do not form a spanning tree.
///
/// # Safety
/// `grid` must be a live handle; `edge_ids` must point to `count` readable
/// `uint32_t` values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gt_tree_is_balanced(
    grid: *const GtGrid,
    edge_ids: *const u32,
    count: usize,
    out: *mut bool,
) -> GtStatus {
    if grid.is_null() || edge_ids.is_null() || out.is_null() {
        return GtStatus::NullPointer;
    }
    let grid = &(*grid).grid;
    let ids = std::slice::from_raw_parts(edge_ids, count).to_vec();
    let tree = match SpanningTree::new(grid, ids) {
        Ok(t) => t,
        Err(e) => return GtStatus::from(&e),
    };
    match gridtrees::grid::is_balanced(grid, &tree) {
        Ok(balanced) => {
            *out = balanced;
            GtStatus::Ok
        }
        Err(e) => GtStatus::from(&e),
    }
}

/// log10 of the one-sided exact binomial tail probability. `p0_num` and
/// `p0_den` are decimal strings for the null success probability.
///
/// # Safety
/// `p0_num` and `p0_den` must be NUL-terminated strings; `out` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn gt_binomial_log10_pvalue(
    successes: u64,
    samples: u64,
    p0_num: *const c_char,
    p0_den: *const c_char,
    tail: GtTail,
    out: *mut f64,
) -> GtStatus {
    if p0_num.is_null() || p0_den.is_null() || out.is_null() {
        return GtStatus::NullPointer;
    }
    let parse = |raw: *const c_char| -> Option<BigInt> {
        BigInt::from_str(CStr::from_ptr(raw).to_str().ok()?.trim()).ok()
    };
    let (Some(num), Some(den)) = (parse(p0_num), parse(p0_den)) else {
        return GtStatus::InvalidArgument;
    };
    if den == BigInt::from(0) {
        return GtStatus::InvalidArgument;
    }
    let p0 = BigRational::new(num, den);
    let tail = match tail {
        GtTail::Greater => Tail::Greater,
        GtTail::Less => Tail::Less,
    };
    match binomial_log10_pvalue(successes, samples, &p0, tail) {
        Ok(value) => {
            *out = value;
            GtStatus::Ok
        }
        Err(e) => GtStatus::from(&e),
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn gt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
