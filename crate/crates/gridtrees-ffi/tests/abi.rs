//! Exercises the C ABI from Rust: handle lifecycle, status codes, string
//! ownership, and value correctness against the published fractions.

use gridtrees_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

unsafe fn take_string(raw: *mut c_char) -> String {
    assert!(!raw.is_null());
    let value = CStr::from_ptr(raw).to_str().unwrap().to_owned();
    gt_string_free(raw);
    value
}

#[test]
fn grid_lifecycle_and_counts() {
    unsafe {
        let mut grid: *mut GtGrid = ptr::null_mut();
        assert_eq!(gt_grid_new(5, &mut grid), GtStatus::Ok);
        assert!(!grid.is_null());
        assert_eq!(gt_grid_vertex_count(grid), 10);
        assert_eq!(gt_grid_edge_count(grid), 13);
        gt_grid_free(grid);
        gt_grid_free(ptr::null_mut());
    }
}

#[test]
fn zero_columns_is_invalid() {
    unsafe {
        let mut grid: *mut GtGrid = ptr::null_mut();
        assert_eq!(gt_grid_new(0, &mut grid), GtStatus::InvalidArgument);
        assert!(grid.is_null());
        assert_eq!(gt_grid_new(3, ptr::null_mut()), GtStatus::NullPointer);
    }
}

#[test]
fn counts_cross_the_boundary_as_decimal_strings() {
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gt_tree_count(5, &mut out), GtStatus::Ok);
        assert_eq!(take_string(out), "209");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gt_balanced_count(5, &mut out), GtStatus::Ok);
        assert_eq!(take_string(out), "111");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gt_balanced_count(0, &mut out), GtStatus::InvalidArgument);
        // large values stay exact
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gt_tree_count(40, &mut out), GtStatus::Ok);
        assert_eq!(take_string(out), "21792711940069192045616");
    }
}

#[test]
fn ust_probability_matches_published_fraction() {
    unsafe {
        let mut num: *mut c_char = ptr::null_mut();
        let mut den: *mut c_char = ptr::null_mut();
        let mut six: *mut c_char = ptr::null_mut();
        assert_eq!(
            gt_ust_probability(4, &mut num, &mut den, &mut six),
            GtStatus::Ok
        );
        assert_eq!(take_string(num), "11");
        assert_eq!(take_string(den), "14");
        assert_eq!(take_string(six), "0.785714");
    }
}

#[test]
fn limit_constants_render_exactly() {
    unsafe {
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gt_limit_constant(GtParity::Odd, 6, &mut out), GtStatus::Ok);
        assert_eq!(take_string(out), "0.525783");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(gt_limit_constant(GtParity::Even, 12, &mut out), GtStatus::Ok);
        assert_eq!(take_string(out), "0.762891711532");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            gt_limit_constant(GtParity::Even, 65, &mut out),
            GtStatus::InvalidArgument
        );
    }
}

#[test]
fn mst_exact_values_and_resource_limits() {
    unsafe {
        let mut grid: *mut GtGrid = ptr::null_mut();
        assert_eq!(gt_grid_new(4, &mut grid), GtStatus::Ok);
        let mut num: *mut c_char = ptr::null_mut();
        let mut den: *mut c_char = ptr::null_mut();
        assert_eq!(
            gt_mst_probability_exact(grid, GtMstMethod::Extensions, &mut num, &mut den),
            GtStatus::Ok
        );
        assert_eq!(take_string(num), "248");
        assert_eq!(take_string(den), "315");
        let mut num: *mut c_char = ptr::null_mut();
        let mut den: *mut c_char = ptr::null_mut();
        assert_eq!(
            gt_mst_probability_exact(grid, GtMstMethod::Bruteforce, &mut num, &mut den),
            GtStatus::Ok
        );
        assert_eq!(take_string(num), "248");
        assert_eq!(take_string(den), "315");
        gt_grid_free(grid);

        // 13 edges means 13! permutations: over the brute-force cap
        let mut big: *mut GtGrid = ptr::null_mut();
        assert_eq!(gt_grid_new(5, &mut big), GtStatus::Ok);
        let mut num: *mut c_char = ptr::null_mut();
        let mut den: *mut c_char = ptr::null_mut();
        assert_eq!(
            gt_mst_probability_exact(big, GtMstMethod::Bruteforce, &mut num, &mut den),
            GtStatus::ResourceLimit
        );
        gt_grid_free(big);
    }
}

#[test]
fn estimator_fills_the_summary_struct() {
    unsafe {
        let mut grid: *mut GtGrid = ptr::null_mut();
        assert_eq!(gt_grid_new(2, &mut grid), GtStatus::Ok);
        let mut summary = GtMonteCarloSummary {
            n: 0,
            distribution: GtDistribution::Ust,
            samples: 0,
            successes: 0,
            estimate: 0.0,
            std_error: 0.0,
            ci95_low: 0.0,
            ci95_high: 0.0,
            seed: 0,
        };
        assert_eq!(
            gt_estimate_balance_probability(grid, GtDistribution::Ust, 500, 9, &mut summary),
            GtStatus::Ok
        );
        assert_eq!(summary.n, 2);
        assert_eq!(summary.samples, 500);
        assert_eq!(summary.successes, 500);
        assert_eq!(summary.estimate, 1.0);
        assert_eq!(summary.seed, 9);
        assert_eq!(
            gt_estimate_balance_probability(grid, GtDistribution::Ust, 0, 9, &mut summary),
            GtStatus::InvalidArgument
        );
        gt_grid_free(grid);
    }
}

#[test]
fn sampled_trees_round_trip_through_balance_query() {
    unsafe {
        let mut grid: *mut GtGrid = ptr::null_mut();
        assert_eq!(gt_grid_new(6, &mut grid), GtStatus::Ok);
        let mut edges = [0u32; 11];
        let mut written = 0usize;
        for index in 0..20u64 {
            assert_eq!(
                gt_sample_tree(
                    grid,
                    GtDistribution::Mst,
                    77,
                    index,
                    edges.as_mut_ptr(),
                    edges.len(),
                    &mut written,
                ),
                GtStatus::Ok
            );
            assert_eq!(written, 11);
            let mut balanced = false;
            assert_eq!(
                gt_tree_is_balanced(grid, edges.as_ptr(), written, &mut balanced),
                GtStatus::Ok
            );
        }
        // identical (seed, index) draws are identical
        let mut again = [0u32; 11];
        assert_eq!(
            gt_sample_tree(
                grid,
                GtDistribution::Mst,
                77,
                5,
                again.as_mut_ptr(),
                again.len(),
                &mut written,
            ),
            GtStatus::Ok
        );
        let mut first = [0u32; 11];
        assert_eq!(
            gt_sample_tree(
                grid,
                GtDistribution::Mst,
                77,
                5,
                first.as_mut_ptr(),
                first.len(),
                &mut written,
            ),
            GtStatus::Ok
        );
        assert_eq!(first, again);
        // undersized buffer
        assert_eq!(
            gt_sample_tree(
                grid,
                GtDistribution::Mst,
                77,
                0,
                edges.as_mut_ptr(),
                3,
                &mut written,
            ),
            GtStatus::InvalidArgument
        );
        // a non-tree edge set is rejected
        let cycle = [0u32, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10];
        let mut balanced = false;
        let status = gt_tree_is_balanced(grid, cycle.as_ptr(), 4, &mut balanced);
        assert_eq!(status, GtStatus::InvalidArgument);
        gt_grid_free(grid);
    }
}

#[test]
fn pvalue_crosses_the_boundary() {
    unsafe {
        let num = CString::new("1").unwrap();
        let den = CString::new("2").unwrap();
        let mut out = 0.0f64;
        assert_eq!(
            gt_binomial_log10_pvalue(1000, 1000, num.as_ptr(), den.as_ptr(), GtTail::Greater, &mut out),
            GtStatus::Ok
        );
        assert!((out + 1000.0 * 2f64.log10()).abs() < 1e-6, "{out}");
        let zero = CString::new("0").unwrap();
        assert_eq!(
            gt_binomial_log10_pvalue(1, 2, zero.as_ptr(), den.as_ptr(), GtTail::Greater, &mut out),
            GtStatus::InvalidArgument
        );
        let junk = CString::new("not-a-number").unwrap();
        assert_eq!(
            gt_binomial_log10_pvalue(1, 2, junk.as_ptr(), den.as_ptr(), GtTail::Less, &mut out),
            GtStatus::InvalidArgument
        );
    }
}

#[test]
fn version_is_a_static_string() {
    let version = unsafe { CStr::from_ptr(gt_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
