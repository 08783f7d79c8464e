//! Compiles and runs a C program against the generated header and the
//! static library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_SOURCE: &str = r#"
#include "gridtrees.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    GtGrid *grid = NULL;
    if (gt_grid_new(5, &grid) != GT_STATUS_OK) return 1;
    if (gt_grid_vertex_count(grid) != 10) return 2;
    if (gt_grid_edge_count(grid) != 13) return 3;

    char *count = NULL;
    if (gt_tree_count(5, &count) != GT_STATUS_OK) return 4;
    if (strcmp(count, "209") != 0) return 5;
    gt_string_free(count);

    char *num = NULL, *den = NULL, *six = NULL;
    if (gt_ust_probability(5, &num, &den, &six) != GT_STATUS_OK) return 6;
    if (strcmp(num, "111") != 0 || strcmp(den, "209") != 0) return 7;
    if (strcmp(six, "0.531100") != 0) return 8;
    gt_string_free(num); gt_string_free(den); gt_string_free(six);

    if (gt_mst_probability_exact(grid, GT_MST_METHOD_EXTENSIONS, &num, &den) != GT_STATUS_OK)
        return 9;
    if (strcmp(num, "70052") != 0 || strcmp(den, "135135") != 0) return 10;
    gt_string_free(num); gt_string_free(den);

    struct GtMonteCarloSummary summary;
    if (gt_estimate_balance_probability(grid, GT_DISTRIBUTION_UST, 2000, 7, &summary)
        != GT_STATUS_OK) return 11;
    if (summary.samples != 2000 || summary.n != 5) return 12;
    if (!(summary.estimate > 0.40 && summary.estimate < 0.65)) return 13;

    uint32_t edges[16];
    uintptr_t written = 0;
    if (gt_sample_tree(grid, GT_DISTRIBUTION_MST, 3, 0, edges, 16, &written) != GT_STATUS_OK)
        return 14;
    if (written != 9) return 15;
    bool balanced = false;
    if (gt_tree_is_balanced(grid, edges, written, &balanced) != GT_STATUS_OK) return 16;

    double log10_p = 0.0;
    if (gt_binomial_log10_pvalue(1000, 1000, "1", "2", GT_TAIL_GREATER, &log10_p)
        != GT_STATUS_OK) return 17;
    if (!(log10_p < -300.0 && log10_p > -302.0)) return 18;

    char *limit = NULL;
    if (gt_limit_constant(GT_PARITY_EVEN, 6, &limit) != GT_STATUS_OK) return 19;
    if (strcmp(limit, "0.762892") != 0) return 20;
    gt_string_free(limit);

    GtGrid *bad = NULL;
    if (gt_grid_new(0, &bad) != GT_STATUS_INVALID_ARGUMENT) return 21;

    gt_grid_free(grid);
    printf("c abi ok\n");
    return 0;
}
"#;

fn compiler() -> Option<&'static str> {
    for candidate in ["cc", "gcc", "clang"] {
        if Command::new(candidate)
            .arg("--version")
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false)
        {
            return Some(candidate);
        }
    }
    None
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler on PATH; skipping the C link test");
        return;
    };

    // target/<profile>/deps/this_test -> target/<profile>
    let mut profile_dir = std::env::current_exe().expect("test binary path");
    profile_dir.pop();
    if profile_dir.ends_with("deps") {
        profile_dir.pop();
    }

    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    let static_lib = profile_dir.join("libgridtrees_ffi.a");
    assert!(
        static_lib.exists(),
        "static library missing at {}",
        static_lib.display()
    );

    let work_dir = profile_dir.join("c-header-test");
    std::fs::create_dir_all(&work_dir).expect("create work dir");
    let source_path = work_dir.join("smoke.c");
    std::fs::write(&source_path, C_SOURCE).expect("write C source");
    let binary_path = work_dir.join("smoke");

    let compile = Command::new(cc)
        .arg(&source_path)
        .arg(&static_lib)
        .arg("-I")
        .arg(&include_dir)
        .arg("-o")
        .arg(&binary_path)
        .args(["-lpthread", "-ldl", "-lm"])
        .output()
        .expect("compiler runs");
    assert!(
        compile.status.success(),
        "compile failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&binary_path).output().expect("smoke test runs");
    assert!(
        run.status.success(),
        "smoke test exited {:?}:\n{}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "c abi ok\n");
}
