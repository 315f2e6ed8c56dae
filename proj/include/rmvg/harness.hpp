#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rmvg/esn.hpp"
#include "rmvg/memory_measures.hpp"
#include "rmvg/signals.hpp"

namespace rmvg {

/// Everything a sweep needs. Grids must be non-empty and strictly
/// increasing; trials >= 1. `measures` selects what gets computed per run
/// (empty set = everything); recognized tokens differ between the accuracy
/// sweep (h_dg_b, h_cl_b, h_bc_b, h_cc_b, h_dg_w, h_cl_w, h_bc_w, h_cc_w,
/// aeo, imi, lambda) and the memory sweep (mc, delta_ts, delta_dg,
/// delta_and). threads = 0 defers to RMVG_THREADS, then to the hardware.
struct SweepConfig {
    TaskSpec task;
    std::vector<double> rho_grid;
    std::vector<double> omega_grid;
    int trials = 5;

    int n_r = 100;
    double sparsity = 0.25;
    double reg = 0.05;
    int washout = 100;
    int t_max = 2600;
    int bins = 50;

    int lag_min = 1;
    int lag_max = 40;
    std::vector<DelayWindow> windows = {{5, 10}, {10, 15}, {15, 20}, {20, 25}};

    std::set<std::string> measures;
    std::uint64_t base_seed = 1;
    int threads = 0;
};

/// Realize a task as an aligned input/target pair of `length` samples. For
/// sin, mg and mso the target is the input tau_f steps ahead (the generator
/// runs long enough to cover the shift); narma and poly come aligned from
/// their generators; noise has an empty target.
TaskData realize_task(const TaskSpec& spec, int length, std::uint64_t seed);

/// Pearson r with a two-sided p-value from the t distribution on n-2
/// degrees of freedom. Not defined (defined = false, r = p = NaN) when
/// fewer than 3 samples or either side is constant.
struct Correlation {
    double r = 0.0;
    double p = 0.0;
    int n = 0;
    bool defined = false;
};

Correlation manifold_correlation(std::span<const double> a, std::span<const double> b);

/// One labeled row of a correlation report.
struct CorrelationRow {
    std::string measure;
    std::string mode;  // binary/weighted, a lag window, or "-"
    Correlation corr;
};

// Column layout shared by raw rows, cell means and heatmaps.
enum AccuracyColumn : int {
    acc_gamma = 0,
    acc_lambda,
    acc_h_dg_b,
    acc_h_cl_b,
    acc_h_bc_b,
    acc_h_cc_b,
    acc_h_dg_w,
    acc_h_cl_w,
    acc_h_bc_w,
    acc_h_cc_w,
    acc_aeo,
    acc_imi,
    kAccuracyColumns
};
extern const std::array<const char*, kAccuracyColumns> kAccuracyColumnName;

struct AccuracyRun {
    int k = 0, j = 0, trial = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    std::array<double, kAccuracyColumns> vals{};  // NaN where not computed
};

struct AccuracySweepResult {
    SweepConfig cfg;
    std::vector<AccuracyRun> runs;  // ordered (k, j, trial)
    // Per grid cell, index k * |omega_grid| + j:
    std::vector<std::array<double, kAccuracyColumns>> cell_mean;
    std::vector<int> cell_runs;  // successful trials behind each mean
    std::vector<CorrelationRow> correlations;  // each measure vs gamma
};

AccuracySweepResult run_accuracy_sweep(const SweepConfig& cfg);

// Per-window delta columns of the memory sweep.
enum DeltaColumn : int {
    mem_delta_ts_pc = 0,
    mem_delta_ts_sc,
    mem_delta_ts_mi,
    mem_delta_dg_pc,
    mem_delta_dg_sc,
    mem_delta_dg_mi,
    mem_delta_and,
    kDeltaColumns
};
extern const std::array<const char*, kDeltaColumns> kDeltaColumnName;

struct MemoryRun {
    int k = 0, trial = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double mc = 0.0;                // over the cfg lag range
    std::vector<double> window_mc;  // per cfg window, over that window's lags
    std::vector<std::array<double, kDeltaColumns>> windows;  // per cfg window
};

struct MemorySweepResult {
    SweepConfig cfg;
    std::vector<MemoryRun> runs;  // ordered (k, trial)
    std::vector<double> mc_mean;  // per rho index
    std::vector<int> cell_runs;
    // Index k * |windows| + w:
    std::vector<double> window_mc_mean;
    std::vector<std::array<double, kDeltaColumns>> window_mean;
    std::vector<CorrelationRow> correlations;  // delta series vs window MC
};

/// Memory-capacity protocol: noise input, one omega value, MC plus the
/// delay-agreement measures per window, averaged over trials per rho. Each
/// window also gets its own capacity, summed over just the window's lag
/// range; a window's delta series is correlated against that capacity, so
/// both sides of every correlation probe the same depth of memory.
MemorySweepResult run_memory_sweep(const SweepConfig& cfg);

/// Find a correlation row; throws std::invalid_argument if absent.
const Correlation& correlation_for(const std::vector<CorrelationRow>& rows,
                                   const std::string& measure, const std::string& mode);

/// Write accuracy_raw.csv, accuracy_manifold.csv, accuracy_correlation.csv
/// (and per-measure PPM heatmaps when asked) under out_dir, creating it if
/// needed. Pure function of the results: re-running writes identical bytes.
void write_accuracy_report(const AccuracySweepResult& res, const std::string& out_dir,
                           bool heatmaps = false);

/// Same for memory_raw.csv, memory_mean.csv, memory_correlation.csv.
void write_memory_report(const MemorySweepResult& res, const std::string& out_dir);

/// "taua:taub", the CLI spelling of a lag window.
std::string window_name(const DelayWindow& w);

/// Parse "20:15" (tau_a:tau_b). Throws std::invalid_argument on bad input.
DelayWindow parse_window(const std::string& text);

}  // namespace rmvg
