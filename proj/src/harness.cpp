#include "rmvg/harness.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "rmvg/graph_metrics.hpp"
#include "rmvg/multiplex.hpp"
#include "rmvg/parallel.hpp"
#include "rmvg/rng.hpp"

namespace rmvg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Seed-stream tags: task realization and memory-sweep inputs must not share
// a stream with any reservoir (seeded by plain grid indices).
constexpr std::uint64_t kTaskSeedTag = 0x7461736bULL;
constexpr std::uint64_t kInputSeedTag = 0x696e7075ULL;

Signal forecast_slice(const Signal& s, int length, int shift) {
    Signal out;
    out.values.assign(s.values.begin() + shift, s.values.begin() + shift + length);
    return out;
}

}  // namespace

const std::array<const char*, kAccuracyColumns> kAccuracyColumnName = {
    "gamma",  "lambda", "h_dg_b", "h_cl_b", "h_bc_b", "h_cc_b",
    "h_dg_w", "h_cl_w", "h_bc_w", "h_cc_w", "aeo",    "imi",
};

const std::array<const char*, kDeltaColumns> kDeltaColumnName = {
    "delta_ts_pc", "delta_ts_sc", "delta_ts_mi", "delta_dg_pc",
    "delta_dg_sc", "delta_dg_mi", "delta_and",
};

TaskData realize_task(const TaskSpec& spec, int length, std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("realize_task: length must be >= 1");
    switch (spec.kind) {
        case Task::sin: {
            const Signal s = gen_sin(length + spec.tau_f, spec.psi);
            return {forecast_slice(s, length, 0), forecast_slice(s, length, spec.tau_f)};
        }
        case Task::mg: {
            const Signal s = gen_mg(length + spec.tau_f, spec.mg_tau, spec.mg_gamma,
                                    spec.mg_beta, spec.mg_x0, spec.mg_step);
            return {forecast_slice(s, length, 0), forecast_slice(s, length, spec.tau_f)};
        }
        case Task::mso: {
            const Signal s = gen_mso(length + spec.tau_f);
            return {forecast_slice(s, length, 0), forecast_slice(s, length, spec.tau_f)};
        }
        case Task::narma:
            return gen_narma(length, seed, spec.narma_r);
        case Task::poly:
            return gen_poly(length, seed, spec.poly_p, spec.poly_d);
        case Task::noise:
            return {gen_noise(length, seed, spec.noise_lo, spec.noise_hi), {}};
    }
    throw std::logic_error("realize_task: bad task kind");
}

Correlation manifold_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("manifold_correlation: shape mismatch");
    Correlation c;
    c.n = static_cast<int>(a.size());
    c.r = kNaN;
    c.p = kNaN;
    if (c.n < 3) return c;

    double r;
    try {
        r = pearson(a, b);
    } catch (const std::domain_error&) {
        return c;  // constant side: undefined, reported as such
    }
    if (!std::isfinite(r)) return c;
    r = std::clamp(r, -1.0, 1.0);

    const double dof = c.n - 2;
    const double r2 = r * r;
    double p;
    if (1.0 - r2 <= 0.0) {
        p = 0.0;
    } else {
        const double t = std::fabs(r) * std::sqrt(dof / (1.0 - r2));
        const boost::math::students_t dist(dof);
        p = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
    }
    c.r = r;
    c.p = p;
    c.defined = true;
    return c;
}

const Correlation& correlation_for(const std::vector<CorrelationRow>& rows,
                                   const std::string& measure, const std::string& mode) {
    for (const auto& row : rows)
        if (row.measure == measure && row.mode == mode) return row.corr;
    throw std::invalid_argument("correlation_for: no row " + measure + "/" + mode);
}

std::string window_name(const DelayWindow& w) {
    return std::to_string(w.tau_a) + ":" + std::to_string(w.tau_b);
}

DelayWindow parse_window(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
        throw std::invalid_argument("parse_window: expected taua:taub, got '" + text + "'");
    DelayWindow w;
    try {
        size_t used = 0;
        w.tau_a = std::stoi(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        w.tau_b = std::stoi(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_window: expected taua:taub, got '" + text + "'");
    }
    if (w.tau_b < 1 || w.tau_a <= w.tau_b)
        throw std::invalid_argument("parse_window: need tau_a > tau_b >= 1 in '" + text + "'");
    return w;
}

namespace {

void check_grid(const std::vector<double>& g, const char* name) {
    if (g.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1]))
            throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
}

void check_common(const SweepConfig& cfg) {
    check_grid(cfg.rho_grid, "rho");
    check_grid(cfg.omega_grid, "omega");
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (cfg.n_r < 1) throw std::invalid_argument("n_r must be >= 1");
    if (cfg.washout < 0) throw std::invalid_argument("washout must be >= 0");
    if (cfg.t_max <= cfg.washout + 4)
        throw std::invalid_argument("t_max leaves no usable samples after washout");
    if (cfg.bins < 1) throw std::invalid_argument("bins must be >= 1");
}

struct AccuracySelection {
    std::array<bool, kAccuracyColumns> on{};

    bool binary_needed() const {
        return on[acc_h_dg_b] || on[acc_h_cl_b] || on[acc_h_bc_b] || on[acc_h_cc_b] ||
               on[acc_aeo] || on[acc_imi];
    }
    bool weighted_needed() const {
        return on[acc_h_dg_w] || on[acc_h_cl_w] || on[acc_h_bc_w] || on[acc_h_cc_w];
    }
    bool binary_paths() const { return on[acc_h_bc_b] || on[acc_h_cc_b]; }
    bool weighted_paths() const { return on[acc_h_bc_w] || on[acc_h_cc_w]; }
};

AccuracySelection parse_accuracy_measures(const std::set<std::string>& tokens) {
    AccuracySelection sel;
    if (tokens.empty()) {
        sel.on.fill(true);
        return sel;
    }
    sel.on[acc_gamma] = true;  // the correlate target is never optional
    for (const auto& t : tokens) {
        bool known = false;
        for (int c = 0; c < kAccuracyColumns; ++c) {
            if (t == kAccuracyColumnName[static_cast<size_t>(c)]) {
                sel.on[static_cast<size_t>(c)] = true;
                known = true;
                break;
            }
        }
        if (!known) throw std::invalid_argument("unknown accuracy measure: " + t);
    }
    return sel;
}

struct MemorySelection {
    bool ts = false, dg = false, and_ = false;
};

MemorySelection parse_memory_measures(const std::set<std::string>& tokens) {
    MemorySelection sel;
    if (tokens.empty()) {
        sel.ts = sel.dg = sel.and_ = true;
        return sel;
    }
    for (const auto& t : tokens) {
        if (t == "mc") continue;  // always computed
        else if (t == "delta_ts") sel.ts = true;
        else if (t == "delta_dg") sel.dg = true;
        else if (t == "delta_and") sel.and_ = true;
        else throw std::invalid_argument("unknown memory measure: " + t);
    }
    return sel;
}

void fill_heterogeneity(const Multiplex& m, const AccuracySelection& sel, bool weighted,
                        int bins, std::array<double, kAccuracyColumns>& vals) {
    const int dg_col = weighted ? acc_h_dg_w : acc_h_dg_b;
    const int cl_col = weighted ? acc_h_cl_w : acc_h_cl_b;
    const int bc_col = weighted ? acc_h_bc_w : acc_h_bc_b;
    const int cc_col = weighted ? acc_h_cc_w : acc_h_cc_b;
    const bool paths = weighted ? sel.weighted_paths() : sel.binary_paths();

    if (paths) {
        // Betweenness and closeness share traversals, so take all four here.
        const AllHeterogeneity h = heterogeneity_all(m, bins);
        if (sel.on[static_cast<size_t>(dg_col)]) vals[static_cast<size_t>(dg_col)] = h.degree.mean;
        if (sel.on[static_cast<size_t>(cl_col)]) vals[static_cast<size_t>(cl_col)] = h.clustering.mean;
        if (sel.on[static_cast<size_t>(bc_col)]) vals[static_cast<size_t>(bc_col)] = h.betweenness.mean;
        if (sel.on[static_cast<size_t>(cc_col)]) vals[static_cast<size_t>(cc_col)] = h.closeness.mean;
    } else {
        if (sel.on[static_cast<size_t>(dg_col)])
            vals[static_cast<size_t>(dg_col)] = heterogeneity(m, VertexProperty::degree, bins).mean;
        if (sel.on[static_cast<size_t>(cl_col)])
            vals[static_cast<size_t>(cl_col)] = heterogeneity(m, VertexProperty::clustering, bins).mean;
    }
}

AccuracyRun run_accuracy_once(const SweepConfig& cfg, const AccuracySelection& sel,
                              const TaskData& task, int k, int j, int trial) {
    AccuracyRun res;
    res.k = k;
    res.j = j;
    res.trial = trial;
    res.seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(k),
                           static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(trial));
    res.vals.fill(kNaN);
    try {
        ReservoirParams p;
        p.n_r = cfg.n_r;
        p.rho = cfg.rho_grid[static_cast<size_t>(k)];
        p.omega_in = cfg.omega_grid[static_cast<size_t>(j)];
        p.sparsity = cfg.sparsity;
        p.seed = res.seed;
        const Reservoir r = init_reservoir(p);
        const StateTrajectory traj = run_reservoir(r, task.input, cfg.washout);

        const LinearReadout ro = train_readout(traj, task.input, task.target, cfg.reg);
        res.vals[acc_gamma] = evaluate_readout(ro, traj, task.input, task.target).gamma;
        if (sel.on[acc_lambda]) res.vals[acc_lambda] = jacobian_lambda(traj, r.w_rr);

        if (sel.binary_needed()) {
            const Multiplex mb = build_multiplex(traj, GraphMode::binary);
            fill_heterogeneity(mb, sel, false, cfg.bins, res.vals);
            if (sel.on[acc_aeo]) res.vals[acc_aeo] = aeo(mb);
            if (sel.on[acc_imi]) res.vals[acc_imi] = avg_imi(mb);
        }
        if (sel.weighted_needed()) {
            const Multiplex mw = build_multiplex(traj, GraphMode::weighted);
            fill_heterogeneity(mw, sel, true, cfg.bins, res.vals);
        }
        res.ok = true;
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    return res;
}

void warn_failures(const char* sweep, const std::vector<std::string>& lines) {
    for (const auto& l : lines) std::cerr << "warning: " << sweep << " " << l << "\n";
}

}  // namespace

AccuracySweepResult run_accuracy_sweep(const SweepConfig& cfg) {
    check_common(cfg);
    if (cfg.task.kind == Task::noise)
        throw std::invalid_argument("accuracy sweep: noise is not a supervised task");
    const AccuracySelection sel = parse_accuracy_measures(cfg.measures);

    const TaskData task = realize_task(cfg.task, cfg.t_max, derive_seed(cfg.base_seed, kTaskSeedTag));

    const int K = static_cast<int>(cfg.rho_grid.size());
    const int J = static_cast<int>(cfg.omega_grid.size());
    const int T = cfg.trials;
    const int total = K * J * T;

    AccuracySweepResult res;
    res.cfg = cfg;
    res.runs.resize(static_cast<size_t>(total));
    parallel_for(total, thread_budget(cfg.threads), [&](int idx) {
        const int k = idx / (J * T);
        const int j = (idx / T) % J;
        const int t = idx % T;
        res.runs[static_cast<size_t>(idx)] = run_accuracy_once(cfg, sel, task, k, j, t);
    });

    res.cell_mean.assign(static_cast<size_t>(K * J), {});
    res.cell_runs.assign(static_cast<size_t>(K * J), 0);
    std::vector<std::string> warnings;
    for (int cell = 0; cell < K * J; ++cell) {
        auto& mean = res.cell_mean[static_cast<size_t>(cell)];
        mean.fill(0.0);
        std::string last_error;
        for (int t = 0; t < T; ++t) {
            const AccuracyRun& run = res.runs[static_cast<size_t>(cell * T + t)];
            if (!run.ok) {
                warnings.push_back("run k=" + std::to_string(run.k) + " j=" + std::to_string(run.j) +
                                   " trial=" + std::to_string(run.trial) + " failed: " + run.error);
                last_error = run.error;
                continue;
            }
            for (int c = 0; c < kAccuracyColumns; ++c)
                mean[static_cast<size_t>(c)] += run.vals[static_cast<size_t>(c)];
            ++res.cell_runs[static_cast<size_t>(cell)];
        }
        const int n_ok = res.cell_runs[static_cast<size_t>(cell)];
        if (n_ok == 0)
            throw std::runtime_error("accuracy sweep: cell k=" + std::to_string(cell / J) +
                                     " j=" + std::to_string(cell % J) +
                                     " failed every trial; last error: " + last_error);
        for (int c = 0; c < kAccuracyColumns; ++c) mean[static_cast<size_t>(c)] /= n_ok;
    }
    warn_failures("accuracy", warnings);

    std::vector<double> gamma_series(static_cast<size_t>(K * J));
    for (int cell = 0; cell < K * J; ++cell)
        gamma_series[static_cast<size_t>(cell)] = res.cell_mean[static_cast<size_t>(cell)][acc_gamma];
    for (int c = 0; c < kAccuracyColumns; ++c) {
        if (c == acc_gamma || !sel.on[static_cast<size_t>(c)]) continue;
        std::vector<double> series(static_cast<size_t>(K * J));
        for (int cell = 0; cell < K * J; ++cell)
            series[static_cast<size_t>(cell)] = res.cell_mean[static_cast<size_t>(cell)][static_cast<size_t>(c)];

        CorrelationRow row;
        const std::string name = kAccuracyColumnName[static_cast<size_t>(c)];
        if (name == "lambda") {
            row.measure = "lambda";
            row.mode = "-";
        } else if (name == "aeo" || name == "imi") {
            row.measure = name;
            row.mode = "binary";
        } else {
            row.measure = name.substr(0, name.size() - 2);
            row.mode = name.back() == 'b' ? "binary" : "weighted";
        }
        row.corr = manifold_correlation(series, gamma_series);
        res.correlations.push_back(std::move(row));
    }
    return res;
}

MemorySweepResult run_memory_sweep(const SweepConfig& cfg) {
    check_common(cfg);
    if (cfg.task.kind != Task::noise)
        throw std::invalid_argument("memory sweep: task must be noise");
    if (cfg.omega_grid.size() != 1)
        throw std::invalid_argument("memory sweep: exactly one omega value expected");
    if (cfg.lag_min < 1 || cfg.lag_max < cfg.lag_min)
        throw std::invalid_argument("memory sweep: need 1 <= lag_min <= lag_max");
    if (cfg.windows.empty()) throw std::invalid_argument("memory sweep: no lag windows");
    const MemorySelection sel = parse_memory_measures(cfg.measures);
    const int post = cfg.t_max - cfg.washout;
    for (const auto& w : cfg.windows) {
        if (w.tau_b < 1 || w.tau_a <= w.tau_b)
            throw std::invalid_argument("memory sweep: bad lag window " + window_name(w));
        // The degree comparison trims tau_a at both window ends on top of the
        // tau_a alignment trim; the window capacity and the other measures
        // only need the alignment.
        const int needed = sel.dg ? 3 * w.tau_a + 2 : w.tau_a + 2;
        if (post < needed)
            throw std::invalid_argument("memory sweep: lag window " + window_name(w) +
                                        " too large for " + std::to_string(post) +
                                        " post-washout rows");
    }

    std::vector<int> lags;
    for (int l = cfg.lag_min; l <= cfg.lag_max; ++l) lags.push_back(l);

    // One input stream per trial, shared across rho: the rho series then
    // differ only through the reservoirs, which steadies the correlations.
    std::vector<Signal> inputs;
    inputs.reserve(static_cast<size_t>(cfg.trials));
    for (int t = 0; t < cfg.trials; ++t)
        inputs.push_back(gen_noise(cfg.t_max,
                                   derive_seed(cfg.base_seed, kInputSeedTag, static_cast<std::uint64_t>(t)),
                                   cfg.task.noise_lo, cfg.task.noise_hi));

    const int K = static_cast<int>(cfg.rho_grid.size());
    const int T = cfg.trials;
    const int W = static_cast<int>(cfg.windows.size());
    const int total = K * T;

    MemorySweepResult res;
    res.cfg = cfg;
    res.runs.resize(static_cast<size_t>(total));
    parallel_for(total, thread_budget(cfg.threads), [&](int idx) {
        const int k = idx / T;
        const int t = idx % T;
        MemoryRun out;
        out.k = k;
        out.trial = t;
        out.seed = derive_seed(cfg.base_seed, static_cast<std::uint64_t>(k), 0,
                               static_cast<std::uint64_t>(t));
        out.mc = kNaN;
        out.window_mc.assign(static_cast<size_t>(W), kNaN);
        out.windows.assign(static_cast<size_t>(W), {});
        for (auto& arr : out.windows) arr.fill(kNaN);
        const Signal& x = inputs[static_cast<size_t>(t)];
        try {
            ReservoirParams p;
            p.n_r = cfg.n_r;
            p.rho = cfg.rho_grid[static_cast<size_t>(k)];
            p.omega_in = cfg.omega_grid[0];
            p.sparsity = cfg.sparsity;
            p.seed = out.seed;
            const Reservoir r = init_reservoir(p);
            const StateTrajectory traj = run_reservoir(r, x, cfg.washout);
            out.mc = memory_capacity(r, x, lags, cfg.reg, cfg.washout);

            Multiplex mb;
            if (sel.dg || sel.and_) mb = build_multiplex(traj, GraphMode::binary);
            for (int w = 0; w < W; ++w) {
                const DelayWindow& win = cfg.windows[static_cast<size_t>(w)];
                std::vector<int> window_lags;
                for (int l = win.tau_b; l <= win.tau_a; ++l) window_lags.push_back(l);
                out.window_mc[static_cast<size_t>(w)] =
                    memory_capacity(r, x, window_lags, cfg.reg, cfg.washout);
                auto& arr = out.windows[static_cast<size_t>(w)];
                if (sel.ts) {
                    arr[mem_delta_ts_pc] = delta_ts(x, traj, win, Kappa::pc).value;
                    arr[mem_delta_ts_sc] = delta_ts(x, traj, win, Kappa::sc).value;
                    arr[mem_delta_ts_mi] = delta_ts(x, traj, win, Kappa::mi).value;
                }
                if (sel.dg) {
                    arr[mem_delta_dg_pc] = delta_dg(x, mb, win, Kappa::pc, cfg.washout).value;
                    arr[mem_delta_dg_sc] = delta_dg(x, mb, win, Kappa::sc, cfg.washout).value;
                    arr[mem_delta_dg_mi] = delta_dg(x, mb, win, Kappa::mi, cfg.washout).value;
                }
                if (sel.and_)
                    arr[mem_delta_and] = delta_and(x, mb, win, cfg.washout).value;
            }
            out.ok = true;
        } catch (const std::exception& e) {
            out.error = e.what();
        }
        res.runs[static_cast<size_t>(idx)] = std::move(out);
    });

    res.mc_mean.assign(static_cast<size_t>(K), 0.0);
    res.cell_runs.assign(static_cast<size_t>(K), 0);
    res.window_mc_mean.assign(static_cast<size_t>(K * W), 0.0);
    res.window_mean.assign(static_cast<size_t>(K * W), {});
    for (auto& arr : res.window_mean) arr.fill(0.0);
    std::vector<std::string> warnings;
    for (int k = 0; k < K; ++k) {
        std::string last_error;
        for (int t = 0; t < T; ++t) {
            const MemoryRun& run = res.runs[static_cast<size_t>(k * T + t)];
            if (!run.ok) {
                warnings.push_back("run k=" + std::to_string(run.k) + " trial=" +
                                   std::to_string(run.trial) + " failed: " + run.error);
                last_error = run.error;
                continue;
            }
            res.mc_mean[static_cast<size_t>(k)] += run.mc;
            for (int w = 0; w < W; ++w) {
                res.window_mc_mean[static_cast<size_t>(k * W + w)] +=
                    run.window_mc[static_cast<size_t>(w)];
                for (int c = 0; c < kDeltaColumns; ++c)
                    res.window_mean[static_cast<size_t>(k * W + w)][static_cast<size_t>(c)] +=
                        run.windows[static_cast<size_t>(w)][static_cast<size_t>(c)];
            }
            ++res.cell_runs[static_cast<size_t>(k)];
        }
        const int n_ok = res.cell_runs[static_cast<size_t>(k)];
        if (n_ok == 0)
            throw std::runtime_error("memory sweep: rho index " + std::to_string(k) +
                                     " failed every trial; last error: " + last_error);
        res.mc_mean[static_cast<size_t>(k)] /= n_ok;
        for (int w = 0; w < W; ++w) {
            res.window_mc_mean[static_cast<size_t>(k * W + w)] /= n_ok;
            for (int c = 0; c < kDeltaColumns; ++c)
                res.window_mean[static_cast<size_t>(k * W + w)][static_cast<size_t>(c)] /= n_ok;
        }
    }
    warn_failures("memory", warnings);

    const std::array<bool, kDeltaColumns> col_on = {sel.ts, sel.ts, sel.ts, sel.dg,
                                                    sel.dg, sel.dg, sel.and_};
    for (int w = 0; w < W; ++w) {
        std::vector<double> mc_series(static_cast<size_t>(K));
        for (int k = 0; k < K; ++k)
            mc_series[static_cast<size_t>(k)] = res.window_mc_mean[static_cast<size_t>(k * W + w)];
        for (int c = 0; c < kDeltaColumns; ++c) {
            if (!col_on[static_cast<size_t>(c)]) continue;
            std::vector<double> series(static_cast<size_t>(K));
            for (int k = 0; k < K; ++k)
                series[static_cast<size_t>(k)] = res.window_mean[static_cast<size_t>(k * W + w)][static_cast<size_t>(c)];
            CorrelationRow row;
            row.measure = kDeltaColumnName[static_cast<size_t>(c)];
            row.mode = window_name(cfg.windows[static_cast<size_t>(w)]);
            row.corr = manifold_correlation(series, mc_series);
            res.correlations.push_back(std::move(row));
        }
    }
    return res;
}

namespace {

void append_g(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot open " + path.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("report: write failed for " + path.string());
}

void write_correlation_csv(const std::filesystem::path& path,
                           const std::vector<CorrelationRow>& rows) {
    std::string s = "measure,mode,r,p,n\n";
    for (const auto& row : rows) {
        s += row.measure;
        s += ',';
        s += row.mode;
        s += ',';
        append_g(s, row.corr.r);
        s += ',';
        append_g(s, row.corr.p);
        s += ',';
        s += std::to_string(row.corr.n);
        s += '\n';
    }
    write_text(path, s);
}

// Eight-anchor approximation of a perceptually ordered dark-to-bright map.
std::array<unsigned char, 3> heat_color(double t) {
    static constexpr double anchors[8][3] = {
        {0.267, 0.005, 0.329}, {0.275, 0.197, 0.497}, {0.213, 0.359, 0.552},
        {0.153, 0.497, 0.558}, {0.122, 0.632, 0.531}, {0.290, 0.758, 0.428},
        {0.622, 0.854, 0.226}, {0.993, 0.906, 0.144},
    };
    t = std::clamp(t, 0.0, 1.0) * 7.0;
    const int i = std::min(static_cast<int>(t), 6);
    const double f = t - i;
    std::array<unsigned char, 3> rgb{};
    for (int c = 0; c < 3; ++c) {
        const double v = anchors[i][c] * (1.0 - f) + anchors[i + 1][c] * f;
        rgb[static_cast<size_t>(c)] = static_cast<unsigned char>(std::lround(255.0 * v));
    }
    return rgb;
}

void write_heatmap(const std::filesystem::path& path, const std::vector<double>& cells,
                   int rows, int cols) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : cells)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    const bool flat = !(hi > lo);

    constexpr int kCell = 24;
    const int W = cols * kCell, H = rows * kCell;
    std::string s = "P6\n" + std::to_string(W) + " " + std::to_string(H) + "\n255\n";
    s.reserve(s.size() + static_cast<size_t>(W) * static_cast<size_t>(H) * 3);
    for (int y = 0; y < H; ++y) {
        const int r = y / kCell;
        for (int x = 0; x < W; ++x) {
            const int c = x / kCell;
            const double v = cells[static_cast<size_t>(r * cols + c)];
            std::array<unsigned char, 3> rgb{128, 128, 128};  // non-finite cells
            if (std::isfinite(v)) rgb = heat_color(flat ? 0.5 : (v - lo) / (hi - lo));
            s.push_back(static_cast<char>(rgb[0]));
            s.push_back(static_cast<char>(rgb[1]));
            s.push_back(static_cast<char>(rgb[2]));
        }
    }
    write_text(path, s);
}

}  // namespace

void write_accuracy_report(const AccuracySweepResult& res, const std::string& out_dir,
                           bool heatmaps) {
    if (out_dir.empty()) throw std::invalid_argument("report: empty output directory");
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    const int J = static_cast<int>(res.cfg.omega_grid.size());

    std::string raw = "k,j,trial,rho,omega,seed,status";
    for (const char* name : kAccuracyColumnName) {
        raw += ',';
        raw += name;
    }
    raw += '\n';
    for (const auto& run : res.runs) {
        raw += std::to_string(run.k);
        raw += ',';
        raw += std::to_string(run.j);
        raw += ',';
        raw += std::to_string(run.trial);
        raw += ',';
        append_g(raw, res.cfg.rho_grid[static_cast<size_t>(run.k)]);
        raw += ',';
        append_g(raw, res.cfg.omega_grid[static_cast<size_t>(run.j)]);
        raw += ',';
        raw += std::to_string(run.seed);
        raw += run.ok ? ",ok" : ",failed";
        for (double v : run.vals) {
            raw += ',';
            append_g(raw, v);
        }
        raw += '\n';
    }
    write_text(dir / "accuracy_raw.csv", raw);

    std::string agg = "k,j,rho,omega,runs";
    for (const char* name : kAccuracyColumnName) {
        agg += ',';
        agg += name;
    }
    agg += '\n';
    for (size_t cell = 0; cell < res.cell_mean.size(); ++cell) {
        const int k = static_cast<int>(cell) / J;
        const int j = static_cast<int>(cell) % J;
        agg += std::to_string(k);
        agg += ',';
        agg += std::to_string(j);
        agg += ',';
        append_g(agg, res.cfg.rho_grid[static_cast<size_t>(k)]);
        agg += ',';
        append_g(agg, res.cfg.omega_grid[static_cast<size_t>(j)]);
        agg += ',';
        agg += std::to_string(res.cell_runs[cell]);
        for (double v : res.cell_mean[cell]) {
            agg += ',';
            append_g(agg, v);
        }
        agg += '\n';
    }
    write_text(dir / "accuracy_manifold.csv", agg);

    write_correlation_csv(dir / "accuracy_correlation.csv", res.correlations);

    if (heatmaps) {
        const int K = static_cast<int>(res.cfg.rho_grid.size());
        for (int c = 0; c < kAccuracyColumns; ++c) {
            std::vector<double> cells(res.cell_mean.size());
            bool any = false;
            for (size_t i = 0; i < cells.size(); ++i) {
                cells[i] = res.cell_mean[i][static_cast<size_t>(c)];
                any = any || std::isfinite(cells[i]);
            }
            if (!any) continue;  // measure was not selected
            write_heatmap(dir / ("heatmap_" + std::string(kAccuracyColumnName[static_cast<size_t>(c)]) + ".ppm"),
                          cells, K, J);
        }
    }
}

void write_memory_report(const MemorySweepResult& res, const std::string& out_dir) {
    if (out_dir.empty()) throw std::invalid_argument("report: empty output directory");
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    const int W = static_cast<int>(res.cfg.windows.size());
    const double omega = res.cfg.omega_grid[0];

    std::string raw = "k,trial,rho,omega,seed,status,window,mc,mc_window";
    for (const char* name : kDeltaColumnName) {
        raw += ',';
        raw += name;
    }
    raw += '\n';
    for (const auto& run : res.runs) {
        for (int w = 0; w < W; ++w) {
            raw += std::to_string(run.k);
            raw += ',';
            raw += std::to_string(run.trial);
            raw += ',';
            append_g(raw, res.cfg.rho_grid[static_cast<size_t>(run.k)]);
            raw += ',';
            append_g(raw, omega);
            raw += ',';
            raw += std::to_string(run.seed);
            raw += run.ok ? ",ok," : ",failed,";
            raw += window_name(res.cfg.windows[static_cast<size_t>(w)]);
            raw += ',';
            append_g(raw, run.mc);
            raw += ',';
            append_g(raw, run.window_mc[static_cast<size_t>(w)]);
            for (double v : run.windows[static_cast<size_t>(w)]) {
                raw += ',';
                append_g(raw, v);
            }
            raw += '\n';
        }
    }
    write_text(dir / "memory_raw.csv", raw);

    std::string agg = "k,rho,omega,runs,window,mc,mc_window";
    for (const char* name : kDeltaColumnName) {
        agg += ',';
        agg += name;
    }
    agg += '\n';
    const int K = static_cast<int>(res.cfg.rho_grid.size());
    for (int k = 0; k < K; ++k) {
        for (int w = 0; w < W; ++w) {
            agg += std::to_string(k);
            agg += ',';
            append_g(agg, res.cfg.rho_grid[static_cast<size_t>(k)]);
            agg += ',';
            append_g(agg, omega);
            agg += ',';
            agg += std::to_string(res.cell_runs[static_cast<size_t>(k)]);
            agg += ',';
            agg += window_name(res.cfg.windows[static_cast<size_t>(w)]);
            agg += ',';
            append_g(agg, res.mc_mean[static_cast<size_t>(k)]);
            agg += ',';
            append_g(agg, res.window_mc_mean[static_cast<size_t>(k * W + w)]);
            for (double v : res.window_mean[static_cast<size_t>(k * W + w)]) {
                agg += ',';
                append_g(agg, v);
            }
            agg += '\n';
        }
    }
    write_text(dir / "memory_mean.csv", agg);

    write_correlation_csv(dir / "memory_correlation.csv", res.correlations);
}

}  // namespace rmvg
