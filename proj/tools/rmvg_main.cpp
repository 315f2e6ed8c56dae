#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "rmvg/harness.hpp"
#include "rmvg/hvg.hpp"
#include "rmvg/signals.hpp"

namespace {

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) throw CLI::ValidationError("steps must be >= 1");
    std::vector<double> g(static_cast<size_t>(steps));
    if (steps == 1) {
        g[0] = lo;
        return g;
    }
    const double step = (hi - lo) / (steps - 1);
    for (int i = 0; i < steps; ++i) g[static_cast<size_t>(i)] = lo + step * i;
    g.back() = hi;  // exact endpoint, no accumulated rounding
    return g;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) parts.push_back(item);
    return parts;
}

void write_series_csv(const std::string& path, const rmvg::TaskData& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    const bool with_target = data.target.size() > 0;
    out << (with_target ? "t,input,target\n" : "t,input\n");
    char buf[40];
    for (int t = 0; t < data.input.size(); ++t) {
        out << t << ',';
        std::snprintf(buf, sizeof buf, "%.17g", data.input[t]);
        out << buf;
        if (with_target) {
            std::snprintf(buf, sizeof buf, "%.17g", data.target[t]);
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path);
}

rmvg::Signal read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file " + path);
    rmvg::Signal x;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        if (c1 == std::string::npos) throw std::runtime_error("bad row in " + path + ": " + line);
        auto c2 = line.find(',', c1 + 1);
        if (c2 == std::string::npos) c2 = line.size();
        x.values.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    if (x.values.empty()) throw std::runtime_error("no samples in " + path);
    return x;
}

struct GridFlags {
    double rho_min = 0.5, rho_max = 1.3;
    int rho_steps = 9;
    double omega_min = 0.2, omega_max = 0.9;
    int omega_steps = 5;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reservoir dynamics through layered visibility graphs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML file mirroring the flags (sections per subcommand)");

    // generate
    auto* gen = app.add_subcommand("generate", "Write a task's input/target series as CSV");
    std::string gen_task, gen_out;
    int gen_length = 2600;
    std::uint64_t gen_seed = 1;
    int gen_tau_f = -1;
    double gen_psi = 0.2;
    double gen_mg_tau = 17.0;
    int gen_narma_r = 20;
    int gen_poly_p = 7, gen_poly_d = 10;
    gen->add_option("--task", gen_task, "sin|mg|mso|narma|poly|noise")->required();
    gen->add_option("--length", gen_length, "samples to emit");
    gen->add_option("--seed", gen_seed, "seed for stochastic tasks");
    gen->add_option("--tau-f", gen_tau_f, "override the forecast shift");
    gen->add_option("--psi", gen_psi, "sin frequency");
    gen->add_option("--mg-tau", gen_mg_tau, "Mackey-Glass delay");
    gen->add_option("--narma-r", gen_narma_r, "NARMA order");
    gen->add_option("--poly-p", gen_poly_p, "polynomial degree cap");
    gen->add_option("--poly-d", gen_poly_d, "polynomial input delay");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    // hvg
    auto* hvg = app.add_subcommand("hvg", "Convert a series CSV to its visibility graph");
    std::string hvg_in, hvg_out, hvg_mode = "binary";
    hvg->add_option("--in", hvg_in, "series CSV (t,input[,target])")->required();
    hvg->add_option("--mode", hvg_mode, "binary|weighted")
        ->check(CLI::IsMember({"binary", "weighted"}));
    hvg->add_option("--out", hvg_out, "edge list path")->required();

    // shared sweep flags
    auto add_sweep_common = [](CLI::App* cmd, rmvg::SweepConfig& cfg, std::string& out_dir,
                               std::string& measures) {
        cmd->add_option("--trials", cfg.trials, "reservoir draws per grid cell");
        cmd->add_option("--nr", cfg.n_r, "reservoir size");
        cmd->add_option("--sparsity", cfg.sparsity, "recurrent nonzero fraction");
        cmd->add_option("--reg", cfg.reg, "ridge regularization");
        cmd->add_option("--washout", cfg.washout, "discarded leading samples");
        cmd->add_option("--tmax", cfg.t_max, "total samples per run");
        cmd->add_option("--bins", cfg.bins, "entropy histogram bins");
        cmd->add_option("--seed", cfg.base_seed, "base seed");
        cmd->add_option("--threads", cfg.threads, "worker threads (0 = RMVG_THREADS or hardware)");
        cmd->add_option("--measures", measures, "comma list restricting what is computed");
        cmd->add_option("--out", out_dir, "report directory")->required();
    };

    // sweep-accuracy
    auto* acc = app.add_subcommand("sweep-accuracy",
                                   "Grid sweep: prediction score vs graph measures");
    rmvg::SweepConfig acc_cfg;
    GridFlags acc_grid;
    std::string acc_task, acc_out, acc_measures;
    bool acc_full = false, acc_heatmaps = false;
    acc->add_option("--task", acc_task, "sin|mg|mso|narma|poly")->required();
    acc->add_option("--rho-min", acc_grid.rho_min, "spectral radius grid start");
    acc->add_option("--rho-max", acc_grid.rho_max, "spectral radius grid end");
    acc->add_option("--rho-steps", acc_grid.rho_steps, "spectral radius grid size");
    acc->add_option("--omega-min", acc_grid.omega_min, "input scaling grid start");
    acc->add_option("--omega-max", acc_grid.omega_max, "input scaling grid end");
    acc->add_option("--omega-steps", acc_grid.omega_steps, "input scaling grid size");
    acc->add_flag("--full-scale", acc_full, "20x10 grid, 15 trials");
    acc->add_flag("--heatmaps", acc_heatmaps, "also write PPM heatmaps");
    add_sweep_common(acc, acc_cfg, acc_out, acc_measures);

    // sweep-memory
    auto* mem = app.add_subcommand("sweep-memory",
                                   "Rho sweep: memory capacity vs delay agreement");
    rmvg::SweepConfig mem_cfg;
    double mem_rho_min = 0.1, mem_rho_max = 2.0, mem_omega = 0.7;
    int mem_rho_steps = 20;
    std::string mem_windows = "10:5,15:10,20:15,25:20", mem_lags = "1:40";
    std::string mem_out, mem_measures;
    bool mem_full = false;
    mem->add_option("--rho-min", mem_rho_min, "spectral radius grid start");
    mem->add_option("--rho-max", mem_rho_max, "spectral radius grid end");
    mem->add_option("--rho-steps", mem_rho_steps, "spectral radius grid size");
    mem->add_option("--omega", mem_omega, "input scaling");
    mem->add_option("--windows", mem_windows, "lag windows, taua:taub comma list");
    mem->add_option("--lags", mem_lags, "capacity lag range lo:hi");
    mem->add_flag("--full-scale", mem_full, "100 rho values, 15 trials");
    add_sweep_common(mem, mem_cfg, mem_out, mem_measures);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            rmvg::TaskSpec spec = rmvg::make_task(rmvg::task_from_name(gen_task));
            if (gen_tau_f >= 0) spec.tau_f = gen_tau_f;
            spec.psi = gen_psi;
            spec.mg_tau = gen_mg_tau;
            spec.narma_r = gen_narma_r;
            spec.poly_p = gen_poly_p;
            spec.poly_d = gen_poly_d;
            write_series_csv(gen_out, rmvg::realize_task(spec, gen_length, gen_seed));
        } else if (hvg->parsed()) {
            const rmvg::Signal x = read_series_csv(hvg_in);
            const rmvg::GraphMode mode =
                hvg_mode == "binary" ? rmvg::GraphMode::binary : rmvg::GraphMode::weighted;
            const rmvg::VisibilityGraph g = rmvg::build_hvg(x, mode);
            std::ofstream out(hvg_out, std::ios::binary);
            if (!out) throw std::runtime_error("cannot open " + hvg_out);
            char buf[40];
            for (size_t e = 0; e < g.edges.size(); ++e) {
                std::snprintf(buf, sizeof buf, "%.17g", g.edge_weights[e]);
                out << (g.edges[e].first + 1) << ' ' << (g.edges[e].second + 1) << ' ' << buf
                    << '\n';
            }
            if (!out) throw std::runtime_error("write failed for " + hvg_out);
        } else if (acc->parsed()) {
            acc_cfg.task = rmvg::make_task(rmvg::task_from_name(acc_task));
            if (acc_full) {
                acc_grid.rho_steps = 20;
                acc_grid.omega_steps = 10;
                acc_cfg.trials = 15;
            }
            acc_cfg.rho_grid = linspace(acc_grid.rho_min, acc_grid.rho_max, acc_grid.rho_steps);
            acc_cfg.omega_grid =
                linspace(acc_grid.omega_min, acc_grid.omega_max, acc_grid.omega_steps);
            for (const auto& t : split_list(acc_measures)) acc_cfg.measures.insert(t);
            const rmvg::AccuracySweepResult res = rmvg::run_accuracy_sweep(acc_cfg);
            rmvg::write_accuracy_report(res, acc_out, acc_heatmaps);
            for (const auto& row : res.correlations) {
                std::printf("corr(%s/%s, gamma): ", row.measure.c_str(), row.mode.c_str());
                if (row.corr.defined)
                    std::printf("r = %+.4f  p = %.4g  n = %d\n", row.corr.r, row.corr.p,
                                row.corr.n);
                else
                    std::printf("undefined (n = %d)\n", row.corr.n);
            }
        } else if (mem->parsed()) {
            mem_cfg.task = rmvg::make_task(rmvg::Task::noise);
            if (mem_full) {
                mem_rho_steps = 100;
                mem_cfg.trials = 15;
            }
            mem_cfg.rho_grid = linspace(mem_rho_min, mem_rho_max, mem_rho_steps);
            mem_cfg.omega_grid = {mem_omega};
            mem_cfg.windows.clear();
            for (const auto& t : split_list(mem_windows))
                mem_cfg.windows.push_back(rmvg::parse_window(t));
            const rmvg::DelayWindow lag_range = [&] {
                // reuse the taua:taub parser, but lo:hi order here
                const auto c = mem_lags.find(':');
                if (c == std::string::npos)
                    throw std::runtime_error("--lags expects lo:hi, got '" + mem_lags + "'");
                rmvg::DelayWindow r;
                r.tau_b = std::stoi(mem_lags.substr(0, c));
                r.tau_a = std::stoi(mem_lags.substr(c + 1));
                return r;
            }();
            mem_cfg.lag_min = lag_range.tau_b;
            mem_cfg.lag_max = lag_range.tau_a;
            for (const auto& t : split_list(mem_measures)) mem_cfg.measures.insert(t);
            const rmvg::MemorySweepResult res = rmvg::run_memory_sweep(mem_cfg);
            rmvg::write_memory_report(res, mem_out);
            for (const auto& row : res.correlations) {
                std::printf("corr(%s @ %s, mc): ", row.measure.c_str(), row.mode.c_str());
                if (row.corr.defined)
                    std::printf("r = %+.4f  p = %.4g  n = %d\n", row.corr.r, row.corr.p,
                                row.corr.n);
                else
                    std::printf("undefined (n = %d)\n", row.corr.n);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
