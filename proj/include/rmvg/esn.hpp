#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rmvg/signals.hpp"

namespace rmvg {

struct ReservoirParams {
    int n_r = 100;
    double rho = 0.9;        // target spectral radius; 0 gives a zero matrix
    double omega_in = 0.5;   // input scaling
    double sparsity = 0.25;  // fraction of nonzero recurrent entries
    std::uint64_t seed = 1;
};

struct Reservoir {
    Eigen::MatrixXd w_rr;  // n_r x n_r
    Eigen::VectorXd w_ir;  // n_r

    int size() const { return static_cast<int>(w_rr.rows()); }
};

/// Spectral radius: dense eigenvalue solve up to 200x200, otherwise a
/// two-vector power iteration (tolerance 1e-9, at most 1e4 steps) that also
/// converges when the dominant eigenvalues are a complex pair.
double spectral_radius(const Eigen::MatrixXd& m);

/// Draw the recurrent matrix (uniform [-1,1] entries, an exact
/// round(sparsity * n^2) of them nonzero), rescale it to spectral radius rho,
/// and draw input weights scaled by omega_in. An all-zero draw is retried
/// with a derived sub-seed, at most 10 times.
Reservoir init_reservoir(const ReservoirParams& p);

/// Reservoir states over time; row t holds the state after input sample t.
/// The first `washout` rows are kept for inspection but excluded from
/// fitting, evaluation, and graph construction.
struct StateTrajectory {
    Eigen::MatrixXd states;
    int washout = 0;

    int rows() const { return static_cast<int>(states.rows()); }
    int post_rows() const { return rows() - washout; }
    auto post() const { return states.bottomRows(post_rows()); }
};

/// Drive the reservoir from a zero initial state:
/// h[t] = tanh(w_rr h[t-1] + w_ir x[t]).
StateTrajectory run_reservoir(const Reservoir& r, const Signal& input, int washout);

/// Linear readout over [state; input; 1].
struct LinearReadout {
    Eigen::VectorXd w;
};

/// The post-washout rows split 60/40 into a training and a test segment.
inline constexpr double kTrainFraction = 0.6;

/// Ridge regression of the target onto [state; input; 1] over the training
/// segment. reg = 0 falls back to plain least squares and throws
/// std::runtime_error on rank-deficient systems.
LinearReadout train_readout(const StateTrajectory& traj, const Signal& input,
                            const Signal& target, double reg);

struct EvalResult {
    double nrmse = 0.0;
    double gamma = 0.0;  // max(1 - nrmse, 0)
};

/// NRMSE and prediction score on the test segment. Throws std::domain_error
/// when the test target has zero variance.
EvalResult evaluate_readout(const LinearReadout& ro, const StateTrajectory& traj,
                            const Signal& input, const Signal& target);

/// Memory capacity: sum over lags of the squared correlation between the
/// delayed input and an independently trained ridge readout, each term
/// clamped to [0, 1] and evaluated on the test segment.
double memory_capacity(const Reservoir& r, const Signal& noise,
                       const std::vector<int>& lags, double reg, int washout);

/// Local stability proxy: time average over post-washout states of the
/// smallest singular value of diag(1 - h^2) * w_rr.
double jacobian_lambda(const StateTrajectory& traj, const Eigen::MatrixXd& w_rr);

}  // namespace rmvg
