#pragma once

#include <span>
#include <vector>

#include "rmvg/esn.hpp"
#include "rmvg/multiplex.hpp"
#include "rmvg/signals.hpp"

namespace rmvg {

/// Sample Pearson correlation. Throws std::domain_error when either input is
/// constant, std::invalid_argument on size mismatch or fewer than 2 samples.
double pearson(std::span<const double> a, std::span<const double> b);

/// 1-based ranks with ties replaced by the mean rank of the tied run.
std::vector<double> average_ranks(std::span<const double> v);

/// Spearman correlation: Pearson on average ranks.
double spearman(std::span<const double> a, std::span<const double> b);

/// Mutual information (bits) from a bins x bins equal-width joint histogram
/// spanning each variable's own [min, max].
double mutual_info(std::span<const double> a, std::span<const double> b, int bins);

enum class Kappa { pc, sc, mi };

/// Bin count used when Kappa::mi scores delay agreement.
inline constexpr int kMiBins = 16;

/// Lag search window: lags tau_b..tau_a inclusive, tau_a > tau_b >= 1.
struct DelayWindow {
    int tau_b = 0;
    int tau_a = 0;
};

/// Outcome of maximizing an agreement score over layers and lags. When only
/// degenerate (constant-input) pairs were seen, value is 0 and layer/lag are
/// -1. Ties go to the smallest (layer, lag).
struct AgreementResult {
    double value = 0.0;
    int layer = -1;
    int lag = -1;
};

/// Max over layers and lags of kappa(x delayed by lag, state row), computed
/// on the post-washout range; the first tau_a vertices are dropped so every
/// lag scores the same sample window.
AgreementResult delta_ts(const Signal& x, const StateTrajectory& traj, DelayWindow w, Kappa k);

/// Same maximization on degree sequences: layer-graph degrees against the
/// input-graph degrees shifted by the lag. `offset` is the global time of
/// multiplex vertex 0 (the washout length when the multiplex came from a
/// trajectory). A further tau_a vertices are trimmed at both window ends to
/// suppress graph boundary effects.
AgreementResult delta_dg(const Signal& x, const Multiplex& m, DelayWindow w, Kappa k, int offset);

/// Max over layers and lags of the number of edges shared between the
/// shifted input graph and the layer graph, restricted to the common range.
AgreementResult delta_and(const Signal& x, const Multiplex& m, DelayWindow w, int offset);

}  // namespace rmvg
