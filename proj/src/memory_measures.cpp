#include "rmvg/memory_measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace rmvg {

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("pearson: size mismatch");
    const size_t n = a.size();
    if (n < 2) throw std::invalid_argument("pearson: need at least 2 samples");

    double ma = 0.0, mb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);

    double cov = 0.0, va = 0.0, vb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) throw std::domain_error("pearson: constant input");
    return cov / std::sqrt(va * vb);
}

std::vector<double> average_ranks(std::span<const double> v) {
    const size_t n = v.size();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return v[static_cast<size_t>(x)] < v[static_cast<size_t>(y)]; });

    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[static_cast<size_t>(idx[j + 1])] == v[static_cast<size_t>(idx[i])]) ++j;
        // Tied run occupies positions i..j; everyone gets the mean 1-based rank.
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[static_cast<size_t>(idx[k])] = r;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("spearman: size mismatch");
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    return pearson(ra, rb);
}

double mutual_info(std::span<const double> a, std::span<const double> b, int bins) {
    if (a.size() != b.size()) throw std::invalid_argument("mutual_info: size mismatch");
    if (a.empty()) throw std::invalid_argument("mutual_info: empty input");
    if (bins < 1) throw std::invalid_argument("mutual_info: bins must be >= 1");

    const size_t n = a.size();
    auto bin_of = [bins](double v, double lo, double hi) {
        if (hi == lo) return 0;
        int k = static_cast<int>((v - lo) / (hi - lo) * static_cast<double>(bins));
        return std::min(k, bins - 1);
    };
    double alo = a[0], ahi = a[0], blo = b[0], bhi = b[0];
    for (size_t i = 0; i < n; ++i) {
        alo = std::min(alo, a[i]);
        ahi = std::max(ahi, a[i]);
        blo = std::min(blo, b[i]);
        bhi = std::max(bhi, b[i]);
    }

    std::vector<int> joint(static_cast<size_t>(bins) * static_cast<size_t>(bins), 0);
    std::vector<int> ca(static_cast<size_t>(bins), 0), cb(static_cast<size_t>(bins), 0);
    for (size_t i = 0; i < n; ++i) {
        const int x = bin_of(a[i], alo, ahi);
        const int y = bin_of(b[i], blo, bhi);
        ++joint[static_cast<size_t>(x) * static_cast<size_t>(bins) + static_cast<size_t>(y)];
        ++ca[static_cast<size_t>(x)];
        ++cb[static_cast<size_t>(y)];
    }
    const double total = static_cast<double>(n);
    double mi = 0.0;
    for (int x = 0; x < bins; ++x) {
        if (ca[static_cast<size_t>(x)] == 0) continue;
        for (int y = 0; y < bins; ++y) {
            const int c = joint[static_cast<size_t>(x) * static_cast<size_t>(bins) + static_cast<size_t>(y)];
            if (c == 0) continue;
            const double pxy = c / total;
            const double px = ca[static_cast<size_t>(x)] / total;
            const double py = cb[static_cast<size_t>(y)] / total;
            mi += pxy * std::log2(pxy / (px * py));
        }
    }
    return mi;
}

namespace {

void check_window(const DelayWindow& w) {
    if (w.tau_b < 1 || w.tau_a <= w.tau_b)
        throw std::invalid_argument("delay window: need tau_a > tau_b >= 1");
}

// Scores one candidate pair under the degenerate-input guard: a constant
// input contributes a 0-valued candidate carrying no layer/lag attribution.
struct MaxTracker {
    double best = -std::numeric_limits<double>::infinity();
    int layer = -1, lag = -1;
    bool any = false;

    void offer(double value, int l, int t) {
        if (!any || value > best) {
            best = value;
            layer = l;
            lag = t;
            any = true;
        }
    }
    void offer_guarded() {
        if (!any || 0.0 > best) {
            best = 0.0;
            layer = -1;
            lag = -1;
            any = true;
        }
    }
    AgreementResult result() const {
        AgreementResult r;
        if (any) {
            r.value = best;
            r.layer = layer;
            r.lag = lag;
        }
        return r;
    }
};

double kappa_score(Kappa k, std::span<const double> a, std::span<const double> b, bool& guarded) {
    guarded = false;
    switch (k) {
        case Kappa::pc:
        case Kappa::sc:
            try {
                return k == Kappa::pc ? pearson(a, b) : spearman(a, b);
            } catch (const std::domain_error&) {
                guarded = true;
                return 0.0;
            }
        case Kappa::mi:
            return mutual_info(a, b, kMiBins);
    }
    throw std::logic_error("kappa_score: bad kind");
}

}  // namespace

AgreementResult delta_ts(const Signal& x, const StateTrajectory& traj, DelayWindow w, Kappa k) {
    check_window(w);
    const int n = traj.post_rows();
    const int count = n - w.tau_a;
    if (count < 2) throw std::invalid_argument("delta_ts: window too large for trajectory");
    if (x.size() < traj.rows()) throw std::invalid_argument("delta_ts: input shorter than trajectory");

    const int n_layers = static_cast<int>(traj.states.cols());
    std::vector<double> state_seq(static_cast<size_t>(count));
    std::vector<double> delayed_seq(static_cast<size_t>(count));

    MaxTracker mt;
    for (int l = 0; l < n_layers; ++l) {
        for (int t = 0; t < count; ++t)
            state_seq[static_cast<size_t>(t)] = traj.states(traj.washout + w.tau_a + t, l);
        for (int tau = w.tau_b; tau <= w.tau_a; ++tau) {
            for (int t = 0; t < count; ++t)
                delayed_seq[static_cast<size_t>(t)] = x[traj.washout + w.tau_a + t - tau];
            bool guarded = false;
            const double v = kappa_score(k, delayed_seq, state_seq, guarded);
            if (guarded) mt.offer_guarded();
            else mt.offer(v, l, tau);
        }
    }
    return mt.result();
}

AgreementResult delta_dg(const Signal& x, const Multiplex& m, DelayWindow w, Kappa k, int offset) {
    check_window(w);
    if (offset < 0) throw std::invalid_argument("delta_dg: offset must be >= 0");
    if (x.size() < offset + m.n) throw std::invalid_argument("delta_dg: input shorter than layer range");

    // Comparison window in layer coordinates, trimmed by tau_a at both ends.
    const int lo = 2 * w.tau_a;
    const int hi = m.n - w.tau_a;
    const int count = hi - lo;
    if (count < 2) throw std::invalid_argument("delta_dg: window too large for layers");

    const VisibilityGraph gx = build_hvg(x, GraphMode::binary);
    std::vector<double> x_deg(static_cast<size_t>(gx.n));
    for (int v = 0; v < gx.n; ++v) x_deg[static_cast<size_t>(v)] = static_cast<double>(gx.degree_int(v));

    std::vector<double> layer_seq(static_cast<size_t>(count));
    std::vector<double> shifted_seq(static_cast<size_t>(count));
    MaxTracker mt;
    for (int l = 0; l < m.n_layers(); ++l) {
        const auto& g = m.layers[static_cast<size_t>(l)];
        for (int t = 0; t < count; ++t)
            layer_seq[static_cast<size_t>(t)] = static_cast<double>(g.degree_int(lo + t));
        for (int tau = w.tau_b; tau <= w.tau_a; ++tau) {
            for (int t = 0; t < count; ++t)
                shifted_seq[static_cast<size_t>(t)] = x_deg[static_cast<size_t>(offset + lo + t - tau)];
            bool guarded = false;
            const double v = kappa_score(k, shifted_seq, layer_seq, guarded);
            if (guarded) mt.offer_guarded();
            else mt.offer(v, l, tau);
        }
    }
    return mt.result();
}

AgreementResult delta_and(const Signal& x, const Multiplex& m, DelayWindow w, int offset) {
    check_window(w);
    if (offset < 0) throw std::invalid_argument("delta_and: offset must be >= 0");
    if (x.size() < offset + m.n) throw std::invalid_argument("delta_and: input shorter than layer range");
    if (m.n - w.tau_a < 2) throw std::invalid_argument("delta_and: window too large for layers");

    const VisibilityGraph gx = build_hvg(x, GraphMode::binary);
    std::unordered_set<std::uint64_t> x_edges;
    x_edges.reserve(gx.edges.size() * 2);
    const std::uint64_t stride = static_cast<std::uint64_t>(gx.n);
    for (const auto& [i, j] : gx.edges)
        x_edges.insert(static_cast<std::uint64_t>(i) * stride + static_cast<std::uint64_t>(j));

    MaxTracker mt;
    for (int l = 0; l < m.n_layers(); ++l) {
        const auto& g = m.layers[static_cast<size_t>(l)];
        for (int tau = w.tau_b; tau <= w.tau_a; ++tau) {
            long long shared = 0;
            for (const auto& [i, j] : g.edges) {
                if (i < w.tau_a) continue;  // below the common range
                const long long xi = static_cast<long long>(offset) + i - tau;
                const long long xj = static_cast<long long>(offset) + j - tau;
                if (x_edges.count(static_cast<std::uint64_t>(xi) * stride + static_cast<std::uint64_t>(xj)))
                    ++shared;
            }
            mt.offer(static_cast<double>(shared), l, tau);
        }
    }
    return mt.result();
}

}  // namespace rmvg
