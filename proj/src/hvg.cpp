#include "rmvg/hvg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rmvg/rng.hpp"

namespace rmvg {

namespace {

void build_adjacency(VisibilityGraph& g) {
    const int n = g.n;
    g.offsets.assign(static_cast<size_t>(n) + 1, 0);
    for (const auto& [i, j] : g.edges) {
        ++g.offsets[static_cast<size_t>(i) + 1];
        ++g.offsets[static_cast<size_t>(j) + 1];
    }
    for (int v = 0; v < n; ++v) g.offsets[static_cast<size_t>(v) + 1] += g.offsets[static_cast<size_t>(v)];
    g.neighbors.resize(g.edges.size() * 2);
    g.weights.resize(g.edges.size() * 2);
    std::vector<int> cursor(g.offsets.begin(), g.offsets.end() - 1);
    // Edge list is sorted by (i, j). Filling the lower endpoints first and
    // the higher ones second leaves every neighbor list ascending, since all
    // backward neighbors of a vertex precede all forward ones.
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const int j = g.edges[e].second;
        const int c = cursor[static_cast<size_t>(j)]++;
        g.neighbors[static_cast<size_t>(c)] = g.edges[e].first;
        g.weights[static_cast<size_t>(c)] = g.edge_weights[e];
    }
    for (size_t e = 0; e < g.edges.size(); ++e) {
        const int i = g.edges[e].first;
        const int c = cursor[static_cast<size_t>(i)]++;
        g.neighbors[static_cast<size_t>(c)] = g.edges[e].second;
        g.weights[static_cast<size_t>(c)] = g.edge_weights[e];
    }
    for (int v = 0; v < n; ++v) {
        auto begin = g.neighbors.begin() + g.offsets[static_cast<size_t>(v)];
        auto end = g.neighbors.begin() + g.offsets[static_cast<size_t>(v) + 1];
        if (!std::is_sorted(begin, end)) {
            // Only possible for from_edges input given out of order.
            std::vector<std::pair<int, double>> tmp;
            tmp.reserve(static_cast<size_t>(end - begin));
            for (auto it = begin; it != end; ++it) {
                const size_t k = static_cast<size_t>(it - g.neighbors.begin());
                tmp.emplace_back(*it, g.weights[k]);
            }
            std::sort(tmp.begin(), tmp.end());
            for (size_t k = 0; k < tmp.size(); ++k) {
                const size_t at = static_cast<size_t>(g.offsets[static_cast<size_t>(v)]) + k;
                g.neighbors[at] = tmp[k].first;
                g.weights[at] = tmp[k].second;
            }
        }
    }
}

}  // namespace

double VisibilityGraph::weight_at(int i, int j) const {
    if (i == j) return 0.0;
    if (degree_int(i) > degree_int(j)) std::swap(i, j);
    const auto adj = adjacent(i);
    const auto it = std::lower_bound(adj.begin(), adj.end(), j);
    if (it == adj.end() || *it != j) return 0.0;
    return weights[static_cast<size_t>(offsets[i] + (it - adj.begin()))];
}

VisibilityGraph VisibilityGraph::from_edges(int n, GraphMode mode,
                                            const std::vector<std::pair<int, int>>& edges,
                                            const std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("graph: need at least one vertex");
    if (!weights.empty() && weights.size() != edges.size())
        throw std::invalid_argument("graph: weight count must match edge count");
    VisibilityGraph g;
    g.n = n;
    g.mode = mode;
    g.edges.reserve(edges.size());
    g.edge_weights.reserve(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        auto [i, j] = edges[e];
        if (i == j || i < 0 || j < 0 || i >= n || j >= n)
            throw std::invalid_argument("graph: bad edge endpoint");
        if (i > j) std::swap(i, j);
        double w = 1.0;
        if (mode == GraphMode::weighted) {
            w = weights.empty() ? 1.0 : weights[e];
            if (!(w > 0.0)) throw std::invalid_argument("graph: weights must be positive");
        }
        g.edges.emplace_back(i, j);
        g.edge_weights.push_back(w);
    }
    // Deterministic order; weights follow their edges.
    std::vector<size_t> order(g.edges.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return g.edges[a] < g.edges[b]; });
    VisibilityGraph out;
    out.n = n;
    out.mode = mode;
    out.edges.reserve(g.edges.size());
    out.edge_weights.reserve(g.edges.size());
    for (size_t k : order) {
        if (!out.edges.empty() && out.edges.back() == g.edges[k])
            throw std::invalid_argument("graph: duplicate edge");
        out.edges.push_back(g.edges[k]);
        out.edge_weights.push_back(g.edge_weights[k]);
    }
    build_adjacency(out);
    return out;
}

VisibilityGraph build_hvg(std::span<const double> series, GraphMode mode) {
    const int n = static_cast<int>(series.size());
    if (n < 2) throw std::invalid_argument("hvg: need at least two samples");

    VisibilityGraph g;
    g.n = n;
    g.mode = mode;
    g.edges.reserve(static_cast<size_t>(n) * 2);
    g.edge_weights.reserve(static_cast<size_t>(n) * 2);

    // Forward scan from each vertex: every new running maximum is visible;
    // the scan stops once that maximum exceeds the origin's value.
    for (int i = 0; i < n - 1; ++i) {
        double maxv = -std::numeric_limits<double>::infinity();
        for (int j = i + 1; j < n; ++j) {
            if (series[static_cast<size_t>(j)] > maxv) {
                maxv = series[static_cast<size_t>(j)];
                double w = 1.0;
                if (mode == GraphMode::weighted) {
                    const double dt = static_cast<double>(j - i);
                    const double dx = series[static_cast<size_t>(i)] - series[static_cast<size_t>(j)];
                    w = 1.0 / std::sqrt(dt * dt + dx * dx);
                }
                g.edges.emplace_back(i, j);
                g.edge_weights.push_back(w);
                if (maxv > series[static_cast<size_t>(i)]) break;
            }
        }
    }
    build_adjacency(g);
    return g;
}

VisibilityGraph build_hvg(const Signal& s, GraphMode mode) {
    return build_hvg(std::span<const double>(s.values), mode);
}

DegreeLawResult degree_law_check(int length, std::uint64_t seed) {
    const VisibilityGraph g = build_hvg(gen_noise(length, seed, 0.0, 1.0), GraphMode::binary);
    DegreeLawResult r;
    int max_deg = 0;
    long long total = 0;
    for (int v = 0; v < g.n; ++v) {
        max_deg = std::max(max_deg, g.degree_int(v));
        total += g.degree_int(v);
    }
    r.mean_degree = static_cast<double>(total) / static_cast<double>(g.n);
    r.pk.assign(static_cast<size_t>(max_deg) + 1, 0.0);
    for (int v = 0; v < g.n; ++v) r.pk[static_cast<size_t>(g.degree_int(v))] += 1.0;
    for (double& p : r.pk) p /= static_cast<double>(g.n);
    return r;
}

}  // namespace rmvg
