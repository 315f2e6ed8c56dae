#include "rmvg/multiplex.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>

namespace rmvg {

Multiplex build_multiplex(const StateTrajectory& traj, GraphMode mode) {
    const int n = traj.post_rows();
    if (n < 2) throw std::invalid_argument("multiplex: need at least two post-washout rows");
    const int n_layers = static_cast<int>(traj.states.cols());

    Multiplex m;
    m.mode = mode;
    m.n = n;
    m.layers.reserve(static_cast<size_t>(n_layers));
    std::vector<double> column(static_cast<size_t>(n));
    for (int l = 0; l < n_layers; ++l) {
        for (int t = 0; t < n; ++t) column[static_cast<size_t>(t)] = traj.states(traj.washout + t, l);
        m.layers.push_back(build_hvg(std::span<const double>(column), mode));
    }
    return m;
}

std::vector<std::vector<double>> property_matrix(const Multiplex& m, VertexProperty kind) {
    std::vector<std::vector<double>> out;
    out.reserve(m.layers.size());
    for (const auto& layer : m.layers) out.push_back(vertex_properties(layer, kind));
    return out;
}

double binned_entropy_bits(const std::vector<double>& values, int bins) {
    if (bins < 1) throw std::invalid_argument("entropy: bins must be >= 1");
    if (values.empty()) throw std::invalid_argument("entropy: no values");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) return 0.0;

    std::vector<int> counts(static_cast<size_t>(bins), 0);
    const double scale = static_cast<double>(bins) / (hi - lo);
    for (double v : values) {
        int k = static_cast<int>((v - lo) * scale);
        if (k >= bins) k = bins - 1;  // the maximum lands in the last bin
        ++counts[static_cast<size_t>(k)];
    }
    const double total = static_cast<double>(values.size());
    double h = 0.0;
    for (int c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

namespace {

HeterogeneityResult entropy_over_vertices(const std::vector<std::vector<double>>& props,
                                          int n, int bins) {
    HeterogeneityResult r;
    r.per_vertex.resize(static_cast<size_t>(n));
    std::vector<double> column(props.size());
    for (int t = 0; t < n; ++t) {
        for (size_t l = 0; l < props.size(); ++l) column[l] = props[l][static_cast<size_t>(t)];
        r.per_vertex[static_cast<size_t>(t)] = binned_entropy_bits(column, bins);
    }
    double acc = 0.0;
    for (double v : r.per_vertex) acc += v;
    r.mean = acc / static_cast<double>(n);
    return r;
}

void check_layers(const Multiplex& m) {
    if (m.layers.empty()) throw std::invalid_argument("multiplex: no layers");
    for (const auto& layer : m.layers)
        if (layer.n != m.n) throw std::invalid_argument("multiplex: layer size mismatch");
}

}  // namespace

double instantaneous_entropy(const Multiplex& m, int t, VertexProperty kind, int bins) {
    check_layers(m);
    if (t < 0 || t >= m.n) throw std::invalid_argument("entropy: vertex out of range");
    std::vector<double> column;
    column.reserve(m.layers.size());
    for (const auto& layer : m.layers) column.push_back(vertex_properties(layer, kind)[static_cast<size_t>(t)]);
    return binned_entropy_bits(column, bins);
}

HeterogeneityResult heterogeneity(const Multiplex& m, VertexProperty kind, int bins) {
    check_layers(m);
    return entropy_over_vertices(property_matrix(m, kind), m.n, bins);
}

AllHeterogeneity heterogeneity_all(const Multiplex& m, int bins) {
    check_layers(m);
    const size_t n_layers = m.layers.size();
    std::vector<std::vector<double>> dg(n_layers), cl(n_layers), bc(n_layers), cc(n_layers);
    for (size_t l = 0; l < n_layers; ++l) {
        AllVertexProperties p = all_vertex_properties(m.layers[l]);
        dg[l] = std::move(p.degree);
        cl[l] = std::move(p.clustering);
        bc[l] = std::move(p.betweenness);
        cc[l] = std::move(p.closeness);
    }
    AllHeterogeneity out;
    out.degree = entropy_over_vertices(dg, m.n, bins);
    out.clustering = entropy_over_vertices(cl, m.n, bins);
    out.betweenness = entropy_over_vertices(bc, m.n, bins);
    out.closeness = entropy_over_vertices(cc, m.n, bins);
    return out;
}

double aeo(const Multiplex& m) {
    check_layers(m);
    std::unordered_set<std::uint64_t> union_edges;
    long long total = 0;
    for (const auto& layer : m.layers) {
        total += layer.edge_count();
        for (const auto& [i, j] : layer.edges)
            union_edges.insert(static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(m.n) +
                               static_cast<std::uint64_t>(j));
    }
    if (union_edges.empty()) throw std::invalid_argument("aeo: layers have no edges");
    return static_cast<double>(total) /
           (static_cast<double>(m.n_layers()) * static_cast<double>(union_edges.size()));
}

double imi_pair(const Multiplex& m, int a, int b) {
    check_layers(m);
    if (a < 0 || b < 0 || a >= m.n_layers() || b >= m.n_layers() || a == b)
        throw std::invalid_argument("imi: bad layer pair");

    const auto& ga = m.layers[static_cast<size_t>(a)];
    const auto& gb = m.layers[static_cast<size_t>(b)];
    int ka_max = 0, kb_max = 0;
    for (int v = 0; v < m.n; ++v) {
        ka_max = std::max(ka_max, ga.degree_int(v));
        kb_max = std::max(kb_max, gb.degree_int(v));
    }
    const int wa = ka_max + 1, wb = kb_max + 1;
    std::vector<int> joint(static_cast<size_t>(wa) * static_cast<size_t>(wb), 0);
    std::vector<int> ma(static_cast<size_t>(wa), 0), mb(static_cast<size_t>(wb), 0);
    for (int v = 0; v < m.n; ++v) {
        const int ka = ga.degree_int(v), kb = gb.degree_int(v);
        ++joint[static_cast<size_t>(ka) * static_cast<size_t>(wb) + static_cast<size_t>(kb)];
        ++ma[static_cast<size_t>(ka)];
        ++mb[static_cast<size_t>(kb)];
    }
    const double n = static_cast<double>(m.n);
    double mi = 0.0;
    for (int i = 0; i < wa; ++i) {
        if (ma[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < wb; ++j) {
            const int c = joint[static_cast<size_t>(i) * static_cast<size_t>(wb) + static_cast<size_t>(j)];
            if (c == 0) continue;
            const double pij = c / n;
            const double pi = ma[static_cast<size_t>(i)] / n;
            const double pj = mb[static_cast<size_t>(j)] / n;
            mi += pij * std::log2(pij / (pi * pj));
        }
    }
    return mi;
}

double avg_imi(const Multiplex& m) {
    check_layers(m);
    const int L = m.n_layers();
    if (L < 2) throw std::invalid_argument("imi: need at least two layers");
    double acc = 0.0;
    for (int a = 0; a < L; ++a)
        for (int b = a + 1; b < L; ++b) acc += imi_pair(m, a, b);
    return acc / (0.5 * static_cast<double>(L) * static_cast<double>(L - 1));
}

}  // namespace rmvg
