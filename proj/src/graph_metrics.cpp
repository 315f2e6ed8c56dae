#include "rmvg/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace rmvg {

double degree(const VisibilityGraph& g, int v) {
    if (g.mode == GraphMode::binary) return static_cast<double>(g.degree_int(v));
    double acc = 0.0;
    for (double w : g.adjacent_weights(v)) acc += w;
    return acc;
}

namespace {

double neighborhood_pair_sum(const VisibilityGraph& g, int v, bool include_v) {
    const auto adj = g.adjacent(v);
    double acc = 0.0;
    for (size_t a = 0; a < adj.size(); ++a)
        for (size_t b = a + 1; b < adj.size(); ++b)
            acc += g.weight_at(adj[a], adj[b]);
    if (include_v)
        for (double w : g.adjacent_weights(v)) acc += w;
    return acc;
}

}  // namespace

double clustering(const VisibilityGraph& g, int v) {
    const int d = g.degree_int(v);
    if (d == 0) return 0.0;
    const double members = static_cast<double>(d + 1);
    return 2.0 * neighborhood_pair_sum(g, v, true) / (members * (members - 1.0));
}

double clustering_open(const VisibilityGraph& g, int v) {
    const int d = g.degree_int(v);
    if (d < 2) return 0.0;
    const double dd = static_cast<double>(d);
    return 2.0 * neighborhood_pair_sum(g, v, false) / (dd * (dd - 1.0));
}

namespace {

// Single-source shortest paths with the bookkeeping Brandes' accumulation
// needs: path counts and a finalization order. Buffers are reused across
// sources. Weighted traversal uses a bucket queue of width 1, which is
// label-setting because every edge length 1/w is >= 1 for visibility-graph
// weights; graphs violating that (synthetic ones) fall back to a heap.
class SsspEngine {
public:
    explicit SsspEngine(const VisibilityGraph& g)
        : g_(g),
          dist_(static_cast<size_t>(g.n)),
          hops_(static_cast<size_t>(g.n)),
          sigma_(static_cast<size_t>(g.n)),
          delta_(static_cast<size_t>(g.n)),
          done_(static_cast<size_t>(g.n)),
          order_(),
          queue_() {
        order_.reserve(static_cast<size_t>(g.n));
        queue_.reserve(static_cast<size_t>(g.n));
        if (g.mode == GraphMode::weighted) {
            length_.resize(g.weights.size());
            double min_len = std::numeric_limits<double>::infinity();
            for (size_t k = 0; k < g.weights.size(); ++k) {
                length_[k] = 1.0 / g.weights[k];
                min_len = std::min(min_len, length_[k]);
            }
            bucketed_ = min_len >= 1.0;
            pow2_.clear();
        } else {
            // Hop-count attenuation table; exact powers of two.
            pow2_.resize(static_cast<size_t>(g.n) + 1);
            for (int d = 0; d <= g.n; ++d) pow2_[static_cast<size_t>(d)] = std::ldexp(1.0, -d);
        }
    }

    // Runs one source; afterwards order_/dist_/sigma_ describe the tree.
    void run(int s) {
        if (g_.mode == GraphMode::binary) bfs(s);
        else if (bucketed_) dijkstra_buckets(s);
        else dijkstra_heap(s);
    }

    /// Closeness of the current source.
    double source_closeness(int s) const {
        double acc = 0.0;
        if (g_.mode == GraphMode::binary) {
            for (int v : order_)
                if (v != s) acc += pow2_[static_cast<size_t>(hops_[static_cast<size_t>(v)])];
        } else {
            for (int v : order_) {
                if (v == s) continue;
                const double d = dist_[static_cast<size_t>(v)];
                if (d < 1100.0) acc += std::exp2(-d);  // beyond this exp2 underflows to 0
            }
        }
        return acc;
    }

    /// Brandes' dependency accumulation into bc (excluding the source itself).
    void accumulate(int s, std::vector<double>& bc) {
        std::fill(delta_.begin(), delta_.end(), 0.0);
        for (size_t k = order_.size(); k-- > 0;) {
            const int w = order_[k];
            const double coeff = (1.0 + delta_[static_cast<size_t>(w)]) / sigma_[static_cast<size_t>(w)];
            const auto adj = g_.adjacent(w);
            if (g_.mode == GraphMode::binary) {
                const int hw = hops_[static_cast<size_t>(w)];
                for (int v : adj)
                    if (hops_[static_cast<size_t>(v)] + 1 == hw)
                        delta_[static_cast<size_t>(v)] += sigma_[static_cast<size_t>(v)] * coeff;
            } else {
                const double dw = dist_[static_cast<size_t>(w)];
                const int base = g_.offsets[w];
                for (size_t a = 0; a < adj.size(); ++a) {
                    const int v = adj[a];
                    if (dist_[static_cast<size_t>(v)] + length_[static_cast<size_t>(base) + a] == dw)
                        delta_[static_cast<size_t>(v)] += sigma_[static_cast<size_t>(v)] * coeff;
                }
            }
            if (w != s) bc[static_cast<size_t>(w)] += delta_[static_cast<size_t>(w)];
        }
    }

private:
    void bfs(int s) {
        std::fill(hops_.begin(), hops_.end(), -1);
        std::fill(sigma_.begin(), sigma_.end(), 0.0);
        order_.clear();
        queue_.clear();
        hops_[static_cast<size_t>(s)] = 0;
        sigma_[static_cast<size_t>(s)] = 1.0;
        queue_.push_back(s);
        for (size_t head = 0; head < queue_.size(); ++head) {
            const int v = queue_[head];
            order_.push_back(v);
            const int hv = hops_[static_cast<size_t>(v)];
            for (int w : g_.adjacent(v)) {
                if (hops_[static_cast<size_t>(w)] < 0) {
                    hops_[static_cast<size_t>(w)] = hv + 1;
                    queue_.push_back(w);
                }
                if (hops_[static_cast<size_t>(w)] == hv + 1)
                    sigma_[static_cast<size_t>(w)] += sigma_[static_cast<size_t>(v)];
            }
        }
    }

    void dijkstra_buckets(int s) {
        const double inf = std::numeric_limits<double>::infinity();
        std::fill(dist_.begin(), dist_.end(), inf);
        std::fill(sigma_.begin(), sigma_.end(), 0.0);
        std::fill(done_.begin(), done_.end(), 0);
        order_.clear();
        dist_[static_cast<size_t>(s)] = 0.0;
        sigma_[static_cast<size_t>(s)] = 1.0;
        push_bucket(0, s);
        int pending = 1;
        for (size_t idx = 0; pending > 0; ++idx) {
            if (idx >= buckets_.size()) break;
            // Note: buckets_ may grow while relaxing, so index it afresh each
            // time instead of holding a reference.
            for (size_t at = 0; at < buckets_[idx].size(); ++at) {
                const int v = buckets_[idx][at];
                --pending;
                if (done_[static_cast<size_t>(v)]) continue;
                done_[static_cast<size_t>(v)] = 1;
                order_.push_back(v);
                const double dv = dist_[static_cast<size_t>(v)];
                const auto adj = g_.adjacent(v);
                const int base = g_.offsets[v];
                for (size_t a = 0; a < adj.size(); ++a) {
                    const int w = adj[a];
                    if (done_[static_cast<size_t>(w)]) continue;
                    const double nd = dv + length_[static_cast<size_t>(base) + a];
                    if (nd < dist_[static_cast<size_t>(w)]) {
                        dist_[static_cast<size_t>(w)] = nd;
                        sigma_[static_cast<size_t>(w)] = sigma_[static_cast<size_t>(v)];
                        push_bucket(static_cast<size_t>(nd), w);
                        ++pending;
                    } else if (nd == dist_[static_cast<size_t>(w)]) {
                        sigma_[static_cast<size_t>(w)] += sigma_[static_cast<size_t>(v)];
                    }
                }
            }
            buckets_[idx].clear();
        }
        // Anything left pending is a stale entry in a later bucket; clear it.
        if (pending > 0)
            for (auto& b : buckets_) b.clear();
    }

    void push_bucket(size_t idx, int v) {
        if (idx >= buckets_.size()) buckets_.resize(idx + 1);
        buckets_[idx].push_back(v);
    }

    void dijkstra_heap(int s) {
        const double inf = std::numeric_limits<double>::infinity();
        std::fill(dist_.begin(), dist_.end(), inf);
        std::fill(sigma_.begin(), sigma_.end(), 0.0);
        std::fill(done_.begin(), done_.end(), 0);
        order_.clear();
        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
        dist_[static_cast<size_t>(s)] = 0.0;
        sigma_[static_cast<size_t>(s)] = 1.0;
        pq.emplace(0.0, s);
        while (!pq.empty()) {
            const auto [dv, v] = pq.top();
            pq.pop();
            if (done_[static_cast<size_t>(v)]) continue;
            done_[static_cast<size_t>(v)] = 1;
            order_.push_back(v);
            const auto adj = g_.adjacent(v);
            const int base = g_.offsets[v];
            for (size_t a = 0; a < adj.size(); ++a) {
                const int w = adj[a];
                if (done_[static_cast<size_t>(w)]) continue;
                const double nd = dv + length_[static_cast<size_t>(base) + a];
                if (nd < dist_[static_cast<size_t>(w)]) {
                    dist_[static_cast<size_t>(w)] = nd;
                    sigma_[static_cast<size_t>(w)] = sigma_[static_cast<size_t>(v)];
                    pq.emplace(nd, w);
                } else if (nd == dist_[static_cast<size_t>(w)]) {
                    sigma_[static_cast<size_t>(w)] += sigma_[static_cast<size_t>(v)];
                }
            }
        }
    }

    const VisibilityGraph& g_;
    std::vector<double> dist_;
    std::vector<int> hops_;
    std::vector<double> sigma_;
    std::vector<double> delta_;
    std::vector<char> done_;
    std::vector<int> order_;
    std::vector<int> queue_;
    std::vector<double> length_;
    std::vector<double> pow2_;
    std::vector<std::vector<int>> buckets_;
    bool bucketed_ = false;
};

}  // namespace

Centralities centralities(const VisibilityGraph& g) {
    Centralities c;
    c.betweenness.assign(static_cast<size_t>(g.n), 0.0);
    c.closeness.assign(static_cast<size_t>(g.n), 0.0);
    SsspEngine engine(g);
    for (int s = 0; s < g.n; ++s) {
        engine.run(s);
        c.closeness[static_cast<size_t>(s)] = engine.source_closeness(s);
        engine.accumulate(s, c.betweenness);
    }
    // Each unordered pair was seen from both endpoints.
    for (double& b : c.betweenness) b *= 0.5;
    return c;
}

std::vector<double> betweenness_all(const VisibilityGraph& g) { return centralities(g).betweenness; }

std::vector<double> closeness_all(const VisibilityGraph& g) { return centralities(g).closeness; }

double betweenness(const VisibilityGraph& g, int v) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("betweenness: vertex out of range");
    return centralities(g).betweenness[static_cast<size_t>(v)];
}

double closeness(const VisibilityGraph& g, int v) {
    if (v < 0 || v >= g.n) throw std::invalid_argument("closeness: vertex out of range");
    SsspEngine engine(g);
    engine.run(v);
    return engine.source_closeness(v);
}

std::vector<double> vertex_properties(const VisibilityGraph& g, VertexProperty kind) {
    std::vector<double> out(static_cast<size_t>(g.n));
    switch (kind) {
        case VertexProperty::degree:
            for (int v = 0; v < g.n; ++v) out[static_cast<size_t>(v)] = degree(g, v);
            break;
        case VertexProperty::clustering:
            for (int v = 0; v < g.n; ++v) out[static_cast<size_t>(v)] = clustering(g, v);
            break;
        case VertexProperty::betweenness:
            out = betweenness_all(g);
            break;
        case VertexProperty::closeness:
            out = closeness_all(g);
            break;
    }
    return out;
}

AllVertexProperties all_vertex_properties(const VisibilityGraph& g) {
    AllVertexProperties p;
    p.degree.resize(static_cast<size_t>(g.n));
    p.clustering.resize(static_cast<size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
        p.degree[static_cast<size_t>(v)] = degree(g, v);
        p.clustering[static_cast<size_t>(v)] = clustering(g, v);
    }
    Centralities c = centralities(g);
    p.betweenness = std::move(c.betweenness);
    p.closeness = std::move(c.closeness);
    return p;
}

}  // namespace rmvg
