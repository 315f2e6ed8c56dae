#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmvg/graph_metrics.hpp"
#include "rmvg/hvg.hpp"
#include "rmvg/rng.hpp"

using namespace rmvg;

namespace {

// Exhaustive oracle: enumerate every simple path of each vertex pair by
// depth-first search, keep the shortest ones, and read betweenness,
// closeness and distances off those. Exponential, so only for small graphs.
// Lengths accumulate source-to-target edge by edge, the same order the
// library sums them, so equal-length detection agrees bit for bit.
struct PathCensus {
    double dist = std::numeric_limits<double>::infinity();
    double n_shortest = 0.0;
    std::vector<double> through;  // shortest paths crossing v as an interior vertex
};

class PairOracle {
public:
    explicit PairOracle(const VisibilityGraph& g) : g_(g), on_path_(static_cast<size_t>(g.n), 0) {}

    PathCensus census(int s, int t) {
        PathCensus out;
        out.through.assign(static_cast<size_t>(g_.n), 0.0);
        target_ = t;
        best_ = &out;
        on_path_[static_cast<size_t>(s)] = 1;
        walk(s, 0.0);
        on_path_[static_cast<size_t>(s)] = 0;
        return out;
    }

private:
    void walk(int v, double len) {
        if (v == target_) {
            if (len < best_->dist) {
                best_->dist = len;
                best_->n_shortest = 1.0;
                std::fill(best_->through.begin(), best_->through.end(), 0.0);
                record();
            } else if (len == best_->dist) {
                best_->n_shortest += 1.0;
                record();
            }
            return;
        }
        const auto adj = g_.adjacent(v);
        const auto w = g_.adjacent_weights(v);
        for (size_t k = 0; k < adj.size(); ++k) {
            const int u = adj[k];
            if (on_path_[static_cast<size_t>(u)]) continue;
            const double step = g_.mode == GraphMode::weighted ? 1.0 / w[k] : 1.0;
            on_path_[static_cast<size_t>(u)] = 1;
            stack_.push_back(u);
            walk(u, len + step);
            stack_.pop_back();
            on_path_[static_cast<size_t>(u)] = 0;
        }
    }

    void record() {
        // stack_ holds the path after the source, target included; interior
        // vertices are all but the last entry.
        for (size_t k = 0; k + 1 < stack_.size(); ++k)
            best_->through[static_cast<size_t>(stack_[k])] += 1.0;
    }

    const VisibilityGraph& g_;
    int target_ = 0;
    PathCensus* best_ = nullptr;
    std::vector<char> on_path_;
    std::vector<int> stack_;
};

struct OracleResult {
    std::vector<double> betweenness, closeness;
};

OracleResult oracle_centralities(const VisibilityGraph& g) {
    OracleResult out;
    out.betweenness.assign(static_cast<size_t>(g.n), 0.0);
    out.closeness.assign(static_cast<size_t>(g.n), 0.0);
    PairOracle oracle(g);
    for (int s = 0; s < g.n; ++s) {
        for (int t = s + 1; t < g.n; ++t) {
            const PathCensus c = oracle.census(s, t);
            if (!std::isfinite(c.dist)) continue;
            for (int v = 0; v < g.n; ++v)
                if (c.through[static_cast<size_t>(v)] > 0.0)
                    out.betweenness[static_cast<size_t>(v)] +=
                        c.through[static_cast<size_t>(v)] / c.n_shortest;
            const double closeness_term = std::exp2(-c.dist);
            out.closeness[static_cast<size_t>(s)] += closeness_term;
            out.closeness[static_cast<size_t>(t)] += closeness_term;
        }
    }
    return out;
}

VisibilityGraph random_hvg(Rng& rng, int n, GraphMode mode, bool quantized) {
    std::vector<double> x(static_cast<size_t>(n));
    for (auto& v : x) {
        v = rng.uniform(-1.0, 1.0);
        if (quantized) v = std::floor(v * 4.0) / 4.0;
    }
    return build_hvg(x, mode);
}

}  // namespace

TEST_CASE("centralities match the path-enumeration oracle on binary graphs") {
    Rng rng(2024);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(12));
        const auto g = random_hvg(rng, n, GraphMode::binary, rep % 2 == 0);
        const auto got = centralities(g);
        const auto want = oracle_centralities(g);
        CAPTURE(rep);
        for (int v = 0; v < n; ++v) {
            REQUIRE(got.betweenness[static_cast<size_t>(v)] ==
                    doctest::Approx(want.betweenness[static_cast<size_t>(v)]).epsilon(1e-12));
            REQUIRE(got.closeness[static_cast<size_t>(v)] ==
                    doctest::Approx(want.closeness[static_cast<size_t>(v)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("centralities match the oracle on weighted graphs") {
    Rng rng(2025);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(12));
        const auto g = random_hvg(rng, n, GraphMode::weighted, false);
        const auto got = centralities(g);
        const auto want = oracle_centralities(g);
        CAPTURE(rep);
        for (int v = 0; v < n; ++v) {
            REQUIRE(got.betweenness[static_cast<size_t>(v)] ==
                    doctest::Approx(want.betweenness[static_cast<size_t>(v)]).epsilon(1e-9));
            REQUIRE(got.closeness[static_cast<size_t>(v)] ==
                    doctest::Approx(want.closeness[static_cast<size_t>(v)]).epsilon(1e-9));
        }
    }
}

TEST_CASE("short edges route through the heap fallback and still agree") {
    // Weights above 1 mean lengths below 1, which the bucket queue cannot
    // host; mix both regimes in one graph.
    const std::vector<std::pair<int, int>> edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 3}};
    const std::vector<double> weights = {2.0, 4.0, 0.5, 0.25, 1.0};
    const auto g = VisibilityGraph::from_edges(4, GraphMode::weighted, edges, weights);
    const auto got = centralities(g);
    const auto want = oracle_centralities(g);
    for (int v = 0; v < 4; ++v) {
        CHECK(got.betweenness[static_cast<size_t>(v)] ==
              doctest::Approx(want.betweenness[static_cast<size_t>(v)]).epsilon(1e-12));
        CHECK(got.closeness[static_cast<size_t>(v)] ==
              doctest::Approx(want.closeness[static_cast<size_t>(v)]).epsilon(1e-12));
    }
}

TEST_CASE("frozen centrality examples") {
    SUBCASE("path of three") {
        const auto g = VisibilityGraph::from_edges(3, GraphMode::binary, {{0, 1}, {1, 2}}, {});
        CHECK(betweenness(g, 1) == 1.0);
        CHECK(betweenness(g, 0) == 0.0);
        CHECK(closeness(g, 1) == 1.0);
        CHECK(closeness(g, 0) == 0.75);
    }
    SUBCASE("star with three leaves") {
        const auto g =
            VisibilityGraph::from_edges(4, GraphMode::binary, {{0, 1}, {0, 2}, {0, 3}}, {});
        CHECK(betweenness(g, 0) == 3.0);
        CHECK(closeness(g, 0) == 1.5);
        CHECK(closeness(g, 1) == 1.0);
    }
    SUBCASE("triangle") {
        const auto g =
            VisibilityGraph::from_edges(3, GraphMode::binary, {{0, 1}, {1, 2}, {0, 2}}, {});
        for (int v = 0; v < 3; ++v) {
            CHECK(betweenness(g, v) == 0.0);
            CHECK(closeness(g, v) == 1.0);
        }
    }
    SUBCASE("two equal shortest paths split the credit") {
        // 0-1-3 and 0-2-3 around a square.
        const auto g = VisibilityGraph::from_edges(
            4, GraphMode::binary, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {});
        CHECK(betweenness(g, 1) == 0.5);
        CHECK(betweenness(g, 2) == 0.5);
    }
    SUBCASE("disconnected pairs contribute nothing") {
        const auto g =
            VisibilityGraph::from_edges(4, GraphMode::binary, {{0, 1}, {2, 3}}, {});
        CHECK(closeness(g, 0) == 0.5);
        CHECK(betweenness(g, 0) == 0.0);
        CHECK(closeness(g, 2) == 0.5);
    }
    SUBCASE("weighted path distances exponentiate") {
        const auto g = VisibilityGraph::from_edges(3, GraphMode::weighted, {{0, 1}, {1, 2}},
                                                   {0.5, 0.25});
        // lengths 2 and 4
        CHECK(closeness(g, 0) == doctest::Approx(std::exp2(-2.0) + std::exp2(-6.0)).epsilon(1e-15));
        CHECK(closeness(g, 1) == doctest::Approx(std::exp2(-2.0) + std::exp2(-4.0)).epsilon(1e-15));
        CHECK(betweenness(g, 1) == 1.0);
    }
}

TEST_CASE("degree counts neighbours or sums weights") {
    const std::vector<double> x = {0.3, -0.2, 0.8, 0.1};
    const auto gb = build_hvg(x, GraphMode::binary);
    const auto gw = build_hvg(x, GraphMode::weighted);
    for (int v = 0; v < gb.n; ++v) {
        CHECK(degree(gb, v) == static_cast<double>(gb.degree_int(v)));
        const auto w = gw.adjacent_weights(v);
        double sum = 0.0;
        for (double wk : w) sum += wk;
        CHECK(degree(gw, v) == doctest::Approx(sum).epsilon(1e-15));
    }
}

TEST_CASE("clustering fixed examples") {
    const auto triangle =
        VisibilityGraph::from_edges(3, GraphMode::binary, {{0, 1}, {1, 2}, {0, 2}}, {});
    const auto path = VisibilityGraph::from_edges(3, GraphMode::binary, {{0, 1}, {1, 2}}, {});

    SUBCASE("closed form counts the vertex itself") {
        for (int v = 0; v < 3; ++v) CHECK(clustering(triangle, v) == 1.0);
        // Path endpoint: neighbourhood {0,1} is fully linked.
        CHECK(clustering(path, 0) == 1.0);
        // Path middle: {0,1,2} has 2 of 3 possible links.
        CHECK(clustering(path, 1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("open form is the classic transitivity ratio") {
        for (int v = 0; v < 3; ++v) CHECK(clustering_open(triangle, v) == 1.0);
        CHECK(clustering_open(path, 0) == 0.0);  // degree below 2
        CHECK(clustering_open(path, 1) == 0.0);  // ends not linked
    }
    SUBCASE("isolated vertex scores zero in both forms") {
        const auto g = VisibilityGraph::from_edges(2, GraphMode::binary, {}, {});
        CHECK(clustering(g, 0) == 0.0);
        CHECK(clustering_open(g, 0) == 0.0);
    }
}

TEST_CASE("open clustering times degree never exceeds 2") {
    Rng rng(808);
    for (int rep = 0; rep < 80; ++rep) {
        const int n = 4 + static_cast<int>(rng.below(60));
        const auto g = random_hvg(rng, n, GraphMode::binary, rep % 2 == 0);
        for (int v = 0; v < n; ++v) {
            const double product = clustering_open(g, v) * degree(g, v);
            REQUIRE(product <= 2.0 + 1e-12);
        }
    }
}

TEST_CASE("the closed form can push the degree product past 2") {
    // Interior vertex of this series reaches 2.8; the bound applies to the
    // open form only, which is why bound checks use clustering_open.
    const std::vector<double> x = {0.4, 0.2, 0.3, 0.1, 0.5};
    const auto g = build_hvg(x, GraphMode::binary);
    double worst = 0.0;
    for (int v = 0; v < g.n; ++v) worst = std::max(worst, clustering(g, v) * degree(g, v));
    CHECK(worst > 2.1);
    for (int v = 0; v < g.n; ++v)
        CHECK(clustering_open(g, v) * degree(g, v) <= 2.0 + 1e-12);
}

TEST_CASE("oracle clustering by direct pair counting") {
    Rng rng(31);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(30));
        const auto g = random_hvg(rng, n, GraphMode::binary, rep % 2 == 1);
        for (int v = 0; v < n; ++v) {
            const auto adj = g.adjacent(v);
            std::vector<int> closed(adj.begin(), adj.end());
            closed.push_back(v);
            int links = 0;
            for (size_t a = 0; a < closed.size(); ++a)
                for (size_t b = a + 1; b < closed.size(); ++b)
                    links += g.has_edge(closed[a], closed[b]) ? 1 : 0;
            const size_t m = closed.size();
            const double want = m < 2 ? 0.0 : 2.0 * links / (static_cast<double>(m) * (m - 1));
            REQUIRE(clustering(g, v) == doctest::Approx(want).epsilon(1e-12));

            int open_links = 0;
            for (size_t a = 0; a < adj.size(); ++a)
                for (size_t b = a + 1; b < adj.size(); ++b)
                    open_links += g.has_edge(adj[a], adj[b]) ? 1 : 0;
            const size_t d = adj.size();
            const double want_open =
                d < 2 ? 0.0 : 2.0 * open_links / (static_cast<double>(d) * (d - 1));
            REQUIRE(clustering_open(g, v) == doctest::Approx(want_open).epsilon(1e-12));
        }
    }
}

TEST_CASE("property dispatch agrees with the direct calls") {
    Rng rng(9);
    const auto g = random_hvg(rng, 40, GraphMode::weighted, false);
    const auto all = all_vertex_properties(g);
    const auto cent = centralities(g);
    for (int v = 0; v < g.n; ++v) {
        CHECK(all.degree[static_cast<size_t>(v)] == degree(g, v));
        CHECK(all.clustering[static_cast<size_t>(v)] == clustering(g, v));
        CHECK(all.betweenness[static_cast<size_t>(v)] == cent.betweenness[static_cast<size_t>(v)]);
        CHECK(all.closeness[static_cast<size_t>(v)] == cent.closeness[static_cast<size_t>(v)]);
    }
    CHECK(vertex_properties(g, VertexProperty::degree) == all.degree);
    CHECK(vertex_properties(g, VertexProperty::clustering) == all.clustering);
    CHECK(vertex_properties(g, VertexProperty::betweenness) == all.betweenness);
    CHECK(vertex_properties(g, VertexProperty::closeness) == all.closeness);
}
