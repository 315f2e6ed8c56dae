#include <doctest.h>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "rmvg/esn.hpp"
#include "rmvg/multiplex.hpp"
#include "rmvg/signals.hpp"

using namespace rmvg;

namespace {

StateTrajectory columns_from(const std::vector<Signal>& series, int washout) {
    StateTrajectory traj;
    traj.washout = washout;
    traj.states.resize(series[0].size(), static_cast<int>(series.size()));
    for (size_t l = 0; l < series.size(); ++l)
        for (int t = 0; t < series[l].size(); ++t)
            traj.states(t, static_cast<int>(l)) = series[l][t];
    return traj;
}

// Shannon entropy (bits) of an integer degree sequence by exact counting.
double degree_entropy(const VisibilityGraph& g) {
    std::map<int, int> counts;
    for (int v = 0; v < g.n; ++v) ++counts[g.degree_int(v)];
    double h = 0.0;
    for (const auto& [k, c] : counts) {
        const double p = static_cast<double>(c) / g.n;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace

TEST_CASE("multiplex layers are the per-neuron visibility graphs") {
    const Signal a = gen_noise(60, 1);
    const Signal b = gen_noise(60, 2);
    const Signal c = gen_mso(60);
    const StateTrajectory traj = columns_from({a, b, c}, 10);

    for (GraphMode mode : {GraphMode::binary, GraphMode::weighted}) {
        const Multiplex m = build_multiplex(traj, mode);
        REQUIRE(m.n_layers() == 3);
        CHECK(m.n == 50);
        CHECK(m.mode == mode);
        const std::vector<const Signal*> cols = {&a, &b, &c};
        for (int l = 0; l < 3; ++l) {
            std::vector<double> post(cols[static_cast<size_t>(l)]->values.begin() + 10,
                                     cols[static_cast<size_t>(l)]->values.end());
            const VisibilityGraph want = build_hvg(std::span<const double>(post), mode);
            CHECK(m.layers[static_cast<size_t>(l)].edges == want.edges);
            CHECK(m.layers[static_cast<size_t>(l)].edge_weights == want.edge_weights);
        }
    }

    // A constant (all-zero) trajectory gives the plateau rule's path graph
    // in every layer.
    StateTrajectory zeros;
    zeros.washout = 0;
    zeros.states = Eigen::MatrixXd::Zero(6, 2);
    const Multiplex mz = build_multiplex(zeros, GraphMode::binary);
    for (const auto& layer : mz.layers) {
        REQUIRE(layer.edge_count() == 5);
        for (int t = 0; t < 5; ++t) CHECK(layer.edges[static_cast<size_t>(t)] == std::pair<int, int>(t, t + 1));
    }

    StateTrajectory tiny;
    tiny.washout = 3;
    tiny.states = Eigen::MatrixXd::Zero(4, 2);
    CHECK_THROWS_AS(build_multiplex(tiny, GraphMode::binary), std::invalid_argument);
}

TEST_CASE("binned entropy on pinned distributions") {
    CHECK(binned_entropy_bits({1.0, 1.0, 2.0, 2.0}, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binned_entropy_bits({0.7, 0.7, 0.7}, 50) == 0.0);
    std::vector<double> spread;
    for (int k = 0; k < 8; ++k) spread.push_back(static_cast<double>(k));
    CHECK(binned_entropy_bits(spread, 8) == doctest::Approx(3.0).epsilon(1e-12));
    // Mass 3/4 vs 1/4 over two bins.
    CHECK(binned_entropy_bits({0.0, 0.0, 0.0, 1.0}, 2) ==
          doctest::Approx(-0.75 * std::log2(0.75) - 0.25 * std::log2(0.25)).epsilon(1e-12));
    CHECK_THROWS_AS(binned_entropy_bits({}, 2), std::invalid_argument);
    CHECK_THROWS_AS(binned_entropy_bits({1.0}, 0), std::invalid_argument);
}

TEST_CASE("identical layers have zero heterogeneity, full overlap") {
    const Signal s = gen_noise(80, 3);
    const StateTrajectory traj = columns_from({s, s, s, s}, 0);
    const Multiplex m = build_multiplex(traj, GraphMode::binary);

    const AllHeterogeneity all = heterogeneity_all(m, 50);
    CHECK(all.degree.mean == 0.0);
    CHECK(all.clustering.mean == 0.0);
    CHECK(all.betweenness.mean == 0.0);
    CHECK(all.closeness.mean == 0.0);
    for (double v : all.degree.per_vertex) CHECK(v == 0.0);

    CHECK(aeo(m) == 1.0);

    // Every layer pair carries the full degree information of one layer.
    const double h = degree_entropy(m.layers[0]);
    CHECK(imi_pair(m, 0, 1) == doctest::Approx(h).epsilon(1e-12));
    CHECK(avg_imi(m) == doctest::Approx(h).epsilon(1e-12));
}

TEST_CASE("heterogeneity of hand-built layers") {
    // Layer A: path over 4 vertices (degrees 1,2,2,1). Layer B: complete
    // graph (degrees 3,3,3,3). The two property values differ at every
    // vertex, so each vertex contributes exactly one bit at b=2.
    Multiplex m;
    m.n = 4;
    m.mode = GraphMode::binary;
    m.layers.push_back(VisibilityGraph::from_edges(4, GraphMode::binary, {{0, 1}, {1, 2}, {2, 3}}));
    m.layers.push_back(VisibilityGraph::from_edges(
        4, GraphMode::binary, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));

    const HeterogeneityResult h = heterogeneity(m, VertexProperty::degree, 2);
    REQUIRE(h.per_vertex.size() == 4);
    for (double v : h.per_vertex) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.mean == doctest::Approx(1.0).epsilon(1e-12));

    // Entropy is capped by the bin count however the layers look.
    const Signal a = gen_noise(100, 4);
    const Signal b = gen_noise(100, 5);
    const Signal c = gen_noise(100, 6);
    const Multiplex big = build_multiplex(columns_from({a, b, c}, 0), GraphMode::binary);
    for (int bins : {2, 8, 50}) {
        const HeterogeneityResult r = heterogeneity(big, VertexProperty::degree, bins);
        for (double v : r.per_vertex) {
            CHECK(v >= 0.0);
            CHECK(v <= std::log2(static_cast<double>(bins)) + 1e-12);
        }
    }
}

TEST_CASE("analysis helpers agree with each other") {
    const Signal a = gen_noise(70, 7);
    const Signal b = gen_mso(70);
    const Multiplex m = build_multiplex(columns_from({a, b}, 5), GraphMode::weighted);

    const AllHeterogeneity all = heterogeneity_all(m, 20);
    CHECK(all.degree.per_vertex == heterogeneity(m, VertexProperty::degree, 20).per_vertex);
    CHECK(all.clustering.per_vertex == heterogeneity(m, VertexProperty::clustering, 20).per_vertex);
    CHECK(all.betweenness.per_vertex == heterogeneity(m, VertexProperty::betweenness, 20).per_vertex);
    CHECK(all.closeness.per_vertex == heterogeneity(m, VertexProperty::closeness, 20).per_vertex);

    const auto props = property_matrix(m, VertexProperty::closeness);
    REQUIRE(props.size() == 2);
    for (int t = 0; t < m.n; ++t) {
        std::vector<double> column = {props[0][static_cast<size_t>(t)], props[1][static_cast<size_t>(t)]};
        CHECK(instantaneous_entropy(m, t, VertexProperty::closeness, 10) ==
              binned_entropy_bits(column, 10));
    }
    CHECK_THROWS_AS(instantaneous_entropy(m, m.n, VertexProperty::degree, 10),
                    std::invalid_argument);
}

TEST_CASE("edge overlap on pinned layer sets") {
    auto two_layer = [](const std::vector<std::pair<int, int>>& e1,
                        const std::vector<std::pair<int, int>>& e2, int n) {
        Multiplex m;
        m.n = n;
        m.mode = GraphMode::binary;
        m.layers.push_back(VisibilityGraph::from_edges(n, GraphMode::binary, e1));
        m.layers.push_back(VisibilityGraph::from_edges(n, GraphMode::binary, e2));
        return m;
    };

    // Two edges in one layer, one shared: (2+1) / (2 layers * 2 union edges).
    CHECK(aeo(two_layer({{0, 1}, {1, 2}}, {{0, 1}}, 3)) == 0.75);
    // Disjoint single-edge layers: the floor 1/n_layers.
    CHECK(aeo(two_layer({{0, 1}}, {{1, 2}}, 3)) == 0.5);
    CHECK(aeo(two_layer({{0, 1}, {1, 2}}, {{0, 1}, {1, 2}}, 3)) == 1.0);

    Multiplex empty;
    empty.n = 3;
    empty.layers.push_back(VisibilityGraph::from_edges(3, GraphMode::binary, {}));
    CHECK_THROWS_AS(aeo(empty), std::invalid_argument);

    // Weighted layers count edges exactly like their binary counterparts.
    const Signal a = gen_noise(90, 8);
    const Signal b = gen_noise(90, 9);
    const StateTrajectory traj = columns_from({a, b}, 0);
    CHECK(aeo(build_multiplex(traj, GraphMode::weighted)) ==
          aeo(build_multiplex(traj, GraphMode::binary)));

    const Multiplex mb = build_multiplex(traj, GraphMode::binary);
    const double v = aeo(mb);
    CHECK(v >= 1.0 / mb.n_layers());
    CHECK(v <= 1.0);
}

TEST_CASE("layer mutual information bounds and independence") {
    const Signal a = gen_noise(2000, 10);
    const Signal b = gen_noise(2000, 11);
    const Multiplex m = build_multiplex(columns_from({a, b}, 0), GraphMode::binary);

    const double mi = imi_pair(m, 0, 1);
    CHECK(mi >= 0.0);
    CHECK(mi == doctest::Approx(imi_pair(m, 1, 0)).epsilon(1e-12));
    CHECK(mi <= std::min(degree_entropy(m.layers[0]), degree_entropy(m.layers[1])) + 1e-12);
    // Independent series leave only the finite-sample residual.
    CHECK(mi < 0.1);
    CHECK(avg_imi(m) == doctest::Approx(mi).epsilon(1e-12));

    const Signal c = gen_mso(300);
    const Signal d = gen_noise(300, 12);
    const Signal e = gen_noise(300, 13);
    const Multiplex m3 = build_multiplex(columns_from({c, d, e}, 0), GraphMode::binary);
    const double want =
        (imi_pair(m3, 0, 1) + imi_pair(m3, 0, 2) + imi_pair(m3, 1, 2)) / 3.0;
    CHECK(avg_imi(m3) == doctest::Approx(want).epsilon(1e-12));

    CHECK_THROWS_AS(imi_pair(m, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(imi_pair(m, 0, 2), std::invalid_argument);
    Multiplex single;
    single.n = m.n;
    single.layers.push_back(m.layers[0]);
    CHECK_THROWS_AS(avg_imi(single), std::invalid_argument);
}
