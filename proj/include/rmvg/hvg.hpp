#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rmvg/signals.hpp"

namespace rmvg {

enum class GraphMode { binary, weighted };

/// Undirected graph over time indices 0..n-1. Stored both as a flat edge
/// list (i < j, lexicographically sorted) and as a CSR adjacency with
/// per-vertex neighbor lists sorted ascending. Binary graphs carry weight 1
/// on every edge.
struct VisibilityGraph {
    int n = 0;
    GraphMode mode = GraphMode::binary;

    std::vector<std::pair<int, int>> edges;
    std::vector<double> edge_weights;

    std::vector<int> offsets;    // size n + 1
    std::vector<int> neighbors;  // size 2 * edges
    std::vector<double> weights; // parallel to neighbors

    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree_int(int v) const { return offsets[v + 1] - offsets[v]; }

    std::span<const int> adjacent(int v) const {
        return {neighbors.data() + offsets[v], static_cast<size_t>(degree_int(v))};
    }
    std::span<const double> adjacent_weights(int v) const {
        return {weights.data() + offsets[v], static_cast<size_t>(degree_int(v))};
    }

    /// Weight of edge (i, j), or 0 if absent.
    double weight_at(int i, int j) const;
    bool has_edge(int i, int j) const { return weight_at(i, j) != 0.0; }

    /// Build from an explicit edge list (for synthetic graphs in tests and
    /// tools). Weights must be positive; binary mode forces them to 1.
    static VisibilityGraph from_edges(int n, GraphMode mode,
                                      const std::vector<std::pair<int, int>>& edges,
                                      const std::vector<double>& weights = {});
};

/// Horizontal visibility graph of a series. Two samples are linked when every
/// sample strictly between them lies below both, with ties resolved exactly as
/// the forward scan dictates: an intermediate equal to the later sample blocks
/// the link, one equal to the earlier sample does not. In weighted mode an
/// edge (i, j) carries 1 / sqrt((j-i)^2 + (x_i-x_j)^2).
VisibilityGraph build_hvg(std::span<const double> series, GraphMode mode);
VisibilityGraph build_hvg(const Signal& s, GraphMode mode);

struct DegreeLawResult {
    double mean_degree = 0.0;
    std::vector<double> pk;  // pk[k] = empirical P(degree == k)
};

/// Empirical degree statistics of the binary graph of i.i.d. uniform noise.
DegreeLawResult degree_law_check(int length, std::uint64_t seed);

}  // namespace rmvg
