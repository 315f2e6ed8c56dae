#pragma once

#include <vector>

#include "rmvg/esn.hpp"
#include "rmvg/graph_metrics.hpp"
#include "rmvg/hvg.hpp"

namespace rmvg {

/// One visibility graph per reservoir neuron, built over the same
/// post-washout time range so all layers share the vertex set.
struct Multiplex {
    std::vector<VisibilityGraph> layers;
    GraphMode mode = GraphMode::binary;
    int n = 0;  // vertices per layer

    int n_layers() const { return static_cast<int>(layers.size()); }
};

Multiplex build_multiplex(const StateTrajectory& traj, GraphMode mode);

/// Property value of every vertex in every layer; result[l][t].
std::vector<std::vector<double>> property_matrix(const Multiplex& m, VertexProperty kind);

/// Shannon entropy (bits) of values binned into `bins` equal-width cells
/// spanning [min, max] of the values themselves; 0 when the range collapses.
double binned_entropy_bits(const std::vector<double>& values, int bins);

/// Entropy across layers of one vertex's property values.
double instantaneous_entropy(const Multiplex& m, int t, VertexProperty kind, int bins);

struct HeterogeneityResult {
    double mean = 0.0;            // average over vertices
    std::vector<double> per_vertex;
};

HeterogeneityResult heterogeneity(const Multiplex& m, VertexProperty kind, int bins);

struct AllHeterogeneity {
    HeterogeneityResult degree, clustering, betweenness, closeness;
};

/// All four property heterogeneities; shares one traversal pass per layer
/// between betweenness and closeness, so it is much cheaper than four
/// separate calls.
AllHeterogeneity heterogeneity_all(const Multiplex& m, int bins);

/// Average edge overlap: how much the layers' edge sets agree, from
/// 1/n_layers (no agreement) to 1 (identical layers). Weighted layers are
/// binarized first.
double aeo(const Multiplex& m);

/// Mutual information (bits) between the integer degree sequences of two
/// layers, from exact joint counting.
double imi_pair(const Multiplex& m, int a, int b);

/// Mean of imi_pair over all unordered layer pairs.
double avg_imi(const Multiplex& m);

}  // namespace rmvg
