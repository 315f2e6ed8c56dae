#pragma once

#include <vector>

#include "rmvg/hvg.hpp"

namespace rmvg {

enum class VertexProperty { degree, clustering, betweenness, closeness };

/// Degree of v: neighbor count in binary mode, sum of incident edge weights
/// in weighted mode.
double degree(const VisibilityGraph& g, int v);

/// Clustering of v over the closed neighborhood {v} + N(v): the ordered-pair
/// sum of adjacency entries inside it, divided by |C|(|C|-1). Vertices with
/// no neighbor score 0.
double clustering(const VisibilityGraph& g, int v);

/// Classical clustering over the open neighborhood N(v) only; this is the
/// variant the 2/degree upper bound applies to.
double clustering_open(const VisibilityGraph& g, int v);

/// Shortest-path betweenness of every vertex (pair endpoints excluded, each
/// unordered pair counted once). Weighted mode measures paths by 1/weight
/// per edge.
std::vector<double> betweenness_all(const VisibilityGraph& g);

/// Closeness of every vertex: sum over other vertices of 2^(-distance).
/// Unreachable vertices contribute nothing.
std::vector<double> closeness_all(const VisibilityGraph& g);

double betweenness(const VisibilityGraph& g, int v);  // runs the full pass
double closeness(const VisibilityGraph& g, int v);    // single traversal

struct Centralities {
    std::vector<double> betweenness;
    std::vector<double> closeness;
};

/// Betweenness and closeness from one traversal sweep; cheaper than two
/// separate passes when both are needed.
Centralities centralities(const VisibilityGraph& g);

std::vector<double> vertex_properties(const VisibilityGraph& g, VertexProperty kind);

struct AllVertexProperties {
    std::vector<double> degree;
    std::vector<double> clustering;
    std::vector<double> betweenness;
    std::vector<double> closeness;
};

AllVertexProperties all_vertex_properties(const VisibilityGraph& g);

}  // namespace rmvg
