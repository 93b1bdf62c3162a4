#pragma once

#include <vector>

#include "proxiskel/geometry.hpp"
#include "proxiskel/skeleton.hpp"

namespace proxiskel {

// Sites are a subset U of the vertices of a connected, positively weighted
// graph; the metric is the shortest-path distance, and disc centres may lie
// anywhere on an edge. Skeleton edge lists index into `sites`.

struct GraphEdge {
    int a = 0, b = 0;
    double w = 0.0;
};

struct WeightedGraph {
    int n_vertices = 0;
    std::vector<int> sites;
    std::vector<GraphEdge> edges;
};

// Either a vertex or an interior point of an edge, at fraction t of the
// edge's weight from endpoint a. Fractions 0 and 1 normalize to vertices.
struct GraphPoint {
    int edge = -1;    // index into WeightedGraph::edges, -1 for a vertex
    int vertex = -1;  // vertex id when edge < 0
    double t = 0.0;

    static GraphPoint at_vertex(int v) { return {-1, v, 0.0}; }
    static GraphPoint on_edge(int e, double t) { return {e, -1, t}; }
    bool is_vertex() const { return edge < 0; }
};

bool operator==(const GraphPoint& a, const GraphPoint& b);
bool operator<(const GraphPoint& a, const GraphPoint& b);  // vertices first, then (edge, t)

struct DistanceIndex {
    int n = 0;
    double max_weight = 0.0;
    std::vector<double> d;  // n*n row-major

    double operator()(int u, int v) const { return d[static_cast<std::size_t>(u) * n + v]; }
};

// Distance comparisons tolerate eps_w = 1e-9 * max edge weight.
double graph_eps(const DistanceIndex& idx);

// Throws std::invalid_argument on malformed input (bad ids, nonpositive
// weights, empty site set), DisconnectedGraph if some vertex is unreachable.
void validate_graph(const WeightedGraph& g);

// Dijkstra from every vertex. Throws like validate_graph.
DistanceIndex apsp(const WeightedGraph& g);

// Distance from an arbitrary graph point to a vertex: min over the two
// endpoint routes for edge points.
double graphpoint_distance(const WeightedGraph& g, const DistanceIndex& idx,
                           const GraphPoint& p, int u);

// Distance between two arbitrary graph points (direct sub-edge route
// included when they share an edge).
double graphpoint_pair_distance(const WeightedGraph& g, const DistanceIndex& idx,
                                const GraphPoint& p, const GraphPoint& q);

// All points c with {d(c,u1), d(c,u2)} = {beta*D/2, |beta-2|*D/2} (both role
// assignments), where D = d(u1,u2). Distances to a fixed vertex are tent
// functions of the edge fraction, so solutions are per-piece linear solves.
// Vertices are returned once, as vertices. Sorted, deduplicated. u1, u2 are
// vertex ids of distinct sites; beta >= 1 finite.
std::vector<GraphPoint> candidate_centers(const WeightedGraph& g, const DistanceIndex& idx,
                                          int u1, int u2, Beta beta);

// Minimum total weight of two edge-disjoint u1-u2 paths (the shortest closed
// walk through both without reusing an edge), via min-cost 2-flow.
struct CycleInfo {
    bool exists = false;
    double length = 0.0;
};
CycleInfo shortest_circle(const WeightedGraph& g, int u1, int u2);

// Per-site-pair lens-existence bound: cycle/(2D) + 1 when a circle exists.
// Without one, lenses still exist for beta <= 2 (both centres fit on the
// geodesic), so the effective bound is 2.
struct PairBound {
    int site_i = 0, site_j = 0;  // indices into g.sites
    bool circle_exists = false;
    double bound = 2.0;
};
std::vector<PairBound> beta_bound_pairs(const WeightedGraph& g, const DistanceIndex& idx);

// min over site pairs of circle/(2D) + 1; always >= 2. Throws NoCycle if
// some pair has no circle (the expression is undefined there); callers that
// want the tolerant per-pair view use beta_bound_pairs.
double beta_bound(const WeightedGraph& g);

struct WeightedSkeleton {
    EdgeList edges;               // pairs of site indices
    std::vector<Edge> undefined;  // pairs whose lens family is undefined at this beta
    bool partial = false;         // true iff `undefined` is nonempty
};

// Edge (u1,u2) iff some candidate-centre pair at mutual distance (beta-1)*D
// spans a lens containing no other site. Closed leans inclusive, open
// exclusive, by graph_eps. Pairs with beta past their bound are reported and
// treated as non-edges. beta in [1, inf) finite; throws BetaOutOfRange below 1.
WeightedSkeleton weighted_beta_skeleton(const WeightedGraph& g, Beta beta, Variant variant);

// MST of the complete site graph under shortest-path distances; ties broken
// by lexicographic site-index pairs.
EdgeList graph_mst(const WeightedGraph& g);

// Edge (u1,u2) iff some graph point is strictly closer to both than to any
// other site. The margin is piecewise linear per edge; evaluated exactly at
// all its breakpoints (tent peaks and pairwise crossings).
EdgeList graph_delaunay(const WeightedGraph& g);

// Validates MST subseteq RNG subseteq G_beta' subseteq G_beta subseteq GG
// subseteq DG over the given betas in [1,2]. Grid endpoints map onto the
// named graphs: beta=2 is evaluated open (RNG), all other betas closed
// (beta=1 closed is GG).
ChainReport weighted_chain_check(const WeightedGraph& g, const std::vector<double>& betas);

// Advisory for beta < 1: reports per site pair whether the shortest circle
// reaches the required length D*(1 + 1/beta). Lenses below beta = 1 exist
// only on graphs with such circles; this never gates computation.
struct SmallBetaAdvice {
    int site_i = 0, site_j = 0;
    bool circle_exists = false;
    double circle_length = 0.0;
    double required_length = 0.0;
    bool feasible = false;
};
std::vector<SmallBetaAdvice> weighted_small_beta_advisory(const WeightedGraph& g, Beta beta);

}  // namespace proxiskel
