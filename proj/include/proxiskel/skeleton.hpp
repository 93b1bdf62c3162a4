#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "proxiskel/geometry.hpp"
#include "proxiskel/lens.hpp"

namespace proxiskel {

// Undirected edge, canonical form first < second; edge lists are sorted
// lexicographically so equal graphs compare equal.
using Edge = std::pair<int, int>;
using EdgeList = std::vector<Edge>;

// Throws DegenerateGenerators when two input points coincide within a
// relative tolerance of 1e-12.
void require_distinct_points(const std::vector<Point2>& pts);

// Pairwise lens-emptiness skeleton for lp metrics, O(n^3). Finite beta tests
// the constructed lens; beta = 0 and beta = inf use the limiting membership.
// The plain version parallelises the pair loop; the serial one is the
// reference implementation both must agree with.
EdgeList beta_skeleton_brute(const std::vector<Point2>& pts, const MetricSpec& metric,
                             Beta beta, Variant variant);
EdgeList beta_skeleton_brute_serial(const std::vector<Point2>& pts, const MetricSpec& metric,
                                    Beta beta, Variant variant);

// Closed unit-beta euclidean skeleton, computed from the diametral-disc
// criterion directly.
EdgeList gabriel_graph(const std::vector<Point2>& pts);

// Open beta=2 euclidean skeleton: edge unless some point is strictly closer
// than d(v1,v2) to both ends.
EdgeList relative_neighborhood_graph(const std::vector<Point2>& pts);

struct DelaunayResult {
    EdgeList edges;
    std::vector<std::array<int, 3>> triangles;  // vertex indices, ccw
};

// Incremental euclidean Delaunay triangulation. Requires at least three
// points not all on one line; throws CollinearInput otherwise.
DelaunayResult delaunay_triangulation(const std::vector<Point2>& pts);

// Checks the defining property: no point lies inside any triangle's
// circumcircle by more than rel_margin * circumradius.
bool delaunay_empty_circumcircle(const std::vector<Point2>& pts,
                                 const std::vector<std::array<int, 3>>& triangles,
                                 double rel_margin = 1e-9);

// Minimum spanning tree of the complete graph weighted by the metric.
EdgeList metric_mst(const std::vector<Point2>& pts, const MetricSpec& metric);

// Circle-based variant (euclidean, beta >= 1): the neighbourhood is the
// union of the two circles of radius beta*d/2 through both generators, so
// it contains the lens and the resulting graph is a subgraph of the
// lens-based skeleton.
EdgeList circle_based_skeleton(const std::vector<Point2>& pts, Beta beta, Variant variant);

struct ChainViolation {
    std::string from_stage;
    std::string to_stage;
    Edge edge;  // present in from_stage but missing from to_stage
};

struct ChainReport {
    std::vector<std::string> stages;        // smallest expected graph first
    std::vector<std::size_t> edge_counts;   // parallel to stages
    std::vector<ChainViolation> violations;
    bool ok = false;
};

// Verifies the nesting mst <= rng <= G_beta (closed, betas descending)
// <= gabriel <= delaunay for betas inside [1,2]. Violations are reported,
// not thrown; the rng -> G_2 link assumes no blocker sits within the
// boundary tolerance of a lens (general position).
ChainReport inclusion_chain_check(const std::vector<Point2>& pts,
                                  const std::vector<double>& betas);

}  // namespace proxiskel
