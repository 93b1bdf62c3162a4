#pragma once

#include <vector>

#include "proxiskel/geometry.hpp"
#include "proxiskel/skeleton.hpp"

namespace proxiskel {

// The l1 and linf skeletons share one implementation working in "chebyshev
// coordinates": l1 input is rotated by (u,w) = (x+y, x-y), under which l1
// distance becomes max(|du|,|dw|); linf input is already chebyshev. Discs are
// axis-aligned squares there and every lens is an axis-aligned box.

// Map a point into / out of the chebyshev frame of the given metric.
Point2 to_cheb_frame(const MetricSpec& metric, Point2 p);
Point2 from_cheb_frame(const MetricSpec& metric, Point2 q);

// Axis-aligned box in chebyshev coordinates.
struct RotBox {
    double ulo = 0, uhi = 0, wlo = 0, whi = 0;
};

// Membership with the usual tie rules; eps is the pair tolerance. A box
// dimension flatter than the tolerance is treated as a segment: the open
// variant then tests the relative interior instead of the (empty) interior.
bool rotbox_contains(const RotBox& box, Point2 cheb_q, Variant variant, double eps);

// Per-pair normalized frame: v1 maps to (0,0), v2 to (D,h) with 0 <= h <= D
// (axes swapped and/or flipped as needed), where D is the pair's chebyshev
// distance. All lens formulas below live in this frame.
struct PairFrame {
    double D = 0, h = 0;
    bool rotate = false;   // metric rotation applied before the frame map
    bool swap_uw = false;
    bool neg_u = false, neg_w = false;
    double u0 = 0, w0 = 0;  // frame origin in (possibly swapped/flipped) cheb coords

    Point2 map(Point2 xy) const;    // original coordinates -> normalized frame
    Point2 unmap(Point2 nf) const;  // normalized frame -> original coordinates
};

PairFrame pair_frame(const MetricSpec& metric, Point2 v1, Point2 v2);

// Admissible lens description in the normalized frame. Every lens is a box
// [0,D] x [p,q]; for beta >= 1 the pairs (p,q) form two parameter rectangles
// (intersected with the width window D <= q-p <= min(beta,2)*D), one per
// ordering of the two centre offsets. For beta < 1 a single box remains: the
// one with the generators at opposite corners, independent of beta.
struct L1LensFamily {
    double D = 0, h = 0;
    bool small_beta = false;  // 0 < beta < 1
    RotBox small_box;         // valid when small_beta

    struct ParamRect {
        double pl = 0, ph = 0, ql = 0, qh = 0;
    } part[2];                      // beta >= 1 only
    double width_min = 0, width_max = 0;
    std::vector<RotBox> extremal;   // distinct maximal members (top, bottom)
    RotBox representative;          // centred member (beta = 1) or the top one
};

// Lens family for one generator pair; beta is clamped to 2 from above because
// emptiness decisions stop changing there. Throws DegenerateGenerators for
// coincident points, BetaOutOfRange for beta = 0 (that neighbourhood is the
// plain segment, not a box family).
L1LensFamily canonical_lenses_l1(const MetricSpec& metric, Point2 v1, Point2 v2, Beta beta);

// Edge decision for one pair given the w-values of blockers inside the u-slab
// (normalized frame). Exposed for the sweep stage and the tests.
bool l1_family_feasible(const L1LensFamily& fam, const std::vector<double>& slab_blockers,
                        double eps, Variant variant);

// O(n^2 * n) reference skeleton for l1/linf. Supports beta = 0 (segment
// neighbourhood), 0 < beta < 1 (corner box), and beta >= 1 (box family,
// clamped to 2; beta = inf uses the stabilised beta = 2 decision).
EdgeList polyhedral_beta_skeleton_brute(const std::vector<Point2>& pts, const MetricSpec& metric,
                                        Beta beta, Variant variant);

// O(n^2) sweep for 0 < beta < 1 (the result does not depend on beta in that
// range). Points are processed in u-order in groups of equal u; each earlier
// point keeps running one-sided w-bounds that decide emptiness of the corner
// box in O(1) per pair.
EdgeList sweep_small_beta(const std::vector<Point2>& pts, const MetricSpec& metric,
                          Variant variant);

// Candidate pairs for the beta >= 1 sweep: pairs whose open unit-beta
// neighbourhood (some sliding square of side D) is empty. Every beta >= 1
// edge, open or closed, is such a pair. Exact but quadratic with a linear
// scan per surviving pair.
EdgeList l1_delaunay_candidates(const std::vector<Point2>& pts, const MetricSpec& metric);

// Sweep skeleton for beta >= 1 (clamped to 2): generates candidates, then
// decides each in O(log n) by directional max-coordinate queries over a
// segment tree. The stage function is the O((n+m) log n) kernel operating on
// a precomputed candidate list (it returns exactly the candidate pairs whose
// lens family has an empty member).
EdgeList sweep_large_beta(const std::vector<Point2>& pts, const MetricSpec& metric, Beta beta,
                          Variant variant);
EdgeList sweep_large_beta_stage(const std::vector<Point2>& pts, const MetricSpec& metric,
                                Beta beta, Variant variant, const EdgeList& candidates);

}  // namespace proxiskel
