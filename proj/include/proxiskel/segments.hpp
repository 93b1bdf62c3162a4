#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "proxiskel/geometry.hpp"
#include "proxiskel/lens.hpp"
#include "proxiskel/skeleton.hpp"

namespace proxiskel {

// Closed segment site, parametrised as q(t) = (1-t)*p1 + t*p2 for t in [0,1].
struct Segment {
    Point2 p1, p2;

    Point2 at(double t) const { return p1 * (1.0 - t) + p2 * t; }
    double length() const { return dist2(p1, p2); }
};

double point_segment_distance(Point2 q, const Segment& s);

// Euclidean distance between two closed segments; 0 exactly when they share
// a point (crossing detected by orientation tests, not by the distance
// minimum going to zero numerically).
double segment_segment_distance(const Segment& a, const Segment& b);

// Sites must have positive length and be pairwise disjoint (no shared point,
// endpoints included). Throws std::invalid_argument otherwise.
void require_disjoint_segments(const std::vector<Segment>& segs);

// Parameter range {t in [0,1] : q(t) in the closed disc(c, r)}, or nullopt
// when the segment misses the disc. Solved from the quadratic |q(t)-c|^2 =
// r^2, so tangency yields a one-point interval.
std::optional<std::pair<double, double>> segment_disc_interval(const Segment& s, Point2 c,
                                                               double r);

// True iff the segment meets the lens: the two disc intervals overlap inside
// [0,1]. Boundary ties within lens_eps resolve inward for closed and outward
// for open, so a segment grazing the rim at a single point answers true /
// false respectively. Euclidean TwoDiscs lenses only.
bool segment_intersects_lens(const Segment& s, const Lens& lens, Variant variant);

// Coverage of the (t1,t2) parameter square for one generator pair: sample
// (k1/m, k2/m) is covered when the lens spanned by q(k1/m) and w(k2/m) meets
// some segment other than the two generators. The pair forms an edge iff
// some sample stays uncovered.
struct ParamSquareCover {
    int s1 = 0, s2 = 0;
    int m = 0;                  // subdivisions per axis; samples at k/m, k = 0..m
    std::vector<char> covered;  // (m+1)^2 entries, row-major in k1

    bool covered_at(int k1, int k2) const {
        return covered[static_cast<std::size_t>(k1) * (m + 1) + k2] != 0;
    }
    bool fully_covered() const;
};

ParamSquareCover param_square_cover(const std::vector<Segment>& segs, int i, int j, Beta beta,
                                    Variant variant, int m);

// Certificate for a reported edge: the lens at (k1/m, k2/m) meets no other
// segment. The fractions are stored instead of evaluated doubles so the
// witness re-verifies exactly, and k/m = 2k/(2m) makes witnesses survive
// grid doubling unchanged.
struct SegmentWitness {
    int k1 = 0;
    int k2 = 0;
    int m = 0;
};

struct SegmentSkeleton {
    EdgeList edges;
    std::vector<SegmentWitness> witnesses;  // parallel to edges
};

// Grid-sampled beta-skeleton over segment sites, Euclidean metric, finite
// beta > 0. Edges are certified by their witness lens; absences may be false
// negatives at coarse resolution (one-sided error), and doubling the
// resolution never removes an edge. The variant applies to the lens
// emptiness test. Throws ResolutionTooSmall for resolution < 2 and
// BetaOutOfRange for beta = 0 or beta = inf. The plain version parallelises
// the pair scans; the serial one is the reference both must agree with.
SegmentSkeleton segment_beta_skeleton(const std::vector<Segment>& segs, Beta beta,
                                      Variant variant, int resolution);
SegmentSkeleton segment_beta_skeleton_serial(const std::vector<Segment>& segs, Beta beta,
                                             Variant variant, int resolution);

// Nesting check at fixed resolution, closed variant throughout: stages rng
// (beta 2), the given betas descending through the interior of [1,2], and
// gabriel (beta 1). On a shared sample grid every larger-beta witness lens
// contains the smaller-beta lens for the same sample, so a violation means a
// defect, not sampling noise. Betas outside [1,2] throw BetaOutOfRange.
ChainReport chain_check_segments(const std::vector<Segment>& segs,
                                 const std::vector<double>& betas, int resolution);

}  // namespace proxiskel
