#pragma once

#include "proxiskel/geometry.hpp"

namespace proxiskel {

enum class LensForm {
    TwoDiscs,  // 0 < beta < inf: intersection of two metric discs
    Segment,   // beta = 0: the straight segment between the generators
    Strip,     // beta = inf: band between the perpendiculars at the generators
};

// Neighbourhood of a generator pair. For TwoDiscs both discs have the same
// radius and each generator lies in both discs; c1 is the centre on or above
// the positive side of the directed line v1 -> v2, c2 the one on or below.
struct Lens {
    LensForm form = LensForm::TwoDiscs;
    MetricSpec metric;
    Point2 v1, v2;
    Beta beta;
    Point2 c1, c2;
    double radius = 0.0;
    double gen_dist = 0.0;  // metric distance between the generators
};

// Builds the lens for one generator pair.
//
// For beta >= 1 the centres are the affine points
//   c1 = (1 - beta/2) v1 + (beta/2) v2,  c2 = (beta/2) v1 + (1 - beta/2) v2
// with radius beta * d(v1,v2) / 2, so d(v1,c1) = beta*d/2 and the discs
// nest monotonically in beta.
//
// For 0 < beta < 1 the radius is d(v1,v2) / (2*beta) and both centres are
// placed so that the disc boundaries pass through both generators. Off the
// Euclidean case the centres are found numerically on the metric bisector;
// they are not mirror images across the chord unless the metric is symmetric
// about it.
//
// beta = inf uses the strip convention (Euclidean perpendiculars) for every
// planar metric; see limit_membership for the true limit of bounded lenses.
//
// Throws DegenerateGenerators when v1 and v2 coincide, UnsupportedMetric for
// L1/Linf (those skeletons use their own lens representation).
Lens lens_construct(const MetricSpec& metric, Point2 v1, Point2 v2, Beta beta);

// Boundary tolerance for this lens: kRelEps * d(v1,v2).
double lens_eps(const Lens& lens);

// Membership test with tie rules: a point within lens_eps of the boundary
// counts as inside for the closed variant and outside for the open one.
// Open Segment/Strip forms use the relative interior (endpoints and bounding
// lines excluded).
bool point_in_lens(const Lens& lens, Point2 q, Variant variant);

// Lens whose membership realises the beta -> 0 or beta -> inf limit; used by
// the skeleton routines so the limit lens is built once per generator pair.
Lens limit_lens(const MetricSpec& metric, Point2 v1, Point2 v2, Beta beta);

// Membership in the limiting neighbourhood for beta = 0 or beta = inf.
// beta = 0 is the segment between the generators. For beta = inf the
// Euclidean case gives the perpendicular strip exactly; for other p the
// limit region is evaluated through a very large finite beta because it is
// bounded by lines tangent to the unit p-circle rather than perpendiculars.
// Lp metrics only; throws BetaOutOfRange for finite nonzero beta.
bool limit_membership(const MetricSpec& metric, Point2 v1, Point2 v2, Beta beta,
                      Point2 q, Variant variant);

}  // namespace proxiskel
