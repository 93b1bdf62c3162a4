#include "proxiskel/segments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace proxiskel {

namespace {

double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

bool on_segment_collinear(Point2 a, Point2 b, Point2 q) {
    return std::fmin(a.x, b.x) <= q.x && q.x <= std::fmax(a.x, b.x) &&
           std::fmin(a.y, b.y) <= q.y && q.y <= std::fmax(a.y, b.y);
}

bool segments_meet(const Segment& s, const Segment& t) {
    double o1 = orient(s.p1, s.p2, t.p1);
    double o2 = orient(s.p1, s.p2, t.p2);
    double o3 = orient(t.p1, t.p2, s.p1);
    double o4 = orient(t.p1, t.p2, s.p2);
    if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
        o4 != 0)
        return true;
    if (o1 == 0 && on_segment_collinear(s.p1, s.p2, t.p1)) return true;
    if (o2 == 0 && on_segment_collinear(s.p1, s.p2, t.p2)) return true;
    if (o3 == 0 && on_segment_collinear(t.p1, t.p2, s.p1)) return true;
    if (o4 == 0 && on_segment_collinear(t.p1, t.p2, s.p2)) return true;
    return false;
}

}  // namespace

double point_segment_distance(Point2 q, const Segment& s) {
    Point2 d = s.p2 - s.p1;
    double len2 = dot(d, d);
    if (len2 == 0.0) return dist2(q, s.p1);
    double t = dot(q - s.p1, d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist2(q, s.at(t));
}

double segment_segment_distance(const Segment& a, const Segment& b) {
    if (segments_meet(a, b)) return 0.0;
    double d = point_segment_distance(a.p1, b);
    d = std::fmin(d, point_segment_distance(a.p2, b));
    d = std::fmin(d, point_segment_distance(b.p1, a));
    d = std::fmin(d, point_segment_distance(b.p2, a));
    return d;
}

void require_disjoint_segments(const std::vector<Segment>& segs) {
    const int n = static_cast<int>(segs.size());
    for (int i = 0; i < n; ++i)
        if (!(segs[i].length() > 0.0))
            throw std::invalid_argument("segment " + std::to_string(i) + " has zero length");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (segment_segment_distance(segs[i], segs[j]) <= 0.0)
                throw std::invalid_argument("segments " + std::to_string(i) + " and " +
                                            std::to_string(j) + " are not disjoint");
}

std::optional<std::pair<double, double>> segment_disc_interval(const Segment& s, Point2 c,
                                                               double r) {
    if (r < 0.0) return std::nullopt;
    Point2 d = s.p2 - s.p1;
    Point2 e = s.p1 - c;
    double qa = dot(d, d);
    double qb = 2.0 * dot(e, d);
    double qc = dot(e, e) - r * r;
    if (qa == 0.0) {
        if (qc <= 0.0) return std::make_pair(0.0, 1.0);
        return std::nullopt;
    }
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) return std::nullopt;
    double root = std::sqrt(disc);
    double lo = (-qb - root) / (2.0 * qa);
    double hi = (-qb + root) / (2.0 * qa);
    lo = std::fmax(lo, 0.0);
    hi = std::fmin(hi, 1.0);
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

bool segment_intersects_lens(const Segment& s, const Lens& lens, Variant variant) {
    if (lens.form != LensForm::TwoDiscs)
        throw UnsupportedMetric("segment-lens intersection needs a two-disc lens");
    if (!(lens.metric.kind == MetricKind::Lp && lens.metric.p == 2.0))
        throw UnsupportedMetric("segment-lens intersection is euclidean only");
    double eps = lens_eps(lens);
    double r = variant == Variant::Closed ? lens.radius + eps : lens.radius - eps;
    if (r <= 0.0) return false;
    auto i1 = segment_disc_interval(s, lens.c1, r);
    if (!i1) return false;
    auto i2 = segment_disc_interval(s, lens.c2, r);
    if (!i2) return false;
    double lo = std::fmax(i1->first, i2->first);
    double hi = std::fmin(i1->second, i2->second);
    // A single shared parameter sits exactly on the shrunk rim, which the
    // strict open rule excludes.
    return variant == Variant::Closed ? lo <= hi : lo < hi;
}

namespace {

bool sample_blocked(const std::vector<Segment>& segs, int i, int j, Beta beta, Variant variant,
                    int m, int k1, int k2) {
    Point2 v1 = segs[i].at(static_cast<double>(k1) / m);
    Point2 v2 = segs[j].at(static_cast<double>(k2) / m);
    Lens lens = lens_construct(MetricSpec::l2(), v1, v2, beta);
    const int n = static_cast<int>(segs.size());
    for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (segment_intersects_lens(segs[k], lens, variant)) return true;
    }
    return false;
}

void validate_inputs(const std::vector<Segment>& segs, Beta beta, int m) {
    if (m < 2) throw ResolutionTooSmall("grid resolution must be at least 2");
    if (beta.is_zero() || beta.is_inf())
        throw BetaOutOfRange("segment skeletons require 0 < beta < inf");
    require_disjoint_segments(segs);
}

SegmentSkeleton scan_pairs(const std::vector<Segment>& segs, Beta beta, Variant variant, int m,
                           bool parallel) {
    const int n = static_cast<int>(segs.size());
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    // Witness = first uncovered sample in row-major order, so parallel and
    // serial runs agree bit for bit.
    auto find_witness = [&](int i, int j) -> std::optional<SegmentWitness> {
        for (int k1 = 0; k1 <= m; ++k1)
            for (int k2 = 0; k2 <= m; ++k2)
                if (!sample_blocked(segs, i, j, beta, variant, m, k1, k2))
                    return SegmentWitness{k1, k2, m};
        return std::nullopt;
    };

    std::vector<std::optional<SegmentWitness>> found(pairs.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long t = 0; t < static_cast<long>(pairs.size()); ++t)
            found[t] = find_witness(pairs[t].first, pairs[t].second);
    } else {
        for (std::size_t t = 0; t < pairs.size(); ++t)
            found[t] = find_witness(pairs[t].first, pairs[t].second);
    }

    SegmentSkeleton out;
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        if (found[t]) {
            out.edges.push_back(pairs[t]);
            out.witnesses.push_back(*found[t]);
        }
    }
    return out;
}

}  // namespace

bool ParamSquareCover::fully_covered() const {
    for (char c : covered)
        if (!c) return false;
    return true;
}

ParamSquareCover param_square_cover(const std::vector<Segment>& segs, int i, int j, Beta beta,
                                    Variant variant, int m) {
    validate_inputs(segs, beta, m);
    const int n = static_cast<int>(segs.size());
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw std::invalid_argument("generator indices out of range");
    ParamSquareCover cover;
    cover.s1 = i;
    cover.s2 = j;
    cover.m = m;
    cover.covered.assign(static_cast<std::size_t>(m + 1) * (m + 1), 0);
    for (int k1 = 0; k1 <= m; ++k1)
        for (int k2 = 0; k2 <= m; ++k2)
            cover.covered[static_cast<std::size_t>(k1) * (m + 1) + k2] =
                sample_blocked(segs, i, j, beta, variant, m, k1, k2) ? 1 : 0;
    return cover;
}

SegmentSkeleton segment_beta_skeleton(const std::vector<Segment>& segs, Beta beta,
                                      Variant variant, int resolution) {
    validate_inputs(segs, beta, resolution);
    return scan_pairs(segs, beta, variant, resolution, true);
}

SegmentSkeleton segment_beta_skeleton_serial(const std::vector<Segment>& segs, Beta beta,
                                             Variant variant, int resolution) {
    validate_inputs(segs, beta, resolution);
    return scan_pairs(segs, beta, variant, resolution, false);
}

ChainReport chain_check_segments(const std::vector<Segment>& segs,
                                 const std::vector<double>& betas, int resolution) {
    for (double b : betas)
        if (!(b >= 1.0 && b <= 2.0))
            throw BetaOutOfRange("segment chain betas must lie in [1,2]");
    validate_inputs(segs, Beta(1.0), resolution);

    std::vector<double> grid = betas;
    std::sort(grid.begin(), grid.end(), std::greater<>());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    // 2 and 1 are the pinned end stages.
    grid.erase(std::remove_if(grid.begin(), grid.end(),
                              [](double b) { return b == 1.0 || b == 2.0; }),
               grid.end());

    ChainReport rep;
    std::vector<EdgeList> stage_edges;
    auto add_stage = [&](const std::string& name, double b) {
        EdgeList e =
            scan_pairs(segs, Beta(b), Variant::Closed, resolution, true).edges;
        rep.stages.push_back(name);
        rep.edge_counts.push_back(e.size());
        stage_edges.push_back(std::move(e));
    };
    add_stage("rng", 2.0);
    for (double b : grid) add_stage("beta=" + std::to_string(b), b);
    add_stage("gabriel", 1.0);

    for (std::size_t s = 0; s + 1 < stage_edges.size(); ++s)
        for (const Edge& e : stage_edges[s])
            if (!std::binary_search(stage_edges[s + 1].begin(), stage_edges[s + 1].end(), e))
                rep.violations.push_back({rep.stages[s], rep.stages[s + 1], e});
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace proxiskel
