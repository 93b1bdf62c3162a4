#include "proxiskel/lens.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace proxiskel {

namespace {

constexpr double kHugeBeta = 1e6;  // stand-in for beta = inf off the Euclidean case

struct ChordFrame {
    Point2 mid;
    Point2 e_par;   // Euclidean unit vector v1 -> v2
    Point2 e_perp;  // e_par rotated +90 degrees
    double len_eu;
};

ChordFrame chord_frame(Point2 v1, Point2 v2) {
    double len = dist2(v1, v2);
    Point2 dir = (v2 - v1) * (1.0 / len);
    return {(v1 + v2) * 0.5, dir, Point2{-dir.y, dir.x}, len};
}

// Equidistant point from v1 and v2 on the line mid + s*e_perp + t*e_par.
// g(t) = d(c,v1) - d(c,v2) is strictly increasing in t with opposite signs
// at the ends of a wide enough bracket.
double bisector_t(const MetricSpec& m, Point2 v1, Point2 v2, const ChordFrame& f, double s) {
    auto g = [&](double t) {
        Point2 c = f.mid + s * f.e_perp + t * f.e_par;
        return distance(m, c, v1) - distance(m, c, v2);
    };
    double L = 2.0 * (std::fabs(s) + f.len_eu);
    double glo = g(-L), ghi = g(L);
    for (int i = 0; i < 60 && !(glo < 0.0 && ghi > 0.0); ++i) {
        L *= 2.0;
        glo = g(-L);
        ghi = g(L);
    }
    if (!(glo < 0.0 && ghi > 0.0))
        throw std::runtime_error("lens centre search: bisector bracket failed");
    boost::math::tools::eps_tolerance<double> tol(48);
    std::uintmax_t max_iter = 128;
    auto r = boost::math::tools::toms748_solve(g, -L, L, glo, ghi, tol, max_iter);
    return 0.5 * (r.first + r.second);
}

// Centre at perpendicular offset |s| on the given side whose disc boundary
// passes through both generators with the requested radius.
Point2 small_beta_centre(const MetricSpec& m, Point2 v1, Point2 v2, const ChordFrame& f,
                         double radius, double side) {
    auto centre_at = [&](double s) {
        double t = bisector_t(m, v1, v2, f, s);
        return f.mid + s * f.e_perp + t * f.e_par;
    };
    auto psi = [&](double s) { return distance(m, centre_at(s), v1) - radius; };

    double s_far = side * f.len_eu;
    double psi_far = psi(s_far);
    for (int i = 0; i < 200 && psi_far < 0.0; ++i) {
        s_far *= 2.0;
        psi_far = psi(s_far);
    }
    if (psi_far < 0.0)
        throw std::runtime_error("lens centre search: radius bracket failed");

    double lo = std::fmin(0.0, s_far), hi = std::fmax(0.0, s_far);
    double flo = side > 0 ? psi(lo) : psi_far;
    double fhi = side > 0 ? psi_far : psi(hi);
    boost::math::tools::eps_tolerance<double> tol(48);
    std::uintmax_t max_iter = 128;
    auto r = boost::math::tools::toms748_solve(psi, lo, hi, flo, fhi, tol, max_iter);
    return centre_at(0.5 * (r.first + r.second));
}

bool strip_between(Point2 v1, Point2 v2, Point2 q, Variant variant) {
    Point2 dir = v2 - v1;
    double t = dot(q - v1, dir) / dot(dir, dir);
    if (variant == Variant::Closed) return t >= -kRelEps && t <= 1.0 + kRelEps;
    return t > kRelEps && t < 1.0 - kRelEps;
}

bool on_segment(Point2 v1, Point2 v2, Point2 q, Variant variant) {
    Point2 dir = v2 - v1;
    double len = norm2(dir);
    double t = dot(q - v1, dir) / dot(dir, dir);
    double perp = std::fabs(cross(dir, q - v1)) / len;
    if (perp > kRelEps * len) return false;
    if (variant == Variant::Closed) return t >= -kRelEps && t <= 1.0 + kRelEps;
    return t > kRelEps && t < 1.0 - kRelEps;
}

}  // namespace

Lens lens_construct(const MetricSpec& metric, Point2 v1, Point2 v2, Beta beta) {
    if (metric.kind != MetricKind::Lp)
        throw UnsupportedMetric("lens_construct handles lp metrics; l1/linf lenses are box unions");

    double scale = std::fmax(1.0, std::fmax(std::fmax(std::fabs(v1.x), std::fabs(v1.y)),
                                            std::fmax(std::fabs(v2.x), std::fabs(v2.y))));
    if (dist2(v1, v2) <= 1e-12 * scale)
        throw DegenerateGenerators("lens generators coincide");

    Lens lens;
    lens.metric = metric;
    lens.v1 = v1;
    lens.v2 = v2;
    lens.beta = beta;
    lens.gen_dist = distance(metric, v1, v2);

    if (beta.is_zero()) {
        lens.form = LensForm::Segment;
        return lens;
    }
    if (beta.is_inf()) {
        lens.form = LensForm::Strip;
        return lens;
    }

    lens.form = LensForm::TwoDiscs;
    double b = beta.value;
    if (b >= 1.0) {
        lens.radius = 0.5 * b * lens.gen_dist;
        lens.c1 = v1 + (0.5 * b) * (v2 - v1);
        lens.c2 = v2 + (0.5 * b) * (v1 - v2);
        return lens;
    }

    lens.radius = lens.gen_dist / (2.0 * b);
    ChordFrame f = chord_frame(v1, v2);
    if (metric.p == 2.0) {
        double h = std::sqrt(std::fmax(0.0, lens.radius * lens.radius - 0.25 * f.len_eu * f.len_eu));
        lens.c1 = f.mid + h * f.e_perp;
        lens.c2 = f.mid + (-h) * f.e_perp;
        return lens;
    }
    lens.c1 = small_beta_centre(metric, v1, v2, f, lens.radius, +1.0);
    lens.c2 = small_beta_centre(metric, v1, v2, f, lens.radius, -1.0);
    return lens;
}

double lens_eps(const Lens& lens) { return kRelEps * lens.gen_dist; }

bool point_in_lens(const Lens& lens, Point2 q, Variant variant) {
    switch (lens.form) {
        case LensForm::Segment:
            return on_segment(lens.v1, lens.v2, q, variant);
        case LensForm::Strip:
            return strip_between(lens.v1, lens.v2, q, variant);
        case LensForm::TwoDiscs:
            break;
    }
    double eps = lens_eps(lens);
    double d1 = distance(lens.metric, q, lens.c1);
    double d2 = distance(lens.metric, q, lens.c2);
    if (variant == Variant::Closed)
        return d1 <= lens.radius + eps && d2 <= lens.radius + eps;
    return d1 < lens.radius - eps && d2 < lens.radius - eps;
}

Lens limit_lens(const MetricSpec& metric, Point2 v1, Point2 v2, Beta beta) {
    if (metric.kind != MetricKind::Lp)
        throw UnsupportedMetric("limit membership is defined for lp metrics");
    if (beta.is_zero()) return lens_construct(metric, v1, v2, beta);
    if (!beta.is_inf())
        throw BetaOutOfRange("limit lens requires beta = 0 or beta = inf");
    if (metric.p == 2.0) return lens_construct(metric, v1, v2, beta);  // exact strip
    return lens_construct(metric, v1, v2, Beta(kHugeBeta));
}

bool limit_membership(const MetricSpec& metric, Point2 v1, Point2 v2, Beta beta,
                      Point2 q, Variant variant) {
    return point_in_lens(limit_lens(metric, v1, v2, beta), q, variant);
}

}  // namespace proxiskel
