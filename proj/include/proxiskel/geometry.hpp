#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "proxiskel/errors.hpp"

namespace proxiskel {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Point2() = default;
    constexpr Point2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
    constexpr Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
    constexpr Point2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Point2&) const = default;
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

inline double norm2(Point2 p) { return std::sqrt(p.x * p.x + p.y * p.y); }
inline double dist2(Point2 a, Point2 b) { return norm2(a - b); }

enum class MetricKind { Lp, L1, Linf };

// Planar metric selector. Lp requires 1 < p < inf; the polyhedral metrics
// have their own kinds because they need different lens machinery.
struct MetricSpec {
    MetricKind kind = MetricKind::Lp;
    double p = 2.0;

    static MetricSpec lp(double p) {
        if (!(p > 1.0) || !std::isfinite(p))
            throw UnsupportedMetric("lp metric requires 1 < p < inf");
        return {MetricKind::Lp, p};
    }
    static MetricSpec l2() { return {MetricKind::Lp, 2.0}; }
    static MetricSpec l1() { return {MetricKind::L1, 1.0}; }
    static MetricSpec linf() { return {MetricKind::Linf, std::numeric_limits<double>::infinity()}; }

    bool operator==(const MetricSpec&) const = default;
};

inline double lp_norm(double dx, double dy, double p) {
    double ax = std::fabs(dx), ay = std::fabs(dy);
    if (p == 2.0) return std::sqrt(ax * ax + ay * ay);
    if (p == 3.0) {
        double s = ax * ax * ax + ay * ay * ay;
        return std::cbrt(s);
    }
    if (p == 1.5) {
        double s = ax * std::sqrt(ax) + ay * std::sqrt(ay);
        double c = std::cbrt(s);
        return c * c;  // s^(2/3)
    }
    if (ax == 0.0 && ay == 0.0) return 0.0;
    double m = ax > ay ? ax : ay;
    double s = std::pow(ax / m, p) + std::pow(ay / m, p);
    return m * std::pow(s, 1.0 / p);
}

inline double distance(const MetricSpec& m, Point2 a, Point2 b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    switch (m.kind) {
        case MetricKind::L1: return std::fabs(dx) + std::fabs(dy);
        case MetricKind::Linf: return std::fmax(std::fabs(dx), std::fabs(dy));
        case MetricKind::Lp: return lp_norm(dx, dy, m.p);
    }
    return 0.0;
}

// Skeleton parameter. Valid values are 0 <= value <= inf; NaN is rejected.
struct Beta {
    double value = 1.0;

    Beta() = default;
    Beta(double v) : value(v) {
        if (std::isnan(v) || v < 0.0)
            throw std::invalid_argument("beta must satisfy 0 <= beta <= inf");
    }
    static Beta infinity() { return Beta(std::numeric_limits<double>::infinity()); }

    bool is_zero() const { return value == 0.0; }
    bool is_inf() const { return std::isinf(value); }
    bool operator==(const Beta&) const = default;
};

enum class Variant { Closed, Open };

inline const char* variant_name(Variant v) { return v == Variant::Closed ? "closed" : "open"; }

// Relative tolerance used for boundary ties. Ties within eps of a lens
// boundary resolve toward inside for closed lenses and outside for open ones.
inline constexpr double kRelEps = 1e-9;

}  // namespace proxiskel
