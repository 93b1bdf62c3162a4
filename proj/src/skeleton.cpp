#include "proxiskel/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>

namespace proxiskel {

namespace {

double coord_scale(const std::vector<Point2>& pts) {
    double s = 1.0;
    for (const Point2& p : pts) s = std::fmax(s, std::fmax(std::fabs(p.x), std::fabs(p.y)));
    return s;
}

Lens pair_lens(const MetricSpec& m, Point2 a, Point2 b, Beta beta) {
    if (beta.is_zero() || beta.is_inf()) return limit_lens(m, a, b, beta);
    return lens_construct(m, a, b, beta);
}

bool lens_is_empty(const std::vector<Point2>& pts, const Lens& lens, int i, int j,
                   Variant variant) {
    const int n = static_cast<int>(pts.size());
    for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (point_in_lens(lens, pts[k], variant)) return false;
    }
    return true;
}

double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

// > 0 when q lies inside the circumcircle of the ccw triangle (a,b,c)
double incircle(Point2 a, Point2 b, Point2 c, Point2 q) {
    double ax = a.x - q.x, ay = a.y - q.y;
    double bx = b.x - q.x, by = b.y - q.y;
    double cx = c.x - q.x, cy = c.y - q.y;
    double a2 = ax * ax + ay * ay;
    double b2 = bx * bx + by * by;
    double c2 = cx * cx + cy * cy;
    return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

struct Tri {
    int a, b, c;
    bool alive = true;
};

void sort_edges(EdgeList& edges) { std::sort(edges.begin(), edges.end()); }

EdgeList collect_pairs(const std::vector<Point2>& pts, const MetricSpec& metric, Beta beta,
                       Variant variant, bool parallel) {
    const int n = static_cast<int>(pts.size());
    std::vector<Edge> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    std::vector<char> keep(pairs.size(), 0);
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long t = 0; t < static_cast<long>(pairs.size()); ++t) {
            auto [i, j] = pairs[t];
            Lens lens = pair_lens(metric, pts[i], pts[j], beta);
            keep[t] = lens_is_empty(pts, lens, i, j, variant) ? 1 : 0;
        }
    } else {
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            auto [i, j] = pairs[t];
            Lens lens = pair_lens(metric, pts[i], pts[j], beta);
            keep[t] = lens_is_empty(pts, lens, i, j, variant) ? 1 : 0;
        }
    }

    EdgeList edges;
    for (std::size_t t = 0; t < pairs.size(); ++t)
        if (keep[t]) edges.push_back(pairs[t]);
    return edges;  // already sorted by construction order
}

}  // namespace

void require_distinct_points(const std::vector<Point2>& pts) {
    const int n = static_cast<int>(pts.size());
    double tol = 1e-12 * coord_scale(pts);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return pts[a].x != pts[b].x ? pts[a].x < pts[b].x : pts[a].y < pts[b].y;
    });
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n && pts[idx[j]].x - pts[idx[i]].x <= tol; ++j) {
            if (dist2(pts[idx[i]], pts[idx[j]]) <= tol)
                throw DegenerateGenerators("input points coincide");
        }
    }
}

EdgeList beta_skeleton_brute(const std::vector<Point2>& pts, const MetricSpec& metric,
                             Beta beta, Variant variant) {
    if (metric.kind != MetricKind::Lp)
        throw UnsupportedMetric("brute-force skeleton handles lp metrics");
    require_distinct_points(pts);
    return collect_pairs(pts, metric, beta, variant, true);
}

EdgeList beta_skeleton_brute_serial(const std::vector<Point2>& pts, const MetricSpec& metric,
                                    Beta beta, Variant variant) {
    if (metric.kind != MetricKind::Lp)
        throw UnsupportedMetric("brute-force skeleton handles lp metrics");
    require_distinct_points(pts);
    return collect_pairs(pts, metric, beta, variant, false);
}

EdgeList gabriel_graph(const std::vector<Point2>& pts) {
    require_distinct_points(pts);
    const int n = static_cast<int>(pts.size());
    EdgeList edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Point2 mid = (pts[i] + pts[j]) * 0.5;
            double d = dist2(pts[i], pts[j]);
            double r = 0.5 * d, eps = kRelEps * d;
            bool blocked = false;
            for (int k = 0; k < n && !blocked; ++k) {
                if (k == i || k == j) continue;
                blocked = dist2(pts[k], mid) <= r + eps;
            }
            if (!blocked) edges.emplace_back(i, j);
        }
    }
    return edges;
}

EdgeList relative_neighborhood_graph(const std::vector<Point2>& pts) {
    require_distinct_points(pts);
    const int n = static_cast<int>(pts.size());
    EdgeList edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = dist2(pts[i], pts[j]);
            double lim = d - kRelEps * d;
            bool blocked = false;
            for (int k = 0; k < n && !blocked; ++k) {
                if (k == i || k == j) continue;
                blocked = dist2(pts[k], pts[i]) < lim && dist2(pts[k], pts[j]) < lim;
            }
            if (!blocked) edges.emplace_back(i, j);
        }
    }
    return edges;
}

DelaunayResult delaunay_triangulation(const std::vector<Point2>& pts) {
    require_distinct_points(pts);
    const int n = static_cast<int>(pts.size());
    if (n < 3) throw CollinearInput("triangulation needs at least three points");

    double scale = coord_scale(pts);
    {
        // all points collinear <=> every triangle with a diameter pair is flat
        int far = 1;
        for (int k = 2; k < n; ++k)
            if (dist2(pts[0], pts[k]) > dist2(pts[0], pts[far])) far = k;
        double max_area = 0.0;
        for (int k = 0; k < n; ++k)
            max_area = std::fmax(max_area, std::fabs(orient(pts[0], pts[far], pts[k])));
        if (max_area <= 1e-12 * scale * scale) throw CollinearInput("input points are collinear");
    }

    double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const Point2& p : pts) {
        xmin = std::fmin(xmin, p.x);
        xmax = std::fmax(xmax, p.x);
        ymin = std::fmin(ymin, p.y);
        ymax = std::fmax(ymax, p.y);
    }
    double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    double R = std::fmax(1.0, std::fmax(xmax - xmin, ymax - ymin));

    std::vector<Point2> v(pts);
    v.push_back({cx - 32.0 * R, cy - 18.0 * R});
    v.push_back({cx + 32.0 * R, cy - 18.0 * R});
    v.push_back({cx, cy + 32.0 * R});

    std::vector<Tri> tris;
    tris.push_back({n, n + 1, n + 2, true});

    for (int p = 0; p < n; ++p) {
        std::map<Edge, int> boundary;
        auto touch = [&](int a, int b) { boundary[{std::min(a, b), std::max(a, b)}]++; };
        bool any = false;
        for (Tri& t : tris) {
            if (!t.alive) continue;
            if (incircle(v[t.a], v[t.b], v[t.c], v[p]) > 0.0) {
                t.alive = false;
                any = true;
                touch(t.a, t.b);
                touch(t.b, t.c);
                touch(t.c, t.a);
            }
        }
        if (!any) continue;  // cocircular tie resolved as outside; point already covered
        for (const auto& [e, cnt] : boundary) {
            if (cnt != 1) continue;
            int a = e.first, b = e.second;
            if (orient(v[a], v[b], v[p]) < 0.0) std::swap(a, b);
            tris.push_back({a, b, p, true});
        }
    }

    DelaunayResult out;
    std::map<Edge, bool> seen;
    for (const Tri& t : tris) {
        if (!t.alive || t.a >= n || t.b >= n || t.c >= n) continue;
        std::array<int, 3> tri{t.a, t.b, t.c};
        std::sort(tri.begin(), tri.end());
        if (orient(pts[tri[0]], pts[tri[1]], pts[tri[2]]) < 0.0) std::swap(tri[1], tri[2]);
        out.triangles.push_back(tri);
        seen[{std::min(t.a, t.b), std::max(t.a, t.b)}] = true;
        seen[{std::min(t.b, t.c), std::max(t.b, t.c)}] = true;
        seen[{std::min(t.c, t.a), std::max(t.c, t.a)}] = true;
    }
    if (out.triangles.empty()) throw CollinearInput("triangulation collapsed");
    std::sort(out.triangles.begin(), out.triangles.end());
    for (const auto& [e, _] : seen) out.edges.push_back(e);
    sort_edges(out.edges);
    return out;
}

bool delaunay_empty_circumcircle(const std::vector<Point2>& pts,
                                 const std::vector<std::array<int, 3>>& triangles,
                                 double rel_margin) {
    for (const auto& t : triangles) {
        Point2 a = pts[t[0]], b = pts[t[1]], c = pts[t[2]];
        double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
        if (d == 0.0) return false;
        double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
        Point2 centre{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                      (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
        double r = dist2(centre, a);
        for (int k = 0; k < static_cast<int>(pts.size()); ++k) {
            if (k == t[0] || k == t[1] || k == t[2]) continue;
            if (dist2(pts[k], centre) < r * (1.0 - rel_margin)) return false;
        }
    }
    return true;
}

EdgeList metric_mst(const std::vector<Point2>& pts, const MetricSpec& metric) {
    require_distinct_points(pts);
    const int n = static_cast<int>(pts.size());
    EdgeList edges;
    if (n < 2) return edges;
    std::vector<char> in_tree(n, 0);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, 0);
    in_tree[0] = 1;
    for (int j = 1; j < n; ++j) best[j] = distance(metric, pts[0], pts[j]);
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        for (int j = 0; j < n; ++j)
            if (!in_tree[j] && (pick < 0 || best[j] < best[pick])) pick = j;
        in_tree[pick] = 1;
        edges.emplace_back(std::min(parent[pick], pick), std::max(parent[pick], pick));
        for (int j = 0; j < n; ++j) {
            if (in_tree[j]) continue;
            double d = distance(metric, pts[pick], pts[j]);
            if (d < best[j]) {
                best[j] = d;
                parent[j] = pick;
            }
        }
    }
    sort_edges(edges);
    return edges;
}

EdgeList circle_based_skeleton(const std::vector<Point2>& pts, Beta beta, Variant variant) {
    require_distinct_points(pts);
    if (beta.is_inf() || beta.value < 1.0)
        throw BetaOutOfRange("circle-based skeleton requires finite beta >= 1");
    const int n = static_cast<int>(pts.size());
    EdgeList edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = dist2(pts[i], pts[j]);
            double r = 0.5 * beta.value * d;
            double h = std::sqrt(std::fmax(0.0, r * r - 0.25 * d * d));
            Point2 dir = (pts[j] - pts[i]) * (1.0 / d);
            Point2 perp{-dir.y, dir.x};
            Point2 mid = (pts[i] + pts[j]) * 0.5;
            Point2 c1 = mid + h * perp, c2 = mid + (-h) * perp;
            double eps = kRelEps * d;
            bool blocked = false;
            for (int k = 0; k < n && !blocked; ++k) {
                if (k == i || k == j) continue;
                double d1 = dist2(pts[k], c1), d2c = dist2(pts[k], c2);
                blocked = variant == Variant::Closed ? (d1 <= r + eps || d2c <= r + eps)
                                                     : (d1 < r - eps || d2c < r - eps);
            }
            if (!blocked) edges.emplace_back(i, j);
        }
    }
    return edges;
}

ChainReport inclusion_chain_check(const std::vector<Point2>& pts,
                                  const std::vector<double>& betas) {
    for (double b : betas)
        if (!(b >= 1.0 && b <= 2.0))
            throw BetaOutOfRange("chain check covers 1 <= beta <= 2");

    std::vector<double> order(betas);
    std::sort(order.begin(), order.end(), std::greater<>());

    ChainReport report;
    std::vector<EdgeList> sets;
    auto stage = [&](std::string name, EdgeList edges) {
        report.stages.push_back(std::move(name));
        report.edge_counts.push_back(edges.size());
        sets.push_back(std::move(edges));
    };

    MetricSpec m = MetricSpec::l2();
    stage("mst", metric_mst(pts, m));
    stage("rng", relative_neighborhood_graph(pts));
    for (double b : order) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "beta=%g closed", b);
        stage(buf, beta_skeleton_brute(pts, m, Beta(b), Variant::Closed));
    }
    stage("gabriel", gabriel_graph(pts));
    stage("delaunay", delaunay_triangulation(pts).edges);

    for (std::size_t s = 0; s + 1 < sets.size(); ++s) {
        EdgeList missing;
        std::set_difference(sets[s].begin(), sets[s].end(), sets[s + 1].begin(),
                            sets[s + 1].end(), std::back_inserter(missing));
        for (Edge e : missing)
            report.violations.push_back({report.stages[s], report.stages[s + 1], e});
    }
    report.ok = report.violations.empty();
    return report;
}

}  // namespace proxiskel
