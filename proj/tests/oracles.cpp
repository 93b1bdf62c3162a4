#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace proxiskel::oracle {

namespace {

Point2 boundary_point(const MetricSpec& m, Point2 centre, double radius, double theta) {
    Point2 dir{std::cos(theta), std::sin(theta)};
    double n = distance(m, Point2{0.0, 0.0}, dir);
    return centre + (radius / n) * dir;
}

}  // namespace

std::vector<Point2> equiradial_centres(const MetricSpec& metric, Point2 v1, Point2 v2,
                                       double radius) {
    auto f = [&](double theta) {
        return distance(metric, boundary_point(metric, v1, radius, theta), v2) - radius;
    };

    const int K = 512;
    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<Point2> roots;
    double prev_theta = 0.0, prev_f = f(0.0);
    for (int k = 1; k <= K; ++k) {
        double theta = two_pi * k / K;
        double cur = f(theta);
        if ((prev_f <= 0.0 && cur > 0.0) || (prev_f >= 0.0 && cur < 0.0) ||
            (prev_f > 0.0 && cur <= 0.0) || (prev_f < 0.0 && cur >= 0.0)) {
            double lo = prev_theta, hi = theta, flo = prev_f;
            for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = f(mid);
                if ((flo <= 0.0) == (fm <= 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(boundary_point(metric, v1, radius, 0.5 * (lo + hi)));
        }
        prev_theta = theta;
        prev_f = cur;
    }

    std::vector<Point2> unique;
    for (Point2 r : roots) {
        bool dup = false;
        for (Point2 u : unique)
            if (dist2(r, u) < 1e-6 * radius) dup = true;
        if (!dup) unique.push_back(r);
    }
    return unique;
}

double plain_lp_dist(double p, Point2 a, Point2 b) {
    double ax = std::fabs(a.x - b.x), ay = std::fabs(a.y - b.y);
    if (ax == 0.0 && ay == 0.0) return 0.0;
    return std::pow(std::pow(ax, p) + std::pow(ay, p), 1.0 / p);
}

std::vector<std::pair<int, int>> beta_skeleton_reference(const std::vector<Point2>& pts,
                                                         const MetricSpec& metric, Beta beta,
                                                         Variant variant) {
    if (metric.kind != MetricKind::Lp || beta.is_zero() || beta.is_inf())
        throw std::invalid_argument("reference skeleton: finite beta, lp metric only");
    const double p = metric.p;
    const double b = beta.value;
    const int n = static_cast<int>(pts.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = plain_lp_dist(p, pts[i], pts[j]);
            double r;
            std::vector<Point2> centres;
            if (b >= 1.0) {
                r = 0.5 * b * d;
                centres = {pts[i] + (0.5 * b) * (pts[j] - pts[i]),
                           pts[j] + (0.5 * b) * (pts[i] - pts[j])};
            } else {
                r = d / (2.0 * b);
                centres = equiradial_centres(metric, pts[i], pts[j], r);
            }
            double eps = 1e-9 * d;
            bool blocked = false;
            for (int k = 0; k < n && !blocked; ++k) {
                if (k == i || k == j) continue;
                bool inside = true;
                for (Point2 c : centres) {
                    double dk = plain_lp_dist(p, pts[k], c);
                    bool in = variant == Variant::Closed ? dk <= r + eps : dk < r - eps;
                    inside = inside && in;
                }
                blocked = inside;
            }
            if (!blocked) edges.emplace_back(i, j);
        }
    }
    return edges;
}

std::vector<std::pair<int, int>> polyhedral_reference(const std::vector<Point2>& pts,
                                                      const MetricSpec& metric, double beta,
                                                      Variant variant) {
    if (metric.kind != MetricKind::L1 && metric.kind != MetricKind::Linf)
        throw std::invalid_argument("polyhedral reference: l1 or linf only");
    if (!(beta >= 1.0 && beta <= 2.0))
        throw std::invalid_argument("polyhedral reference: beta in [1, 2] only");
    const int n = static_cast<int>(pts.size());
    const bool rot = metric.kind == MetricKind::L1;
    auto cheb = [&](Point2 p) { return rot ? Point2{p.x + p.y, p.x - p.y} : p; };
    const bool closed = variant == Variant::Closed;

    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Point2 a = cheb(pts[i]), b = cheb(pts[j]);
            double du = b.x - a.x, dw = b.y - a.y;
            bool sw = std::fabs(dw) > std::fabs(du);
            if (sw) {
                std::swap(a.x, a.y);
                std::swap(du, dw);
            }
            double su = du < 0.0 ? -1.0 : 1.0;
            double sv = dw * su < 0.0 ? -1.0 : 1.0;
            // after flips: u along the dominant axis of the pair, v1 at the
            // origin, v2 at (D, h) with 0 <= h <= D
            double D = su * du;
            double h = sv * (su * dw);
            double r = 0.5 * beta * D, rp = 0.5 * (2.0 - beta) * D;
            double eps = 1e-9 * D;

            // centre second coordinates allowed by the distance conditions
            double I1lo = h - rp, I1hi = std::fmin(r, h + rp);
            double I2lo = std::fmax(-rp, h - r), I2hi = rp;

            std::vector<double> blk;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                Point2 c = cheb(pts[k]);
                if (sw) std::swap(c.x, c.y);
                double u = su * (c.x - a.x), w = sv * (su * (c.y - a.y));
                bool in_slab = closed ? (u >= -eps && u <= D + eps) : (u > eps && u < D - eps);
                if (in_slab) blk.push_back(w);
            }
            auto box_empty = [&](double p, double q) {
                for (double w : blk) {
                    bool in = closed ? (w >= p - eps && w <= q + eps)
                                     : (w > p + eps && w < q - eps);
                    if (in) return false;
                }
                return true;
            };
            auto check_centres = [&](double p, double q, double Mlo, double Mhi, double mlo,
                                     double mhi) {
                double M = p + r, m = q - r;
                double slop = 1e-9 * D;
                if (M < Mlo - slop || M > Mhi + slop || m < mlo - slop || m > mhi + slop ||
                    M - m < -slop || M - m > (beta - 1.0) * D + slop)
                    throw std::logic_error("witness box has no admissible centre pair");
                // direct distance conditions in the swapped/flipped frame
                Point2 v1{0.0, 0.0}, v2{D, h};
                Point2 c1{0.5 * beta * D, M}, c2{0.5 * (2.0 - beta) * D, m};
                auto dinf = [](Point2 s, Point2 t) {
                    return std::fmax(std::fabs(s.x - t.x), std::fabs(s.y - t.y));
                };
                if (std::fabs(dinf(c1, v1) - r) > slop || std::fabs(dinf(c1, v2) - rp) > slop ||
                    std::fabs(dinf(c2, v2) - r) > slop || std::fabs(dinf(c2, v1) - rp) > slop ||
                    std::fabs(dinf(c1, c2) - (beta - 1.0) * D) > slop)
                    throw std::logic_error("witness centres violate the distance conditions");
            };

            bool edge = false;
            for (int fam = 0; fam < 2 && !edge; ++fam) {
                double Mlo = fam == 0 ? I1lo : I2lo, Mhi = fam == 0 ? I1hi : I2hi;
                double mlo = fam == 0 ? I2lo : I1lo, mhi = fam == 0 ? I2hi : I1hi;
                double pLo = Mlo - r, pHi = Mhi - r;
                double qLo = mlo + r, qHi = mhi + r;
                std::vector<double> qs = {qLo, qHi};
                const double jit[5] = {-2.5 * eps, -0.5 * eps, 0.0, 0.5 * eps, 2.5 * eps};
                for (double w : blk)
                    for (double d : jit) {
                        qs.push_back(w + d);
                        qs.push_back(w + D + d);
                        qs.push_back(w + beta * D + d);
                    }
                for (double pb : {pLo, pHi})
                    for (double d : jit) {
                        qs.push_back(pb + D + d);
                        qs.push_back(pb + beta * D + d);
                    }
                for (double qc : qs) {
                    double q = std::clamp(qc, qLo, qHi);
                    double p = std::fmin(pHi, q - D);
                    if (p < pLo - 1e-12 * D) continue;
                    if (q - p > beta * D + 1e-12 * D) continue;
                    if (box_empty(p, q)) {
                        check_centres(p, q, Mlo, Mhi, mlo, mhi);
                        edge = true;
                        break;
                    }
                }
            }
            if (edge) edges.emplace_back(i, j);
        }
    }
    return edges;
}


std::vector<double> apsp_floyd_warshall(const WeightedGraph& g) {
    const double inf = std::numeric_limits<double>::infinity();
    int n = g.n_vertices;
    std::vector<double> d(static_cast<std::size_t>(n) * n, inf);
    for (int v = 0; v < n; ++v) d[static_cast<std::size_t>(v) * n + v] = 0.0;
    for (const GraphEdge& e : g.edges) {
        std::size_t ab = static_cast<std::size_t>(e.a) * n + e.b;
        std::size_t ba = static_cast<std::size_t>(e.b) * n + e.a;
        d[ab] = std::min(d[ab], e.w);
        d[ba] = std::min(d[ba], e.w);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double via = d[static_cast<std::size_t>(i) * n + k] +
                             d[static_cast<std::size_t>(k) * n + j];
                double& cur = d[static_cast<std::size_t>(i) * n + j];
                if (via < cur) cur = via;
            }
    return d;
}

double graphpoint_distance_subdivision(const WeightedGraph& g, const GraphPoint& p, int u) {
    if (p.is_vertex()) {
        std::vector<double> d = apsp_floyd_warshall(g);
        return d[static_cast<std::size_t>(p.vertex) * g.n_vertices + u];
    }
    const GraphEdge& e = g.edges[p.edge];
    if (p.t <= 0.0) return graphpoint_distance_subdivision(g, GraphPoint::at_vertex(e.a), u);
    if (p.t >= 1.0) return graphpoint_distance_subdivision(g, GraphPoint::at_vertex(e.b), u);
    WeightedGraph sub = g;
    int aux = sub.n_vertices++;
    sub.edges.erase(sub.edges.begin() + p.edge);
    sub.edges.push_back({e.a, aux, p.t * e.w});
    sub.edges.push_back({aux, e.b, (1.0 - p.t) * e.w});
    std::vector<double> d = apsp_floyd_warshall(sub);
    return d[static_cast<std::size_t>(aux) * sub.n_vertices + u];
}

std::vector<GraphPoint> candidate_centers_grid(const WeightedGraph& g, const DistanceIndex& idx,
                                               int u1, int u2, double beta, double step) {
    double D = idx(u1, u2);
    double eps = 1e-9 * idx.max_weight;
    double r1 = beta * D / 2.0, r2 = std::abs(beta - 2.0) * D / 2.0;

    std::vector<GraphPoint> found;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const GraphEdge& ed = g.edges[e];
        auto dist_to = [&](double t, int u) {
            return std::min(t * ed.w + idx(ed.a, u), (1.0 - t) * ed.w + idx(ed.b, u));
        };
        auto consider = [&](double t, double keep_r1, double keep_r2) {
            if (std::abs(dist_to(t, u1) - keep_r1) > eps) return;
            if (std::abs(dist_to(t, u2) - keep_r2) > eps) return;
            double eps_t = eps / ed.w;
            GraphPoint c = t <= eps_t         ? GraphPoint::at_vertex(ed.a)
                           : t >= 1.0 - eps_t ? GraphPoint::at_vertex(ed.b)
                                              : GraphPoint::on_edge(e, t);
            found.push_back(c);
        };
        // h is concave in t (min of two lines minus a constant), so grid
        // cells with a sign change bracket crossing roots and the cell with
        // the largest value brackets a possible tangent root.
        auto scan = [&](int u, double target, double keep_r1, double keep_r2) {
            auto h = [&](double t) { return dist_to(t, u) - target; };
            int cells = static_cast<int>(std::ceil(1.0 / step));
            double best_t = 0.0, best_h = -std::numeric_limits<double>::infinity();
            double prev_t = 0.0, prev_h = h(0.0);
            if (std::abs(prev_h) <= eps) consider(0.0, keep_r1, keep_r2);
            for (int k = 1; k <= cells; ++k) {
                double t = std::min(1.0, k * step);
                double ht = h(t);
                if ((prev_h < 0.0) != (ht < 0.0)) {
                    double lo = prev_t, hi = t, hlo = prev_h;
                    for (int it = 0; it < 80 && hi - lo > 1e-16; ++it) {
                        double mid = 0.5 * (lo + hi);
                        double hm = h(mid);
                        if ((hlo < 0.0) == (hm < 0.0)) {
                            lo = mid;
                            hlo = hm;
                        } else {
                            hi = mid;
                        }
                    }
                    consider(0.5 * (lo + hi), keep_r1, keep_r2);
                }
                if (ht > best_h) {
                    best_h = ht;
                    best_t = t;
                }
                prev_t = t;
                prev_h = ht;
            }
            if (std::abs(h(1.0)) <= eps) consider(1.0, keep_r1, keep_r2);
            // tangent root at the concave maximum
            double lo = std::max(0.0, best_t - step), hi = std::min(1.0, best_t + step);
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
                if (h(m1) < h(m2))
                    lo = m1;
                else
                    hi = m2;
            }
            double tm = 0.5 * (lo + hi);
            if (std::abs(h(tm)) <= eps) consider(tm, keep_r1, keep_r2);
        };
        scan(u1, r1, r1, r2);
        scan(u1, r2, r2, r1);
    }

    std::sort(found.begin(), found.end());
    std::vector<GraphPoint> out;
    for (const GraphPoint& c : found) {
        if (!out.empty()) {
            const GraphPoint& prev = out.back();
            if (prev == c) continue;
            if (!c.is_vertex() && !prev.is_vertex() && c.edge == prev.edge &&
                (c.t - prev.t) * g.edges[c.edge].w <= eps)
                continue;
        }
        out.push_back(c);
    }
    return out;
}

EdgeList graph_mst_exhaustive(const WeightedGraph& g) {
    DistanceIndex idx = apsp(g);
    int m = static_cast<int>(g.sites.size());
    std::vector<Edge> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) pairs.push_back({i, j});
    int P = static_cast<int>(pairs.size());
    int need = m - 1;
    EdgeList best;
    double best_w = std::numeric_limits<double>::infinity();

    std::vector<int> pick(need);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == need) {
            std::vector<int> parent(m);
            std::iota(parent.begin(), parent.end(), 0);
            std::function<int(int)> find = [&](int x) {
                return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            double total = 0.0;
            int comps = m;
            for (int pi : pick) {
                const Edge& e = pairs[pi];
                total += idx(g.sites[e.first], g.sites[e.second]);
                int ra = find(e.first), rb = find(e.second);
                if (ra == rb) return;
                parent[ra] = rb;
                --comps;
            }
            if (comps == 1 && total < best_w - 1e-15) {
                best_w = total;
                best.clear();
                for (int pi : pick) best.push_back(pairs[pi]);
                std::sort(best.begin(), best.end());
            }
            return;
        }
        for (int s = start; s < P; ++s) {
            pick[depth] = s;
            rec(s + 1, depth + 1);
        }
    };
    if (need > 0) rec(0, 0);
    return best;
}


bool segment_in_lens_sampled(const Segment& s, const Lens& lens, Variant variant,
                             int nsamples) {
    for (int k = 0; k <= nsamples; ++k) {
        double t = static_cast<double>(k) / nsamples;
        if (point_in_lens(lens, s.at(t), variant)) return true;
    }
    return false;
}

ShrunkDisc homothety_shrink(const Segment& s1, const Segment& s2, Point2 v1, Point2 v2) {
    Point2 c0 = 0.5 * (v1 + v2);
    double r0 = 0.5 * dist2(v1, v2);
    // Largest ratio keeping the image disc clear of the target; the pivot
    // sits on the disc boundary so ratios in [0,1] keep the image nested.
    auto shrink = [](Point2 pivot, Point2 c, double r, const Segment& target) {
        auto f = [&](double lam) {
            Point2 cl = pivot + lam * (c - pivot);
            return point_segment_distance(cl, target) - lam * r;
        };
        double lam = 1.0;
        if (f(1.0) < 0.0) {
            double lo = 0.0, hi = 1.0;  // f(0) > 0 because the sites are disjoint
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (lo + hi);
                (f(mid) > 0.0 ? lo : hi) = mid;
            }
            lam = lo;
        }
        return std::make_pair(pivot + lam * (c - pivot), lam * r);
    };
    auto [c1, r1] = shrink(v1, c0, r0, s2);
    Point2 d = s2.p2 - s2.p1;
    double t = dot(c1 - s2.p1, d) / dot(d, d);
    t = std::clamp(t, 0.0, 1.0);
    Point2 tangency = s2.at(t);
    auto [c2, r2] = shrink(tangency, c1, r1, s1);
    return {c2, r2};
}

std::vector<Segment> random_disjoint_segments(unsigned seed, int n, double box, double min_gap) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uc(0.0, box);
    std::uniform_real_distribution<double> ua(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> ul(0.6, 1.4);
    std::vector<Segment> out;
    for (int attempts = 0; static_cast<int>(out.size()) < n && attempts < 20000; ++attempts) {
        Point2 c{uc(rng), uc(rng)};
        double ang = ua(rng), len = ul(rng);
        Point2 h{0.5 * len * std::cos(ang), 0.5 * len * std::sin(ang)};
        Segment s{c - h, c + h};
        bool ok = true;
        for (const Segment& t2 : out)
            if (segment_segment_distance(s, t2) < min_gap) {
                ok = false;
                break;
            }
        if (ok) out.push_back(s);
    }
    if (static_cast<int>(out.size()) < n)
        throw std::runtime_error("could not place disjoint segments");
    return out;
}

WeightedGraph random_graph_rational(unsigned seed, int n, int extra, int nsites, int denom) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> wdist(denom, 10 * denom);
    WeightedGraph g;
    g.n_vertices = n;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        g.edges.push_back({pick(rng), v, wdist(rng) / double(denom)});
    }
    for (int k = 0; k < extra; ++k) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        int a = pick(rng), b = pick(rng);
        if (a != b) g.edges.push_back({a, b, wdist(rng) / double(denom)});
    }
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    std::shuffle(ids.begin(), ids.end(), rng);
    g.sites.assign(ids.begin(), ids.begin() + std::min(nsites, n));
    std::sort(g.sites.begin(), g.sites.end());
    return g;
}

}  // namespace proxiskel::oracle
