#include "proxiskel/l1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace proxiskel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_polyhedral(const MetricSpec& m) {
    if (m.kind != MetricKind::L1 && m.kind != MetricKind::Linf)
        throw UnsupportedMetric("polyhedral skeletons handle l1 and linf metrics");
}

double clamp_beta(Beta beta) {
    if (beta.is_inf()) return 2.0;  // decisions stabilise at 2
    return std::fmin(beta.value, 2.0);
}

using ParamRect = L1LensFamily::ParamRect;

// Parameter rectangles of the beta >= 1 family in the normalized frame.
// part 0 has the upper centre offset above the lower one, part 1 the reverse;
// a rectangle whose band is wider than beta*D is vacuous and fails the width
// check downstream.
std::array<ParamRect, 2> family_rects(double D, double h, double b) {
    std::array<ParamRect, 2> r;
    r[0] = {h - D, std::fmin(h - (b - 1.0) * D, 0.0), std::fmax((b - 1.0) * D, h), D};
    r[1] = {std::fmax(-D, h - b * D), (1.0 - b) * D, h + (b - 1.0) * D,
            std::fmin(h + D, b * D)};
    return r;
}

// Family decision once the slab statistics are known: band_blocked says some
// blocker sits in the mandatory core band, A/B are the nearest blocker
// w-values above/below it (+-inf when absent).
bool family_decision(const ParamRect& r, double width_min, double width_max, double eps,
                     Variant variant, bool band_blocked, double A, double B) {
    if (r.ql - r.ph > width_max) return false;
    if (band_blocked) return false;
    double q_max, p_min;
    if (variant == Variant::Closed) {
        q_max = std::fmin(r.qh, A - eps);
        p_min = std::fmax(r.pl, B + eps);
    } else {
        q_max = std::fmin(r.qh, A + eps);
        p_min = std::fmax(r.pl, B - eps);
    }
    return q_max - p_min >= width_min;
}

L1LensFamily build_family(double D, double h, Beta beta) {
    L1LensFamily fam;
    fam.D = D;
    fam.h = h;
    if (!beta.is_inf() && beta.value < 1.0) {
        fam.small_beta = true;
        fam.small_box = {0.0, D, 0.0, h};
        fam.representative = fam.small_box;
        return fam;
    }
    double b = clamp_beta(beta);
    fam.width_min = D;
    fam.width_max = b * D;
    auto rects = family_rects(D, h, b);
    fam.part[0] = rects[0];
    fam.part[1] = rects[1];
    RotBox top{0.0, D, std::fmax(h - D, (1.0 - b) * D), D};
    RotBox bot{0.0, D, h - D, std::fmin(h + (b - 1.0) * D, D)};
    fam.extremal.push_back(top);
    if (bot.wlo != top.wlo || bot.whi != top.whi) fam.extremal.push_back(bot);
    if (b == 1.0)
        fam.representative = {0.0, D, 0.5 * (h - D), 0.5 * (h + D)};
    else
        fam.representative = top;
    return fam;
}

// Straight-segment neighbourhood used for beta = 0 (original coordinates).
bool segment_blocked(Point2 v1, Point2 v2, Point2 q, Variant variant) {
    Point2 dir = v2 - v1;
    double len2 = dot(dir, dir);
    double len = std::sqrt(len2);
    double t = dot(q - v1, dir) / len2;
    double perp = std::fabs(cross(dir, q - v1)) / len;
    if (perp > kRelEps * len) return false;
    if (variant == Variant::Closed) return t >= -kRelEps && t <= 1.0 + kRelEps;
    return t > kRelEps && t < 1.0 - kRelEps;
}

}  // namespace

Point2 to_cheb_frame(const MetricSpec& metric, Point2 p) {
    check_polyhedral(metric);
    if (metric.kind == MetricKind::L1) return {p.x + p.y, p.x - p.y};
    return p;
}

Point2 from_cheb_frame(const MetricSpec& metric, Point2 q) {
    check_polyhedral(metric);
    if (metric.kind == MetricKind::L1) return {(q.x + q.y) * 0.5, (q.x - q.y) * 0.5};
    return q;
}

bool rotbox_contains(const RotBox& box, Point2 q, Variant variant, double eps) {
    if (variant == Variant::Closed)
        return q.x >= box.ulo - eps && q.x <= box.uhi + eps && q.y >= box.wlo - eps &&
               q.y <= box.whi + eps;
    auto dim = [&](double lo, double hi, double v) {
        if (hi - lo > 2.0 * eps) return v > lo + eps && v < hi - eps;
        return v >= lo - eps && v <= hi + eps;  // flat dimension: relative interior
    };
    return dim(box.ulo, box.uhi, q.x) && dim(box.wlo, box.whi, q.y);
}

Point2 PairFrame::map(Point2 xy) const {
    Point2 q = xy;
    if (rotate) q = {q.x + q.y, q.x - q.y};
    if (swap_uw) std::swap(q.x, q.y);
    if (neg_u) q.x = -q.x;
    if (neg_w) q.y = -q.y;
    return {q.x - u0, q.y - w0};
}

Point2 PairFrame::unmap(Point2 nf) const {
    Point2 q{nf.x + u0, nf.y + w0};
    if (neg_w) q.y = -q.y;
    if (neg_u) q.x = -q.x;
    if (swap_uw) std::swap(q.x, q.y);
    if (rotate) q = {(q.x + q.y) * 0.5, (q.x - q.y) * 0.5};
    return q;
}

PairFrame pair_frame(const MetricSpec& metric, Point2 v1, Point2 v2) {
    check_polyhedral(metric);
    PairFrame f;
    f.rotate = metric.kind == MetricKind::L1;
    Point2 a = f.rotate ? Point2{v1.x + v1.y, v1.x - v1.y} : v1;
    Point2 b = f.rotate ? Point2{v2.x + v2.y, v2.x - v2.y} : v2;
    double du = b.x - a.x, dw = b.y - a.y;
    f.swap_uw = std::fabs(dw) > std::fabs(du);
    if (f.swap_uw) {
        std::swap(a.x, a.y);
        std::swap(du, dw);
    }
    f.neg_u = du < 0.0;
    if (f.neg_u) {
        a.x = -a.x;
        du = -du;
    }
    f.neg_w = dw < 0.0;
    if (f.neg_w) {
        a.y = -a.y;
        dw = -dw;
    }
    f.u0 = a.x;
    f.w0 = a.y;
    f.D = du;
    f.h = dw;
    if (!(f.D > 0.0)) throw DegenerateGenerators("pair frame needs distinct points");
    return f;
}

L1LensFamily canonical_lenses_l1(const MetricSpec& metric, Point2 v1, Point2 v2, Beta beta) {
    if (beta.is_zero())
        throw BetaOutOfRange("the beta = 0 neighbourhood is the segment, not a box family");
    PairFrame f = pair_frame(metric, v1, v2);
    return build_family(f.D, f.h, beta);
}

bool l1_family_feasible(const L1LensFamily& fam, const std::vector<double>& slab_blockers,
                        double eps, Variant variant) {
    if (fam.small_beta) {
        for (double w : slab_blockers) {
            bool in;
            if (variant == Variant::Closed || fam.h <= 2.0 * eps)
                in = w >= -eps && w <= fam.h + eps;
            else
                in = w > eps && w < fam.h - eps;
            if (in) return false;
        }
        return true;
    }
    for (const ParamRect& r : fam.part) {
        if (r.ql - r.ph > fam.width_max) continue;
        bool dead = false;
        if (variant == Variant::Closed) {
            double A = kInf, B = -kInf;
            for (double w : slab_blockers) {
                if (w >= r.ph - eps && w <= r.ql + eps) {
                    dead = true;
                    break;
                }
                if (w > r.ql + eps)
                    A = std::fmin(A, w);
                else
                    B = std::fmax(B, w);
            }
            if (!dead &&
                family_decision(r, fam.width_min, fam.width_max, eps, variant, false, A, B))
                return true;
        } else {
            // a blocker in a collapsed band sits on the boundary of both
            // sides; the box can stop under it or jump over it, so try both
            // assignments (mixed ones cannot reach the minimum width)
            double Ai = kInf, Ap = kInf, Bi = -kInf, Bp = -kInf;
            for (double w : slab_blockers) {
                bool hi_side = w >= r.ql - eps, lo_side = w <= r.ph + eps;
                if (!hi_side && !lo_side) {
                    dead = true;
                    break;
                }
                if (hi_side) Ai = std::fmin(Ai, w);
                if (lo_side) Bi = std::fmax(Bi, w);
                if (hi_side && !lo_side) Ap = std::fmin(Ap, w);
                if (lo_side && !hi_side) Bp = std::fmax(Bp, w);
            }
            if (dead) continue;
            if (family_decision(r, fam.width_min, fam.width_max, eps, variant, false, Ai, Bp))
                return true;
            if (family_decision(r, fam.width_min, fam.width_max, eps, variant, false, Ap, Bi))
                return true;
        }
    }
    return false;
}

EdgeList polyhedral_beta_skeleton_brute(const std::vector<Point2>& pts, const MetricSpec& metric,
                                        Beta beta, Variant variant) {
    check_polyhedral(metric);
    require_distinct_points(pts);
    const int n = static_cast<int>(pts.size());
    EdgeList edges;

    if (beta.is_zero()) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                bool blocked = false;
                for (int k = 0; k < n && !blocked; ++k) {
                    if (k == i || k == j) continue;
                    blocked = segment_blocked(pts[i], pts[j], pts[k], variant);
                }
                if (!blocked) edges.emplace_back(i, j);
            }
        }
        return edges;
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            PairFrame f = pair_frame(metric, pts[i], pts[j]);
            L1LensFamily fam = build_family(f.D, f.h, beta);
            double eps = kRelEps * f.D;
            std::vector<double> blockers;
            for (int k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                Point2 q = f.map(pts[k]);
                bool in_slab = variant == Variant::Closed
                                   ? (q.x >= -eps && q.x <= f.D + eps)
                                   : (q.x > eps && q.x < f.D - eps);
                if (in_slab) blockers.push_back(q.y);
            }
            if (l1_family_feasible(fam, blockers, eps, variant)) edges.emplace_back(i, j);
        }
    }
    return edges;
}

EdgeList sweep_small_beta(const std::vector<Point2>& pts, const MetricSpec& metric,
                          Variant variant) {
    check_polyhedral(metric);
    require_distinct_points(pts);
    const int n = static_cast<int>(pts.size());
    EdgeList edges;
    if (n < 2) return edges;

    std::vector<Point2> cheb(n);
    for (int i = 0; i < n; ++i) cheb[i] = to_cheb_frame(metric, pts[i]);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (cheb[a].x != cheb[b].x) return cheb[a].x < cheb[b].x;
        return cheb[a].y < cheb[b].y;
    });

    std::vector<double> U(n), W(n);
    std::vector<int> orig(n);
    for (int s = 0; s < n; ++s) {
        U[s] = cheb[order[s]].x;
        W[s] = cheb[order[s]].y;
        orig[s] = order[s];
    }

    const bool closed = variant == Variant::Closed;
    std::vector<double> low(n, kInf), high(n, -kInf);
    std::vector<char> eqw(n, 0);

    auto add_edge = [&](int s, int t) {
        int a = orig[s], b = orig[t];
        edges.emplace_back(std::min(a, b), std::max(a, b));
    };

    int gs = 0;
    while (gs < n) {
        int ge = gs;
        while (ge < n && U[ge] == U[gs]) ++ge;

        // decisions against anchors from earlier groups
        for (int s = gs; s < ge; ++s) {
            double wi = W[s];
            for (int t = 0; t < gs; ++t) {
                double wj = W[t];
                bool blocked;
                if (wi > wj) {
                    if (closed) {
                        blocked = eqw[t] || low[t] <= wi;
                        if (!blocked) {
                            // blockers sharing i's u coordinate, w in [wj, wi)
                            auto it = std::lower_bound(W.begin() + gs, W.begin() + ge, wj);
                            blocked = it != W.begin() + ge && *it < wi;
                        }
                    } else {
                        blocked = low[t] < wi;
                    }
                } else if (wi < wj) {
                    if (closed) {
                        blocked = eqw[t] || high[t] >= wi;
                        if (!blocked) {
                            auto it = std::upper_bound(W.begin() + gs, W.begin() + ge, wj);
                            blocked = it != W.begin() + gs && *(it - 1) > wi;
                        }
                    } else {
                        blocked = high[t] > wi;
                    }
                } else {
                    blocked = eqw[t] != 0;
                }
                if (!blocked) add_edge(s, t);
            }
        }

        // flat pairs inside the group: only w-consecutive ones survive
        for (int s = gs + 1; s < ge; ++s) add_edge(s - 1, s);

        // fold the group into the running bounds of earlier anchors
        for (int t = 0; t < gs; ++t) {
            double wj = W[t];
            auto lo = std::lower_bound(W.begin() + gs, W.begin() + ge, wj);
            if (lo != W.begin() + ge && *lo == wj) {
                eqw[t] = 1;
                if (lo + 1 != W.begin() + ge) low[t] = std::fmin(low[t], *(lo + 1));
            } else if (lo != W.begin() + ge) {
                low[t] = std::fmin(low[t], *lo);
            }
            if (lo != W.begin() + gs) high[t] = std::fmax(high[t], *(lo - 1));
        }

        // new anchors; the closed variant counts same-u neighbours as blockers
        for (int s = gs; s < ge; ++s) {
            low[s] = closed && s + 1 < ge ? W[s + 1] : kInf;
            high[s] = closed && s > gs ? W[s - 1] : -kInf;
            eqw[s] = 0;
        }

        gs = ge;
    }

    std::sort(edges.begin(), edges.end());
    return edges;
}

EdgeList l1_delaunay_candidates(const std::vector<Point2>& pts, const MetricSpec& metric) {
    check_polyhedral(metric);
    const int n = static_cast<int>(pts.size());
    // the corner box sits inside every sliding square, so its emptiness is
    // necessary and the cheap sweep gives a small superset to refine; that
    // argument fails only for pairs aligned with a chebyshev axis (the corner
    // box degenerates to a segment while a full square can clear the line),
    // so those pairs are appended wholesale before refinement
    EdgeList pre = sweep_small_beta(pts, metric, Variant::Open);
    {
        std::vector<Point2> cheb(n);
        for (int i = 0; i < n; ++i) cheb[i] = to_cheb_frame(metric, pts[i]);
        std::vector<int> order(n);
        auto add_runs = [&](auto key, auto tie) {
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (key(a) != key(b)) return key(a) < key(b);
                return tie(a) < tie(b);
            });
            int s = 0;
            while (s < n) {
                int e = s;
                while (e < n && key(order[e]) == key(order[s])) ++e;
                for (int a = s; a < e; ++a)
                    for (int b = a + 1; b < e; ++b)
                        pre.emplace_back(std::min(order[a], order[b]),
                                         std::max(order[a], order[b]));
                s = e;
            }
        };
        add_runs([&](int i) { return cheb[i].x; }, [&](int i) { return cheb[i].y; });
        add_runs([&](int i) { return cheb[i].y; }, [&](int i) { return cheb[i].x; });
        std::sort(pre.begin(), pre.end());
        pre.erase(std::unique(pre.begin(), pre.end()), pre.end());
    }
    EdgeList out;
    for (Edge e : pre) {
        auto [i, j] = e;
        PairFrame f = pair_frame(metric, pts[i], pts[j]);
        L1LensFamily fam = build_family(f.D, f.h, Beta(1.0));
        double eps = kRelEps * f.D;
        std::vector<double> blockers;
        for (int k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            Point2 q = f.map(pts[k]);
            if (q.x > eps && q.x < f.D - eps) blockers.push_back(q.y);
        }
        if (l1_family_feasible(fam, blockers, eps, Variant::Open)) out.push_back(e);
    }
    return out;
}

namespace {

// Max segment tree over rank leaves; inactive leaves hold -inf.
struct MaxTree {
    int size = 1;
    std::vector<double> node;

    explicit MaxTree(int n) {
        while (size < n) size <<= 1;
        node.assign(2 * size, -kInf);
    }
    void set(int pos, double v) {
        pos += size;
        node[pos] = v;
        for (pos >>= 1; pos >= 1; pos >>= 1)
            node[pos] = std::fmax(node[2 * pos], node[2 * pos + 1]);
    }
    double get(int pos) const { return node[pos + size]; }

    bool pass(double v, double T, bool strict) const { return strict ? v > T : v >= T; }

    double range_max(int l, int r) const {  // [l, r)
        double best = -kInf;
        for (l += size, r += size; l < r; l >>= 1, r >>= 1) {
            if (l & 1) best = std::fmax(best, node[l++]);
            if (r & 1) best = std::fmax(best, node[--r]);
        }
        return best;
    }

    int first_passing(int idx, int lo, int hi, int l, int r, double T, bool strict) const {
        if (r <= lo || hi <= l || !pass(node[idx], T, strict)) return -1;
        if (hi - lo == 1) return lo;
        int mid = (lo + hi) / 2;
        int res = first_passing(2 * idx, lo, mid, l, r, T, strict);
        if (res >= 0) return res;
        return first_passing(2 * idx + 1, mid, hi, l, r, T, strict);
    }
    int last_passing(int idx, int lo, int hi, int l, int r, double T, bool strict) const {
        if (r <= lo || hi <= l || !pass(node[idx], T, strict)) return -1;
        if (hi - lo == 1) return lo;
        int mid = (lo + hi) / 2;
        int res = last_passing(2 * idx + 1, mid, hi, l, r, T, strict);
        if (res >= 0) return res;
        return last_passing(2 * idx, lo, mid, l, r, T, strict);
    }
    int first_passing(int l, int r, double T, bool strict) const {
        return first_passing(1, 0, size, l, r, T, strict);
    }
    int last_passing(int l, int r, double T, bool strict) const {
        return last_passing(1, 0, size, l, r, T, strict);
    }
};

struct ClassCandidate {
    int i, j;    // point indices
    int slot;    // index into the shared output flag array
};

// One directional pass: decides all candidates whose dominant axis is the
// sweep axis. P holds (sweep, perp) coordinates per point.
void run_pass(const std::vector<Point2>& P, const std::vector<ClassCandidate>& cand,
              double beta_clamped, Variant variant, std::vector<char>& out) {
    const int n = static_cast<int>(P.size());
    if (cand.empty()) return;

    std::vector<int> by_perp(n);
    std::iota(by_perp.begin(), by_perp.end(), 0);
    std::sort(by_perp.begin(), by_perp.end(), [&](int a, int b) {
        if (P[a].y != P[b].y) return P[a].y < P[b].y;
        return a < b;
    });
    std::vector<double> perp_sorted(n);
    std::vector<int> rank_of(n);
    for (int r = 0; r < n; ++r) {
        perp_sorted[r] = P[by_perp[r]].y;
        rank_of[by_perp[r]] = r;
    }
    auto rank_lower = [&](double v) {  // first rank with perp >= v
        return static_cast<int>(std::lower_bound(perp_sorted.begin(), perp_sorted.end(), v) -
                                perp_sorted.begin());
    };
    auto rank_upper = [&](double v) {  // first rank with perp > v
        return static_cast<int>(std::upper_bound(perp_sorted.begin(), perp_sorted.end(), v) -
                                perp_sorted.begin());
    };

    struct Event {
        double coord;
        int kind;  // order among equal coords depends on the variant
        int payload;
    };
    const bool closed = variant == Variant::Closed;
    std::vector<Event> events;
    events.reserve(n + cand.size());
    for (int i = 0; i < n; ++i) events.push_back({P[i].x, closed ? 0 : 1, i});
    for (int c = 0; c < static_cast<int>(cand.size()); ++c) {
        double hi = std::fmax(P[cand[c].i].x, P[cand[c].j].x);
        events.push_back({hi, closed ? 1 : 0, c});
    }
    std::stable_sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        if (a.coord != b.coord) return a.coord < b.coord;
        return a.kind < b.kind;
    });

    MaxTree tree(n);
    const int add_kind = closed ? 0 : 1;

    for (const Event& ev : events) {
        if (ev.kind == add_kind) {
            tree.set(rank_of[ev.payload], P[ev.payload].x);
            continue;
        }
        const ClassCandidate& cc = cand[ev.payload];
        int pi = cc.i, pj = cc.j;
        double ui = P[pi].x, uj = P[pj].x;
        int near = ui <= uj ? pi : pj;
        int far = ui <= uj ? pj : pi;
        double u_lo = P[near].x, u_hi = P[far].x;
        double D = u_hi - u_lo;
        double w_near = P[near].y;
        double s_w = P[far].y >= w_near ? 1.0 : -1.0;
        double h = std::fabs(P[far].y - w_near);
        double eps = kRelEps * D;
        // the open slab excludes points sharing a generator's sweep coordinate
        bool strict_u = !closed;

        int rn = rank_of[near], rf = rank_of[far];
        double save_n = tree.get(rn), save_f = tree.get(rf);
        tree.set(rn, -kInf);
        tree.set(rf, -kInf);

        auto rects = family_rects(D, h, beta_clamped);
        bool edge = false;
        for (const ParamRect& r : rects) {
            if (r.ql - r.ph > beta_clamped * D) continue;
            // normalized band and outer thresholds, then mapped back to the
            // original perp axis through w = w_near + s_w * (normalized)
            double band_lo_n, band_hi_n;
            if (closed) {
                band_lo_n = r.ph - eps;
                band_hi_n = r.ql + eps;
            } else {
                band_lo_n = r.ph + eps;
                band_hi_n = r.ql - eps;
            }
            double t1 = w_near + s_w * band_lo_n;
            double t2 = w_near + s_w * band_hi_n;
            // rank interval of the band; closed bands include their endpoints
            int bl, bh;  // [bl, bh)
            if (s_w > 0) {
                bl = closed ? rank_lower(t1) : rank_upper(t1);
                bh = closed ? rank_upper(t2) : rank_lower(t2);
            } else {
                bl = closed ? rank_lower(t2) : rank_upper(t2);
                bh = closed ? rank_upper(t1) : rank_lower(t1);
            }
            if (bl < bh && tree.pass(tree.range_max(bl, bh), u_lo, strict_u)) continue;

            // nearest blockers on each side of the band in normalized w; a
            // blocker in a collapsed band zone belongs to both sides, so the
            // box can stop under it or jump over it (mixed assignments cannot
            // reach the minimum width): try both pairings
            auto decide = [&](double A, double B) {
                return family_decision(r, D, beta_clamped * D, eps, variant, false, A, B);
            };
            if (s_w > 0) {
                int a_from = closed ? rank_upper(t2) : rank_lower(t2);
                int b_to = closed ? rank_lower(t1) : rank_upper(t1);
                double Ai = kInf, Bp = -kInf;
                int pos = tree.first_passing(a_from, n, u_lo, strict_u);
                if (pos >= 0) Ai = perp_sorted[pos] - w_near;
                pos = tree.last_passing(0, std::min(b_to, a_from), u_lo, strict_u);
                if (pos >= 0) Bp = perp_sorted[pos] - w_near;
                edge = decide(Ai, Bp);
                if (!edge && b_to > a_from) {
                    double Ap = kInf, Bi = -kInf;
                    pos = tree.first_passing(std::max(a_from, b_to), n, u_lo, strict_u);
                    if (pos >= 0) Ap = perp_sorted[pos] - w_near;
                    pos = tree.last_passing(0, b_to, u_lo, strict_u);
                    if (pos >= 0) Bi = perp_sorted[pos] - w_near;
                    edge = decide(Ap, Bi);
                }
            } else {
                int a_to = closed ? rank_lower(t2) : rank_upper(t2);
                int b_from = closed ? rank_upper(t1) : rank_lower(t1);
                double Ai = kInf, Bp = -kInf;
                int pos = tree.last_passing(0, a_to, u_lo, strict_u);
                if (pos >= 0) Ai = w_near - perp_sorted[pos];
                pos = tree.first_passing(std::max(b_from, a_to), n, u_lo, strict_u);
                if (pos >= 0) Bp = w_near - perp_sorted[pos];
                edge = decide(Ai, Bp);
                if (!edge && b_from < a_to) {
                    double Ap = kInf, Bi = -kInf;
                    pos = tree.last_passing(0, std::min(a_to, b_from), u_lo, strict_u);
                    if (pos >= 0) Ap = w_near - perp_sorted[pos];
                    pos = tree.first_passing(b_from, n, u_lo, strict_u);
                    if (pos >= 0) Bi = w_near - perp_sorted[pos];
                    edge = decide(Ap, Bi);
                }
            }
            if (edge) break;
        }

        tree.set(rn, save_n);
        tree.set(rf, save_f);
        if (edge) out[cc.slot] = 1;
    }
}

}  // namespace

EdgeList sweep_large_beta_stage(const std::vector<Point2>& pts, const MetricSpec& metric,
                                Beta beta, Variant variant, const EdgeList& candidates) {
    check_polyhedral(metric);
    if (beta.is_zero() || (!beta.is_inf() && beta.value < 1.0))
        throw BetaOutOfRange("the large-beta sweep requires beta >= 1");
    const int n = static_cast<int>(pts.size());
    double b = clamp_beta(beta);

    std::vector<Point2> cheb(n), cheb_swapped(n);
    for (int i = 0; i < n; ++i) {
        cheb[i] = to_cheb_frame(metric, pts[i]);
        cheb_swapped[i] = {cheb[i].y, cheb[i].x};
    }

    std::vector<char> flags(candidates.size(), 0);
    std::vector<ClassCandidate> class_u, class_w;
    for (int c = 0; c < static_cast<int>(candidates.size()); ++c) {
        auto [i, j] = candidates[c];
        double du = std::fabs(cheb[i].x - cheb[j].x);
        double dw = std::fabs(cheb[i].y - cheb[j].y);
        if (du >= dw)
            class_u.push_back({i, j, c});
        else
            class_w.push_back({i, j, c});
    }
    run_pass(cheb, class_u, b, variant, flags);
    run_pass(cheb_swapped, class_w, b, variant, flags);

    EdgeList edges;
    for (std::size_t c = 0; c < candidates.size(); ++c)
        if (flags[c]) edges.push_back(candidates[c]);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

EdgeList sweep_large_beta(const std::vector<Point2>& pts, const MetricSpec& metric, Beta beta,
                          Variant variant) {
    require_distinct_points(pts);
    EdgeList candidates = l1_delaunay_candidates(pts, metric);
    return sweep_large_beta_stage(pts, metric, beta, variant, candidates);
}

}  // namespace proxiskel
