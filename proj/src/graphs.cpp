#include "proxiskel/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "proxiskel/errors.hpp"

namespace proxiskel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<std::pair<int, double>>> adjacency(const WeightedGraph& g) {
    std::vector<std::vector<std::pair<int, double>>> adj(g.n_vertices);
    for (const GraphEdge& e : g.edges) {
        adj[e.a].emplace_back(e.b, e.w);
        adj[e.b].emplace_back(e.a, e.w);
    }
    return adj;
}

double pair_tolerance(const DistanceIndex& idx) { return kRelEps * idx.max_weight; }

// Solutions of d(c(t), u) = target on one edge. The distance is a tent in t:
// rising with slope w from d(a,u), falling to d(b,u); each branch is solved
// and re-verified numerically.
void solve_on_edge(const WeightedGraph& g, const DistanceIndex& idx, int e, int u,
                   double target, double eps, std::vector<double>& out) {
    const GraphEdge& ed = g.edges[e];
    double da = idx(ed.a, u), db = idx(ed.b, u), w = ed.w;
    double ts[2] = {(target - da) / w, 1.0 - (target - db) / w};
    for (double t : ts) {
        t = std::min(1.0, std::max(0.0, t));
        double val = std::min(t * w + da, (1.0 - t) * w + db);
        if (std::abs(val - target) <= eps) out.push_back(t);
    }
}

struct MinCostFlow {
    struct Arc {
        int to, rev;
        int cap;
        double cost;
    };
    std::vector<std::vector<Arc>> adj;

    explicit MinCostFlow(int n) : adj(n) {}

    void add_edge(int a, int b, int cap, double cost) {
        adj[a].push_back({b, static_cast<int>(adj[b].size()), cap, cost});
        adj[b].push_back({a, static_cast<int>(adj[a].size()) - 1, 0, -cost});
    }

    // One augmenting unit along a Bellman-Ford shortest path (residual costs
    // go negative). Returns the path cost, or infinity if t is unreachable.
    double augment_one(int s, int t) {
        int n = static_cast<int>(adj.size());
        std::vector<double> dist(n, kInf);
        std::vector<int> pv(n, -1), pe(n, -1);
        std::vector<bool> inq(n, false);
        std::deque<int> q;
        dist[s] = 0.0;
        q.push_back(s);
        inq[s] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            inq[v] = false;
            for (int i = 0; i < static_cast<int>(adj[v].size()); ++i) {
                const Arc& a = adj[v][i];
                if (a.cap <= 0 || dist[v] + a.cost >= dist[a.to] - 1e-15) continue;
                dist[a.to] = dist[v] + a.cost;
                pv[a.to] = v;
                pe[a.to] = i;
                if (!inq[a.to]) {
                    q.push_back(a.to);
                    inq[a.to] = true;
                }
            }
        }
        if (pv[t] < 0 && s != t) return kInf;
        if (dist[t] == kInf) return kInf;
        for (int v = t; v != s; v = pv[v]) {
            Arc& a = adj[pv[v]][pe[v]];
            a.cap -= 1;
            adj[v][a.rev].cap += 1;
        }
        return dist[t];
    }
};

bool lens_empty(const WeightedGraph& g, const DistanceIndex& idx, const GraphPoint& c1,
                const GraphPoint& c2, double radius, int skip_i, int skip_j, Variant variant,
                double eps) {
    for (std::size_t k = 0; k < g.sites.size(); ++k) {
        if (static_cast<int>(k) == skip_i || static_cast<int>(k) == skip_j) continue;
        double d1 = graphpoint_distance(g, idx, c1, g.sites[k]);
        double d2 = graphpoint_distance(g, idx, c2, g.sites[k]);
        bool inside = variant == Variant::Closed
                          ? (d1 <= radius + eps && d2 <= radius + eps)
                          : (d1 < radius - eps && d2 < radius - eps);
        if (inside) return false;
    }
    return true;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace

bool operator==(const GraphPoint& a, const GraphPoint& b) {
    if (a.is_vertex() != b.is_vertex()) return false;
    if (a.is_vertex()) return a.vertex == b.vertex;
    return a.edge == b.edge && a.t == b.t;
}

bool operator<(const GraphPoint& a, const GraphPoint& b) {
    if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
    if (a.is_vertex()) return a.vertex < b.vertex;
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.t < b.t;
}

double graph_eps(const DistanceIndex& idx) { return pair_tolerance(idx); }

void validate_graph(const WeightedGraph& g) {
    if (g.n_vertices <= 0) throw std::invalid_argument("graph needs at least one vertex");
    if (g.sites.empty()) throw std::invalid_argument("graph needs a nonempty site set");
    std::set<int> seen;
    for (int s : g.sites) {
        if (s < 0 || s >= g.n_vertices) throw std::invalid_argument("site id out of range");
        if (!seen.insert(s).second) throw std::invalid_argument("duplicate site id");
    }
    for (const GraphEdge& e : g.edges) {
        if (e.a < 0 || e.a >= g.n_vertices || e.b < 0 || e.b >= g.n_vertices)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.a == e.b) throw std::invalid_argument("self-loop edge");
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw std::invalid_argument("edge weight must be positive and finite");
    }
}

DistanceIndex apsp(const WeightedGraph& g) {
    validate_graph(g);
    int n = g.n_vertices;
    DistanceIndex idx;
    idx.n = n;
    idx.d.assign(static_cast<std::size_t>(n) * n, kInf);
    for (const GraphEdge& e : g.edges) idx.max_weight = std::max(idx.max_weight, e.w);
    auto adj = adjacency(g);
    using Item = std::pair<double, int>;
    for (int s = 0; s < n; ++s) {
        double* dist = &idx.d[static_cast<std::size_t>(s) * n];
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        dist[s] = 0.0;
        pq.emplace(0.0, s);
        while (!pq.empty()) {
            auto [dv, v] = pq.top();
            pq.pop();
            if (dv > dist[v]) continue;
            for (auto [to, w] : adj[v]) {
                if (dv + w < dist[to]) {
                    dist[to] = dv + w;
                    pq.emplace(dist[to], to);
                }
            }
        }
        for (int v = 0; v < n; ++v)
            if (dist[v] == kInf) throw DisconnectedGraph("vertex " + std::to_string(v) +
                                                         " unreachable from " + std::to_string(s));
    }
    return idx;
}

double graphpoint_distance(const WeightedGraph& g, const DistanceIndex& idx,
                           const GraphPoint& p, int u) {
    if (p.is_vertex()) return idx(p.vertex, u);
    const GraphEdge& e = g.edges[p.edge];
    return std::min(p.t * e.w + idx(e.a, u), (1.0 - p.t) * e.w + idx(e.b, u));
}

double graphpoint_pair_distance(const WeightedGraph& g, const DistanceIndex& idx,
                                const GraphPoint& p, const GraphPoint& q) {
    if (p.is_vertex()) return graphpoint_distance(g, idx, q, p.vertex);
    if (q.is_vertex()) return graphpoint_distance(g, idx, p, q.vertex);
    const GraphEdge& ep = g.edges[p.edge];
    const GraphEdge& eq = g.edges[q.edge];
    double best = kInf;
    double pa = p.t * ep.w, pb = (1.0 - p.t) * ep.w;
    double qa = q.t * eq.w, qb = (1.0 - q.t) * eq.w;
    best = std::min(best, pa + idx(ep.a, eq.a) + qa);
    best = std::min(best, pa + idx(ep.a, eq.b) + qb);
    best = std::min(best, pb + idx(ep.b, eq.a) + qa);
    best = std::min(best, pb + idx(ep.b, eq.b) + qb);
    if (p.edge == q.edge) best = std::min(best, std::abs(p.t - q.t) * ep.w);
    return best;
}

std::vector<GraphPoint> candidate_centers(const WeightedGraph& g, const DistanceIndex& idx,
                                          int u1, int u2, Beta beta) {
    if (beta.is_inf() || beta.value < 1.0)
        throw BetaOutOfRange("candidate centres need finite beta >= 1");
    if (u1 == u2) throw std::invalid_argument("candidate centres need distinct sites");
    double D = idx(u1, u2);
    double eps = pair_tolerance(idx);
    double r1 = beta.value * D / 2.0;
    double r2 = std::abs(beta.value - 2.0) * D / 2.0;

    std::vector<GraphPoint> found;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const GraphEdge& ed = g.edges[e];
        std::vector<double> ts;
        solve_on_edge(g, idx, e, u1, r1, eps, ts);
        solve_on_edge(g, idx, e, u1, r2, eps, ts);
        double eps_t = eps / ed.w;
        for (double t : ts) {
            GraphPoint c = t <= eps_t               ? GraphPoint::at_vertex(ed.a)
                           : t >= 1.0 - eps_t       ? GraphPoint::at_vertex(ed.b)
                                                    : GraphPoint::on_edge(e, t);
            double d1 = graphpoint_distance(g, idx, c, u1);
            double d2 = graphpoint_distance(g, idx, c, u2);
            bool straight = std::abs(d1 - r1) <= eps && std::abs(d2 - r2) <= eps;
            bool swapped = std::abs(d1 - r2) <= eps && std::abs(d2 - r1) <= eps;
            if (straight || swapped) found.push_back(c);
        }
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

CycleInfo shortest_circle(const WeightedGraph& g, int u1, int u2) {
    MinCostFlow mcf(g.n_vertices);
    for (const GraphEdge& e : g.edges) {
        mcf.add_edge(e.a, e.b, 1, e.w);
        mcf.add_edge(e.b, e.a, 1, e.w);
    }
    CycleInfo info;
    double total = 0.0;
    for (int k = 0; k < 2; ++k) {
        double c = mcf.augment_one(u1, u2);
        if (c == kInf) return info;
        total += c;
    }
    info.exists = true;
    info.length = total;
    return info;
}

std::vector<PairBound> beta_bound_pairs(const WeightedGraph& g, const DistanceIndex& idx) {
    std::vector<PairBound> out;
    int m = static_cast<int>(g.sites.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            PairBound pb;
            pb.site_i = i;
            pb.site_j = j;
            CycleInfo ci = shortest_circle(g, g.sites[i], g.sites[j]);
            pb.circle_exists = ci.exists;
            double D = idx(g.sites[i], g.sites[j]);
            pb.bound = ci.exists ? ci.length / (2.0 * D) + 1.0 : 2.0;
            out.push_back(pb);
        }
    }
    return out;
}

double beta_bound(const WeightedGraph& g) {
    DistanceIndex idx = apsp(g);
    double bound = kInf;
    for (const PairBound& pb : beta_bound_pairs(g, idx)) {
        if (!pb.circle_exists)
            throw NoCycle("no circle through sites " + std::to_string(pb.site_i) + " and " +
                          std::to_string(pb.site_j));
        bound = std::min(bound, pb.bound);
    }
    return bound;
}

WeightedSkeleton weighted_beta_skeleton(const WeightedGraph& g, Beta beta, Variant variant) {
    if (beta.is_inf() || beta.value < 1.0)
        throw BetaOutOfRange("weighted skeleton needs finite beta >= 1");
    DistanceIndex idx = apsp(g);
    double eps = pair_tolerance(idx);
    std::vector<PairBound> bounds = beta_bound_pairs(g, idx);

    WeightedSkeleton result;
    int m = static_cast<int>(g.sites.size());
    std::size_t next = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const PairBound& pb = bounds[next++];
            if (beta.value > pb.bound * (1.0 + 1e-12)) {
                result.undefined.push_back({i, j});
                continue;
            }
            int u1 = g.sites[i], u2 = g.sites[j];
            double D = idx(u1, u2);
            double radius = beta.value * D / 2.0;
            double second = std::abs(beta.value - 2.0) * D / 2.0;
            double centre_gap = (beta.value - 1.0) * D;
            std::vector<GraphPoint> cands = candidate_centers(g, idx, u1, u2, beta);
            // c1 must read (radius, second) against (u1, u2) and c2 the swap;
            // pairing arbitrary candidates breaks the monotonicity of the
            // skeleton in beta (two same-role centres on different geodesics
            // can satisfy the gap condition without bounding a lens).
            auto role = [&](const GraphPoint& c) {
                double d1 = graphpoint_distance(g, idx, c, u1);
                double d2 = graphpoint_distance(g, idx, c, u2);
                int r = 0;
                if (std::abs(d1 - radius) <= eps && std::abs(d2 - second) <= eps) r |= 1;
                if (std::abs(d2 - radius) <= eps && std::abs(d1 - second) <= eps) r |= 2;
                return r;
            };
            std::vector<int> roles(cands.size());
            for (std::size_t a = 0; a < cands.size(); ++a) roles[a] = role(cands[a]);
            bool edge = false;
            for (std::size_t a = 0; a < cands.size() && !edge; ++a) {
                for (std::size_t b = a; b < cands.size() && !edge; ++b) {
                    bool paired = (roles[a] & 1) && (roles[b] & 2);
                    bool swapped = (roles[a] & 2) && (roles[b] & 1);
                    if (!paired && !swapped) continue;
                    double gap = graphpoint_pair_distance(g, idx, cands[a], cands[b]);
                    if (std::abs(gap - centre_gap) > eps) continue;
                    if (lens_empty(g, idx, cands[a], cands[b], radius, i, j, variant, eps))
                        edge = true;
                }
            }
            if (edge) result.edges.push_back({i, j});
        }
    }
    result.partial = !result.undefined.empty();
    std::sort(result.edges.begin(), result.edges.end());
    return result;
}

EdgeList graph_mst(const WeightedGraph& g) {
    DistanceIndex idx = apsp(g);
    int m = static_cast<int>(g.sites.size());
    struct Cand {
        double d;
        int i, j;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) cands.push_back({idx(g.sites[i], g.sites[j]), i, j});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    DisjointSet dsu(m);
    EdgeList out;
    for (const Cand& c : cands)
        if (dsu.unite(c.i, c.j)) out.push_back({c.i, c.j});
    std::sort(out.begin(), out.end());
    return out;
}

EdgeList graph_delaunay(const WeightedGraph& g) {
    DistanceIndex idx = apsp(g);
    double eps = pair_tolerance(idx);
    int m = static_cast<int>(g.sites.size());
    EdgeList out;

    // Margin of a disc centred at fraction t of edge e for the pair (i,j):
    // nearest other site minus the farther generator. Piecewise linear in t;
    // positive maximum is attained at a tent peak or a pairwise crossing.
    auto margin_at = [&](int e, double t, int i, int j) {
        const GraphEdge& ed = g.edges[e];
        double da = t * ed.w, db = (1.0 - t) * ed.w;
        auto dist = [&](int site) {
            return std::min(da + idx(ed.a, g.sites[site]), db + idx(ed.b, g.sites[site]));
        };
        double far_gen = std::max(dist(i), dist(j));
        double near_other = kInf;
        for (int k = 0; k < m; ++k)
            if (k != i && k != j) near_other = std::min(near_other, dist(k));
        return near_other - far_gen;
    };

    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            bool found = false;
            for (int e = 0; e < static_cast<int>(g.edges.size()) && !found; ++e) {
                const GraphEdge& ed = g.edges[e];
                std::vector<double> ts = {0.0, 1.0};
                for (int k = 0; k < m; ++k) {
                    double tk = (idx(ed.b, g.sites[k]) - idx(ed.a, g.sites[k]) + ed.w) /
                                (2.0 * ed.w);
                    if (tk > 0.0 && tk < 1.0) ts.push_back(tk);
                }
                for (int k = 0; k < m; ++k) {
                    for (int l = k + 1; l < m; ++l) {
                        double dak = idx(ed.a, g.sites[k]), dbk = idx(ed.b, g.sites[k]);
                        double dal = idx(ed.a, g.sites[l]), dbl = idx(ed.b, g.sites[l]);
                        // rising branch of one against falling branch of the other
                        double t1 = (dbl + ed.w - dak) / (2.0 * ed.w);
                        double t2 = (dbk + ed.w - dal) / (2.0 * ed.w);
                        if (t1 > 0.0 && t1 < 1.0) ts.push_back(t1);
                        if (t2 > 0.0 && t2 < 1.0) ts.push_back(t2);
                    }
                }
                for (double t : ts) {
                    if (margin_at(e, t, i, j) > eps) {
                        found = true;
                        break;
                    }
                }
            }
            if (m == 2) found = true;  // no competing site anywhere
            if (found) out.push_back({i, j});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ChainReport weighted_chain_check(const WeightedGraph& g, const std::vector<double>& betas) {
    for (double b : betas)
        if (!(b >= 1.0 && b <= 2.0))
            throw BetaOutOfRange("chain betas must lie in [1, 2]");
    std::vector<double> sorted = betas;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    ChainReport report;
    std::vector<EdgeList> graphs;
    auto add_stage = [&](const std::string& name, EdgeList edges) {
        std::sort(edges.begin(), edges.end());
        report.stages.push_back(name);
        report.edge_counts.push_back(edges.size());
        graphs.push_back(std::move(edges));
    };

    add_stage("mst", graph_mst(g));
    add_stage("rng", weighted_beta_skeleton(g, Beta(2.0), Variant::Open).edges);
    for (double b : sorted) {
        Variant v = b == 2.0 ? Variant::Open : Variant::Closed;
        std::string name = "beta=" + std::to_string(b) + (v == Variant::Open ? " open" : " closed");
        add_stage(name, weighted_beta_skeleton(g, Beta(b), v).edges);
    }
    add_stage("gabriel", weighted_beta_skeleton(g, Beta(1.0), Variant::Closed).edges);
    add_stage("delaunay", graph_delaunay(g));

    for (std::size_t s = 0; s + 1 < graphs.size(); ++s) {
        for (const Edge& e : graphs[s]) {
            if (!std::binary_search(graphs[s + 1].begin(), graphs[s + 1].end(), e))
                report.violations.push_back({report.stages[s], report.stages[s + 1], e});
        }
    }
    report.ok = report.violations.empty();
    return report;
}

std::vector<SmallBetaAdvice> weighted_small_beta_advisory(const WeightedGraph& g, Beta beta) {
    if (beta.is_zero() || beta.is_inf() || beta.value >= 1.0)
        throw BetaOutOfRange("advisory covers beta in (0, 1)");
    DistanceIndex idx = apsp(g);
    std::vector<SmallBetaAdvice> out;
    int m = static_cast<int>(g.sites.size());
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            SmallBetaAdvice adv;
            adv.site_i = i;
            adv.site_j = j;
            double D = idx(g.sites[i], g.sites[j]);
            adv.required_length = D * (1.0 + 1.0 / beta.value);
            CycleInfo ci = shortest_circle(g, g.sites[i], g.sites[j]);
            adv.circle_exists = ci.exists;
            adv.circle_length = ci.length;
            // Conservative: a circle at least this long certainly fits the
            // centres; shorter shortest-circles leave the question open.
            adv.feasible = ci.exists && ci.length >= adv.required_length - graph_eps(idx);
            out.push_back(adv);
        }
    }
    return out;
}

}  // namespace proxiskel
