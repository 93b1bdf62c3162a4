// Command-line front end: compute | validate | render | bench.
//
// Exit codes: 0 success, 1 validation violations, 2 input parse error,
// 3 inconsistent configuration, 4 beta outside the weighted-graph bound.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "proxiskel/io.hpp"
#include "proxiskel/l1.hpp"
#include "proxiskel/render.hpp"

namespace px = proxiskel;

namespace {

// Configuration problems distinct from unreadable input.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string input;
    std::string metric = "lp:2";
    double beta = 1.0;
    std::string variant = "closed";
    std::string algorithm = "auto";
    int resolution = 64;
    bool resolution_set = false;
    std::string output;
    std::string svg;
    std::string edges_file;
    bool show_witnesses = false;
    std::string target = "alg1";
    std::vector<int> ladder;
    unsigned seed = 1;
};

enum class InputKind { LpPoints, PolyPoints, Graph, Segments };

struct Loaded {
    InputKind kind = InputKind::LpPoints;
    px::MetricSpec metric = px::MetricSpec::l2();
    std::vector<px::Point2> points;
    std::vector<px::Segment> segments;
    px::GraphFile gf;
};

px::Variant parse_variant(const std::string& v) {
    return v == "open" ? px::Variant::Open : px::Variant::Closed;
}

Loaded load_input(const RunConfig& cfg) {
    Loaded in;
    if (cfg.metric == "graph") {
        in.kind = InputKind::Graph;
        in.gf = px::read_graph(cfg.input);
    } else if (cfg.metric == "segments") {
        in.kind = InputKind::Segments;
        in.segments = px::read_segments(cfg.input);
    } else if (cfg.metric == "l1") {
        in.kind = InputKind::PolyPoints;
        in.metric = px::MetricSpec::l1();
        in.points = px::read_points(cfg.input);
    } else if (cfg.metric == "linf") {
        in.kind = InputKind::PolyPoints;
        in.metric = px::MetricSpec::linf();
        in.points = px::read_points(cfg.input);
    } else if (cfg.metric.rfind("lp:", 0) == 0) {
        in.kind = InputKind::LpPoints;
        double p = 0.0;
        try {
            p = std::stod(cfg.metric.substr(3));
        } catch (const std::exception&) {
            throw ConfigError("unparsable metric " + cfg.metric);
        }
        if (!(p > 1.0) || std::isinf(p))
            throw ConfigError("lp metric needs 1 < p < inf; use l1 or linf for the limits");
        in.metric = px::MetricSpec::lp(p);
        in.points = px::read_points(cfg.input);
    } else {
        throw ConfigError("unknown metric selector " + cfg.metric +
                          " (expected lp:<p>, l1, linf, graph, or segments)");
    }
    return in;
}

void check_selectors(const RunConfig& cfg, const Loaded& in) {
    if (cfg.algorithm == "sweep" && in.kind != InputKind::PolyPoints)
        throw ConfigError("--algorithm sweep applies to l1/linf inputs only");
    if (cfg.resolution_set && in.kind != InputKind::Segments)
        throw ConfigError("--resolution applies to segment inputs only");
    if (cfg.show_witnesses && in.kind != InputKind::Segments)
        throw ConfigError("--show-witnesses applies to segment inputs only");
    if (in.kind == InputKind::Graph && cfg.algorithm != "auto")
        throw ConfigError("graph inputs have a single algorithm; use --algorithm auto");
    if (in.kind == InputKind::Segments && cfg.algorithm == "brute")
        throw ConfigError("segment inputs have a single algorithm; use --algorithm auto");
}

std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct ComputeResult {
    px::EdgeList edges;
    std::vector<px::SegmentWitness> witnesses;  // segments only
    std::vector<std::string> comments;
    std::string algorithm;  // resolved name
};

// Smallest per-pair lens-existence bound among site pairs that lie on a
// cycle; pairs without one stay defined up to beta = 2 and are reported as
// undefined past it instead of failing the run.
double global_graph_bound(const px::WeightedGraph& g) {
    double bound = std::numeric_limits<double>::infinity();
    px::DistanceIndex idx = px::apsp(g);
    for (const px::PairBound& pb : px::beta_bound_pairs(g, idx))
        if (pb.circle_exists) bound = std::fmin(bound, pb.bound);
    return bound;
}

ComputeResult run_compute(const Loaded& in, const RunConfig& cfg) {
    px::Beta beta(cfg.beta);
    px::Variant variant = parse_variant(cfg.variant);
    ComputeResult res;

    switch (in.kind) {
        case InputKind::LpPoints:
            res.algorithm = "brute";
            res.edges = px::beta_skeleton_brute(in.points, in.metric, beta, variant);
            break;
        case InputKind::PolyPoints:
            if (cfg.algorithm == "brute") {
                res.algorithm = "brute";
                res.edges = px::polyhedral_beta_skeleton_brute(in.points, in.metric, beta,
                                                               variant);
            } else if (beta.is_zero()) {
                if (cfg.algorithm == "sweep")
                    throw ConfigError("the sweeps need beta > 0; beta = 0 runs --algorithm brute");
                res.algorithm = "brute";
                res.edges = px::polyhedral_beta_skeleton_brute(in.points, in.metric, beta,
                                                               variant);
            } else if (beta.value < 1.0) {
                res.algorithm = "sweep";
                res.edges = px::sweep_small_beta(in.points, in.metric, variant);
            } else {
                res.algorithm = "sweep";
                res.edges = px::sweep_large_beta(in.points, in.metric, beta, variant);
            }
            break;
        case InputKind::Graph: {
            res.algorithm = "graph";
            double bound = global_graph_bound(in.gf.graph);
            if (cfg.beta > bound * (1.0 + 1e-12))
                throw px::BetaOutOfRange("beta " + fmt_double(cfg.beta) +
                                         " exceeds the lens existence bound " +
                                         fmt_double(bound));
            px::WeightedSkeleton sk = px::weighted_beta_skeleton(in.gf.graph, beta, variant);
            res.edges = sk.edges;
            if (sk.partial) {
                res.comments.push_back("partial=true");
                for (const px::Edge& e : sk.undefined)
                    res.comments.push_back("undefined " + std::to_string(e.first) + " " +
                                           std::to_string(e.second));
            }
            break;
        }
        case InputKind::Segments: {
            res.algorithm = "grid";
            px::SegmentSkeleton sk =
                px::segment_beta_skeleton(in.segments, beta, variant, cfg.resolution);
            res.edges = sk.edges;
            res.witnesses = sk.witnesses;
            res.comments.push_back("resolution=" + std::to_string(cfg.resolution));
            for (std::size_t t = 0; t < sk.edges.size(); ++t)
                res.comments.push_back(
                    "witness " + std::to_string(sk.edges[t].first) + " " +
                    std::to_string(sk.edges[t].second) + " " +
                    std::to_string(sk.witnesses[t].k1) + "/" + std::to_string(sk.witnesses[t].m) +
                    " " + std::to_string(sk.witnesses[t].k2) + "/" +
                    std::to_string(sk.witnesses[t].m));
            break;
        }
    }

    std::vector<std::string> head = {"beta=" + fmt_double(cfg.beta), "metric=" + cfg.metric,
                                     "variant=" + cfg.variant, "algorithm=" + res.algorithm};
    res.comments.insert(res.comments.begin(), head.begin(), head.end());
    return res;
}

px::Scene build_scene(const Loaded& in, const RunConfig& cfg, const ComputeResult& res) {
    px::Scene sc;
    switch (in.kind) {
        case InputKind::LpPoints:
        case InputKind::PolyPoints: {
            sc.markers = in.points;
            px::Scene::Layer layer;
            layer.tag = "skeleton";
            for (const px::Edge& e : res.edges)
                layer.lines.push_back({in.points[e.first], in.points[e.second]});
            sc.layers.push_back(std::move(layer));
            break;
        }
        case InputKind::Graph: {
            if (in.gf.coords.empty())
                throw ConfigError("rendering a graph needs a coords array in the input");
            for (const px::GraphEdge& ge : in.gf.graph.edges)
                sc.wires.push_back({in.gf.coords[ge.a], in.gf.coords[ge.b]});
            for (int s : in.gf.graph.sites) sc.markers.push_back(in.gf.coords[s]);
            px::Scene::Layer layer;
            layer.tag = "skeleton";
            for (const px::Edge& e : res.edges)
                layer.lines.push_back({in.gf.coords[in.gf.graph.sites[e.first]],
                                       in.gf.coords[in.gf.graph.sites[e.second]]});
            sc.layers.push_back(std::move(layer));
            break;
        }
        case InputKind::Segments: {
            sc.segments = in.segments;
            px::Scene::Layer layer;
            layer.tag = "skeleton";
            for (const px::Edge& e : res.edges)
                layer.lines.push_back(
                    {in.segments[e.first].at(0.5), in.segments[e.second].at(0.5)});
            sc.layers.push_back(std::move(layer));
            if (cfg.show_witnesses) {
                for (std::size_t t = 0; t < res.edges.size(); ++t) {
                    const px::SegmentWitness& w = res.witnesses[t];
                    px::Point2 v1 =
                        in.segments[res.edges[t].first].at(static_cast<double>(w.k1) / w.m);
                    px::Point2 v2 =
                        in.segments[res.edges[t].second].at(static_cast<double>(w.k2) / w.m);
                    sc.lenses.push_back(
                        px::lens_construct(px::MetricSpec::l2(), v1, v2, px::Beta(cfg.beta)));
                }
            }
            break;
        }
    }
    return sc;
}

int cmd_compute(const RunConfig& cfg) {
    Loaded in = load_input(cfg);
    check_selectors(cfg, in);
    ComputeResult res = run_compute(in, cfg);
    std::string text = px::format_edge_list(res.edges, res.comments);
    if (cfg.output.empty())
        std::cout << text;
    else
        px::write_text_atomic(cfg.output, text);
    if (!cfg.svg.empty()) px::write_text_atomic(cfg.svg, px::render_scene(build_scene(in, cfg, res)));
    return 0;
}

int cmd_render(const RunConfig& cfg) {
    if (cfg.svg.empty()) throw ConfigError("render needs --svg <path>");
    Loaded in = load_input(cfg);
    check_selectors(cfg, in);
    ComputeResult res = run_compute(in, cfg);
    px::write_text_atomic(cfg.svg, px::render_scene(build_scene(in, cfg, res)));
    return 0;
}

struct Reporter {
    std::ostringstream out;
    int violations = 0;

    void check(const std::string& name, std::size_t count, const std::string& detail) {
        out << name << ": " << (count == 0 ? "ok" : std::to_string(count) + " violations")
            << detail << "\n";
        violations += static_cast<int>(count);
    }

    void chain(const px::ChainReport& rep) {
        for (std::size_t s = 0; s + 1 < rep.stages.size(); ++s) {
            std::size_t bad = 0;
            std::string first;
            for (const px::ChainViolation& v : rep.violations)
                if (v.from_stage == rep.stages[s]) {
                    ++bad;
                    if (first.empty())
                        first = " first=(" + std::to_string(v.edge.first) + "," +
                                std::to_string(v.edge.second) + ")";
                }
            check("inclusion " + rep.stages[s] + " <= " + rep.stages[s + 1], bad,
                  " (" + std::to_string(rep.edge_counts[s]) + " <= " +
                      std::to_string(rep.edge_counts[s + 1]) + " edges)" + first);
        }
    }
};

void diff_edges(Reporter& rep, const px::EdgeList& file_edges, const px::EdgeList& fresh) {
    px::EdgeList sorted_file = file_edges;
    std::sort(sorted_file.begin(), sorted_file.end());
    std::size_t bad = 0;
    std::string first;
    auto note = [&](const px::Edge& e, const char* what) {
        ++bad;
        if (first.empty())
            first = std::string(" first ") + what + " edge (" + std::to_string(e.first) + "," +
                    std::to_string(e.second) + ")";
    };
    for (const px::Edge& e : sorted_file)
        if (!std::binary_search(fresh.begin(), fresh.end(), e)) note(e, "extra");
    for (const px::Edge& e : fresh)
        if (!std::binary_search(sorted_file.begin(), sorted_file.end(), e)) note(e, "missing");
    rep.check("edge file matches recomputation", bad, first);
}

int cmd_validate(const RunConfig& cfg) {
    Loaded in = load_input(cfg);
    check_selectors(cfg, in);
    Reporter rep;
    const std::vector<double> grid = {1.0, 1.25, 1.5, 1.75, 2.0};

    switch (in.kind) {
        case InputKind::LpPoints: {
            if (in.metric == px::MetricSpec::l2()) {
                rep.chain(px::inclusion_chain_check(in.points, grid));
            } else {
                // The full chain validator is euclidean; check monotonicity
                // of the brute skeleton directly for other p.
                px::EdgeList prev;
                bool have_prev = false;
                for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
                    px::EdgeList cur = px::beta_skeleton_brute(in.points, in.metric,
                                                               px::Beta(*it), px::Variant::Closed);
                    if (have_prev) {
                        std::size_t bad = 0;
                        for (const px::Edge& e : prev)
                            if (!std::binary_search(cur.begin(), cur.end(), e)) ++bad;
                        rep.check("monotone beta=" + fmt_double(*it), bad, "");
                    }
                    prev = std::move(cur);
                    have_prev = true;
                }
            }
            break;
        }
        case InputKind::PolyPoints: {
            px::Variant variant = parse_variant(cfg.variant);
            px::EdgeList c3 = px::sweep_small_beta(in.points, in.metric, variant);
            px::EdgeList b3 = px::polyhedral_beta_skeleton_brute(in.points, in.metric,
                                                                 px::Beta(0.3), variant);
            px::EdgeList b7 = px::polyhedral_beta_skeleton_brute(in.points, in.metric,
                                                                 px::Beta(0.7), variant);
            rep.check("small-beta collapse 0.3 vs 0.7", b3 == b7 ? 0 : 1, "");
            rep.check("small-beta sweep vs brute", c3 == b3 ? 0 : 1, "");
            px::EdgeList l2 = px::sweep_large_beta(in.points, in.metric, px::Beta(2.0), variant);
            for (double b : {3.0, 10.0}) {
                px::EdgeList lb =
                    px::sweep_large_beta(in.points, in.metric, px::Beta(b), variant);
                rep.check("large-beta collapse 2 vs " + fmt_double(b), lb == l2 ? 0 : 1, "");
            }
            for (double b : {1.0, 1.5, 2.0}) {
                px::EdgeList sw =
                    px::sweep_large_beta(in.points, in.metric, px::Beta(b), variant);
                px::EdgeList br = px::polyhedral_beta_skeleton_brute(in.points, in.metric,
                                                                     px::Beta(b), variant);
                rep.check("sweep vs brute beta=" + fmt_double(b), sw == br ? 0 : 1, "");
            }
            break;
        }
        case InputKind::Graph: {
            rep.chain(px::weighted_chain_check(in.gf.graph, grid));
            std::size_t bad = 0;
            px::DistanceIndex idx = px::apsp(in.gf.graph);
            for (const px::PairBound& pb : px::beta_bound_pairs(in.gf.graph, idx))
                if (pb.circle_exists && pb.bound < 2.0 - 1e-12) ++bad;
            rep.check("pair bounds at least 2", bad, "");
            break;
        }
        case InputKind::Segments:
            rep.chain(px::chain_check_segments(in.segments, grid, cfg.resolution));
            break;
    }

    if (!cfg.edges_file.empty()) {
        ComputeResult res = run_compute(in, cfg);
        diff_edges(rep, px::read_edge_list(cfg.edges_file), res.edges);
    }

    std::string text = rep.out.str() +
                       (rep.violations == 0 ? "all checks passed\n"
                                            : std::to_string(rep.violations) + " violations\n");
    if (cfg.output.empty())
        std::cout << text;
    else
        px::write_text_atomic(cfg.output, text);
    if (rep.violations != 0) std::cerr << "validation failed\n";
    return rep.violations == 0 ? 0 : 1;
}

std::vector<px::Point2> random_points(unsigned seed, int n) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<px::Point2> pts(n);
    for (px::Point2& p : pts) p = {u(rng), u(rng)};
    return pts;
}

// Neighbour pairs on a uniform bucket grid, linear in n for uniform data.
// Stands in for the exact candidate generator when only the decision stage
// is being timed.
px::EdgeList grid_neighbor_candidates(const std::vector<px::Point2>& pts) {
    const int n = static_cast<int>(pts.size());
    int cells = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
    std::map<std::pair<int, int>, std::vector<int>> buckets;
    auto cell_of = [&](px::Point2 p) {
        return std::make_pair(static_cast<int>(p.x * cells), static_cast<int>(p.y * cells));
    };
    for (int i = 0; i < n; ++i) buckets[cell_of(pts[i])].push_back(i);
    px::EdgeList cand;
    for (const auto& [cell, members] : buckets) {
        for (int dx = 0; dx <= 1; ++dx) {
            for (int dy = (dx == 0 ? 0 : -1); dy <= 1; ++dy) {
                auto it = buckets.find({cell.first + dx, cell.second + dy});
                if (it == buckets.end()) continue;
                for (int a : members)
                    for (int b : it->second)
                        if (a < b || cell != it->first) cand.emplace_back(std::min(a, b),
                                                                          std::max(a, b));
            }
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    return cand;
}

// Times every rung once per pass and keeps per-rung minima across passes.
// Interleaving cancels slow drift in machine speed (frequency scaling,
// background load) that would otherwise skew the rung-to-rung ratios; the
// minimum is the right scaling estimator because the remaining noise is
// strictly additive. One untimed warmup pass, then at least five timed
// passes, continuing until thirty seconds of measurements accumulate so a
// single multi-second load burst cannot own every sample of one rung.
void run_ladder(const std::vector<int>& ns, const std::vector<std::function<void()>>& bodies,
                const std::function<void(int, double)>& emit) {
    using clock = std::chrono::steady_clock;
    for (const auto& body : bodies) body();
    std::vector<double> best(bodies.size(), std::numeric_limits<double>::infinity());
    double total = 0.0;
    for (int pass = 0; pass < 200 && (pass < 5 || total < 30.0); ++pass) {
        for (std::size_t i = 0; i < bodies.size(); ++i) {
            auto t0 = clock::now();
            bodies[i]();
            double t = std::chrono::duration<double>(clock::now() - t0).count();
            best[i] = std::fmin(best[i], t);
            total += t;
        }
    }
    for (std::size_t i = 0; i < bodies.size(); ++i) emit(ns[i], best[i]);
}

int cmd_bench(const RunConfig& cfg) {
    std::vector<int> ladder = cfg.ladder;
    std::ostringstream csv;
    csv << "n,seconds,ratio\n";
    double prev = 0.0;

    auto emit = [&](int n, double secs) {
        csv << n << "," << std::fixed;
        csv.precision(9);
        csv << secs;
        csv.precision(3);
        if (prev > 0.0)
            csv << "," << secs / prev;
        else
            csv << ",";
        csv << "\n";
        prev = secs;
    };

    std::vector<std::function<void()>> bodies;
    if (cfg.target == "alg1") {
        if (ladder.empty()) ladder = {2000, 4000, 8000};
        for (int n : ladder)
            bodies.push_back([pts = random_points(cfg.seed + n, n)] {
                px::EdgeList sink =
                    px::sweep_small_beta(pts, px::MetricSpec::l1(), px::Variant::Closed);
                (void)sink;
            });
    } else if (cfg.target == "alg2") {
        if (ladder.empty()) ladder = {10000, 20000, 40000};
        for (int n : ladder) {
            std::vector<px::Point2> pts = random_points(cfg.seed + n, n);
            px::EdgeList cand = grid_neighbor_candidates(pts);
            bodies.push_back([pts = std::move(pts), cand = std::move(cand)] {
                px::EdgeList sink = px::sweep_large_beta_stage(
                    pts, px::MetricSpec::l1(), px::Beta(1.5), px::Variant::Closed, cand);
                (void)sink;
            });
        }
    } else if (cfg.target == "brute") {
        if (ladder.empty()) ladder = {400, 800, 1600};
        for (int n : ladder)
            bodies.push_back([pts = random_points(cfg.seed + n, n)] {
                px::EdgeList sink = px::beta_skeleton_brute(pts, px::MetricSpec::l2(),
                                                            px::Beta(1.0), px::Variant::Closed);
                (void)sink;
            });
    } else {
        throw ConfigError("unknown bench target " + cfg.target);
    }
    run_ladder(ladder, bodies, emit);

    if (cfg.output.empty())
        std::cout << csv.str();
    else
        px::write_text_atomic(cfg.output, csv.str());
    return 0;
}

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("PROXISKEL_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) omp_set_num_threads(cap);
    }
#endif
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"beta-skeleton toolkit: points (lp/l1/linf), weighted graphs, segments"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* c, bool needs_input) {
        auto* opt = c->add_option("--input,-i", cfg.input, "input file");
        if (needs_input) opt->required();
        c->add_option("--metric,-m", cfg.metric,
                      "metric selector: lp:<p> | l1 | linf | graph | segments");
        c->add_option("--beta,-b", cfg.beta, "skeleton parameter");
        c->add_option("--variant", cfg.variant, "lens boundary rule")
            ->check(CLI::IsMember({"open", "closed"}));
        c->add_option("--algorithm,-a", cfg.algorithm, "brute | sweep | auto")
            ->check(CLI::IsMember({"auto", "brute", "sweep"}));
        c->add_option("--resolution,-r", cfg.resolution, "segment sample grid subdivisions")
            ->check(CLI::PositiveNumber)
            ->each([&](const std::string&) { cfg.resolution_set = true; });
        c->add_option("--output,-o", cfg.output, "output path (stdout when omitted)");
        c->add_option("--seed", cfg.seed, "random seed for generated inputs");
    };

    CLI::App* compute = app.add_subcommand("compute", "compute a skeleton edge list");
    add_common(compute, true);
    compute->add_option("--svg", cfg.svg, "also draw the result");

    CLI::App* validate = app.add_subcommand("validate", "run the inclusion/collapse suite");
    add_common(validate, true);
    validate->add_option("--edges", cfg.edges_file, "previously computed edge list to re-check");

    CLI::App* render = app.add_subcommand("render", "draw the skeleton as SVG");
    add_common(render, true);
    render->add_option("--svg", cfg.svg, "output SVG path")->required();
    render->add_flag("--show-witnesses", cfg.show_witnesses,
                     "outline witness lenses (segments)");

    CLI::App* bench = app.add_subcommand("bench", "timing ladders, CSV output");
    add_common(bench, false);
    bench->add_option("--target", cfg.target, "alg1 | alg2 | brute")
        ->check(CLI::IsMember({"alg1", "alg2", "brute"}));
    bench->add_option("--ladder", cfg.ladder, "instance sizes")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (compute->parsed()) return cmd_compute(cfg);
        if (validate->parsed()) return cmd_validate(cfg);
        if (render->parsed()) return cmd_render(cfg);
        if (bench->parsed()) return cmd_bench(cfg);
    } catch (const px::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const px::BetaOutOfRange& e) {
        std::cerr << "beta out of range: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
