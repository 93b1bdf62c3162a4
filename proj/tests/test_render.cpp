#include <cstddef>
#include <string>
#include <vector>

#include "doctest.h"
#include "proxiskel/render.hpp"
#include "proxiskel/skeleton.hpp"

using namespace proxiskel;

namespace {

std::size_t count_of(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos;
         pos = hay.find(needle, pos + needle.size()))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("single marker scene renders one circle element") {
    Scene sc;
    sc.markers.push_back({1.0, 2.0});
    std::string svg = render_scene(sc);
    CHECK(count_of(svg, "<circle") == 1);
    CHECK(count_of(svg, "<line") == 0);
    CHECK(count_of(svg, "<svg") == 1);
    CHECK(svg.find("viewBox=\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("three point gabriel scene has three markers and two edge lines") {
    std::vector<Point2> pts = {{0.0, 0.0}, {2.0, 0.0}, {1.0, 0.1}};
    EdgeList edges = beta_skeleton_brute(pts, MetricSpec::l2(), Beta(1.0), Variant::Closed);
    REQUIRE(edges == EdgeList{{0, 2}, {1, 2}});

    Scene sc;
    sc.markers = pts;
    Scene::Layer layer;
    layer.tag = "gabriel";
    for (const Edge& e : edges) layer.lines.push_back({pts[e.first], pts[e.second]});
    sc.layers.push_back(layer);

    std::string svg = render_scene(sc);
    CHECK(count_of(svg, "<circle") == 3);
    CHECK(count_of(svg, "<line") == 2);
    CHECK(count_of(svg, "class=\"gabriel\"") == 2);
}

TEST_CASE("identical scenes render byte-identically") {
    Scene sc;
    sc.markers = {{0.0, 0.0}, {3.0, 1.0}};
    sc.segments.push_back({{0.5, 2.0}, {1.5, 2.5}});
    sc.wires.push_back({{0.0, 0.0}, {3.0, 1.0}});
    Scene::Layer layer;
    layer.lines.push_back({{0.0, 0.0}, {0.5, 2.0}});
    sc.layers.push_back(layer);
    sc.lenses.push_back(lens_construct(MetricSpec::l2(), {0.0, 0.0}, {3.0, 1.0}, Beta(1.5)));

    std::string a = render_scene(sc);
    std::string b = render_scene(sc);
    CHECK(a == b);
    CHECK(count_of(a, "<polyline") == 2);  // one outline per lens disc
    CHECK(count_of(a, "points=\"") == 2);
}

TEST_CASE("lp lens outlines sample the metric disc boundary") {
    Scene sc;
    sc.lenses.push_back(lens_construct(MetricSpec::lp(3.0), {0.0, 0.0}, {2.0, 0.0}, Beta(1.0)));
    std::string svg = render_scene(sc);
    CHECK(count_of(svg, "<polyline") == 2);

    // Degenerate forms fall back to the chord.
    Scene sc2;
    sc2.lenses.push_back(limit_lens(MetricSpec::l2(), {0.0, 0.0}, {2.0, 0.0}, Beta(0.0)));
    std::string svg2 = render_scene(sc2);
    CHECK(count_of(svg2, "<line") == 1);
}

TEST_CASE("empty and non-finite scenes are rejected") {
    Scene sc;
    CHECK_THROWS_AS(render_scene(sc), EmptyScene);
    sc.layers.push_back({});
    CHECK_THROWS_AS(render_scene(sc), EmptyScene);

    Scene bad;
    bad.markers.push_back({std::numeric_limits<double>::quiet_NaN(), 0.0});
    CHECK_THROWS_AS(render_scene(bad), std::invalid_argument);
}
