#include "proxiskel/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace proxiskel {

namespace {

constexpr int kDiscSamples = 256;

const char* layer_color(std::size_t index) {
    static const char* palette[] = {"#2563eb", "#dc2626", "#059669", "#d97706",
                                    "#7c3aed", "#0891b2"};
    return palette[index % (sizeof(palette) / sizeof(palette[0]))];
}

struct Bounds {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool started = false;

    void add(Point2 p) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("scene contains non-finite coordinates");
        if (!started) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            started = true;
        } else {
            xmin = std::fmin(xmin, p.x);
            xmax = std::fmax(xmax, p.x);
            ymin = std::fmin(ymin, p.y);
            ymax = std::fmax(ymax, p.y);
        }
    }
};

Point2 disc_boundary(const Lens& lens, Point2 centre, int k) {
    double theta = 2.0 * std::numbers::pi * k / kDiscSamples;
    Point2 dir{std::cos(theta), std::sin(theta)};
    double unit = distance(lens.metric, Point2{0.0, 0.0}, dir);
    return centre + (lens.radius / unit) * dir;
}

class SvgWriter {
  public:
    explicit SvgWriter(double flip_sum) : flip_sum_(flip_sum) {}

    void num(double v) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        out_ += buf;
    }
    void raw(const char* s) { out_ += s; }
    void raw(const std::string& s) { out_ += s; }

    void coord_attrs(const char* ax, const char* ay, Point2 p) {
        raw(" ");
        raw(ax);
        raw("=\"");
        num(p.x);
        raw("\" ");
        raw(ay);
        raw("=\"");
        num(flip_sum_ - p.y);
        raw("\"");
    }

    void line(Point2 a, Point2 b, const char* stroke, double width,
              const std::string& cls = {}) {
        raw("<line");
        coord_attrs("x1", "y1", a);
        coord_attrs("x2", "y2", b);
        raw(" stroke=\"");
        raw(stroke);
        raw("\" stroke-width=\"");
        num(width);
        raw("\"");
        if (!cls.empty()) {
            raw(" class=\"");
            raw(cls);
            raw("\"");
        }
        raw("/>\n");
    }

    void point(Point2 p) {
        out_ += "    ";
        num(p.x);
        out_ += ",";
        num(flip_sum_ - p.y);
        out_ += "\n";
    }

    std::string take() { return std::move(out_); }

  private:
    std::string out_;
    double flip_sum_;
};

}  // namespace

bool Scene::empty() const {
    if (!markers.empty() || !segments.empty() || !wires.empty() || !lenses.empty()) return false;
    for (const Layer& l : layers)
        if (!l.lines.empty()) return false;
    return true;
}

std::string render_scene(const Scene& scene) {
    if (scene.empty()) throw EmptyScene("nothing to draw");

    Bounds b;
    for (Point2 p : scene.markers) b.add(p);
    for (const Segment& s : scene.segments) {
        b.add(s.p1);
        b.add(s.p2);
    }
    for (const auto& w : scene.wires) {
        b.add(w.first);
        b.add(w.second);
    }
    for (const Scene::Layer& layer : scene.layers)
        for (const auto& ln : layer.lines) {
            b.add(ln.first);
            b.add(ln.second);
        }
    for (const Lens& lens : scene.lenses) {
        if (lens.form == LensForm::TwoDiscs) {
            for (int k = 0; k < kDiscSamples; ++k) {
                b.add(disc_boundary(lens, lens.c1, k));
                b.add(disc_boundary(lens, lens.c2, k));
            }
        } else {
            b.add(lens.v1);
            b.add(lens.v2);
        }
    }

    double span = std::fmax(b.xmax - b.xmin, b.ymax - b.ymin);
    if (span <= 0.0) span = 1.0;
    double margin = 0.05 * span;
    double flip_sum = b.ymin + b.ymax;  // y -> flip_sum - y stays inside the box

    SvgWriter w(flip_sum);
    w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    w.raw("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"");
    w.num(b.xmin - margin);
    w.raw(" ");
    w.num(b.ymin - margin);
    w.raw(" ");
    w.num((b.xmax - b.xmin) + 2.0 * margin);
    w.raw(" ");
    w.num((b.ymax - b.ymin) + 2.0 * margin);
    w.raw("\">\n");

    for (const Lens& lens : scene.lenses) {
        if (lens.form == LensForm::TwoDiscs) {
            for (Point2 centre : {lens.c1, lens.c2}) {
                w.raw("<polyline fill=\"none\" stroke=\"#b8b8b8\" stroke-width=\"");
                w.num(0.004 * span);
                w.raw("\" points=\"\n");
                for (int k = 0; k <= kDiscSamples; ++k)
                    w.point(disc_boundary(lens, centre, k % kDiscSamples));
                w.raw("\"/>\n");
            }
        } else {
            w.line(lens.v1, lens.v2, "#b8b8b8", 0.004 * span);
        }
    }

    for (const auto& wire : scene.wires)
        w.line(wire.first, wire.second, "#d4d4d4", 0.004 * span);

    for (std::size_t li = 0; li < scene.layers.size(); ++li)
        for (const auto& ln : scene.layers[li].lines)
            w.line(ln.first, ln.second, layer_color(li), 0.008 * span, scene.layers[li].tag);

    for (const Segment& s : scene.segments) w.line(s.p1, s.p2, "#202020", 0.012 * span);

    for (Point2 p : scene.markers) {
        w.raw("<circle");
        w.coord_attrs("cx", "cy", p);
        w.raw(" r=\"");
        w.num(0.012 * span);
        w.raw("\" fill=\"#202020\"/>\n");
    }

    w.raw("</svg>\n");
    return w.take();
}

}  // namespace proxiskel
