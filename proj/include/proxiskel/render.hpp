#pragma once

#include <string>
#include <utility>
#include <vector>

#include "proxiskel/geometry.hpp"
#include "proxiskel/lens.hpp"
#include "proxiskel/segments.hpp"

namespace proxiskel {

// Drawing input with all geometry already resolved to plane coordinates.
// Element order inside each vector is the emission order, so identical
// scenes render to identical bytes.
struct Scene {
    struct Layer {
        std::vector<std::pair<Point2, Point2>> lines;
        std::string tag;  // class attribute on the line elements; may be empty
    };

    std::vector<Point2> markers;                         // point sites
    std::vector<Segment> segments;                       // segment sites
    std::vector<std::pair<Point2, Point2>> wires;        // background embedding
    std::vector<Layer> layers;                           // skeleton edge sets
    std::vector<Lens> lenses;                            // witness outlines

    bool empty() const;
};

// Standalone SVG 1.1 document. Coordinates are printed with six decimals and
// the viewbox is the geometry's bounding box padded by 5% of its larger
// side; the y axis is flipped so figures keep the usual math orientation.
// Two-disc lenses become two 256-sample boundary polylines, the degenerate
// forms a single chord line. Throws EmptyScene when there is nothing to
// draw, std::invalid_argument on non-finite geometry.
std::string render_scene(const Scene& scene);

}  // namespace proxiskel
