#pragma once

#include <string>
#include <vector>

#include "proxiskel/geometry.hpp"
#include "proxiskel/graphs.hpp"
#include "proxiskel/segments.hpp"
#include "proxiskel/skeleton.hpp"

namespace proxiskel {

// File formats. Points: either plain text with one "x y" pair per line and
// '#' comments, or a JSON array of [x, y] pairs when the filename ends in
// .json. Segments: JSON array of [[x1,y1],[x2,y2]]. Graphs: JSON object
// {"vertices": n, "sites": [...], "edges": [[a, b, w], ...]} plus an
// optional "coords" array of per-vertex positions used only for drawing.
// All readers throw ParseError on unreadable or malformed input.

std::vector<Point2> read_points(const std::string& path);
std::vector<Segment> read_segments(const std::string& path);

struct GraphFile {
    WeightedGraph graph;
    std::vector<Point2> coords;  // empty unless the file provides them
};

GraphFile read_graph(const std::string& path);

// Edge list: "i j" per line sorted lexicographically, '#' comment lines.
std::string format_edge_list(const EdgeList& edges, const std::vector<std::string>& comments);
EdgeList read_edge_list(const std::string& path);

// Writes through a temp file in the same directory plus rename, so readers
// never observe a half-written file.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace proxiskel
