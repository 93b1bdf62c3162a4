#include "proxiskel/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace proxiskel {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& path) {
    try {
        return json::parse(slurp(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

bool has_json_extension(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

Point2 json_point(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(path + ": expected an [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::vector<Point2> read_points(const std::string& path) {
    std::vector<Point2> pts;
    if (has_json_extension(path)) {
        json j = parse_json(path);
        if (!j.is_array()) throw ParseError(path + ": expected a JSON array of points");
        for (const json& e : j) pts.push_back(json_point(e, path));
        return pts;
    }
    std::istringstream in(slurp(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line.substr(0, line.find('#'));
        std::istringstream ls(body);
        double x, y;
        if (ls >> x >> y) {
            std::string extra;
            if (ls >> extra)
                throw ParseError(path + ":" + std::to_string(lineno) + ": trailing tokens");
            pts.push_back({x, y});
        } else if (!body.empty() && body.find_first_not_of(" \t\r") != std::string::npos) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected \"x y\"");
        }
    }
    return pts;
}

std::vector<Segment> read_segments(const std::string& path) {
    json j = parse_json(path);
    if (!j.is_array()) throw ParseError(path + ": expected a JSON array of segments");
    std::vector<Segment> segs;
    for (const json& e : j) {
        if (!e.is_array() || e.size() != 2)
            throw ParseError(path + ": expected [[x1,y1],[x2,y2]]");
        segs.push_back({json_point(e[0], path), json_point(e[1], path)});
    }
    return segs;
}

GraphFile read_graph(const std::string& path) {
    json j = parse_json(path);
    if (!j.is_object() || !j.contains("vertices") || !j.contains("sites") ||
        !j.contains("edges"))
        throw ParseError(path + ": expected {vertices, sites, edges}");
    GraphFile gf;
    try {
        gf.graph.n_vertices = j["vertices"].get<int>();
        for (const json& s : j["sites"]) gf.graph.sites.push_back(s.get<int>());
        for (const json& e : j["edges"]) {
            if (!e.is_array() || e.size() != 3)
                throw ParseError(path + ": edge entries are [a, b, weight]");
            gf.graph.edges.push_back(
                {e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
        }
        if (j.contains("coords"))
            for (const json& c : j["coords"]) gf.coords.push_back(json_point(c, path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!gf.coords.empty() && static_cast<int>(gf.coords.size()) != gf.graph.n_vertices)
        throw ParseError(path + ": coords must list every vertex");
    return gf;
}

std::string format_edge_list(const EdgeList& edges, const std::vector<std::string>& comments) {
    std::string out;
    for (const std::string& c : comments) out += "# " + c + "\n";
    for (const Edge& e : edges)
        out += std::to_string(e.first) + " " + std::to_string(e.second) + "\n";
    return out;
}

EdgeList read_edge_list(const std::string& path) {
    std::istringstream in(slurp(path));
    EdgeList edges;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = line.substr(0, line.find('#'));
        std::istringstream ls(body);
        int a, b;
        if (ls >> a >> b) {
            edges.emplace_back(a, b);
        } else if (!body.empty() && body.find_first_not_of(" \t\r") != std::string::npos) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected \"i j\"");
        }
    }
    return edges;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move " + tmp + " to " + path);
    }
}

}  // namespace proxiskel
