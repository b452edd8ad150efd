#include "causalprobe/graph_io.hpp"

#include <sstream>

#include <json.hpp>

#include "causalprobe/errors.hpp"

namespace causalprobe {

namespace {

const char* arrowStyle(Mark m) {
    switch (m) {
        case Mark::Tail: return "none";
        case Mark::Arrow: return "normal";
        case Mark::Circle: return "odot";
    }
    return "odot";
}

}  // namespace

std::string pagToJson(const Pag& p) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const std::string& name : p.names()) nodes.push_back(name);
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : p.edges()) {
        edges.push_back({{"a", p.name(a)},
                         {"b", p.name(b)},
                         {"mark_a", markName(p.mark(b, a))},
                         {"mark_b", markName(p.mark(a, b))}});
    }
    nlohmann::json doc{{"nodes", nodes}, {"edges", edges}};
    return doc.dump(2) + "\n";
}

Pag pagFromJson(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.contains("nodes") || !doc.contains("edges")) {
        throw ValidationError("bad_graph_json", "expected {nodes, edges}");
    }
    std::vector<std::string> names;
    for (const auto& n : doc["nodes"]) names.push_back(n.get<std::string>());
    Pag p(names);
    for (const auto& e : doc["edges"]) {
        int a = p.indexOf(e.at("a").get<std::string>());
        int b = p.indexOf(e.at("b").get<std::string>());
        p.addEdge(a, b, markFromName(e.at("mark_a").get<std::string>()),
                  markFromName(e.at("mark_b").get<std::string>()));
    }
    return p;
}

std::string pagToDot(const Pag& p) {
    std::ostringstream out;
    out << "digraph pag {\n";
    for (const std::string& name : p.names()) {
        out << "  \"" << name << "\";\n";
    }
    for (auto [a, b] : p.edges()) {
        out << "  \"" << p.name(a) << "\" -> \"" << p.name(b)
            << "\" [dir=both, arrowtail=" << arrowStyle(p.mark(b, a))
            << ", arrowhead=" << arrowStyle(p.mark(a, b)) << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string exportGraph(const Pag& p, const std::string& format) {
    if (format == "json") return pagToJson(p);
    if (format == "dot") return pagToDot(p);
    throw ValidationError("bad_format", "unknown graph format '" + format + "'");
}

}  // namespace causalprobe
