#pragma once

#include <string>

#include "causalprobe/graph.hpp"

namespace causalprobe {

// Graph interchange: {"nodes": [...], "edges": [{a, b, mark_a, mark_b}]},
// marks spelled tail/arrow/circle, edges in lexicographic index order.
std::string pagToJson(const Pag& p);
Pag pagFromJson(const std::string& text);

// Graphviz rendering; endpoint marks map to arrowhead styles
// none (tail), normal (arrow) and odot (circle).
std::string pagToDot(const Pag& p);

std::string exportGraph(const Pag& p, const std::string& format);  // "json"|"dot"

}  // namespace causalprobe
