#include "causalprobe/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "causalprobe/errors.hpp"

namespace causalprobe {

const char* markName(Mark m) {
    switch (m) {
        case Mark::Tail: return "tail";
        case Mark::Arrow: return "arrow";
        case Mark::Circle: return "circle";
    }
    return "circle";
}

Mark markFromName(const std::string& name) {
    if (name == "tail") return Mark::Tail;
    if (name == "arrow") return Mark::Arrow;
    if (name == "circle") return Mark::Circle;
    throw ValidationError("bad_mark", "unknown mark name '" + name + "'");
}

Pag::Pag(std::vector<std::string> names) : names_(std::move(names)) {
    marks_.assign(names_.size() * names_.size(), 0);
}

Pag Pag::complete(std::vector<std::string> names) {
    Pag p(std::move(names));
    const int n = static_cast<int>(p.nNodes());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            p.addEdge(a, b, Mark::Circle, Mark::Circle);
        }
    }
    return p;
}

int Pag::indexOf(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    throw ValidationError("unknown_node", "no node named '" + name + "'");
}

bool Pag::adjacent(int a, int b) const {
    return a != b && marks_[at(a, b)] != 0;
}

void Pag::addEdge(int a, int b, Mark atA, Mark atB) {
    if (a == b) throw ValidationError("bad_edge", "self loops are not allowed");
    marks_[at(b, a)] = static_cast<std::uint8_t>(atA) + 1;
    marks_[at(a, b)] = static_cast<std::uint8_t>(atB) + 1;
}

void Pag::removeEdge(int a, int b) {
    marks_[at(a, b)] = 0;
    marks_[at(b, a)] = 0;
}

Mark Pag::mark(int a, int b) const {
    std::uint8_t m = marks_[at(a, b)];
    if (m == 0) throw ValidationError("bad_edge", "querying mark of a missing edge");
    return static_cast<Mark>(m - 1);
}

void Pag::setMark(int a, int b, Mark m) {
    if (!adjacent(a, b)) {
        throw ValidationError("bad_edge", "setting mark on a missing edge");
    }
    marks_[at(a, b)] = static_cast<std::uint8_t>(m) + 1;
}

std::vector<int> Pag::neighbors(int v) const {
    std::vector<int> out;
    const int n = static_cast<int>(nNodes());
    for (int u = 0; u < n; ++u) {
        if (u != v && adjacent(v, u)) out.push_back(u);
    }
    return out;
}

std::vector<std::pair<int, int>> Pag::edges() const {
    std::vector<std::pair<int, int>> out;
    const int n = static_cast<int>(nNodes());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (adjacent(a, b)) out.emplace_back(a, b);
        }
    }
    return out;
}

std::size_t Pag::nEdges() const { return edges().size(); }

void Pag::reorientAll(Mark m) {
    for (auto [a, b] : edges()) {
        setMark(a, b, m);
        setMark(b, a, m);
    }
}

Dag::Dag(std::vector<std::string> names, std::vector<bool> latent)
    : names_(std::move(names)), latent_(std::move(latent)) {
    if (latent_.empty()) latent_.assign(names_.size(), false);
    if (latent_.size() != names_.size()) {
        throw ValidationError("dimension_mismatch", "latent flags do not match node count");
    }
    parents_.assign(names_.size(), {});
    children_.assign(names_.size(), {});
}

int Dag::indexOf(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    throw ValidationError("unknown_node", "no node named '" + name + "'");
}

std::vector<int> Dag::observedNodes() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < names_.size(); ++v) {
        if (!latent_[v]) out.push_back(static_cast<int>(v));
    }
    return out;
}

bool Dag::reachable(int from, int to) const {
    if (from == to) return true;
    std::vector<bool> seen(nNodes(), false);
    std::deque<int> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int c : children_[v]) {
            if (c == to) return true;
            if (!seen[c]) {
                seen[c] = true;
                queue.push_back(c);
            }
        }
    }
    return false;
}

void Dag::addEdge(int from, int to) {
    if (from == to) throw ValidationError("bad_edge", "self loops are not allowed");
    if (hasEdge(from, to)) throw ValidationError("bad_edge", "duplicate edge");
    if (reachable(to, from)) {
        throw ValidationError("bad_edge", "edge would create a cycle");
    }
    children_[from].push_back(to);
    parents_[to].push_back(from);
    std::sort(children_[from].begin(), children_[from].end());
    std::sort(parents_[to].begin(), parents_[to].end());
}

bool Dag::hasEdge(int from, int to) const {
    return std::binary_search(children_[from].begin(), children_[from].end(), to);
}

std::vector<std::pair<int, int>> Dag::edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t v = 0; v < nNodes(); ++v) {
        for (int c : children_[v]) out.emplace_back(static_cast<int>(v), c);
    }
    return out;
}

std::vector<int> Dag::topologicalOrder() const {
    std::vector<int> indeg(nNodes(), 0);
    for (std::size_t v = 0; v < nNodes(); ++v) indeg[v] = static_cast<int>(parents_[v].size());
    std::vector<int> order;
    std::set<int> ready;
    for (std::size_t v = 0; v < nNodes(); ++v) {
        if (indeg[v] == 0) ready.insert(static_cast<int>(v));
    }
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (int c : children_[v]) {
            if (--indeg[c] == 0) ready.insert(c);
        }
    }
    return order;
}

std::vector<bool> Dag::ancestorsOf(int v) const {
    std::vector<bool> anc(nNodes(), false);
    std::deque<int> queue{v};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int p : parents_[u]) {
            if (!anc[p]) {
                anc[p] = true;
                queue.push_back(p);
            }
        }
    }
    anc[v] = false;
    return anc;
}

bool Dag::isAncestor(int a, int b) const {
    if (a == b) return false;
    return ancestorsOf(b)[a];
}

std::pair<int, int> SepsetMap::key(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
}

void SepsetMap::set(int a, int b, std::vector<int> sepset) {
    std::sort(sepset.begin(), sepset.end());
    map_[key(a, b)] = std::move(sepset);
}

bool SepsetMap::has(int a, int b) const { return map_.count(key(a, b)) > 0; }

const std::vector<int>& SepsetMap::get(int a, int b) const {
    auto it = map_.find(key(a, b));
    if (it == map_.end()) {
        throw ValidationError("inconsistent_sepset", "no sepset recorded for pair");
    }
    return it->second;
}

bool dSeparated(const Dag& dag, int x, int y, const std::vector<int>& z) {
    if (x == y) return false;
    const std::size_t n = dag.nNodes();
    std::vector<bool> inZ(n, false);
    for (int v : z) inZ[v] = true;
    if (inZ[x] || inZ[y]) {
        throw ValidationError("bad_argument", "conditioning set contains an endpoint");
    }

    // Nodes with a descendant in z (z itself included): colliders open there.
    std::vector<bool> ancOfZ(n, false);
    {
        std::deque<int> queue;
        for (int v : z) {
            ancOfZ[v] = true;
            queue.push_back(v);
        }
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int p : dag.parents(v)) {
                if (!ancOfZ[p]) {
                    ancOfZ[p] = true;
                    queue.push_back(p);
                }
            }
        }
    }

    // Reachability along active trails; state is (node, direction of arrival):
    // up = arrived from a child, down = arrived from a parent.
    enum { kUp = 0, kDown = 1 };
    std::vector<std::array<bool, 2>> seen(n, {false, false});
    std::deque<std::pair<int, int>> queue;
    queue.emplace_back(x, kUp);
    seen[x][kUp] = true;
    while (!queue.empty()) {
        auto [v, dir] = queue.front();
        queue.pop_front();
        if (v == y) return false;
        auto push = [&](int u, int d) {
            if (!seen[u][d]) {
                seen[u][d] = true;
                queue.emplace_back(u, d);
            }
        };
        if (dir == kUp) {
            if (!inZ[v]) {
                for (int p : dag.parents(v)) push(p, kUp);
                for (int c : dag.children(v)) push(c, kDown);
            }
        } else {
            if (!inZ[v]) {
                for (int c : dag.children(v)) push(c, kDown);
            }
            if (ancOfZ[v]) {
                for (int p : dag.parents(v)) push(p, kUp);
            }
        }
    }
    return true;
}

std::vector<std::array<int, 3>> unshieldedTriples(const Pag& p) {
    std::vector<std::array<int, 3>> out;
    const int n = static_cast<int>(p.nNodes());
    for (int x = 0; x < n; ++x) {
        for (int z = 0; z < n; ++z) {
            if (z == x || !p.adjacent(x, z)) continue;
            for (int y = x + 1; y < n; ++y) {
                if (y == z || !p.adjacent(z, y) || p.adjacent(x, y)) continue;
                out.push_back({x, z, y});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> possibleDSep(const Pag& p, int x) {
    const int n = static_cast<int>(p.nNodes());
    // BFS over directed path-steps (prev, cur); a step to `next` is legal when
    // cur is a collider on <prev, cur, next> or prev and next are adjacent.
    std::vector<bool> seenStep(static_cast<std::size_t>(n) * n, false);
    std::vector<bool> inSet(n, false);
    std::deque<std::pair<int, int>> queue;
    for (int u : p.neighbors(x)) {
        queue.emplace_back(x, u);
        seenStep[static_cast<std::size_t>(x) * n + u] = true;
        inSet[u] = true;
    }
    while (!queue.empty()) {
        auto [prev, cur] = queue.front();
        queue.pop_front();
        for (int next : p.neighbors(cur)) {
            if (next == prev || next == x) continue;
            bool collider = p.mark(prev, cur) == Mark::Arrow &&
                            p.mark(next, cur) == Mark::Arrow;
            bool triangle = p.adjacent(prev, next);
            if (!collider && !triangle) continue;
            std::size_t step = static_cast<std::size_t>(cur) * n + next;
            if (seenStep[step]) continue;
            seenStep[step] = true;
            inSet[next] = true;
            queue.emplace_back(cur, next);
        }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        if (inSet[v]) out.push_back(v);
    }
    return out;
}

}  // namespace causalprobe
