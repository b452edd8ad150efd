#include "causalprobe/fci.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "causalprobe/errors.hpp"

namespace causalprobe {

namespace {

std::pair<int, int> orderedPair(int a, int b) {
    return {std::min(a, b), std::max(a, b)};
}

// Lexicographic k-combinations of a sorted pool, by index vector.
class CombinationIter {
public:
    CombinationIter(const std::vector<int>& pool, int k)
        : pool_(pool), k_(k), done_(k > static_cast<int>(pool.size())) {
        idx_.resize(std::max(k, 0));
        for (int i = 0; i < k; ++i) idx_[i] = i;
    }

    bool done() const { return done_; }

    std::vector<int> current() const {
        std::vector<int> out(k_);
        for (int i = 0; i < k_; ++i) out[i] = pool_[idx_[i]];
        return out;
    }

    void advance() {
        if (k_ == 0) {
            done_ = true;
            return;
        }
        int n = static_cast<int>(pool_.size());
        int i = k_ - 1;
        while (i >= 0 && idx_[i] == n - k_ + i) --i;
        if (i < 0) {
            done_ = true;
            return;
        }
        ++idx_[i];
        for (int j = i + 1; j < k_; ++j) idx_[j] = idx_[j - 1] + 1;
    }

private:
    std::vector<int> pool_;
    int k_;
    bool done_;
    std::vector<int> idx_;
};

bool alreadyTested(TestedSets* tested, int x, int y, const std::vector<int>& s) {
    if (!tested) return false;
    auto it = tested->find(orderedPair(x, y));
    return it != tested->end() && it->second.count(s) > 0;
}

void recordTested(TestedSets* tested, int x, int y, const std::vector<int>& s) {
    if (tested) (*tested)[orderedPair(x, y)].insert(s);
}

void logRemoval(FciTrace& trace, int x, int y, const std::vector<int>& s, double p) {
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::EdgeRemoved;
    ev.a = std::min(x, y);
    ev.b = std::max(x, y);
    ev.sepset = s;
    ev.p = p;
    trace.events.push_back(std::move(ev));
}

// Sets the endpoint mark at `at` on edge (other, at). A definite mark is
// never overwritten by a conflicting one; that gets a warning instead.
bool orientEndpoint(Pag& pag, int other, int at, Mark m, int rule, FciTrace& trace) {
    Mark cur = pag.mark(other, at);
    if (cur == m) return false;
    if (cur != Mark::Circle) {
        std::ostringstream os;
        os << "rule R" << rule << " wants " << markName(m) << " at " << pag.names()[at]
           << " on edge " << pag.names()[std::min(other, at)] << "-"
           << pag.names()[std::max(other, at)] << " but found " << markName(cur)
           << "; keeping the earlier mark";
        trace.warnings.push_back(os.str());
        return false;
    }
    pag.setMark(other, at, m);
    return true;
}

void logRule(FciTrace& trace, int rule, const Pag& pag, int a, int b) {
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::RuleFired;
    ev.rule = rule;
    ev.a = std::min(a, b);
    ev.b = std::max(a, b);
    ev.markA = pag.mark(ev.b, ev.a);
    ev.markB = pag.mark(ev.a, ev.b);
    trace.events.push_back(std::move(ev));
}

// Applies marks at both ends of (a, b) and logs one RuleFired if anything
// changed. Mark::Circle means "leave this endpoint alone".
bool orientEdge(Pag& pag, int rule, int a, int b, Mark atA, Mark atB, FciTrace& trace) {
    bool changed = false;
    if (atA != Mark::Circle) changed |= orientEndpoint(pag, b, a, atA, rule, trace);
    if (atB != Mark::Circle) changed |= orientEndpoint(pag, a, b, atB, rule, trace);
    if (changed) logRule(trace, rule, pag, a, b);
    return changed;
}

bool isArrow(const Pag& p, int from, int at) { return p.mark(from, at) == Mark::Arrow; }
bool isTail(const Pag& p, int from, int at) { return p.mark(from, at) == Mark::Tail; }
bool isCircle(const Pag& p, int from, int at) { return p.mark(from, at) == Mark::Circle; }

// a -> b: tail at a, arrow at b.
bool isDirected(const Pag& p, int a, int b) {
    return p.adjacent(a, b) && isTail(p, b, a) && isArrow(p, a, b);
}

// Potentially directed edge from a toward b: no arrow at a, no tail at b.
bool isPdEdge(const Pag& p, int a, int b) {
    return p.adjacent(a, b) && !isArrow(p, b, a) && !isTail(p, a, b);
}

bool ruleR1(Pag& p, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int b = 0; b < n; ++b) {
        for (int a : p.neighbors(b)) {
            if (!isArrow(p, a, b)) continue;  // a *-> b
            for (int c : p.neighbors(b)) {
                if (c == a || p.adjacent(a, c)) continue;
                if (!isCircle(p, c, b)) continue;  // b o-* c
                any |= orientEdge(p, 1, b, c, Mark::Tail, Mark::Arrow, trace);
            }
        }
    }
    return any;
}

bool ruleR2(Pag& p, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int a = 0; a < n; ++a) {
        for (int c : p.neighbors(a)) {
            if (!isCircle(p, a, c)) continue;  // a *-o c
            for (int b : p.neighbors(a)) {
                if (b == c || !p.adjacent(b, c)) continue;
                bool chain1 = isDirected(p, a, b) && isArrow(p, b, c);
                bool chain2 = isArrow(p, a, b) && isDirected(p, b, c);
                if (chain1 || chain2) {
                    any |= orientEdge(p, 2, a, c, Mark::Circle, Mark::Arrow, trace);
                    break;
                }
            }
        }
    }
    return any;
}

bool ruleR3(Pag& p, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int d = 0; d < n; ++d) {
        for (int b : p.neighbors(d)) {
            if (!isCircle(p, d, b)) continue;  // d *-o b
            const auto& nbD = p.neighbors(d);
            for (size_t i = 0; i < nbD.size(); ++i) {
                int a = nbD[i];
                if (a == b || !isCircle(p, a, d)) continue;  // a *-o d
                if (!p.adjacent(a, b) || !isArrow(p, a, b)) continue;  // a *-> b
                for (size_t j = i + 1; j < nbD.size(); ++j) {
                    int c = nbD[j];
                    if (c == b || p.adjacent(a, c)) continue;
                    if (!isCircle(p, c, d)) continue;                     // c *-o d
                    if (!p.adjacent(c, b) || !isArrow(p, c, b)) continue;  // c *-> b
                    any |= orientEdge(p, 3, d, b, Mark::Circle, Mark::Arrow, trace);
                    break;
                }
                if (!isCircle(p, d, b)) break;
            }
        }
    }
    return any;
}

// Discriminating-path search for R4. Walks backward from collider a along
// <.., w, t> edges that keep every interior node a collider and a parent of
// c, until some w is non-adjacent to c; that w is the far endpoint d.
bool ruleR4(Pag& p, const SepsetMap& sepsets, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int b = 0; b < n; ++b) {
        for (int c : p.neighbors(b)) {
            if (!isCircle(p, c, b)) continue;  // b o-* c
            for (int a : p.neighbors(b)) {
                if (a == c || !p.adjacent(a, c)) continue;
                if (!isArrow(p, b, a)) continue;      // arrow at a on (a, b)
                if (!isDirected(p, a, c)) continue;   // a -> c
                // DFS over path tails t, path runs <t, ..., a, b, c>.
                std::vector<bool> onPath(n, false);
                onPath[a] = onPath[b] = onPath[c] = true;
                std::vector<int> stack = {a};
                std::vector<std::vector<int>> pathStack = {{a}};
                bool fired = false;
                while (!stack.empty() && !fired) {
                    int t = stack.back();
                    stack.pop_back();
                    std::vector<int> path = pathStack.back();
                    pathStack.pop_back();
                    for (int w : p.neighbors(t)) {
                        bool used = (w == b || w == c);
                        for (int q : path) used |= (q == w);
                        if (used) continue;
                        if (!isArrow(p, w, t)) continue;  // keeps t a collider
                        if (!p.adjacent(w, c)) {
                            // w is d: the path <w, ..., a, b, c> discriminates b.
                            const std::vector<int>* sep = nullptr;
                            if (sepsets.has(w, c)) sep = &sepsets.get(w, c);
                            bool bInSep =
                                sep && std::binary_search(sep->begin(), sep->end(), b);
                            if (bInSep) {
                                fired |= orientEdge(p, 4, b, c, Mark::Tail, Mark::Arrow,
                                                    trace);
                            } else {
                                fired |= orientEdge(p, 4, a, b, Mark::Arrow, Mark::Arrow,
                                                    trace);
                                fired |= orientEdge(p, 4, b, c, Mark::Arrow, Mark::Arrow,
                                                    trace);
                            }
                            if (fired) break;
                        } else if (isDirected(p, w, c) && isArrow(p, t, w)) {
                            stack.push_back(w);
                            auto next = path;
                            next.push_back(w);
                            pathStack.push_back(std::move(next));
                        }
                    }
                }
                any |= fired;
                if (fired) break;
            }
        }
    }
    return any;
}

// Uncovered circle path <a, g, ..., h, b> for R5: every edge o-o, every
// consecutive triple unshielded, g not adjacent to b, h not adjacent to a.
bool findCirclePath(const Pag& p, int a, int b, std::vector<int>& out) {
    int n = p.nNodes();
    std::vector<int> path = {a};
    std::vector<bool> onPath(n, false);
    onPath[a] = true;

    std::function<bool(int)> dfs = [&](int cur) -> bool {
        for (int w : p.neighbors(cur)) {
            if (onPath[w]) continue;
            if (!isCircle(p, cur, w) || !isCircle(p, w, cur)) continue;
            if (path.size() >= 2 && p.adjacent(path[path.size() - 2], w)) continue;
            if (cur == a) {
                if (w == b || p.adjacent(w, b)) continue;  // g must not touch b
            }
            if (w == b) {
                if (path.size() < 3) continue;  // needs distinct g and h
                if (p.adjacent(path.back(), a)) continue;  // h not adjacent to a
                out = path;
                out.push_back(b);
                return true;
            }
            path.push_back(w);
            onPath[w] = true;
            if (dfs(w)) return true;
            path.pop_back();
            onPath[w] = false;
        }
        return false;
    };
    return dfs(a);
}

bool ruleR5(Pag& p, FciTrace& trace) {
    bool any = false;
    for (auto [a, b] : p.edges()) {
        if (!isCircle(p, a, b) || !isCircle(p, b, a)) continue;
        std::vector<int> path;
        if (!findCirclePath(p, a, b, path)) continue;
        any |= orientEdge(p, 5, a, b, Mark::Tail, Mark::Tail, trace);
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            any |= orientEdge(p, 5, path[i], path[i + 1], Mark::Tail, Mark::Tail, trace);
        }
    }
    return any;
}

bool ruleR6(Pag& p, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int b = 0; b < n; ++b) {
        bool hasUndirected = false;
        for (int a : p.neighbors(b)) {
            if (isTail(p, a, b) && isTail(p, b, a)) {
                hasUndirected = true;
                break;
            }
        }
        if (!hasUndirected) continue;
        for (int c : p.neighbors(b)) {
            if (isCircle(p, c, b)) {
                any |= orientEdge(p, 6, b, c, Mark::Tail, Mark::Circle, trace);
            }
        }
    }
    return any;
}

bool ruleR7(Pag& p, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int b = 0; b < n; ++b) {
        for (int a : p.neighbors(b)) {
            if (!(isTail(p, b, a) && isCircle(p, a, b))) continue;  // a -o b
            for (int c : p.neighbors(b)) {
                if (c == a || p.adjacent(a, c)) continue;
                if (isCircle(p, c, b)) {
                    any |= orientEdge(p, 7, b, c, Mark::Tail, Mark::Circle, trace);
                }
            }
        }
    }
    return any;
}

bool ruleR8(Pag& p, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int a = 0; a < n; ++a) {
        for (int c : p.neighbors(a)) {
            if (!(isCircle(p, c, a) && isArrow(p, a, c))) continue;  // a o-> c
            for (int b : p.neighbors(a)) {
                if (b == c || !p.adjacent(b, c)) continue;
                if (!isDirected(p, b, c)) continue;
                bool aToB = isDirected(p, a, b) ||
                            (isTail(p, b, a) && isCircle(p, a, b));  // a -> b or a -o b
                if (aToB) {
                    any |= orientEdge(p, 8, a, c, Mark::Tail, Mark::Circle, trace);
                    break;
                }
            }
        }
    }
    return any;
}

// Uncovered potentially-directed path from a to c whose first step avoids
// the neighbourhood of c. Used by R9.
bool hasUncoveredPdPath(const Pag& p, int a, int c) {
    int n = p.nNodes();
    std::vector<int> path = {a};
    std::vector<bool> onPath(n, false);
    onPath[a] = true;

    std::function<bool(int)> dfs = [&](int cur) -> bool {
        for (int w : p.neighbors(cur)) {
            if (onPath[w]) continue;
            if (!isPdEdge(p, cur, w)) continue;
            if (path.size() >= 2 && p.adjacent(path[path.size() - 2], w)) continue;
            if (cur == a && (w == c || p.adjacent(w, c))) continue;
            if (w == c) return true;
            path.push_back(w);
            onPath[w] = true;
            if (dfs(w)) return true;
            path.pop_back();
            onPath[w] = false;
        }
        return false;
    };
    return dfs(a);
}

bool ruleR9(Pag& p, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int a = 0; a < n; ++a) {
        for (int c : p.neighbors(a)) {
            if (!(isCircle(p, c, a) && isArrow(p, a, c))) continue;  // a o-> c
            if (hasUncoveredPdPath(p, a, c)) {
                any |= orientEdge(p, 9, a, c, Mark::Tail, Mark::Circle, trace);
            }
        }
    }
    return any;
}

// First vertices of uncovered pd paths from a to target, for R10.
std::vector<int> uncoveredPdFirstSteps(const Pag& p, int a, int target) {
    int n = p.nNodes();
    std::vector<bool> firsts(n, false);
    std::vector<int> path = {a};
    std::vector<bool> onPath(n, false);
    onPath[a] = true;

    std::function<bool(int)> dfs = [&](int cur) -> bool {
        for (int w : p.neighbors(cur)) {
            if (onPath[w]) continue;
            if (!isPdEdge(p, cur, w)) continue;
            if (path.size() >= 2 && p.adjacent(path[path.size() - 2], w)) continue;
            if (w == target) return true;
            path.push_back(w);
            onPath[w] = true;
            bool hit = dfs(w);
            path.pop_back();
            onPath[w] = false;
            if (hit) return true;
        }
        return false;
    };

    for (int g : p.neighbors(a)) {
        if (!isPdEdge(p, a, g)) continue;
        if (g == target) {
            firsts[g] = true;
            continue;
        }
        path = {a, g};
        std::fill(onPath.begin(), onPath.end(), false);
        onPath[a] = onPath[g] = true;
        if (dfs(g)) firsts[g] = true;
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v) {
        if (firsts[v]) out.push_back(v);
    }
    return out;
}

bool ruleR10(Pag& p, FciTrace& trace) {
    bool any = false;
    int n = p.nNodes();
    for (int a = 0; a < n; ++a) {
        for (int c : p.neighbors(a)) {
            if (!(isCircle(p, c, a) && isArrow(p, a, c))) continue;  // a o-> c
            std::vector<int> parents;
            for (int b : p.neighbors(c)) {
                if (b != a && isDirected(p, b, c)) parents.push_back(b);
            }
            bool fired = false;
            for (size_t i = 0; i < parents.size() && !fired; ++i) {
                for (size_t j = i + 1; j < parents.size() && !fired; ++j) {
                    auto mu = uncoveredPdFirstSteps(p, a, parents[i]);
                    auto omega = uncoveredPdFirstSteps(p, a, parents[j]);
                    for (int m : mu) {
                        for (int o : omega) {
                            if (m != o && !p.adjacent(m, o)) {
                                fired = true;
                                break;
                            }
                        }
                        if (fired) break;
                    }
                }
            }
            if (fired) {
                any |= orientEdge(p, 10, a, c, Mark::Tail, Mark::Circle, trace);
            }
        }
    }
    return any;
}

}  // namespace

SkeletonResult initialSkeleton(CiTest& test, const std::vector<std::string>& vars,
                               const FciParams& params, FciTrace& trace,
                               TestedSets* tested) {
    Pag pag = Pag::complete(vars);
    SepsetMap sepsets;
    int n = pag.nNodes();

    for (int depth = 0;; ++depth) {
        if (params.maxCondSize != kUnboundedCondSize && depth > params.maxCondSize) break;

        bool deepEnough = false;
        for (int x = 0; x < n && !deepEnough; ++x) {
            deepEnough = static_cast<int>(pag.neighbors(x).size()) - 1 >= depth;
        }
        if (!deepEnough) break;

        // With the stable variant, every depth works from adjacency sets
        // frozen at the start of the depth, so removals within the depth
        // cannot influence which tests run.
        std::vector<std::vector<int>> adj(n);
        for (int x = 0; x < n; ++x) adj[x] = pag.neighbors(x);

        for (int x = 0; x < n; ++x) {
            for (int y : adj[x]) {
                if (!pag.adjacent(x, y)) continue;
                const std::vector<int>& base =
                    params.stableSkeleton ? adj[x] : pag.neighbors(x);
                std::vector<int> pool;
                pool.reserve(base.size());
                for (int v : base) {
                    if (v != y) pool.push_back(v);
                }
                if (static_cast<int>(pool.size()) < depth) continue;
                for (CombinationIter it(pool, depth); !it.done(); it.advance()) {
                    std::vector<int> s = it.current();
                    if (alreadyTested(tested, x, y, s)) continue;
                    CiResult res = test.test(x, y, s);
                    recordTested(tested, x, y, s);
                    if (res.independent) {
                        pag.removeEdge(x, y);
                        sepsets.set(x, y, s);
                        logRemoval(trace, x, y, s, res.p);
                        break;
                    }
                }
            }
        }
    }
    return {std::move(pag), std::move(sepsets)};
}

void orientVStructures(Pag& pag, const SepsetMap& sepsets, FciTrace* trace) {
    for (const auto& t : unshieldedTriples(pag)) {
        int x = t[0], z = t[1], y = t[2];
        if (!sepsets.has(x, y)) {
            throw ValidationError(
                "inconsistent_sepset",
                "no separating set recorded for non-adjacent pair " + pag.names()[x] +
                    ", " + pag.names()[y]);
        }
        const std::vector<int>& s = sepsets.get(x, y);
        if (std::binary_search(s.begin(), s.end(), z)) continue;
        pag.setMark(x, z, Mark::Arrow);
        pag.setMark(y, z, Mark::Arrow);
        if (trace) {
            TraceEvent ev;
            ev.kind = TraceEvent::Kind::VStructure;
            ev.a = x;
            ev.b = z;
            ev.c = y;
            trace->events.push_back(std::move(ev));
        }
    }
}

SkeletonResult finalSkeleton(Pag pag, CiTest& test, SepsetMap sepsets,
                             const FciParams& params, FciTrace& trace,
                             TestedSets* tested) {
    int n = pag.nNodes();
    std::vector<std::vector<int>> pds(n);
    for (int x = 0; x < n; ++x) pds[x] = possibleDSep(pag, x);

    int maxSize = params.maxCondSize == kUnboundedCondSize ? n : params.maxCondSize;
    for (int x = 0; x < n; ++x) {
        for (int y : pag.neighbors(x)) {
            if (!pag.adjacent(x, y)) continue;
            std::vector<int> pool;
            pool.reserve(pds[x].size());
            for (int v : pds[x]) {
                if (v != y) pool.push_back(v);
            }
            bool removed = false;
            int cap = std::min<int>(maxSize, static_cast<int>(pool.size()));
            for (int size = 1; size <= cap && !removed; ++size) {
                for (CombinationIter it(pool, size); !it.done(); it.advance()) {
                    std::vector<int> s = it.current();
                    if (alreadyTested(tested, x, y, s)) continue;
                    CiResult res = test.test(x, y, s);
                    recordTested(tested, x, y, s);
                    if (res.independent) {
                        pag.removeEdge(x, y);
                        sepsets.set(x, y, s);
                        logRemoval(trace, x, y, s, res.p);
                        removed = true;
                        break;
                    }
                }
            }
        }
    }

    pag.reorientAll(Mark::Circle);
    orientVStructures(pag, sepsets, &trace);
    return {std::move(pag), std::move(sepsets)};
}

void applyOrientationRules(Pag& pag, const SepsetMap& sepsets,
                           const FciParams& params, FciTrace& trace) {
    bool changed = true;
    while (changed) {
        changed = false;
        changed |= ruleR1(pag, trace);
        changed |= ruleR2(pag, trace);
        changed |= ruleR3(pag, trace);
        changed |= ruleR4(pag, sepsets, trace);
        if (params.rulesR5R7) {
            changed |= ruleR5(pag, trace);
            changed |= ruleR6(pag, trace);
            changed |= ruleR7(pag, trace);
        }
        changed |= ruleR8(pag, trace);
        changed |= ruleR9(pag, trace);
        changed |= ruleR10(pag, trace);
    }
}

FciResult runFci(CiTest& test, const std::vector<std::string>& vars,
                 const FciParams& params) {
    if (vars.empty()) {
        throw ValidationError("empty_variable_list", "discovery needs at least one variable");
    }
    FciResult result{Pag(vars), SepsetMap{}, FciTrace{}};
    if (vars.size() == 1) return result;

    TestedSets tested;
    auto skel = initialSkeleton(test, vars, params, result.trace, &tested);
    orientVStructures(skel.pag, skel.sepsets, nullptr);
    auto finalSkel = finalSkeleton(std::move(skel.pag), test, std::move(skel.sepsets),
                                   params, result.trace, &tested);
    applyOrientationRules(finalSkel.pag, finalSkel.sepsets, params, result.trace);
    result.pag = std::move(finalSkel.pag);
    result.sepsets = std::move(finalSkel.sepsets);
    return result;
}

std::string traceToJson(const FciTrace& trace, const std::vector<std::string>& names) {
    nlohmann::json j;
    j["events"] = nlohmann::json::array();
    for (const TraceEvent& ev : trace.events) {
        nlohmann::json e;
        switch (ev.kind) {
            case TraceEvent::Kind::EdgeRemoved: {
                e["kind"] = "edge_removed";
                e["a"] = names[ev.a];
                e["b"] = names[ev.b];
                nlohmann::json sep = nlohmann::json::array();
                for (int v : ev.sepset) sep.push_back(names[v]);
                e["sepset"] = std::move(sep);
                e["p"] = ev.p;
                break;
            }
            case TraceEvent::Kind::VStructure:
                e["kind"] = "v_structure";
                e["x"] = names[ev.a];
                e["z"] = names[ev.b];
                e["y"] = names[ev.c];
                break;
            case TraceEvent::Kind::RuleFired:
                e["kind"] = "rule_fired";
                e["rule"] = ev.rule;
                e["a"] = names[ev.a];
                e["b"] = names[ev.b];
                e["mark_a"] = markName(ev.markA);
                e["mark_b"] = markName(ev.markB);
                break;
        }
        j["events"].push_back(std::move(e));
    }
    j["warnings"] = trace.warnings;
    return j.dump(2);
}

Pag replayTrace(const std::vector<std::string>& names, const FciTrace& trace) {
    Pag pag = Pag::complete(names);
    for (const TraceEvent& ev : trace.events) {
        switch (ev.kind) {
            case TraceEvent::Kind::EdgeRemoved:
                pag.removeEdge(ev.a, ev.b);
                break;
            case TraceEvent::Kind::VStructure:
                pag.setMark(ev.a, ev.b, Mark::Arrow);
                pag.setMark(ev.c, ev.b, Mark::Arrow);
                break;
            case TraceEvent::Kind::RuleFired:
                pag.setMark(ev.b, ev.a, ev.markA);
                pag.setMark(ev.a, ev.b, ev.markB);
                break;
        }
    }
    return pag;
}

}  // namespace causalprobe
