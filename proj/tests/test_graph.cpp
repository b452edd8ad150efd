#include <doctest.h>

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "causalprobe/errors.hpp"
#include "causalprobe/graph.hpp"
#include "causalprobe/graph_io.hpp"

using namespace causalprobe;

namespace {

std::vector<std::string> letters(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('A' + i)));
    return names;
}

// Independent d-separation check: enumerate every simple path in the
// skeleton and test it for d-connection directly. Exponential, fine for
// the small graphs used here.
bool dSeparatedByEnumeration(const Dag& dag, int x, int y,
                             const std::vector<int>& z) {
    int n = static_cast<int>(dag.nNodes());
    std::vector<bool> inZ(n, false);
    for (int v : z) inZ[v] = true;
    // hasDescInZ[v]: v is in z or has a descendant in z
    std::vector<bool> hasDescInZ(n, false);
    for (int v : z) {
        hasDescInZ[v] = true;
        std::vector<bool> anc = dag.ancestorsOf(v);
        for (int u = 0; u < n; ++u) {
            if (anc[u]) hasDescInZ[u] = true;
        }
    }

    std::vector<int> path{x};
    std::vector<bool> used(n, false);
    used[x] = true;
    bool active = false;
    std::function<void(int)> dfs = [&](int cur) {
        if (active) return;
        if (cur == y) {
            bool open = true;
            for (std::size_t k = 1; k + 1 < path.size() && open; ++k) {
                int prev = path[k - 1], mid = path[k], next = path[k + 1];
                bool collider = dag.hasEdge(prev, mid) && dag.hasEdge(next, mid);
                open = collider ? hasDescInZ[mid] : !inZ[mid];
            }
            active = open;
            return;
        }
        for (int next = 0; next < n; ++next) {
            if (used[next]) continue;
            if (!dag.hasEdge(cur, next) && !dag.hasEdge(next, cur)) continue;
            used[next] = true;
            path.push_back(next);
            dfs(next);
            path.pop_back();
            used[next] = false;
        }
    };
    dfs(x);
    return !active;
}

Dag randomDag(int n, double edgeProb, std::uint64_t seed) {
    Dag dag(letters(n));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (unit(rng) < edgeProb) dag.addEdge(i, j);
        }
    }
    return dag;
}

}  // namespace

TEST_CASE("Pag stores one mark per endpoint") {
    Pag p(letters(3));
    CHECK(p.nEdges() == 0);
    p.addEdge(0, 1, Mark::Tail, Mark::Arrow);
    CHECK(p.adjacent(0, 1));
    CHECK(p.adjacent(1, 0));
    CHECK(p.mark(0, 1) == Mark::Arrow);  // mark at B
    CHECK(p.mark(1, 0) == Mark::Tail);   // mark at A
    p.setMark(1, 0, Mark::Circle);
    CHECK(p.mark(1, 0) == Mark::Circle);
    CHECK(p.mark(0, 1) == Mark::Arrow);
    p.removeEdge(0, 1);
    CHECK(!p.adjacent(0, 1));
    CHECK_THROWS_AS((void)p.mark(0, 1), ValidationError);
    CHECK_THROWS_AS(p.addEdge(2, 2, Mark::Circle, Mark::Circle), ValidationError);
}

TEST_CASE("Pag::complete links every pair with circles") {
    Pag p = Pag::complete(letters(4));
    CHECK(p.nEdges() == 6);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            CHECK(p.adjacent(a, b));
            CHECK(p.mark(a, b) == Mark::Circle);
        }
    }
}

TEST_CASE("neighbors ascend and edges come out lexicographic") {
    Pag p(letters(5));
    p.addEdge(3, 1, Mark::Circle, Mark::Circle);
    p.addEdge(0, 3, Mark::Circle, Mark::Circle);
    p.addEdge(4, 3, Mark::Circle, Mark::Circle);
    CHECK(p.neighbors(3) == std::vector<int>{0, 1, 4});
    CHECK(p.edges() ==
          std::vector<std::pair<int, int>>{{0, 3}, {1, 3}, {3, 4}});
    p.reorientAll(Mark::Arrow);
    CHECK(p.mark(0, 3) == Mark::Arrow);
    CHECK(p.mark(3, 0) == Mark::Arrow);
}

TEST_CASE("Dag rejects cycles, duplicates and self loops") {
    Dag dag(letters(3));
    dag.addEdge(0, 1);
    dag.addEdge(1, 2);
    CHECK_THROWS_AS(dag.addEdge(2, 0), ValidationError);  // cycle
    CHECK_THROWS_AS(dag.addEdge(0, 1), ValidationError);  // duplicate
    CHECK_THROWS_AS(dag.addEdge(1, 1), ValidationError);  // self loop
    CHECK(dag.hasEdge(0, 1));
    CHECK(!dag.hasEdge(1, 0));
    CHECK(dag.parents(2) == std::vector<int>{1});
    CHECK(dag.children(0) == std::vector<int>{1});
}

TEST_CASE("topological order puts parents before children") {
    Dag dag = randomDag(8, 0.4, 11);
    std::vector<int> order = dag.topologicalOrder();
    REQUIRE(order.size() == 8);
    std::vector<int> pos(8);
    for (int i = 0; i < 8; ++i) pos[order[i]] = i;
    for (auto [from, to] : dag.edges()) CHECK(pos[from] < pos[to]);
}

TEST_CASE("ancestor queries follow directed paths only") {
    Dag dag(letters(4));
    dag.addEdge(0, 1);
    dag.addEdge(1, 2);
    dag.addEdge(3, 2);
    CHECK(dag.isAncestor(0, 2));
    CHECK(dag.isAncestor(0, 1));
    CHECK(!dag.isAncestor(2, 0));
    CHECK(!dag.isAncestor(0, 3));
    CHECK(!dag.isAncestor(0, 0));
    std::vector<bool> anc = dag.ancestorsOf(2);
    CHECK(anc[0]);
    CHECK(anc[1]);
    CHECK(anc[3]);
    CHECK(!anc[2]);
}

TEST_CASE("latent flags partition the node set") {
    Dag dag(letters(3), {true, false, false});
    CHECK(dag.isLatent(0));
    CHECK(!dag.isLatent(1));
    CHECK(dag.observedNodes() == std::vector<int>{1, 2});
    CHECK(dag.indexOf("B") == 1);
    CHECK_THROWS_AS(dag.indexOf("Q"), ValidationError);
    CHECK_THROWS_AS(Dag(letters(3), {true, false}), ValidationError);
}

TEST_CASE("d-separation on the chain and the collider") {
    Dag chain(letters(3));
    chain.addEdge(0, 1);  // A -> B -> C
    chain.addEdge(1, 2);
    CHECK(!dSeparated(chain, 0, 2, {}));
    CHECK(dSeparated(chain, 0, 2, {1}));

    Dag collider(letters(3));
    collider.addEdge(0, 1);  // A -> B <- C
    collider.addEdge(2, 1);
    CHECK(dSeparated(collider, 0, 2, {}));
    CHECK(!dSeparated(collider, 0, 2, {1}));

    // Conditioning on a descendant of the collider also opens it.
    Dag desc(letters(4));
    desc.addEdge(0, 1);
    desc.addEdge(2, 1);
    desc.addEdge(1, 3);
    CHECK(dSeparated(desc, 0, 2, {}));
    CHECK(!dSeparated(desc, 0, 2, {3}));

    CHECK_THROWS_AS((void)dSeparated(chain, 0, 2, {0}), ValidationError);
}

TEST_CASE("d-separation agrees with path enumeration on random graphs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Dag dag = randomDag(5, 0.45, 1000 + seed);
        for (int x = 0; x < 5; ++x) {
            for (int y = x + 1; y < 5; ++y) {
                std::vector<int> others;
                for (int v = 0; v < 5; ++v) {
                    if (v != x && v != y) others.push_back(v);
                }
                for (unsigned bits = 0; bits < 8u; ++bits) {
                    std::vector<int> z;
                    for (std::size_t k = 0; k < others.size(); ++k) {
                        if (bits & (1u << k)) z.push_back(others[k]);
                    }
                    CHECK(dSeparated(dag, x, y, z) ==
                          dSeparatedByEnumeration(dag, x, y, z));
                }
            }
        }
    }
}

TEST_CASE("unshielded triples") {
    // Clique: every triple is shielded.
    Pag clique = Pag::complete(letters(4));
    CHECK(unshieldedTriples(clique).empty());

    // Path A - B - C: exactly one triple.
    Pag path(letters(3));
    path.addEdge(0, 1, Mark::Circle, Mark::Circle);
    path.addEdge(1, 2, Mark::Circle, Mark::Circle);
    auto triples = unshieldedTriples(path);
    REQUIRE(triples.size() == 1);
    CHECK(triples[0] == std::array<int, 3>{0, 1, 2});

    // Star with center D: one triple per leaf pair, sorted.
    Pag star(letters(4));
    for (int leaf : {0, 1, 2}) star.addEdge(leaf, 3, Mark::Circle, Mark::Circle);
    auto starTriples = unshieldedTriples(star);
    REQUIRE(starTriples.size() == 3);
    CHECK(starTriples[0] == std::array<int, 3>{0, 3, 1});
    CHECK(starTriples[1] == std::array<int, 3>{0, 3, 2});
    CHECK(starTriples[2] == std::array<int, 3>{1, 3, 2});
}

TEST_CASE("possible d-sep sets") {
    Pag empty(letters(3));
    CHECK(possibleDSep(empty, 0).empty());

    // A o-> C <-o B: C is adjacent and B is reachable through the collider.
    Pag coll(letters(3));
    coll.addEdge(0, 2, Mark::Circle, Mark::Arrow);
    coll.addEdge(1, 2, Mark::Circle, Mark::Arrow);
    std::vector<int> pds = possibleDSep(coll, 0);
    CHECK(std::count(pds.begin(), pds.end(), 2) == 1);
    CHECK(std::count(pds.begin(), pds.end(), 1) == 1);

    // Triangle: everything is reachable because every node is in a triangle.
    Pag tri = Pag::complete(letters(3));
    CHECK(possibleDSep(tri, 0) == std::vector<int>{1, 2});

    // Non-collider, non-triangle intermediates stop the walk.
    Pag chain(letters(3));
    chain.addEdge(0, 1, Mark::Circle, Mark::Circle);
    chain.addEdge(1, 2, Mark::Circle, Mark::Circle);
    CHECK(possibleDSep(chain, 0) == std::vector<int>{1});
}

TEST_CASE("sepset map is symmetric in the pair") {
    SepsetMap m;
    CHECK(!m.has(2, 5));
    m.set(5, 2, {1, 3});
    CHECK(m.has(2, 5));
    CHECK(m.get(2, 5) == std::vector<int>{1, 3});
    CHECK(m.size() == 1);
    m.set(2, 5, {4});
    CHECK(m.get(5, 2) == std::vector<int>{4});
    CHECK(m.size() == 1);
    CHECK_THROWS_AS((void)m.get(0, 1), ValidationError);
}

TEST_CASE("graph json round-trips a random 10-edge pag") {
    std::mt19937_64 rng(7);
    Pag p(letters(8));
    std::uniform_int_distribution<int> node(0, 7);
    std::uniform_int_distribution<int> markDraw(0, 2);
    auto draw = [&]() { return static_cast<Mark>(markDraw(rng)); };
    while (p.nEdges() < 10) {
        int a = node(rng), b = node(rng);
        if (a == b || p.adjacent(a, b)) continue;
        p.addEdge(a, b, draw(), draw());
    }
    Pag back = pagFromJson(pagToJson(p));
    CHECK(back == p);
    CHECK(exportGraph(p, "json") == pagToJson(p));
    CHECK_THROWS_AS((void)exportGraph(p, "svg"), ValidationError);
    CHECK_THROWS_AS((void)pagFromJson("{ not json"), ValidationError);
}

TEST_CASE("dot output maps marks onto arrowhead styles") {
    Pag p(letters(3));
    p.addEdge(0, 1, Mark::Tail, Mark::Arrow);
    p.addEdge(1, 2, Mark::Circle, Mark::Circle);
    std::string dot = pagToDot(p);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("odot") != std::string::npos);
    CHECK(dot.find("normal") != std::string::npos);
    CHECK(dot.find("none") != std::string::npos);
    CHECK(dot.find("\"A\"") != std::string::npos);
}
