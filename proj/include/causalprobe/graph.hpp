#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace causalprobe {

// Edge-mark semantics: a PAG edge carries one mark per endpoint. Circle means
// "undetermined". The four legal combinations are tail/arrow (directed),
// arrow/arrow (bidirected), circle/arrow (partially directed) and
// circle/circle (nondirected).
enum class Mark : std::uint8_t { Tail, Arrow, Circle };

const char* markName(Mark m);
Mark markFromName(const std::string& name);

// Mixed graph over dense node indices with a name table. mark(a, b) is the
// mark at endpoint b of edge a-b; edges are symmetric in existence.
class Pag {
public:
    Pag() = default;
    explicit Pag(std::vector<std::string> names);

    static Pag complete(std::vector<std::string> names);

    std::size_t nNodes() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_[v]; }
    int indexOf(const std::string& name) const;  // throws UnknownNode

    bool adjacent(int a, int b) const;
    void addEdge(int a, int b, Mark atA, Mark atB);
    void removeEdge(int a, int b);
    Mark mark(int a, int b) const;        // mark at b on edge a-b
    void setMark(int a, int b, Mark m);   // set mark at b on edge a-b

    std::vector<int> neighbors(int v) const;          // ascending
    std::vector<std::pair<int, int>> edges() const;   // a < b, lexicographic
    std::size_t nEdges() const;

    void reorientAll(Mark m);

    bool operator==(const Pag& other) const = default;

private:
    std::size_t at(int a, int b) const { return static_cast<std::size_t>(a) * names_.size() + b; }

    std::vector<std::string> names_;
    // 0 = no edge, otherwise Mark+1 at that endpoint.
    std::vector<std::uint8_t> marks_;
};

// Directed acyclic graph; nodes may be flagged latent.
class Dag {
public:
    Dag() = default;
    Dag(std::vector<std::string> names, std::vector<bool> latent = {});

    std::size_t nNodes() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_[v]; }
    int indexOf(const std::string& name) const;
    bool isLatent(int v) const { return latent_[v]; }
    std::vector<int> observedNodes() const;

    void addEdge(int from, int to);  // throws on cycle or duplicate
    bool hasEdge(int from, int to) const;
    const std::vector<int>& parents(int v) const { return parents_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    std::vector<std::pair<int, int>> edges() const;  // (from,to) lexicographic

    std::vector<int> topologicalOrder() const;
    // All u with a directed path u -> ... -> v (v itself excluded).
    std::vector<bool> ancestorsOf(int v) const;
    bool isAncestor(int a, int b) const;  // directed path a ~> b, a != b

private:
    bool reachable(int from, int to) const;

    std::vector<std::string> names_;
    std::vector<bool> latent_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
};

// Conditioning sets recorded when edges are removed; keyed by unordered pair.
class SepsetMap {
public:
    void set(int a, int b, std::vector<int> sepset);
    bool has(int a, int b) const;
    const std::vector<int>& get(int a, int b) const;  // throws if absent
    std::size_t size() const { return map_.size(); }

private:
    static std::pair<int, int> key(int a, int b);
    std::map<std::pair<int, int>, std::vector<int>> map_;
};

// Exact d-separation test (the oracle behind oracle_test); z may contain
// any nodes, latent or observed.
bool dSeparated(const Dag& dag, int x, int y, const std::vector<int>& z);

// All triples (x, z, y), x < y, with x-z and z-y adjacent but x,y not;
// sorted lexicographically by (x, z, y).
std::vector<std::array<int, 3>> unshieldedTriples(const Pag& p);

// Possible-D-SEP(x): nodes v reachable from x along paths whose every
// intermediate node is a collider on the path or part of a triangle.
std::vector<int> possibleDSep(const Pag& p, int x);

}  // namespace causalprobe
