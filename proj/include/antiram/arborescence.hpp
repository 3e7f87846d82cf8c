#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "antiram/coloring.hpp"
#include "antiram/tournament.hpp"

namespace antiram {

// Rooted spanning out-tree: parent[v] is the tree in-neighbor of each
// non-root vertex, parent[root] = -1.
struct Arborescence {
    Vertex root = -1;
    std::vector<Vertex> parent;

    friend bool operator==(const Arborescence&, const Arborescence&) = default;
};

// Structural check against the host tournament: n-1 arcs of T, in-degree 1
// per non-root vertex, everything reachable from the root.
bool is_valid_arborescence(const Tournament& t, const Arborescence& a);
// All tree arcs pairwise distinct in color.
bool is_rainbow(const Tournament& t, const ArcColoring& g, const Arborescence& a);

// ---- rainbow search ----------------------------------------------------------

enum class SearchStatus { found, not_found, budget_exceeded };

struct SearchOutcome {
    SearchStatus status = SearchStatus::not_found;
    std::optional<Arborescence> witness;
    std::uint64_t nodes_expanded = 0;
    std::uint64_t prunes = 0;

    bool found() const { return status == SearchStatus::found; }
};

struct SearchOptions {
    std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
};

// Backtracking decision procedure for "does some spanning arborescence use
// n-1 pairwise-distinct colors". Roots are tried by descending out-degree
// (ties by index). At each step the frontier arcs (reached -> unreached,
// unused color) are branched in order of color scarcity, and each tried arc
// is excluded from the later branches of the same step, so the space is
// partitioned by the first frontier arc used. Prunes: an unreached vertex
// with no usable in-arc left, and fewer usable distinct colors on in-arcs of
// unreached vertices than unreached vertices.
//
// Reusable across colorings of one tournament; run() resets all state.
class RainbowSearcher {
public:
    explicit RainbowSearcher(const Tournament& t, SearchOptions opts = {});

    SearchOutcome run(const ArcColoring& g);
    SearchOutcome run(std::span<const int> colors, int num_colors);

private:
    struct InArc {
        Vertex tail;
        int pair_id;
    };

    enum class Result { found, exhausted, budget };

    Result dfs(int depth);
    bool color_used(int c) const {
        return (color_words_[c >> 6] >> (c & 63)) & 1;
    }
    void flip_color(int c) { color_words_[c >> 6] ^= std::uint64_t{1} << (c & 63); }

    int n_;
    int m_;
    SearchOptions opts_;
    std::vector<Arc> arcs_;                       // oriented, by pair id
    std::vector<std::vector<InArc>> in_arcs_;     // per head, tails ascending
    std::vector<Vertex> root_order_;

    // per-run state
    std::span<const int> colors_;
    int k_ = 0;
    std::uint64_t reached_ = 0;
    std::uint64_t full_mask_ = 0;
    std::vector<std::uint64_t> color_words_;
    std::vector<std::uint8_t> excluded_;
    std::vector<Vertex> parent_;
    Vertex root_ = -1;
    std::uint64_t nodes_ = 0;
    std::uint64_t prunes_ = 0;
    std::optional<Arborescence> witness_;

    // scratch, sized once
    std::vector<std::vector<std::uint64_t>> cand_bufs_;   // per depth: (count<<32)|pair_id keys
    std::vector<std::uint64_t> avail_color_words_;
    std::vector<int> color_cand_counts_;
};

SearchOutcome has_rainbow_arborescence(const Tournament& t, const ArcColoring& g,
                                       SearchOptions opts = {});

// ---- exhaustive and algebraic oracles ------------------------------------------

// Every spanning arborescence rooted at `root`, each exactly once (frontier
// expansion with the same first-arc partition, no color logic). Cap guards
// the exponential blowup; default 7.
void enumerate_arborescences(const Tournament& t, Vertex root,
                             const std::function<void(const Arborescence&)>& yield,
                             int cap = 7);
std::vector<Arborescence> all_arborescences(const Tournament& t, Vertex root, int cap = 7);

// Number of spanning arborescences rooted at `root`: minor determinant of the
// in-degree Laplacian, fraction-free elimination in exact integers. Throws
// resource_error if an intermediate value leaves the 128-bit range.
std::int64_t count_arborescences(const Tournament& t, Vertex root);

// ---- the proof's heterochromatic subdigraph ---------------------------------------

// Maximal heterochromatic spanning subdigraph of the arcs avoiding in-arcs of
// {x, y}, except that x->y itself is kept; greedy in canonical arc order.
// k_xy counts the colors with no occurrence outside the discarded in-arcs.
struct ProofDigraph {
    std::vector<Arc> arcs;
    std::pair<Vertex, Vertex> anchor;
    int k_xy = 0;
};

ProofDigraph proof_digraph(const Tournament& t, const ArcColoring& g, Vertex x, Vertex y);

}  // namespace antiram
