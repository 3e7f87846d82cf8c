#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "antiram/errors.hpp"

namespace antiram {

using Vertex = int;

// ---- canonical arc indexing -------------------------------------------
//
// Unordered pairs {u, v} with u < v are numbered in lexicographic order of
// (u, v). Every coloring, file format and enumeration in the toolkit is
// positioned against this ordering, so artifacts from different runs line up.

int pair_count(int n);
int pair_index(int n, Vertex u, Vertex v);            // requires u < v
std::pair<Vertex, Vertex> index_pair(int n, int pair_id);

// An oriented arc; pair_id names the unordered pair in canonical order.
struct Arc {
    Vertex tail = -1;
    Vertex head = -1;
    int pair_id = -1;

    friend bool operator==(const Arc&, const Arc&) = default;
};

// ---- tournament --------------------------------------------------------
//
// Orientation of the complete graph on n labeled vertices, bit-packed:
// bit for pair {u, v}, u < v, is 1 iff the arc is u->v, 0 iff v->u.
// Exactly one direction per pair is forced by the encoding.
class Tournament {
public:
    Tournament() = default;
    explicit Tournament(int n);                            // all bits 0
    Tournament(int n, const std::vector<bool>& orientation);

    int order() const { return n_; }
    int arc_count() const { return m_; }

    bool pair_bit(int pair_id) const;
    void set_pair_bit(int pair_id, bool value);

    // True iff the arc u->v is present. u == v is never an arc.
    bool has_arc(Vertex u, Vertex v) const;
    Arc arc(int pair_id) const;                            // oriented

    int in_degree(Vertex v) const;
    int out_degree(Vertex v) const;
    std::vector<int> in_degrees() const;

    std::vector<bool> orientation_bits() const;

    friend bool operator==(const Tournament& a, const Tournament& b) = default;
    // Lexicographic on the orientation bit vector (bit 0 first); shorter
    // orders compare smaller. Used for canonical-minimum representatives.
    friend bool operator<(const Tournament& a, const Tournament& b);

private:
    void check_vertex(Vertex v) const;

    int n_ = 0;
    int m_ = 0;
    std::vector<std::uint64_t> words_;
};

// ---- degree statistics ---------------------------------------------------

struct Triple {
    std::array<Vertex, 3> vertices;   // strictly increasing
    int degree_sum = 0;               // in-degree sum, recomputable from T

    friend bool operator==(const Triple&, const Triple&) = default;
};

struct Delta3 {
    int value = 0;                    // min over all 3-subsets of in-degree sum
    std::vector<Triple> witnesses;    // every minimizing triple, lexicographic
};

// Minimum in-degree sum over vertex triples. Since triples are unconstrained
// this equals the sum of the three smallest in-degrees; witnesses are
// recovered by scanning triples over vertices at those degree values.
Delta3 delta3_minus(const Tournament& t);
int delta3_value(const Tournament& t);                    // no witness scan

// Anti-Ramsey number h(T) = C(n,2) - delta3^-(T) + 2, n >= 3.
int h_value(const Tournament& t);

// ---- construction --------------------------------------------------------

// Each orientation bit an independent fair coin from SplitMix64(seed).
// Bits are consumed LSB-first, 64 per generator word.
Tournament random_tournament(int n, std::uint64_t seed);

Tournament transitive_tournament(int n);                  // i->j iff i < j
Tournament rotational_tournament(int n);                  // n odd: i -> i+1..i+(n-1)/2 (mod n)

// ---- enumeration and isomorphism ----------------------------------------

struct EnumerationLimits {
    int labeled_cap = 5;   // all 2^C(n,2) labeled tournaments
    int iso_cap = 7;       // one canonical-minimum representative per class
};

// Streams tournaments of order n. Labeled mode yields all 2^C(n,2)
// orientations in increasing bit-vector order. Isomorphism-free mode yields
// the canonical-minimum representative of every class, in increasing order.
void enumerate_tournaments(int n, bool up_to_iso,
                           const std::function<void(const Tournament&)>& yield,
                           const EnumerationLimits& limits = {});
std::vector<Tournament> all_tournaments(int n, bool up_to_iso,
                                        const EnumerationLimits& limits = {});

// Relabeling: vertex i of t becomes perm[i].
Tournament permute(const Tournament& t, std::span<const Vertex> perm);

// Lexicographically minimal orientation bit vector over all vertex
// permutations. Full factorial scan, capped (default 8).
Tournament canonical_form(const Tournament& t, int cap = 8);

// Stable identifier: "n<order>:<hex of canonical bits>"; falls back to the
// raw orientation ("raw<order>:...") beyond the canonical-form cap.
std::string tournament_digest(const Tournament& t);

// ---- digraph subroutines -------------------------------------------------

// Insertion order: each vertex, in index order, goes to the first position
// the orientation permits. Always succeeds in a tournament.
std::vector<Vertex> hamiltonian_path(const Tournament& t);

// Vertices reachable from `from` (inclusive) in an explicit arc set,
// breadth-first with lexicographic neighbor order. Returns a sorted list.
std::vector<Vertex> reachable_set(int n,
                                  std::span<const std::pair<Vertex, Vertex>> arcs,
                                  Vertex from);

// ---- trn text format -----------------------------------------------------
//
// Line 1: n. Line 2: C(n,2) characters '0'/'1' in canonical arc order.
// The parser tolerates arbitrary whitespace; the writer is strict.

std::string write_trn(const Tournament& t);
Tournament parse_trn(std::string_view text);
Tournament load_trn(const std::filesystem::path& file);
void save_trn(const Tournament& t, const std::filesystem::path& file);

}  // namespace antiram
