#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antiram/tournament.hpp"

namespace antiram {

// Surjective map from arc slots (canonical pair order) onto colors 0..k-1.
struct ArcColoring {
    std::vector<int> colors;
    int k = 0;

    friend bool operator==(const ArcColoring&, const ArcColoring&) = default;
};

// Validates surjectivity onto 0..max+1 and sets k.
ArcColoring make_coloring(std::vector<int> colors);

ArcColoring rainbow_coloring(int m);          // all slots distinct
ArcColoring monochromatic_coloring(int m);    // one color

// Rewrites to restricted-growth normal form: the first occurrence of color c
// precedes the first occurrence of c+1. Color classes are unchanged.
ArcColoring normalize_coloring(const ArcColoring& g);

// ---- color statistics ------------------------------------------------------

struct ColorStats {
    std::vector<int> class_sizes;              // per color id
    std::vector<int> singulars;                // color ids with class size 1, sorted
    std::vector<std::vector<int>> colors_at;   // per vertex: C(x), sorted color ids

    int c(Vertex x) const { return static_cast<int>(colors_at[x].size()); }
};

// C(x) is the set of colors appearing only on arcs incident to x; a color is
// singular when exactly one arc carries it.
ColorStats color_stats(const Tournament& t, const ArcColoring& g);

// ---- vertex types ------------------------------------------------------------

// Type1: some in-arc of x has its color in C(x).
// Type2: no in-arc color lies in C(x) and >= 2 in-arcs carry different colors.
// Type3: otherwise — all in-arcs share one color, vacuously so for in-degree <= 1.
enum class VertexType { type1 = 1, type2 = 2, type3 = 3 };

VertexType classify_vertex(const Tournament& t, const ArcColoring& g,
                           const ColorStats& stats, Vertex x);
VertexType classify_vertex(const Tournament& t, const ArcColoring& g, Vertex x);

// ---- the extremal construction ------------------------------------------------

// Color 0 on every in-arc of the three chosen vertices, a fresh color on each
// remaining arc in canonical order. Uses C(n,2) - degree_sum + 1 colors; on a
// delta3-minimizing triple that is h(T) - 1, and no rainbow spanning
// arborescence exists.
ArcColoring extremal_coloring(const Tournament& t, const Triple& triple);
ArcColoring extremal_coloring(const Tournament& t, std::array<Vertex, 3> vertices);

// ---- enumeration up to color renaming -------------------------------------------
//
// Rainbow-arborescence existence depends only on the partition of arc slots
// into color classes, so one restricted-growth string per partition suffices.

// All restricted-growth strings of length m with exactly k classes, in RGS
// order. The span is reused between calls; copy to keep.
void for_each_rgs(int m, int k, const std::function<void(std::span<const int>)>& visit);

// Same stream restricted to strings extending `prefix` (itself a valid RGS
// prefix); lets callers split the enumeration into contiguous chunks.
void for_each_rgs_with_prefix(int m, int k, std::span<const int> prefix,
                              const std::function<void(std::span<const int>)>& visit);

// Valid prefixes of the given length, in RGS order, restricted to those with
// at least one completion using exactly k classes.
std::vector<std::vector<int>> rgs_prefixes(int m, int k, int length);

// Convenience stream of ArcColoring values (S(m,k) of them).
void enumerate_colorings(int m, int k, const std::function<void(const ArcColoring&)>& yield);

// Stirling number of the second kind; throws resource_error on uint64 overflow.
std::uint64_t stirling_second(int m, int k);

// ---- color merging ---------------------------------------------------------------

// Every arc of c_drop is recolored c_keep; ids renormalized to 0..k-2. The
// classes of all other colors are preserved.
ArcColoring merge_colors(const ArcColoring& g, int c_keep, int c_drop);

// ---- clr text format ----------------------------------------------------------------
//
// Line 1: m and k. Line 2: m space-separated color ids in canonical arc order.
// The reader validates surjectivity.

std::string write_clr(const ArcColoring& g);
ArcColoring parse_clr(std::string_view text);
ArcColoring load_clr(const std::filesystem::path& file);
void save_clr(const ArcColoring& g, const std::filesystem::path& file);

}  // namespace antiram
