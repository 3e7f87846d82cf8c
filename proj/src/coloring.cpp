#include "antiram/coloring.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace antiram {

ArcColoring make_coloring(std::vector<int> colors) {
    int k = 0;
    for (int c : colors) {
        if (c < 0)
            throw std::invalid_argument("make_coloring: negative color id");
        k = std::max(k, c + 1);
    }
    if (!colors.empty()) {
        std::vector<bool> used(k, false);
        for (int c : colors)
            used[c] = true;
        for (int c = 0; c < k; ++c)
            if (!used[c])
                throw std::invalid_argument("make_coloring: color " + std::to_string(c) +
                                            " unused; ids must be surjective onto 0..k-1");
    }
    return ArcColoring{std::move(colors), k};
}

ArcColoring rainbow_coloring(int m) {
    std::vector<int> colors(m);
    std::iota(colors.begin(), colors.end(), 0);
    return ArcColoring{std::move(colors), m};
}

ArcColoring monochromatic_coloring(int m) {
    if (m < 1)
        throw std::invalid_argument("monochromatic_coloring: need at least one arc");
    return ArcColoring{std::vector<int>(m, 0), 1};
}

ArcColoring normalize_coloring(const ArcColoring& g) {
    std::vector<int> relabel(g.k, -1);
    std::vector<int> out(g.colors.size());
    int next = 0;
    for (std::size_t i = 0; i < g.colors.size(); ++i) {
        int c = g.colors[i];
        if (c < 0 || c >= g.k)
            throw std::invalid_argument("normalize_coloring: color id out of range");
        if (relabel[c] < 0)
            relabel[c] = next++;
        out[i] = relabel[c];
    }
    if (next != g.k)
        throw std::invalid_argument("normalize_coloring: coloring not surjective");
    return ArcColoring{std::move(out), g.k};
}

// ---- color statistics -------------------------------------------------------

ColorStats color_stats(const Tournament& t, const ArcColoring& g) {
    int m = t.arc_count();
    if (static_cast<int>(g.colors.size()) != m)
        throw std::invalid_argument("color_stats: coloring length != C(n,2)");

    ColorStats stats;
    stats.class_sizes.assign(g.k, 0);
    stats.colors_at.assign(t.order(), {});

    // carriers[c]: vertices incident to every arc of color c (at most two)
    std::vector<std::vector<Vertex>> carriers(g.k);
    std::vector<bool> seen(g.k, false);
    for (int pid = 0; pid < m; ++pid) {
        int c = g.colors[pid];
        if (c < 0 || c >= g.k)
            throw std::invalid_argument("color_stats: color id out of range");
        ++stats.class_sizes[c];
        auto [u, v] = index_pair(t.order(), pid);
        if (!seen[c]) {
            seen[c] = true;
            carriers[c] = {u, v};
        } else {
            std::vector<Vertex> kept;
            for (Vertex w : carriers[c])
                if (w == u || w == v)
                    kept.push_back(w);
            carriers[c] = std::move(kept);
        }
    }

    for (int c = 0; c < g.k; ++c) {
        if (stats.class_sizes[c] == 0)
            throw std::invalid_argument("color_stats: color " + std::to_string(c) + " unused");
        if (stats.class_sizes[c] == 1)
            stats.singulars.push_back(c);
        for (Vertex w : carriers[c])
            stats.colors_at[w].push_back(c);
    }
    for (auto& lst : stats.colors_at)
        std::sort(lst.begin(), lst.end());
    return stats;
}

// ---- vertex types --------------------------------------------------------------

VertexType classify_vertex(const Tournament& t, const ArcColoring& g,
                           const ColorStats& stats, Vertex x) {
    if (x < 0 || x >= t.order())
        throw std::invalid_argument("classify_vertex: vertex out of range");

    const std::vector<int>& exclusive = stats.colors_at[x];
    bool in_color_exclusive = false;
    int first_in_color = -1;
    bool two_in_colors = false;
    for (Vertex w = 0; w < t.order(); ++w) {
        if (w == x || !t.has_arc(w, x))
            continue;
        int c = g.colors[w < x ? pair_index(t.order(), w, x) : pair_index(t.order(), x, w)];
        if (std::binary_search(exclusive.begin(), exclusive.end(), c))
            in_color_exclusive = true;
        if (first_in_color < 0)
            first_in_color = c;
        else if (c != first_in_color)
            two_in_colors = true;
    }
    if (in_color_exclusive)
        return VertexType::type1;
    if (two_in_colors)
        return VertexType::type2;
    return VertexType::type3;
}

VertexType classify_vertex(const Tournament& t, const ArcColoring& g, Vertex x) {
    return classify_vertex(t, g, color_stats(t, g), x);
}

// ---- the extremal construction ----------------------------------------------------

ArcColoring extremal_coloring(const Tournament& t, std::array<Vertex, 3> vertices) {
    std::sort(vertices.begin(), vertices.end());
    if (vertices[0] == vertices[1] || vertices[1] == vertices[2])
        throw std::invalid_argument("extremal_coloring: triple must have three distinct vertices");
    for (Vertex v : vertices)
        if (v < 0 || v >= t.order())
            throw std::invalid_argument("extremal_coloring: vertex out of range");

    auto in_triple = [&](Vertex v) {
        return v == vertices[0] || v == vertices[1] || v == vertices[2];
    };
    std::vector<int> colors(t.arc_count());
    int next = 1;
    for (int pid = 0; pid < t.arc_count(); ++pid) {
        if (in_triple(t.arc(pid).head))
            colors[pid] = 0;          // shared color on every in-arc of the triple
        else
            colors[pid] = next++;
    }
    return ArcColoring{std::move(colors), next};
}

ArcColoring extremal_coloring(const Tournament& t, const Triple& triple) {
    return extremal_coloring(t, triple.vertices);
}

// ---- enumeration up to color renaming -----------------------------------------------

namespace {

void rgs_recurse(std::vector<int>& a, int i, int used, int m, int k,
                 const std::function<void(std::span<const int>)>& visit) {
    if (i == m) {
        if (used == k)
            visit(std::span<const int>(a.data(), a.size()));
        return;
    }
    if (used + (m - i) < k)   // cannot still reach k classes
        return;
    int hi = std::min(used, k - 1);
    for (int c = 0; c <= hi; ++c) {
        a[i] = c;
        rgs_recurse(a, i + 1, std::max(used, c + 1), m, k, visit);
    }
}

void check_rgs_args(int m, int k) {
    if (m < 1)
        throw std::invalid_argument("rgs enumeration: need m >= 1 arc slots");
    if (k < 1 || k > m)
        throw std::invalid_argument("rgs enumeration: need 1 <= k <= m");
}

}  // namespace

void for_each_rgs(int m, int k, const std::function<void(std::span<const int>)>& visit) {
    check_rgs_args(m, k);
    std::vector<int> a(m, 0);
    rgs_recurse(a, 1, 1, m, k, visit);   // a[0] = 0 always
}

void for_each_rgs_with_prefix(int m, int k, std::span<const int> prefix,
                              const std::function<void(std::span<const int>)>& visit) {
    check_rgs_args(m, k);
    if (prefix.empty() || static_cast<int>(prefix.size()) > m)
        throw std::invalid_argument("for_each_rgs_with_prefix: bad prefix length");
    std::vector<int> a(m, 0);
    int used = 0;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (prefix[i] < 0 || prefix[i] > used || prefix[i] > k - 1)
            throw std::invalid_argument("for_each_rgs_with_prefix: not a valid RGS prefix");
        a[i] = prefix[i];
        used = std::max(used, prefix[i] + 1);
    }
    rgs_recurse(a, static_cast<int>(prefix.size()), used, m, k, visit);
}

std::vector<std::vector<int>> rgs_prefixes(int m, int k, int length) {
    check_rgs_args(m, k);
    if (length < 1 || length > m)
        throw std::invalid_argument("rgs_prefixes: bad length");
    std::vector<std::vector<int>> out;
    std::vector<int> a(length, 0);
    // depth-first over prefixes; feasible iff used <= k and k still reachable
    std::function<void(int, int)> rec = [&](int i, int used) {
        if (used + (m - i) < k)
            return;
        if (i == length) {
            out.push_back(a);
            return;
        }
        int hi = std::min(used, k - 1);
        for (int c = 0; c <= hi; ++c) {
            a[i] = c;
            rec(i + 1, std::max(used, c + 1));
        }
    };
    rec(1, 1);
    return out;
}

void enumerate_colorings(int m, int k, const std::function<void(const ArcColoring&)>& yield) {
    for_each_rgs(m, k, [&](std::span<const int> rgs) {
        yield(ArcColoring{std::vector<int>(rgs.begin(), rgs.end()), k});
    });
}

std::uint64_t stirling_second(int m, int k) {
    if (m < 0 || k < 0)
        throw std::invalid_argument("stirling_second: negative argument");
    if (k > m)
        return 0;
    if (m == 0)
        return 1;   // S(0,0)
    if (k == 0)
        return 0;
    // S(i,j) = j*S(i-1,j) + S(i-1,j-1)
    std::vector<std::uint64_t> row(k + 1, 0);
    row[0] = 1;   // S(0,0)
    for (int i = 1; i <= m; ++i) {
        for (int j = std::min(i, k); j >= 1; --j) {
            std::uint64_t scaled;
            if (__builtin_mul_overflow(row[j], static_cast<std::uint64_t>(j), &scaled))
                throw resource_error("stirling_second: overflow");
            if (__builtin_add_overflow(scaled, row[j - 1], &row[j]))
                throw resource_error("stirling_second: overflow");
        }
        row[0] = 0;   // S(i,0) = 0 for i >= 1
    }
    return row[k];
}

// ---- color merging ---------------------------------------------------------------------

ArcColoring merge_colors(const ArcColoring& g, int c_keep, int c_drop) {
    if (c_keep == c_drop)
        throw std::invalid_argument("merge_colors: colors must differ");
    if (c_keep < 0 || c_keep >= g.k || c_drop < 0 || c_drop >= g.k)
        throw std::invalid_argument("merge_colors: color id out of range");
    bool keep_present = false, drop_present = false;
    for (int c : g.colors) {
        keep_present |= (c == c_keep);
        drop_present |= (c == c_drop);
    }
    if (!keep_present || !drop_present)
        throw std::invalid_argument("merge_colors: both colors must be present");

    std::vector<int> out(g.colors.size());
    for (std::size_t i = 0; i < g.colors.size(); ++i) {
        int c = g.colors[i] == c_drop ? c_keep : g.colors[i];
        out[i] = c > c_drop ? c - 1 : c;   // close the id gap
    }
    return ArcColoring{std::move(out), g.k - 1};
}

// ---- clr text format -------------------------------------------------------------------

std::string write_clr(const ArcColoring& g) {
    std::ostringstream out;
    out << g.colors.size() << ' ' << g.k << '\n';
    for (std::size_t i = 0; i < g.colors.size(); ++i) {
        if (i > 0)
            out << ' ';
        out << g.colors[i];
    }
    out << '\n';
    return out.str();
}

ArcColoring parse_clr(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long m = 0, k = 0;
    if (!(in >> m) || !(in >> k))
        throw parse_error("clr: expected arc count and color count");
    if (m < 1 || k < 1 || k > m)
        throw parse_error("clr: need 1 <= k <= m");
    std::vector<int> colors(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long c;
        if (!(in >> c))
            throw parse_error("clr: expected " + std::to_string(m) + " color ids");
        if (c < 0 || c >= k)
            throw parse_error("clr: color id " + std::to_string(c) + " out of range");
        colors[static_cast<std::size_t>(i)] = static_cast<int>(c);
    }
    std::string rest;
    if (in >> rest)
        throw parse_error("clr: trailing content");
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (int c : colors)
        used[static_cast<std::size_t>(c)] = true;
    for (long long c = 0; c < k; ++c)
        if (!used[static_cast<std::size_t>(c)])
            throw parse_error("clr: color " + std::to_string(c) + " unused; not surjective");
    return ArcColoring{std::move(colors), static_cast<int>(k)};
}

ArcColoring load_clr(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw parse_error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_clr(buf.str());
}

void save_clr(const ArcColoring& g, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out)
        throw parse_error("cannot write " + file.string());
    out << write_clr(g);
}

}  // namespace antiram
