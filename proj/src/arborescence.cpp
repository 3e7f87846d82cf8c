#include "antiram/arborescence.hpp"

#include <algorithm>
#include <bit>

namespace antiram {

bool is_valid_arborescence(const Tournament& t, const Arborescence& a) {
    int n = t.order();
    if (a.root < 0 || a.root >= n || static_cast<int>(a.parent.size()) != n)
        return false;
    if (a.parent[a.root] != -1)
        return false;
    for (Vertex v = 0; v < n; ++v) {
        if (v == a.root)
            continue;
        Vertex u = a.parent[v];
        if (u < 0 || u >= n || u == v || !t.has_arc(u, v))
            return false;
    }
    // every vertex must climb to the root in < n steps
    for (Vertex v = 0; v < n; ++v) {
        Vertex cur = v;
        int steps = 0;
        while (cur != a.root) {
            cur = a.parent[cur];
            if (++steps >= n)
                return false;
        }
    }
    return true;
}

bool is_rainbow(const Tournament& t, const ArcColoring& g, const Arborescence& a) {
    std::vector<bool> used(g.k, false);
    for (Vertex v = 0; v < t.order(); ++v) {
        if (v == a.root)
            continue;
        Vertex u = a.parent[v];
        int pid = u < v ? pair_index(t.order(), u, v) : pair_index(t.order(), v, u);
        int c = g.colors[pid];
        if (used[c])
            return false;
        used[c] = true;
    }
    return true;
}

// ---- rainbow search ------------------------------------------------------------

RainbowSearcher::RainbowSearcher(const Tournament& t, SearchOptions opts)
    : n_(t.order()), m_(t.arc_count()), opts_(opts) {
    if (n_ > 64)
        throw resource_error("RainbowSearcher: orders above 64 are unsupported");
    arcs_.reserve(m_);
    in_arcs_.assign(n_, {});
    for (int pid = 0; pid < m_; ++pid) {
        Arc a = t.arc(pid);
        arcs_.push_back(a);
        in_arcs_[a.head].push_back({a.tail, pid});
    }
    for (auto& lst : in_arcs_)
        std::sort(lst.begin(), lst.end(),
                  [](const InArc& a, const InArc& b) { return a.tail < b.tail; });

    root_order_.resize(n_);
    for (Vertex v = 0; v < n_; ++v)
        root_order_[v] = v;
    std::vector<int> out_deg(n_);
    for (Vertex v = 0; v < n_; ++v)
        out_deg[v] = t.out_degree(v);
    std::stable_sort(root_order_.begin(), root_order_.end(),
                     [&](Vertex a, Vertex b) { return out_deg[a] > out_deg[b]; });

    full_mask_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    excluded_.assign(m_, 0);
    parent_.assign(n_, -1);
    cand_bufs_.assign(n_ + 1, {});
    for (auto& buf : cand_bufs_)
        buf.reserve(m_);
}

SearchOutcome RainbowSearcher::run(const ArcColoring& g) {
    return run(std::span<const int>(g.colors.data(), g.colors.size()), g.k);
}

SearchOutcome RainbowSearcher::run(std::span<const int> colors, int num_colors) {
    if (static_cast<int>(colors.size()) != m_)
        throw std::invalid_argument("RainbowSearcher: coloring length != C(n,2)");
    colors_ = colors;
    k_ = num_colors;
    color_words_.assign((k_ + 63) / 64, 0);
    avail_color_words_.assign((k_ + 63) / 64, 0);
    color_cand_counts_.assign(k_, 0);
    std::fill(excluded_.begin(), excluded_.end(), 0);
    nodes_ = 0;
    prunes_ = 0;
    witness_.reset();

    SearchOutcome out;
    for (Vertex r : root_order_) {
        root_ = r;
        reached_ = std::uint64_t{1} << r;
        std::fill(parent_.begin(), parent_.end(), -1);
        Result res = dfs(0);
        if (res == Result::found) {
            out.status = SearchStatus::found;
            out.witness = std::move(witness_);
            break;
        }
        if (res == Result::budget) {
            out.status = SearchStatus::budget_exceeded;
            break;
        }
    }
    out.nodes_expanded = nodes_;
    out.prunes = prunes_;
    return out;
}

RainbowSearcher::Result RainbowSearcher::dfs(int depth) {
    if (reached_ == full_mask_) {
        witness_ = Arborescence{root_, parent_};
        return Result::found;
    }
    if (nodes_ >= opts_.node_budget)
        return Result::budget;
    ++nodes_;

    std::uint64_t unreached = full_mask_ & ~reached_;
    int unreached_count = std::popcount(unreached);

    auto& cands = cand_bufs_[depth];
    cands.clear();
    std::fill(avail_color_words_.begin(), avail_color_words_.end(), 0);

    for (std::uint64_t rest = unreached; rest != 0; rest &= rest - 1) {
        Vertex v = std::countr_zero(rest);
        bool any_in_arc = false;
        for (const InArc& e : in_arcs_[v]) {
            if (excluded_[e.pair_id])
                continue;
            int c = colors_[e.pair_id];
            if (color_used(c))
                continue;
            any_in_arc = true;
            avail_color_words_[c >> 6] |= std::uint64_t{1} << (c & 63);
            if ((reached_ >> e.tail) & 1)
                cands.push_back(static_cast<std::uint64_t>(e.pair_id));
        }
        if (!any_in_arc) {   // v can never gain a tree in-arc in this branch
            ++prunes_;
            return Result::exhausted;
        }
    }

    int distinct_colors = 0;
    for (std::uint64_t w : avail_color_words_)
        distinct_colors += std::popcount(w);
    if (distinct_colors < unreached_count) {
        ++prunes_;
        return Result::exhausted;
    }
    if (cands.empty()) {   // unreached vertices exist but no frontier arc
        ++prunes_;
        return Result::exhausted;
    }

    // scarcest color class first, canonical arc order within a class
    for (std::uint64_t pid : cands)
        ++color_cand_counts_[colors_[pid]];
    for (std::uint64_t& key : cands) {
        int pid = static_cast<int>(key);
        key = (static_cast<std::uint64_t>(color_cand_counts_[colors_[pid]]) << 32) |
              static_cast<std::uint64_t>(pid);
    }
    for (std::uint64_t key : cands)
        color_cand_counts_[colors_[static_cast<int>(key & 0xffffffff)]] = 0;
    std::sort(cands.begin(), cands.end());

    // partition by the first candidate used: after trying an arc, exclude it
    // from the remaining branches of this node
    Result result = Result::exhausted;
    std::size_t excluded_here = 0;
    for (std::size_t i = 0; i < cands.size(); ++i) {
        int pid = static_cast<int>(cands[i] & 0xffffffff);
        const Arc& a = arcs_[pid];
        flip_color(colors_[pid]);
        reached_ |= std::uint64_t{1} << a.head;
        parent_[a.head] = a.tail;

        Result res = dfs(depth + 1);

        parent_[a.head] = -1;
        reached_ &= ~(std::uint64_t{1} << a.head);
        flip_color(colors_[pid]);

        if (res != Result::exhausted) {
            result = res;
            break;
        }
        excluded_[pid] = 1;
        excluded_here = i + 1;
    }
    for (std::size_t i = 0; i < excluded_here; ++i)
        excluded_[static_cast<int>(cands[i] & 0xffffffff)] = 0;
    return result;
}

SearchOutcome has_rainbow_arborescence(const Tournament& t, const ArcColoring& g,
                                       SearchOptions opts) {
    RainbowSearcher searcher(t, opts);
    return searcher.run(g);
}

// ---- exhaustive enumeration oracle ------------------------------------------------

namespace {

struct ArbEnumerator {
    const Tournament& t;
    const std::function<void(const Arborescence&)>& yield;
    int n;
    std::uint64_t full_mask;
    std::uint64_t reached = 0;
    Vertex root;
    std::vector<Vertex> parent;
    std::vector<std::uint8_t> excluded;
    std::vector<std::vector<std::uint64_t>> cand_bufs;   // (tail<<32)|pair keys

    ArbEnumerator(const Tournament& t_, Vertex root_,
                  const std::function<void(const Arborescence&)>& yield_)
        : t(t_), yield(yield_), n(t_.order()), root(root_) {
        full_mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        parent.assign(n, -1);
        excluded.assign(t.arc_count(), 0);
        cand_bufs.assign(n + 1, {});
        reached = std::uint64_t{1} << root;
    }

    void rec(int depth) {
        if (reached == full_mask) {
            yield(Arborescence{root, parent});
            return;
        }
        auto& cands = cand_bufs[depth];
        cands.clear();
        for (std::uint64_t rest = full_mask & ~reached; rest != 0; rest &= rest - 1) {
            Vertex v = std::countr_zero(rest);
            bool any = false;
            for (Vertex u = 0; u < n; ++u) {
                if (u == v || !t.has_arc(u, v))
                    continue;
                int pid = u < v ? pair_index(n, u, v) : pair_index(n, v, u);
                if (excluded[pid])
                    continue;
                any = true;
                if ((reached >> u) & 1)
                    cands.push_back((static_cast<std::uint64_t>(u) << 32) |
                                    static_cast<std::uint64_t>(pid));
            }
            if (!any)
                return;   // v unreachable in this branch
        }
        if (cands.empty())
            return;
        std::sort(cands.begin(), cands.end());   // tail-major canonical order

        std::size_t excluded_here = 0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            int pid = static_cast<int>(cands[i] & 0xffffffff);
            Arc a = t.arc(pid);
            reached |= std::uint64_t{1} << a.head;
            parent[a.head] = a.tail;
            rec(depth + 1);
            parent[a.head] = -1;
            reached &= ~(std::uint64_t{1} << a.head);
            excluded[pid] = 1;
            excluded_here = i + 1;
        }
        for (std::size_t i = 0; i < excluded_here; ++i)
            excluded[static_cast<int>(cands[i] & 0xffffffff)] = 0;
    }
};

}  // namespace

void enumerate_arborescences(const Tournament& t, Vertex root,
                             const std::function<void(const Arborescence&)>& yield,
                             int cap) {
    if (root < 0 || root >= t.order())
        throw std::invalid_argument("enumerate_arborescences: root out of range");
    if (t.order() > cap)
        throw resource_error("enumerate_arborescences: order " + std::to_string(t.order()) +
                             " exceeds the cap " + std::to_string(cap) +
                             "; raise the cap explicitly if the blowup is acceptable");
    ArbEnumerator e(t, root, yield);
    e.rec(0);
}

std::vector<Arborescence> all_arborescences(const Tournament& t, Vertex root, int cap) {
    std::vector<Arborescence> out;
    enumerate_arborescences(t, root, [&](const Arborescence& a) { out.push_back(a); }, cap);
    return out;
}

// ---- matrix-tree count --------------------------------------------------------------

namespace {

using int128 = __int128;

int128 checked_mul(int128 a, int128 b) {
    int128 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw resource_error("count_arborescences: 128-bit overflow in elimination");
    return out;
}

int128 checked_sub(int128 a, int128 b) {
    int128 out;
    if (__builtin_sub_overflow(a, b, &out))
        throw resource_error("count_arborescences: 128-bit overflow in elimination");
    return out;
}

}  // namespace

std::int64_t count_arborescences(const Tournament& t, Vertex root) {
    int n = t.order();
    if (root < 0 || root >= n)
        throw std::invalid_argument("count_arborescences: root out of range");
    if (n == 1)
        return 1;

    // in-degree Laplacian with the root's row and column deleted
    int sz = n - 1;
    std::vector<Vertex> label;
    for (Vertex v = 0; v < n; ++v)
        if (v != root)
            label.push_back(v);
    std::vector<std::vector<int128>> mat(sz, std::vector<int128>(sz, 0));
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            Vertex u = label[i], v = label[j];
            if (i == j)
                mat[i][j] = t.in_degree(v);
            else
                mat[i][j] = t.has_arc(u, v) ? -1 : 0;
        }

    // Bareiss fraction-free elimination: every division below is exact
    int128 prev = 1;
    int sign = 1;
    for (int col = 0; col < sz; ++col) {
        int pivot = -1;
        for (int r = col; r < sz; ++r)
            if (mat[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            return 0;
        if (pivot != col) {
            std::swap(mat[pivot], mat[col]);
            sign = -sign;
        }
        for (int i = col + 1; i < sz; ++i) {
            for (int j = col + 1; j < sz; ++j)
                mat[i][j] = checked_sub(checked_mul(mat[i][j], mat[col][col]),
                                        checked_mul(mat[i][col], mat[col][j])) /
                            prev;
            mat[i][col] = 0;
        }
        prev = mat[col][col];
    }

    int128 det = sign < 0 ? -mat[sz - 1][sz - 1] : mat[sz - 1][sz - 1];
    if (det > std::numeric_limits<std::int64_t>::max() ||
        det < std::numeric_limits<std::int64_t>::min())
        throw resource_error("count_arborescences: count does not fit in 64 bits");
    return static_cast<std::int64_t>(det);
}

// ---- the proof's heterochromatic subdigraph --------------------------------------------

ProofDigraph proof_digraph(const Tournament& t, const ArcColoring& g, Vertex x, Vertex y) {
    if (static_cast<int>(g.colors.size()) != t.arc_count())
        throw std::invalid_argument("proof_digraph: coloring length != C(n,2)");
    if (!t.has_arc(x, y))
        throw std::invalid_argument("proof_digraph: x->y is not an arc");

    ProofDigraph d;
    d.anchor = {x, y};
    std::vector<bool> used(g.k, false);

    int anchor_pid = x < y ? pair_index(t.order(), x, y) : pair_index(t.order(), y, x);
    d.arcs.push_back(t.arc(anchor_pid));
    used[g.colors[anchor_pid]] = true;

    for (int pid = 0; pid < t.arc_count(); ++pid) {
        if (pid == anchor_pid)
            continue;
        Arc a = t.arc(pid);
        if (a.head == x || a.head == y)
            continue;   // discarded in-arcs of the anchor pair
        if (used[g.colors[pid]])
            continue;
        used[g.colors[pid]] = true;
        d.arcs.push_back(a);
    }
    d.k_xy = g.k - static_cast<int>(d.arcs.size());
    return d;
}

}  // namespace antiram
