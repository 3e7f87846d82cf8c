#include "antiram/tournament.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "antiram/prng.hpp"

namespace antiram {

int pair_count(int n) {
    return n * (n - 1) / 2;
}

int pair_index(int n, Vertex u, Vertex v) {
    if (u < 0 || v <= u || v >= n)
        throw std::invalid_argument("pair_index: need 0 <= u < v < n");
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

std::pair<Vertex, Vertex> index_pair(int n, int pair_id) {
    if (pair_id < 0 || pair_id >= pair_count(n))
        throw std::invalid_argument("index_pair: pair_id out of range");
    int u = 0;
    int row = n - 1;
    while (pair_id >= row) {
        pair_id -= row;
        --row;
        ++u;
    }
    return {u, u + 1 + pair_id};
}

// ---- Tournament -----------------------------------------------------------

Tournament::Tournament(int n) : n_(n), m_(pair_count(n)) {
    if (n < 1)
        throw std::invalid_argument("Tournament: order must be >= 1");
    words_.assign((m_ + 63) / 64, 0);
}

Tournament::Tournament(int n, const std::vector<bool>& orientation) : Tournament(n) {
    if (static_cast<int>(orientation.size()) != m_)
        throw std::invalid_argument("Tournament: orientation length != C(n,2)");
    for (int i = 0; i < m_; ++i)
        set_pair_bit(i, orientation[i]);
}

bool Tournament::pair_bit(int pair_id) const {
    if (pair_id < 0 || pair_id >= m_)
        throw std::invalid_argument("pair_bit: pair_id out of range");
    return (words_[pair_id >> 6] >> (pair_id & 63)) & 1;
}

void Tournament::set_pair_bit(int pair_id, bool value) {
    if (pair_id < 0 || pair_id >= m_)
        throw std::invalid_argument("set_pair_bit: pair_id out of range");
    std::uint64_t mask = std::uint64_t{1} << (pair_id & 63);
    if (value)
        words_[pair_id >> 6] |= mask;
    else
        words_[pair_id >> 6] &= ~mask;
}

void Tournament::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("vertex out of range");
}

bool Tournament::has_arc(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        return false;
    if (u < v)
        return pair_bit(pair_index(n_, u, v));
    return !pair_bit(pair_index(n_, v, u));
}

Arc Tournament::arc(int pair_id) const {
    auto [u, v] = index_pair(n_, pair_id);
    if (pair_bit(pair_id))
        return {u, v, pair_id};
    return {v, u, pair_id};
}

int Tournament::in_degree(Vertex v) const {
    check_vertex(v);
    int d = 0;
    for (Vertex u = 0; u < n_; ++u)
        if (u != v && has_arc(u, v))
            ++d;
    return d;
}

int Tournament::out_degree(Vertex v) const {
    check_vertex(v);
    return n_ - 1 - in_degree(v);
}

std::vector<int> Tournament::in_degrees() const {
    std::vector<int> degs(n_, 0);
    for (int p = 0; p < m_; ++p)
        ++degs[arc(p).head];
    return degs;
}

std::vector<bool> Tournament::orientation_bits() const {
    std::vector<bool> bits(m_);
    for (int i = 0; i < m_; ++i)
        bits[i] = pair_bit(i);
    return bits;
}

bool operator<(const Tournament& a, const Tournament& b) {
    if (a.n_ != b.n_)
        return a.n_ < b.n_;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        std::uint64_t diff = a.words_[w] ^ b.words_[w];
        if (diff != 0) {
            // first differing bit decides; the vector with 0 there is smaller
            int bit = std::countr_zero(diff);
            return ((a.words_[w] >> bit) & 1) == 0;
        }
    }
    return false;
}

// ---- degree statistics -----------------------------------------------------

int delta3_value(const Tournament& t) {
    if (t.order() < 3)
        throw std::invalid_argument("delta3_minus: order must be >= 3");
    std::vector<int> degs = t.in_degrees();
    std::sort(degs.begin(), degs.end());
    return degs[0] + degs[1] + degs[2];
}

Delta3 delta3_minus(const Tournament& t) {
    Delta3 result;
    result.value = delta3_value(t);
    std::vector<int> degs = t.in_degrees();
    std::vector<int> sorted = degs;
    std::sort(sorted.begin(), sorted.end());
    int threshold = sorted[2];   // only vertices at the three smallest values can minimize

    std::vector<Vertex> candidates;
    for (Vertex v = 0; v < t.order(); ++v)
        if (degs[v] <= threshold)
            candidates.push_back(v);

    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i + 1; j < candidates.size(); ++j)
            for (std::size_t l = j + 1; l < candidates.size(); ++l) {
                Vertex a = candidates[i], b = candidates[j], c = candidates[l];
                int sum = degs[a] + degs[b] + degs[c];
                if (sum == result.value)
                    result.witnesses.push_back(Triple{{a, b, c}, sum});
            }
    return result;
}

int h_value(const Tournament& t) {
    if (t.order() < 3)
        throw std::invalid_argument("h_value: order must be >= 3");
    return pair_count(t.order()) - delta3_value(t) + 2;
}

// ---- construction -----------------------------------------------------------

Tournament random_tournament(int n, std::uint64_t seed) {
    Tournament t(n);
    SplitMix64 rng(seed);
    std::uint64_t word = 0;
    for (int i = 0; i < t.arc_count(); ++i) {
        if ((i & 63) == 0)
            word = rng.next();
        t.set_pair_bit(i, (word >> (i & 63)) & 1);
    }
    return t;
}

Tournament transitive_tournament(int n) {
    Tournament t(n);
    for (int i = 0; i < t.arc_count(); ++i)
        t.set_pair_bit(i, true);
    return t;
}

Tournament rotational_tournament(int n) {
    if (n < 1 || n % 2 == 0)
        throw std::invalid_argument("rotational_tournament: order must be odd");
    Tournament t(n);
    int half = (n - 1) / 2;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            t.set_pair_bit(pair_index(n, u, v), (v - u) <= half);
    return t;
}

// ---- enumeration and isomorphism --------------------------------------------

namespace {

void enumerate_labeled(int n, const std::function<void(const Tournament&)>& yield) {
    int m = pair_count(n);
    std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t code = 0; code < total; ++code) {
        Tournament t(n);
        for (int i = 0; i < m; ++i)
            t.set_pair_bit(i, (code >> i) & 1);
        yield(t);
    }
}

// One canonical representative per class, built by extending the
// representatives of order j-1 with every orientation pattern of a new
// vertex and deduplicating canonical forms. Any tournament arises as an
// extension of the class of any one-vertex-deleted subtournament, so every
// class of order j is reached.
std::vector<Tournament> iso_representatives(int n) {
    std::vector<Tournament> reps{Tournament(1)};
    for (int j = 2; j <= n; ++j) {
        std::set<Tournament> next;
        for (const Tournament& base : reps) {
            std::uint64_t patterns = std::uint64_t{1} << (j - 1);
            for (std::uint64_t p = 0; p < patterns; ++p) {
                Tournament ext(j);
                for (int pid = 0; pid < base.arc_count(); ++pid) {
                    auto [u, v] = index_pair(j - 1, pid);
                    ext.set_pair_bit(pair_index(j, u, v), base.pair_bit(pid));
                }
                for (Vertex u = 0; u < j - 1; ++u) {
                    // pattern bit u set: new vertex beats u
                    bool new_beats_u = (p >> u) & 1;
                    ext.set_pair_bit(pair_index(j, u, j - 1), !new_beats_u);
                }
                next.insert(canonical_form(ext));
            }
        }
        reps.assign(next.begin(), next.end());
    }
    return reps;
}

}  // namespace

void enumerate_tournaments(int n, bool up_to_iso,
                           const std::function<void(const Tournament&)>& yield,
                           const EnumerationLimits& limits) {
    if (n < 1)
        throw std::invalid_argument("enumerate_tournaments: order must be >= 1");
    if (up_to_iso) {
        if (n > limits.iso_cap)
            throw resource_error(
                "enumerate_tournaments: order " + std::to_string(n) +
                " exceeds the isomorphism-free cap " + std::to_string(limits.iso_cap) +
                "; raise EnumerationLimits::iso_cap explicitly if the factorial cost is acceptable");
        for (const Tournament& t : iso_representatives(n))
            yield(t);
    } else {
        if (n > limits.labeled_cap)
            throw resource_error(
                "enumerate_tournaments: order " + std::to_string(n) +
                " exceeds the labeled cap " + std::to_string(limits.labeled_cap) +
                " (2^C(n,2) items); raise EnumerationLimits::labeled_cap explicitly");
        enumerate_labeled(n, yield);
    }
}

std::vector<Tournament> all_tournaments(int n, bool up_to_iso, const EnumerationLimits& limits) {
    std::vector<Tournament> out;
    enumerate_tournaments(n, up_to_iso, [&](const Tournament& t) { out.push_back(t); }, limits);
    return out;
}

Tournament permute(const Tournament& t, std::span<const Vertex> perm) {
    int n = t.order();
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permute: permutation length != order");
    std::vector<bool> seen(n, false);
    for (Vertex v : perm) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("permute: not a permutation");
        seen[v] = true;
    }
    Tournament out(n);
    for (int pid = 0; pid < t.arc_count(); ++pid) {
        Arc a = t.arc(pid);
        Vertex s = perm[a.tail], d = perm[a.head];
        if (s < d)
            out.set_pair_bit(pair_index(n, s, d), true);
        else
            out.set_pair_bit(pair_index(n, d, s), false);
    }
    return out;
}

namespace {

// First differing bit decides; the vector with 0 there is lexicographically
// smaller.
bool packed_lex_less(std::uint64_t a, std::uint64_t b) {
    std::uint64_t diff = a ^ b;
    if (diff == 0)
        return false;
    return ((a >> std::countr_zero(diff)) & 1) == 0;
}

}  // namespace

Tournament canonical_form(const Tournament& t, int cap) {
    int n = t.order();
    if (n > cap)
        throw resource_error("canonical_form: order " + std::to_string(n) +
                             " exceeds the factorial-scan cap " + std::to_string(cap));
    int m = t.arc_count();
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    if (m > 64) {   // generic path for caps raised past 8
        Tournament best = t;
        while (std::next_permutation(perm.begin(), perm.end())) {
            Tournament candidate = permute(t, perm);
            if (candidate < best)
                best = candidate;
        }
        return best;
    }

    std::vector<Arc> arcs(m);
    for (int pid = 0; pid < m; ++pid)
        arcs[pid] = t.arc(pid);
    std::vector<int> pid_of(n * n, 0);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            pid_of[u * n + v] = pair_index(n, u, v);

    auto packed_under = [&](const std::vector<Vertex>& p) {
        std::uint64_t bits = 0;
        for (const Arc& a : arcs) {
            Vertex s = p[a.tail], d = p[a.head];
            if (s < d)
                bits |= std::uint64_t{1} << pid_of[s * n + d];
        }
        return bits;
    };

    std::uint64_t best = packed_under(perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::uint64_t candidate = packed_under(perm);
        if (packed_lex_less(candidate, best))
            best = candidate;
    }
    Tournament out(n);
    for (int pid = 0; pid < m; ++pid)
        out.set_pair_bit(pid, (best >> pid) & 1);
    return out;
}

namespace {

std::string bits_hex(const Tournament& t) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    int m = t.arc_count();
    for (int base = 0; base < m; base += 4) {
        int nibble = 0;
        for (int b = 0; b < 4 && base + b < m; ++b)
            if (t.pair_bit(base + b))
                nibble |= 1 << b;
        hex.push_back(digits[nibble]);
    }
    if (hex.empty())
        hex = "0";
    return hex;
}

}  // namespace

std::string tournament_digest(const Tournament& t) {
    if (t.order() <= 8)
        return "n" + std::to_string(t.order()) + ":" + bits_hex(canonical_form(t));
    return "raw" + std::to_string(t.order()) + ":" + bits_hex(t);
}

// ---- digraph subroutines -----------------------------------------------------

std::vector<Vertex> hamiltonian_path(const Tournament& t) {
    std::vector<Vertex> seq;
    seq.reserve(t.order());
    for (Vertex v = 0; v < t.order(); ++v) {
        std::size_t pos = seq.size();
        for (std::size_t i = 0; i < seq.size(); ++i)
            if (t.has_arc(v, seq[i])) {
                pos = i;
                break;
            }
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), v);
    }
    return seq;
}

std::vector<Vertex> reachable_set(int n,
                                  std::span<const std::pair<Vertex, Vertex>> arcs,
                                  Vertex from) {
    if (from < 0 || from >= n)
        throw std::invalid_argument("reachable_set: start vertex out of range");
    std::vector<std::vector<Vertex>> adj(n);
    for (auto [u, v] : arcs) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("reachable_set: arc endpoint out of range");
        adj[u].push_back(v);
    }
    for (auto& lst : adj)
        std::sort(lst.begin(), lst.end());

    std::vector<bool> seen(n, false);
    seen[from] = true;
    std::deque<Vertex> queue{from};
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex v : adj[u])
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v)
        if (seen[v])
            out.push_back(v);
    return out;
}

// ---- trn text format -----------------------------------------------------------

std::string write_trn(const Tournament& t) {
    std::string out = std::to_string(t.order());
    out.push_back('\n');
    for (int i = 0; i < t.arc_count(); ++i)
        out.push_back(t.pair_bit(i) ? '1' : '0');
    out.push_back('\n');
    return out;
}

Tournament parse_trn(std::string_view text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    };

    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos == start)
        throw parse_error("trn: expected vertex count");
    int n = 0;
    for (std::size_t i = start; i < pos; ++i) {
        n = n * 10 + (text[i] - '0');
        if (n > 100000)
            throw parse_error("trn: vertex count out of range");
    }
    if (n < 1)
        throw parse_error("trn: vertex count must be >= 1");

    Tournament t(n);
    int bits_read = 0;
    while (bits_read < t.arc_count()) {
        skip_ws();
        if (pos >= text.size())
            throw parse_error("trn: expected " + std::to_string(t.arc_count()) +
                              " orientation bits, got " + std::to_string(bits_read));
        char c = text[pos++];
        if (c != '0' && c != '1')
            throw parse_error(std::string("trn: invalid orientation character '") + c + "'");
        t.set_pair_bit(bits_read++, c == '1');
    }
    skip_ws();
    if (pos != text.size())
        throw parse_error("trn: trailing content after orientation bits");
    return t;
}

Tournament load_trn(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw parse_error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_trn(buf.str());
}

void save_trn(const Tournament& t, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out)
        throw parse_error("cannot write " + file.string());
    out << write_trn(t);
}

}  // namespace antiram
