// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is exact (combinatorial equality); the stated
// runtime limits are enforced against the wall clock.

#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "antiram/prng.hpp"
#include "antiram/verifier.hpp"
#include "oracles.hpp"

using namespace antiram;

namespace {

constexpr std::uint64_t kMasterSeed = 20240801;

int g_jobs = 1;

struct CriterionResult {
    bool pass = false;
    std::string detail;
};

SweepOptions exhaustive_options() {
    SweepOptions opts;
    opts.jobs = g_jobs;
    opts.smoke_h_plus_1 = false;   // count exactly the colorings the criteria state
    return opts;
}

// failing (h-1)-colorings discovered by criteria 2 and 3, consumed by 6
std::vector<std::pair<Tournament, ArcColoring>> g_failing;

// ---- criterion 1: base case n = 3 -------------------------------------------

CriterionResult criterion1() {
    CriterionResult r;
    std::vector<Tournament> reps = all_tournaments(3, true);
    if (reps.size() != 2) {
        r.detail = "expected 2 non-isomorphic tournaments of order 3";
        return r;
    }
    std::uint64_t upper_checked = 0, char_checked = 0;
    for (const Tournament& t : reps) {
        if (h_value(t) != 2) {
            r.detail = "h != 2 on an order-3 tournament";
            return r;
        }
        if (!verify_lower_bound(t).pass) {
            r.detail = "lower bound failed";
            return r;
        }
        UpperBoundCheck upper = verify_upper_bound(t, exhaustive_options());
        if (!upper.pass || upper.checked.at(2) != 3) {
            r.detail = "upper bound sweep failed or missed S(3,2) = 3";
            return r;
        }
        upper_checked += upper.checked.at(2);
        CharacterizationCheck character = verify_characterization(t, exhaustive_options());
        if (!character.pass || character.checked != 1 || character.failing != 1) {
            r.detail = "characterization sweep failed or missed S(3,1) = 1";
            return r;
        }
        char_checked += character.checked;
    }
    r.pass = true;
    r.detail = "2 tournaments, h = 2, " + std::to_string(upper_checked) + " + " +
               std::to_string(char_checked) + " colorings";
    return r;
}

// ---- criteria 2 and 3: exhaustive verification at orders 4 and 5 ---------------

CriterionResult exhaustive_criterion(int n, std::size_t expected_reps) {
    CriterionResult r;
    std::vector<Tournament> reps = all_tournaments(n, true);
    if (reps.size() != expected_reps) {
        r.detail = "expected " + std::to_string(expected_reps) + " representatives";
        return r;
    }
    std::uint64_t colorings = 0, failing = 0;
    for (const Tournament& t : reps) {
        int h = h_value(t);
        if (!verify_lower_bound(t).pass) {
            r.detail = "extremal coloring admitted a rainbow arborescence (n=" +
                       std::to_string(n) + ")";
            return r;
        }
        UpperBoundCheck upper = verify_upper_bound(t, exhaustive_options());
        if (!upper.pass || upper.checked.at(h) != stirling_second(t.arc_count(), h)) {
            r.detail = "upper bound sweep failed at k = h";
            return r;
        }
        colorings += upper.checked.at(h);
        CharacterizationCheck character = verify_characterization(t, exhaustive_options());
        if (!character.pass || character.failing != character.matched ||
            character.failing == 0) {
            r.detail = "a failing (h-1)-coloring missed the extremal structure";
            return r;
        }
        colorings += character.checked;
        failing += character.failing;
        for (const ArcColoring& g : character.failing_colorings)
            g_failing.emplace_back(t, g);
    }
    r.pass = true;
    r.detail = std::to_string(reps.size()) + " tournaments, " + std::to_string(colorings) +
               " colorings, " + std::to_string(failing) + " failing, all characterized";
    return r;
}

// ---- criterion 4: sampled verification at orders 6 and 7 -------------------------

CriterionResult criterion4() {
    CriterionResult r;
    std::uint64_t samples_total = 0;
    for (int n : {6, 7}) {
        for (int i = 0; i < 10; ++i) {
            std::uint64_t tseed = derive_seed(
                kMasterSeed, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(i));
            Tournament t = random_tournament(n, tseed);
            if (!verify_lower_bound(t).pass) {
                r.detail = "extremal coloring admitted a rainbow arborescence (n=" +
                           std::to_string(n) + ", seed=" + std::to_string(tseed) + ")";
                return r;
            }
            SweepOptions opts;
            opts.mode = SweepMode::sampled;
            opts.samples = 100000;
            opts.seed = tseed;
            opts.jobs = g_jobs;
            UpperBoundCheck upper = verify_upper_bound(t, opts);
            if (!upper.pass) {
                r.detail = "a sampled h-coloring admitted no rainbow arborescence (n=" +
                           std::to_string(n) + ", seed=" + std::to_string(tseed) + ")";
                return r;
            }
            samples_total += upper.checked.at(h_value(t));
        }
    }
    r.pass = true;
    r.detail = "20 tournaments, " + std::to_string(samples_total) +
               " sampled colorings, extremal fails on each";
    return r;
}

// ---- criterion 5: oracle equivalence ----------------------------------------------

CriterionResult criterion5() {
    CriterionResult r;
    std::uint64_t agreements = 0;
    SplitMix64 rng(kMasterSeed);
    for (int n = 2; n <= 5; ++n)
        for (const Tournament& t : all_tournaments(n, true)) {
            RainbowSearcher searcher(t);
            for (int trial = 0; trial < 1000; ++trial) {
                ArcColoring g = testing::random_test_coloring(t, rng);
                bool search_found = searcher.run(g).found();
                if (search_found != testing::rainbow_by_enumeration(t, g)) {
                    r.detail = "search and enumeration oracle disagree (n=" +
                               std::to_string(n) + ")";
                    return r;
                }
                ++agreements;
            }
        }

    std::uint64_t count_checks = 0;
    for (int n = 1; n <= 5; ++n) {
        bool ok = true;
        enumerate_tournaments(n, false, [&](const Tournament& t) {
            for (Vertex root = 0; root < n && ok; ++root) {
                if (count_arborescences(t, root) !=
                    static_cast<std::int64_t>(all_arborescences(t, root).size()))
                    ok = false;
                ++count_checks;
            }
        });
        if (!ok) {
            r.detail = "matrix-tree count disagrees with enumeration (n=" + std::to_string(n) +
                       ")";
            return r;
        }
    }
    r.pass = true;
    r.detail = std::to_string(agreements) + " search/oracle agreements, " +
               std::to_string(count_checks) + " exact count matches";
    return r;
}

// ---- criterion 6: lemma property suite ----------------------------------------------

CriterionResult criterion6() {
    CriterionResult r;
    if (g_failing.empty()) {
        r.detail = "no failing colorings were collected by criteria 2-3";
        return r;
    }
    std::uint64_t type1 = 0, type2 = 0;
    for (const auto& [t, g] : g_failing) {
        LemmaCheck check = verify_lemma_bounds(t, g);
        if (!check.pass()) {
            r.detail = "a lemma bound failed on a failing (h-1)-coloring";
            return r;
        }
        type1 += check.type1_vertices;
        type2 += check.type2_vertices;
    }
    r.pass = true;
    r.detail = std::to_string(g_failing.size()) + " failing colorings, " +
               std::to_string(type1) + " Type1 / " + std::to_string(type2) +
               " Type2 vertices, zero violations";
    return r;
}

// ---- criterion 7: structural invariants ----------------------------------------------

CriterionResult criterion7() {
    CriterionResult r;
    SplitMix64 rng(kMasterSeed + 7);
    for (int trial = 0; trial < 10000; ++trial) {
        int n = 3 + static_cast<int>(rng.bounded(30));
        Tournament t = random_tournament(n, rng.next());
        int d3 = delta3_value(t);
        if (d3 < 3 || d3 != testing::delta3_bruteforce(t)) {
            r.detail = "delta3 invariant failed at n = " + std::to_string(n);
            return r;
        }
    }
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 1 + static_cast<int>(rng.bounded(64));
        Tournament t = random_tournament(n, rng.next());
        if (!testing::is_hamiltonian_path(t, hamiltonian_path(t))) {
            r.detail = "hamiltonian path invalid at n = " + std::to_string(n);
            return r;
        }
    }
    for (int m = 1; m <= 10; ++m)
        for (int k = 1; k <= m; ++k) {
            std::uint64_t count = 0;
            for_each_rgs(m, k, [&](std::span<const int>) { ++count; });
            if (count != testing::stirling_recurrence(m, k)) {
                r.detail = "RGS count != S(" + std::to_string(m) + "," + std::to_string(k) + ")";
                return r;
            }
        }
    r.pass = true;
    r.detail = "10^4 delta3 checks (n <= 32), 10^3 hamiltonian paths (n <= 64), "
               "all S(m,k) counts for m <= 10";
    return r;
}

}  // namespace

int main() {
    g_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    struct Entry {
        int id;
        const char* name;
        CriterionResult (*run)();
        double limit_seconds;   // 0: no stated limit
    };
    const Entry entries[] = {
        {1, "base case n=3 (lower, upper, characterization)", criterion1, 1.0},
        {2, "exhaustive verification n=4", [] { return exhaustive_criterion(4, 4); }, 10.0},
        {3, "exhaustive verification n=5", [] { return exhaustive_criterion(5, 12); }, 600.0},
        {4, "sampled verification n=6,7", criterion4, 900.0},
        {5, "oracle equivalence (search, enumeration, matrix-tree)", criterion5, 0.0},
        {6, "lemma bounds on every failing (h-1)-coloring", criterion6, 0.0},
        {7, "structural invariants (delta3, hamiltonian, Stirling)", criterion7, 0.0},
    };

    int failures = 0;
    for (const Entry& entry : entries) {
        auto started = std::chrono::steady_clock::now();
        CriterionResult result = entry.run();
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        bool in_time = entry.limit_seconds <= 0.0 || seconds <= entry.limit_seconds;
        bool pass = result.pass && in_time;
        if (!pass)
            ++failures;
        char timing[64];
        if (entry.limit_seconds > 0.0)
            std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", seconds,
                          entry.limit_seconds);
        else
            std::snprintf(timing, sizeof timing, "%.2f s", seconds);
        std::printf("criterion %d %s: %s (%s)%s%s\n", entry.id, pass ? "PASS" : "FAIL",
                    entry.name, timing, result.detail.empty() ? "" : " -- ",
                    result.detail.c_str());
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("acceptance: all 7 criteria PASS\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
