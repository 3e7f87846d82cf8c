#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "antiram/prng.hpp"
#include "antiram/verifier.hpp"
#include "oracles.hpp"

using namespace antiram;

TEST_CASE("lower bound holds for every tournament up to order 6") {
    CHECK(verify_lower_bound(rotational_tournament(3)).pass);
    CHECK(verify_lower_bound(transitive_tournament(4)).pass);
    for (int n : {3, 4, 5, 6})
        for (const Tournament& t : all_tournaments(n, true)) {
            LowerBoundCheck check = verify_lower_bound(t);
            CHECK(check.pass);
            CHECK(check.witness.k == h_value(t) - 1);
            CHECK(check.triple.degree_sum == delta3_value(t));
        }
}

TEST_CASE("upper bound exhaustively on the named instances") {
    SUBCASE("3-cycle: S(3,2) = 3 colorings") {
        UpperBoundCheck check = verify_upper_bound(rotational_tournament(3));
        CHECK(check.pass);
        CHECK(check.checked.at(2) == 3);
    }
    SUBCASE("transitive n=4: S(6,5) = 15 colorings at k = h") {
        UpperBoundCheck check = verify_upper_bound(transitive_tournament(4));
        CHECK(check.pass);
        CHECK(check.checked.at(5) == 15);
        CHECK(check.checked.at(6) == 1);   // h+1 smoke test for n <= 4
    }
    SUBCASE("regular n=5: S(10,6) = 22827 colorings") {
        UpperBoundCheck check = verify_upper_bound(rotational_tournament(5));
        CHECK(check.pass);
        CHECK(check.checked.at(6) == 22827);
        CHECK(check.checked.count(7) == 0);   // smoke test only below n = 5
    }
}

TEST_CASE("upper bound respects the coloring budget") {
    SweepOptions opts;
    opts.max_colorings = 10;
    UpperBoundCheck check = verify_upper_bound(rotational_tournament(5), opts);
    CHECK(check.inconclusive);
    CHECK_FALSE(check.pass);
    CHECK(check.failures.empty());
}

TEST_CASE("characterization on the named instances") {
    SUBCASE("3-cycle: the single 1-coloring fails and matches") {
        CharacterizationCheck check = verify_characterization(rotational_tournament(3));
        CHECK(check.pass);
        CHECK(check.checked == 1);
        CHECK(check.failing == 1);
        CHECK(check.matched == 1);
    }
    SUBCASE("transitive n=4: S(6,4) = 65 colorings, exactly one failing") {
        Tournament t = transitive_tournament(4);
        CharacterizationCheck check = verify_characterization(t);
        CHECK(check.pass);
        CHECK(check.checked == 65);
        CHECK(check.failing == 1);
        CHECK(check.matched == 1);
        // the failing coloring is the extremal one, up to renaming
        ArcColoring extremal =
            normalize_coloring(extremal_coloring(t, delta3_minus(t).witnesses.front()));
        REQUIRE(check.failing_colorings.size() == 1);
        CHECK(check.failing_colorings[0] == extremal);
    }
    SUBCASE("every n=5 representative: all failing colorings match") {
        for (const Tournament& t : all_tournaments(5, true)) {
            CharacterizationCheck check = verify_characterization(t);
            CHECK(check.pass);
            CHECK(check.checked == stirling_second(10, h_value(t) - 1));
            CHECK(check.failing >= 1);
            CHECK(check.failing == check.matched);

            // the sweep rediscovers the extremal coloring of every minimizing triple
            std::set<std::vector<int>> failing;
            for (const ArcColoring& g : check.failing_colorings)
                failing.insert(g.colors);
            for (const Triple& triple : delta3_minus(t).witnesses) {
                ArcColoring extremal = normalize_coloring(extremal_coloring(t, triple));
                CHECK(failing.count(extremal.colors) == 1);
            }
        }
    }
}

TEST_CASE("structure matcher accepts exactly the extremal pattern") {
    Tournament t = transitive_tournament(4);
    Delta3 d3 = delta3_minus(t);
    ArcColoring extremal = extremal_coloring(t, d3.witnesses.front());
    CHECK(matches_extremal_structure(t, extremal.colors, extremal.k, d3.witnesses));

    // merging two singular colors breaks singularity
    ArcColoring merged = merge_colors(extremal, 1, 2);
    CHECK_FALSE(matches_extremal_structure(t, merged.colors, merged.k, d3.witnesses));

    // a non-minimizing triple's extremal coloring must not match either
    ArcColoring wrong = extremal_coloring(t, std::array<Vertex, 3>{1, 2, 3});
    CHECK_FALSE(matches_extremal_structure(t, wrong.colors, wrong.k, d3.witnesses));
}

TEST_CASE("lemma bounds on failing colorings") {
    SUBCASE("n=4: Type1 count bound checked, degree bounds vacuous") {
        for (const Tournament& t : all_tournaments(4, true)) {
            CharacterizationCheck check = verify_characterization(t);
            for (const ArcColoring& g : check.failing_colorings) {
                LemmaCheck lemma = verify_lemma_bounds(t, g);
                CHECK(lemma.pass());
            }
        }
    }
    SUBCASE("n=5: all three bounds hold on every failing coloring") {
        for (const Tournament& t : all_tournaments(5, true)) {
            CharacterizationCheck check = verify_characterization(t);
            CHECK(check.failing >= 1);
            for (const ArcColoring& g : check.failing_colorings) {
                LemmaCheck lemma = verify_lemma_bounds(t, g);
                CHECK(lemma.pass());
            }
        }
    }
    SUBCASE("extremal coloring of regular n=5 satisfies the bounds") {
        Tournament t = rotational_tournament(5);
        ArcColoring g = extremal_coloring(t, delta3_minus(t).witnesses.front());
        LemmaCheck lemma = verify_lemma_bounds(t, g);
        CHECK(lemma.pass());
        CHECK(lemma.type1_vertices + lemma.type2_vertices <= 5);
    }
    SUBCASE("hypothesis violations are domain errors") {
        Tournament t = rotational_tournament(5);
        CHECK_THROWS_AS(verify_lemma_bounds(t, rainbow_coloring(t.arc_count())),
                        std::invalid_argument);
        // right color count but a rainbow tree exists
        ArcColoring g = random_surjective_coloring(t.arc_count(), h_value(t) - 1, 9);
        if (has_rainbow_arborescence(t, g).found())
            CHECK_THROWS_AS(verify_lemma_bounds(t, g), std::invalid_argument);
    }
}

TEST_CASE("random surjective colorings are surjective and deterministic") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        int m = 1 + static_cast<int>(rng.bounded(21));
        int k = 1 + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(m)));
        std::uint64_t seed = rng.next();
        ArcColoring g = random_surjective_coloring(m, k, seed);
        CHECK(g.k == k);
        std::vector<bool> used(k, false);
        for (int c : g.colors)
            used[c] = true;
        CHECK(std::count(used.begin(), used.end(), true) == k);
        CHECK(random_surjective_coloring(m, k, seed) == g);
    }
}

TEST_CASE("run_sweep over orders 3 and 4") {
    std::vector<VerificationReport> reports = run_sweep(3, 4);
    REQUIRE(reports.size() == 6);   // 2 + 4 representatives
    for (const VerificationReport& r : reports) {
        CHECK(r.verdict() == Verdict::consistent);
        CHECK(r.failures.empty());
        CHECK(r.colorings_checked.at(r.h) == stirling_second(r.m, r.h));
        CHECK(r.colorings_checked.at(r.h - 1) == stirling_second(r.m, r.h - 1));
        CHECK(r.lemma_stats.failing_colorings >= 1);
        CHECK(r.lemma_stats.type1_violations == 0);
        CHECK(r.lemma_stats.type2_violations == 0);
        CHECK(r.lemma_stats.count_violations == 0);
    }
}

TEST_CASE("parallel sweep equals the single-threaded sweep") {
    SweepOptions serial;
    serial.jobs = 1;
    SweepOptions parallel;
    parallel.jobs = 4;
    Tournament t = rotational_tournament(5);

    UpperBoundCheck a = verify_upper_bound(t, serial);
    UpperBoundCheck b = verify_upper_bound(t, parallel);
    CHECK(a.pass == b.pass);
    CHECK(a.checked == b.checked);

    CharacterizationCheck ca = verify_characterization(t, serial);
    CharacterizationCheck cb = verify_characterization(t, parallel);
    CHECK(ca.checked == cb.checked);
    CHECK(ca.failing == cb.failing);
    CHECK(ca.matched == cb.matched);
    CHECK(ca.failing_colorings == cb.failing_colorings);
}

TEST_CASE("run_sweep over order 5 yields 12 consistent reports") {
    SweepOptions opts;
    opts.jobs = 2;
    std::vector<VerificationReport> reports = run_sweep(5, 5, opts);
    REQUIRE(reports.size() == 12);
    for (const VerificationReport& r : reports)
        CHECK(r.verdict() == Verdict::consistent);
}

TEST_CASE("sampled sweep on order 7") {
    SweepOptions opts;
    opts.mode = SweepMode::sampled;
    opts.samples = 500;
    opts.tournaments_per_order = 2;
    opts.seed = 99;
    opts.jobs = 2;
    std::vector<VerificationReport> reports = run_sweep(7, 7, opts);
    REQUIRE(reports.size() == 2);
    for (const VerificationReport& r : reports) {
        CHECK(r.verdict() == Verdict::consistent);
        CHECK(r.colorings_checked.at(r.h) == 500);
    }
}

TEST_CASE("sampled sweep on order 6") {
    SweepOptions opts;
    opts.mode = SweepMode::sampled;
    opts.samples = 200;
    opts.tournaments_per_order = 3;
    opts.seed = 42;
    opts.jobs = 2;
    std::vector<VerificationReport> reports = run_sweep(6, 6, opts);
    REQUIRE(reports.size() == 3);
    for (const VerificationReport& r : reports) {
        CHECK(r.verdict() == Verdict::consistent);
        CHECK(r.colorings_checked.at(r.h) == 200);
        CHECK(r.seed.has_value());
    }
}

TEST_CASE("reports are byte-stable given identical inputs and seeds") {
    SweepOptions opts;
    opts.jobs = 2;
    std::vector<VerificationReport> a = run_sweep(3, 4, opts);
    std::vector<VerificationReport> b = run_sweep(3, 4, opts);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(report_to_json(a[i], false).dump() == report_to_json(b[i], false).dump());
    CHECK(reports_to_csv(a, false) == reports_to_csv(b, false));

    SUBCASE("json carries the schema fields") {
        nlohmann::ordered_json j = report_to_json(a.front());
        for (const char* field : {"tournament_id", "n", "m", "delta3", "h", "mode",
                                  "colorings_checked", "failures", "lemma_stats", "verdict",
                                  "elapsed_ms"})
            CHECK(j.contains(field));
    }
    SUBCASE("csv has the fixed header") {
        std::string csv = reports_to_csv(a);
        CHECK(csv.rfind("n,digest,delta3,h,mode,checked,failures,elapsed_ms\n", 0) == 0);
    }
}

TEST_CASE("quarantine persistence writes a replayable pair") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "antiram_quarantine_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    Tournament t = transitive_tournament(4);
    FailureRecord failure{4, extremal_coloring(t, std::array<Vertex, 3>{0, 1, 2}).colors,
                          "synthetic failure for the persistence path"};
    persist_failure(dir, t, failure, 0);

    int files = 0;
    fs::path trn_file, clr_file;
    for (const auto& entry : fs::directory_iterator(dir)) {
        ++files;
        if (entry.path().extension() == ".trn")
            trn_file = entry.path();
        if (entry.path().extension() == ".clr")
            clr_file = entry.path();
    }
    CHECK(files == 2);
    CHECK(load_trn(trn_file) == t);
    CHECK(load_clr(clr_file).colors == failure.colors);
    fs::remove_all(dir);
}

TEST_CASE("bruteforce recheck oracle agrees with the searcher") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        Tournament t = random_tournament(5, rng.next());
        ArcColoring g = testing::random_test_coloring(t, rng);
        CHECK(rainbow_exists_bruteforce(t, g) == has_rainbow_arborescence(t, g).found());
    }
}
