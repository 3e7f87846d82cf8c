#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "antiram/arborescence.hpp"
#include "antiram/coloring.hpp"
#include "antiram/tournament.hpp"

namespace antiram {

enum class Verdict { consistent, falsified, inconclusive };
std::string_view verdict_name(Verdict v);

enum class SweepMode { exhaustive, sampled };

struct SweepOptions {
    SweepMode mode = SweepMode::exhaustive;
    std::uint64_t samples = 100000;          // sampled mode: colorings per tournament
    int tournaments_per_order = 10;          // sampled mode
    std::uint64_t seed = 0;
    int jobs = 1;
    // exhaustive sweeps larger than this are reported inconclusive, never
    // silently truncated
    std::uint64_t max_colorings = 100'000'000;
    std::uint64_t node_budget = std::numeric_limits<std::uint64_t>::max();
    bool smoke_h_plus_1 = true;              // adds k = h+1 exhaustively for n <= 4
    std::optional<std::filesystem::path> quarantine_dir;
    EnumerationLimits limits;
};

struct FailureRecord {
    int k = 0;
    std::vector<int> colors;
    std::string reason;

    friend bool operator==(const FailureRecord&, const FailureRecord&) = default;
};

struct LemmaStats {
    std::uint64_t failing_colorings = 0;
    std::uint64_t type1_checked = 0;
    std::uint64_t type1_violations = 0;
    std::uint64_t type2_checked = 0;
    std::uint64_t type2_violations = 0;
    std::uint64_t count_checked = 0;       // one Type1-count check per failing coloring
    std::uint64_t count_violations = 0;
};

struct VerificationReport {
    std::string tournament_id;
    int n = 0;
    int m = 0;
    int delta3 = 0;
    int h = 0;
    SweepMode mode = SweepMode::exhaustive;
    std::map<int, std::uint64_t> colorings_checked;   // per color count k
    std::vector<FailureRecord> failures;
    LemmaStats lemma_stats;
    std::optional<std::uint64_t> seed;
    bool inconclusive = false;
    double elapsed_ms = 0.0;

    Verdict verdict() const;
};

// ---- individual theorem checks ----------------------------------------------

// Builds the extremal coloring on the lexicographically first minimizing
// triple; passes iff the search proves no rainbow arborescence exists.
struct LowerBoundCheck {
    bool pass = false;
    Triple triple;
    ArcColoring witness;
    SearchOutcome outcome;
};
LowerBoundCheck verify_lower_bound(const Tournament& t, const SweepOptions& opts = {});

// Exhaustive: every coloring-up-to-renaming with exactly h colors (plus
// h + 1 for n <= 4 as a smoke test) must admit a rainbow arborescence.
// Sampled: seeded random surjective h-colorings instead.
struct UpperBoundCheck {
    bool pass = false;
    bool inconclusive = false;
    std::map<int, std::uint64_t> checked;
    std::vector<FailureRecord> failures;
};
UpperBoundCheck verify_upper_bound(const Tournament& t, const SweepOptions& opts = {});

// Sweeps every coloring with exactly h - 1 colors; each one without a
// rainbow arborescence must carry the extremal structure (a minimizing
// triple whose in-arcs share one color, every other arc singular), and at
// least one such coloring must exist.
struct CharacterizationCheck {
    bool pass = false;
    bool inconclusive = false;
    std::uint64_t checked = 0;
    std::uint64_t failing = 0;
    std::uint64_t matched = 0;
    std::vector<FailureRecord> failures;
    std::vector<ArcColoring> failing_colorings;
};
CharacterizationCheck verify_characterization(const Tournament& t, const SweepOptions& opts = {});

// True iff some minimizing triple has all in-arcs in one color and every
// remaining arc is singular.
bool matches_extremal_structure(const Tournament& t, std::span<const int> colors, int k,
                                const std::vector<Triple>& minimizing);

// Per-vertex bounds that hold on every failing (h-1)-coloring: Type1 implies
// c(x) >= n-4; Type2 implies d+(x) >= c(x) and c(x) = n-4; at most n-2
// vertices of Type1. Throws std::invalid_argument unless the coloring uses
// exactly h - 1 colors and has no rainbow arborescence.
struct LemmaCheck {
    std::uint64_t type1_vertices = 0;
    std::uint64_t type1_violations = 0;
    std::uint64_t type2_vertices = 0;
    std::uint64_t type2_violations = 0;
    bool count_ok = true;

    bool pass() const {
        return type1_violations == 0 && type2_violations == 0 && count_ok;
    }
};
LemmaCheck verify_lemma_bounds(const Tournament& t, const ArcColoring& g);

// ---- sweep driver --------------------------------------------------------------

// One report per tournament: exhaustive mode walks the non-isomorphic
// representatives of each order, sampled mode draws seeded random
// tournaments. Deterministic given options; reports stream through
// on_report as they complete.
std::vector<VerificationReport> run_sweep(
    int n_lo, int n_hi, const SweepOptions& opts = {},
    const std::function<void(const VerificationReport&)>& on_report = {});

// Single-tournament drivers used by run_sweep and the CLI.
VerificationReport verify_tournament(const Tournament& t, const SweepOptions& opts = {});

// ---- sampling -------------------------------------------------------------------

// Surjective by construction: one slot per color via a partial shuffle, the
// remaining slots drawn uniformly. Deterministic for a fixed seed.
ArcColoring random_surjective_coloring(int m, int k, std::uint64_t seed);

// Brute-force re-check used before any failure is reported: enumerate all
// arborescences from every root and filter for pairwise-distinct colors.
bool rainbow_exists_bruteforce(const Tournament& t, const ArcColoring& g, int cap = 7);

// ---- report emission ---------------------------------------------------------------

nlohmann::ordered_json report_to_json(const VerificationReport& r, bool include_timing = true);
// Fixed column order: n,digest,delta3,h,mode,checked,failures,elapsed_ms
std::string reports_to_csv(std::span<const VerificationReport> reports,
                           bool include_timing = true);

// Writes <digest>_k<k>_<index>.trn/.clr for replay.
void persist_failure(const std::filesystem::path& dir, const Tournament& t,
                     const FailureRecord& failure, std::size_t index);

}  // namespace antiram
