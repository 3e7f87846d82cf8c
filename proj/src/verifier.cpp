#include "antiram/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <numeric>
#include <thread>

#include "antiram/prng.hpp"

namespace antiram {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::falsified: return "falsified";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict VerificationReport::verdict() const {
    if (!failures.empty())
        return Verdict::falsified;
    if (inconclusive)
        return Verdict::inconclusive;
    return Verdict::consistent;
}

// ---- sampling ---------------------------------------------------------------

ArcColoring random_surjective_coloring(int m, int k, std::uint64_t seed) {
    if (m < 1 || k < 1 || k > m)
        throw std::invalid_argument("random_surjective_coloring: need 1 <= k <= m");
    SplitMix64 rng(seed);
    std::vector<int> slots(m);
    std::iota(slots.begin(), slots.end(), 0);
    // partial Fisher-Yates: the first k slots get one color each
    for (int j = 0; j < k; ++j) {
        int swap_with = j + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(m - j)));
        std::swap(slots[j], slots[swap_with]);
    }
    std::vector<int> colors(m, 0);
    for (int j = 0; j < k; ++j)
        colors[slots[j]] = j;
    for (int j = k; j < m; ++j)
        colors[slots[j]] = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(k)));
    return ArcColoring{std::move(colors), k};
}

bool rainbow_exists_bruteforce(const Tournament& t, const ArcColoring& g, int cap) {
    bool found = false;
    for (Vertex r = 0; r < t.order() && !found; ++r)
        enumerate_arborescences(
            t, r,
            [&](const Arborescence& a) {
                if (!found && is_rainbow(t, g, a))
                    found = true;
            },
            cap);
    return found;
}

// ---- structure matching ---------------------------------------------------------

bool matches_extremal_structure(const Tournament& t, std::span<const int> colors, int k,
                                const std::vector<Triple>& minimizing) {
    int m = t.arc_count();
    if (static_cast<int>(colors.size()) != m)
        throw std::invalid_argument("matches_extremal_structure: coloring length != C(n,2)");
    std::vector<int> class_sizes(k, 0);
    for (int c : colors)
        ++class_sizes[c];

    for (const Triple& triple : minimizing) {
        auto in_triple = [&](Vertex v) {
            return v == triple.vertices[0] || v == triple.vertices[1] || v == triple.vertices[2];
        };
        int shared = -1;
        bool ok = true;
        for (int pid = 0; pid < m && ok; ++pid) {
            int c = colors[pid];
            if (in_triple(t.arc(pid).head)) {
                if (shared < 0)
                    shared = c;
                else if (c != shared)
                    ok = false;
            } else if (class_sizes[c] != 1) {
                ok = false;
            }
        }
        if (ok)
            return true;
    }
    return false;
}

// ---- lower bound ------------------------------------------------------------------

LowerBoundCheck verify_lower_bound(const Tournament& t, const SweepOptions& opts) {
    LowerBoundCheck check;
    Delta3 d3 = delta3_minus(t);
    check.triple = d3.witnesses.front();
    check.witness = extremal_coloring(t, check.triple);
    check.outcome =
        has_rainbow_arborescence(t, check.witness, SearchOptions{opts.node_budget});
    check.pass = check.outcome.status == SearchStatus::not_found;
    return check;
}

// ---- parallel coloring sweeps -------------------------------------------------------

namespace {

enum class SweepKind { upper_bound, characterization };

struct TaskResult {
    std::uint64_t checked = 0;
    bool budget_hit = false;
    std::uint64_t failing = 0;
    std::uint64_t matched = 0;
    std::vector<FailureRecord> failures;
    std::vector<std::vector<int>> failing_colorings;
};

// Work shared by every coloring of one (tournament, k) sweep.
struct SweepContext {
    const Tournament& t;
    int k;
    SweepKind kind;
    const std::vector<Triple>& minimizing;
    const SweepOptions& opts;
};

void inspect_coloring(const SweepContext& ctx, RainbowSearcher& searcher,
                      std::span<const int> colors, TaskResult& out) {
    ++out.checked;
    SearchOutcome outcome = searcher.run(colors, ctx.k);

    if (outcome.status == SearchStatus::budget_exceeded) {
        out.budget_hit = true;
        return;
    }

    if (outcome.status == SearchStatus::found) {
        const Arborescence& a = *outcome.witness;
        ArcColoring g{std::vector<int>(colors.begin(), colors.end()), ctx.k};
        if (!is_valid_arborescence(ctx.t, a) || !is_rainbow(ctx.t, g, a))
            out.failures.push_back(
                {ctx.k, std::move(g.colors), "internal: search returned an invalid witness"});
        return;
    }

    // search says no rainbow arborescence; re-check before reporting anything
    ArcColoring g{std::vector<int>(colors.begin(), colors.end()), ctx.k};
    bool oracle_found =
        ctx.t.order() <= 7 ? rainbow_exists_bruteforce(ctx.t, g) : false;
    if (oracle_found) {
        out.failures.push_back(
            {ctx.k, g.colors, "internal: search missed a rainbow arborescence"});
        return;
    }

    if (ctx.kind == SweepKind::upper_bound) {
        out.failures.push_back(
            {ctx.k, g.colors,
             "falsification: no rainbow arborescence in a coloring with k = h colors"});
        return;
    }

    ++out.failing;
    if (matches_extremal_structure(ctx.t, colors, ctx.k, ctx.minimizing)) {
        ++out.matched;
        out.failing_colorings.push_back(g.colors);
    } else {
        out.failures.push_back(
            {ctx.k, g.colors,
             "falsification: failing (h-1)-coloring without the extremal structure"});
    }
}

void merge_result(TaskResult& total, TaskResult&& part) {
    total.checked += part.checked;
    total.budget_hit |= part.budget_hit;
    total.failing += part.failing;
    total.matched += part.matched;
    std::move(part.failures.begin(), part.failures.end(), std::back_inserter(total.failures));
    std::move(part.failing_colorings.begin(), part.failing_colorings.end(),
              std::back_inserter(total.failing_colorings));
}

int choose_prefix_length(int m, int k, int jobs) {
    for (int len = 2; len < m && len <= 10; ++len)
        if (rgs_prefixes(m, k, len).size() >= static_cast<std::size_t>(jobs) * 8)
            return len;
    return std::min(m - 1, 10);
}

// Deterministic regardless of worker count: tasks are RGS prefixes in
// enumeration order and results merge in task order.
TaskResult sweep_colorings(const SweepContext& ctx) {
    int m = ctx.t.arc_count();
    TaskResult total;

    if (ctx.opts.jobs <= 1 || ctx.k <= 1 || m < 3) {
        RainbowSearcher searcher(ctx.t, SearchOptions{ctx.opts.node_budget});
        for_each_rgs(m, ctx.k, [&](std::span<const int> colors) {
            inspect_coloring(ctx, searcher, colors, total);
        });
        return total;
    }

    int prefix_len = choose_prefix_length(m, ctx.k, ctx.opts.jobs);
    std::vector<std::vector<int>> prefixes = rgs_prefixes(m, ctx.k, prefix_len);
    std::vector<TaskResult> results(prefixes.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        RainbowSearcher searcher(ctx.t, SearchOptions{ctx.opts.node_budget});
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= prefixes.size())
                return;
            for_each_rgs_with_prefix(m, ctx.k, prefixes[i], [&](std::span<const int> colors) {
                inspect_coloring(ctx, searcher, colors, results[i]);
            });
        }
    };
    std::vector<std::thread> threads;
    for (int j = 0; j < ctx.opts.jobs; ++j)
        threads.emplace_back(worker);
    for (auto& th : threads)
        th.join();

    for (TaskResult& r : results)
        merge_result(total, std::move(r));
    return total;
}

}  // namespace

// ---- upper bound ----------------------------------------------------------------------

UpperBoundCheck verify_upper_bound(const Tournament& t, const SweepOptions& opts) {
    UpperBoundCheck check;
    int m = t.arc_count();
    int h = h_value(t);
    static const std::vector<Triple> no_triples;

    if (opts.mode == SweepMode::sampled) {
        std::uint64_t tseed = opts.seed;
        int jobs = std::max(1, opts.jobs);
        std::vector<TaskResult> results(jobs);
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j)
            threads.emplace_back([&, j] {
                RainbowSearcher searcher(t, SearchOptions{opts.node_budget});
                for (std::uint64_t i = j; i < opts.samples; i += jobs) {
                    ArcColoring g =
                        random_surjective_coloring(m, h, derive_seed(tseed, i));
                    SweepContext ctx{t, h, SweepKind::upper_bound, no_triples, opts};
                    inspect_coloring(ctx, searcher, g.colors, results[j]);
                }
            });
        for (auto& th : threads)
            th.join();
        TaskResult total;
        for (TaskResult& r : results)
            merge_result(total, std::move(r));
        std::sort(total.failures.begin(), total.failures.end(),
                  [](const FailureRecord& a, const FailureRecord& b) {
                      return std::tie(a.k, a.colors) < std::tie(b.k, b.colors);
                  });
        check.checked[h] = total.checked;
        check.failures = std::move(total.failures);
        check.inconclusive = total.budget_hit;
        check.pass = check.failures.empty() && !check.inconclusive;
        return check;
    }

    std::vector<int> ks{h};
    if (opts.smoke_h_plus_1 && t.order() <= 4 && h + 1 <= m)
        ks.push_back(h + 1);

    for (int k : ks) {
        std::uint64_t expected = stirling_second(m, k);
        if (expected > opts.max_colorings) {
            check.inconclusive = true;
            continue;
        }
        SweepContext ctx{t, k, SweepKind::upper_bound, no_triples, opts};
        TaskResult total = sweep_colorings(ctx);
        check.checked[k] = total.checked;
        check.inconclusive |= total.budget_hit;
        std::move(total.failures.begin(), total.failures.end(),
                  std::back_inserter(check.failures));
        if (total.checked != expected)
            check.failures.push_back(
                {k, {}, "internal: enumeration count disagrees with the Stirling recurrence"});
    }
    check.pass = check.failures.empty() && !check.inconclusive;
    return check;
}

// ---- characterization -------------------------------------------------------------------

CharacterizationCheck verify_characterization(const Tournament& t, const SweepOptions& opts) {
    CharacterizationCheck check;
    int m = t.arc_count();
    int k = h_value(t) - 1;
    Delta3 d3 = delta3_minus(t);

    std::uint64_t expected = stirling_second(m, k);
    if (expected > opts.max_colorings) {
        check.inconclusive = true;
        return check;
    }

    SweepContext ctx{t, k, SweepKind::characterization, d3.witnesses, opts};
    TaskResult total = sweep_colorings(ctx);

    check.checked = total.checked;
    check.failing = total.failing;
    check.matched = total.matched;
    check.inconclusive = total.budget_hit;
    check.failures = std::move(total.failures);
    for (std::vector<int>& colors : total.failing_colorings)
        check.failing_colorings.push_back(ArcColoring{std::move(colors), k});

    if (total.checked != expected)
        check.failures.push_back(
            {k, {}, "internal: enumeration count disagrees with the Stirling recurrence"});
    if (!check.inconclusive && check.failing == 0)
        check.failures.push_back(
            {k, {}, "falsification: no failing (h-1)-coloring exists, contradicting the lower bound"});
    check.pass = check.failures.empty() && !check.inconclusive;
    return check;
}

// ---- lemma bounds --------------------------------------------------------------------------

LemmaCheck verify_lemma_bounds(const Tournament& t, const ArcColoring& g) {
    int n = t.order();
    ColorStats stats = color_stats(t, g);
    if (g.k != h_value(t) - 1)
        throw std::invalid_argument("verify_lemma_bounds: coloring must use exactly h-1 colors");
    if (has_rainbow_arborescence(t, g).found())
        throw std::invalid_argument(
            "verify_lemma_bounds: coloring admits a rainbow arborescence");

    LemmaCheck check;
    std::uint64_t type1_count = 0;
    for (Vertex x = 0; x < n; ++x) {
        VertexType type = classify_vertex(t, g, stats, x);
        int cx = stats.c(x);
        if (type == VertexType::type1) {
            ++type1_count;
            ++check.type1_vertices;
            if (cx < n - 4)
                ++check.type1_violations;
        } else if (type == VertexType::type2) {
            ++check.type2_vertices;
            if (!(t.out_degree(x) >= cx && cx == n - 4))
                ++check.type2_violations;
        }
    }
    check.count_ok = type1_count <= static_cast<std::uint64_t>(n - 2);
    return check;
}

// ---- per-tournament driver -------------------------------------------------------------------

namespace {

void apply_lemma_suite(const Tournament& t, VerificationReport& report,
                       const std::vector<ArcColoring>& failing) {
    for (const ArcColoring& g : failing) {
        ++report.lemma_stats.failing_colorings;
        LemmaCheck check = verify_lemma_bounds(t, g);
        report.lemma_stats.type1_checked += check.type1_vertices;
        report.lemma_stats.type1_violations += check.type1_violations;
        report.lemma_stats.type2_checked += check.type2_vertices;
        report.lemma_stats.type2_violations += check.type2_violations;
        report.lemma_stats.count_checked += 1;
        if (!check.count_ok)
            report.lemma_stats.count_violations += 1;
        if (!check.pass())
            report.failures.push_back(
                {g.k, g.colors, "falsification: lemma bound violated on a failing coloring"});
    }
}

}  // namespace

VerificationReport verify_tournament(const Tournament& t, const SweepOptions& opts) {
    auto started = std::chrono::steady_clock::now();

    VerificationReport report;
    report.tournament_id = tournament_digest(t);
    report.n = t.order();
    report.m = t.arc_count();
    report.delta3 = delta3_value(t);
    report.h = h_value(t);
    report.mode = opts.mode;
    if (opts.mode == SweepMode::sampled)
        report.seed = opts.seed;

    LowerBoundCheck lower = verify_lower_bound(t, opts);
    if (!lower.pass) {
        if (lower.outcome.status == SearchStatus::budget_exceeded)
            report.inconclusive = true;
        else
            report.failures.push_back({lower.witness.k, lower.witness.colors,
                                       "falsification: the extremal coloring admits a rainbow "
                                       "arborescence"});
    }

    UpperBoundCheck upper = verify_upper_bound(t, opts);
    report.inconclusive |= upper.inconclusive;
    for (auto& [k, count] : upper.checked)
        report.colorings_checked[k] += count;
    std::move(upper.failures.begin(), upper.failures.end(),
              std::back_inserter(report.failures));

    if (opts.mode == SweepMode::exhaustive) {
        CharacterizationCheck character = verify_characterization(t, opts);
        report.inconclusive |= character.inconclusive;
        if (character.checked > 0)
            report.colorings_checked[report.h - 1] += character.checked;
        std::move(character.failures.begin(), character.failures.end(),
                  std::back_inserter(report.failures));
        apply_lemma_suite(t, report, character.failing_colorings);
    }

    if (opts.quarantine_dir && !report.failures.empty()) {
        std::filesystem::create_directories(*opts.quarantine_dir);
        for (std::size_t i = 0; i < report.failures.size(); ++i)
            if (!report.failures[i].colors.empty())
                persist_failure(*opts.quarantine_dir, t, report.failures[i], i);
    }

    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return report;
}

std::vector<VerificationReport> run_sweep(
    int n_lo, int n_hi, const SweepOptions& opts,
    const std::function<void(const VerificationReport&)>& on_report) {
    if (n_lo < 3 || n_hi < n_lo)
        throw std::invalid_argument("run_sweep: need 3 <= n_lo <= n_hi");

    std::vector<VerificationReport> reports;
    auto emit = [&](VerificationReport&& r) {
        if (on_report)
            on_report(r);
        reports.push_back(std::move(r));
    };

    for (int n = n_lo; n <= n_hi; ++n) {
        if (opts.mode == SweepMode::exhaustive) {
            enumerate_tournaments(
                n, true, [&](const Tournament& t) { emit(verify_tournament(t, opts)); },
                opts.limits);
        } else {
            for (int i = 0; i < opts.tournaments_per_order; ++i) {
                std::uint64_t tseed =
                    derive_seed(opts.seed, (static_cast<std::uint64_t>(n) << 32) |
                                               static_cast<std::uint64_t>(i));
                Tournament t = random_tournament(n, tseed);
                SweepOptions per = opts;
                per.seed = tseed;
                emit(verify_tournament(t, per));
            }
        }
    }
    return reports;
}

// ---- report emission ----------------------------------------------------------------------------

nlohmann::ordered_json report_to_json(const VerificationReport& r, bool include_timing) {
    nlohmann::ordered_json j;
    j["tournament_id"] = r.tournament_id;
    j["n"] = r.n;
    j["m"] = r.m;
    j["delta3"] = r.delta3;
    j["h"] = r.h;
    j["mode"] = r.mode == SweepMode::exhaustive ? "exhaustive" : "sampled";
    nlohmann::ordered_json checked = nlohmann::ordered_json::object();
    for (auto& [k, count] : r.colorings_checked)
        checked[std::to_string(k)] = count;
    j["colorings_checked"] = std::move(checked);
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const FailureRecord& f : r.failures)
        failures.push_back({{"k", f.k}, {"coloring", f.colors}, {"reason", f.reason}});
    j["failures"] = std::move(failures);
    j["lemma_stats"] = {{"failing_colorings", r.lemma_stats.failing_colorings},
                        {"type1_checked", r.lemma_stats.type1_checked},
                        {"type1_violations", r.lemma_stats.type1_violations},
                        {"type2_checked", r.lemma_stats.type2_checked},
                        {"type2_violations", r.lemma_stats.type2_violations},
                        {"count_checked", r.lemma_stats.count_checked},
                        {"count_violations", r.lemma_stats.count_violations}};
    if (r.seed)
        j["seed"] = *r.seed;
    j["verdict"] = std::string(verdict_name(r.verdict()));
    if (include_timing)
        j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

std::string reports_to_csv(std::span<const VerificationReport> reports, bool include_timing) {
    std::string out = "n,digest,delta3,h,mode,checked,failures,elapsed_ms\n";
    for (const VerificationReport& r : reports) {
        std::uint64_t checked = 0;
        for (auto& [k, count] : r.colorings_checked)
            checked += count;
        out += std::to_string(r.n) + "," + r.tournament_id + "," +
               std::to_string(r.delta3) + "," + std::to_string(r.h) + "," +
               (r.mode == SweepMode::exhaustive ? "exhaustive" : "sampled") + "," +
               std::to_string(checked) + "," + std::to_string(r.failures.size()) + "," +
               (include_timing ? std::to_string(static_cast<std::uint64_t>(r.elapsed_ms)) : "0") +
               "\n";
    }
    return out;
}

void persist_failure(const std::filesystem::path& dir, const Tournament& t,
                     const FailureRecord& failure, std::size_t index) {
    std::string stem = tournament_digest(t) + "_k" + std::to_string(failure.k) + "_" +
                       std::to_string(index);
    for (char& c : stem)
        if (c == ':')
            c = '-';
    save_trn(t, dir / (stem + ".trn"));
    save_clr(ArcColoring{failure.colors, failure.k}, dir / (stem + ".clr"));
}

}  // namespace antiram
