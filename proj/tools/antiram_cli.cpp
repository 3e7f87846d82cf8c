// Command-line front end: generation, computation, search, verification,
// counting and benchmarking for rainbow spanning arborescences in
// arc-colored tournaments.
//
// Exit codes: 0 success / theorem consistent, 1 counterexample or
// falsification, 2 usage error, 3 inconclusive (budget exhausted).

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "antiram/arborescence.hpp"
#include "antiram/coloring.hpp"
#include "antiram/prng.hpp"
#include "antiram/tournament.hpp"
#include "antiram/verifier.hpp"

namespace {

using namespace antiram;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::uint64_t seed_or_random(std::optional<std::uint64_t> seed, const char* command) {
    if (seed)
        return *seed;
    std::random_device rd;
    std::uint64_t chosen = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    std::cerr << command << ": seed " << chosen << " (pass --seed to reproduce)\n";
    return chosen;
}

void write_text(const std::optional<std::string>& out_file, const std::string& text) {
    if (!out_file) {
        std::cout << text;
        return;
    }
    std::ofstream out(*out_file);
    if (!out)
        throw parse_error("cannot write " + *out_file);
    out << text;
}

nlohmann::ordered_json witness_json(const Tournament& t, const ArcColoring& g,
                                    const Arborescence& a) {
    nlohmann::ordered_json j;
    j["root"] = a.root;
    j["parents"] = a.parent;
    std::vector<int> colors_used;
    for (Vertex v = 0; v < t.order(); ++v) {
        if (v == a.root)
            continue;
        Vertex u = a.parent[v];
        colors_used.push_back(
            g.colors[u < v ? pair_index(t.order(), u, v) : pair_index(t.order(), v, u)]);
    }
    j["colors_used"] = std::move(colors_used);
    return j;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
    int n = 0;
    std::optional<std::uint64_t> seed;
    std::string kind = "random";
    std::optional<std::string> out;
};

int cmd_gen(const GenArgs& args) {
    Tournament t(1);
    if (args.kind == "random")
        t = random_tournament(args.n, seed_or_random(args.seed, "gen"));
    else if (args.kind == "transitive")
        t = transitive_tournament(args.n);
    else if (args.kind == "regular")
        t = rotational_tournament(args.n);
    else
        throw std::invalid_argument("gen: unknown kind '" + args.kind + "'");
    write_text(args.out, write_trn(t));
    return kExitOk;
}

// ---- compute ----------------------------------------------------------------

struct ComputeArgs {
    std::string input;
    std::string format = "plain";
};

int cmd_compute(const ComputeArgs& args) {
    Tournament t = load_trn(args.input);
    Delta3 d3 = delta3_minus(t);
    int h = h_value(t);
    std::vector<int> degs = t.in_degrees();

    if (args.format == "json") {
        nlohmann::ordered_json j;
        j["n"] = t.order();
        j["m"] = t.arc_count();
        j["in_degrees"] = degs;
        j["delta3"] = d3.value;
        nlohmann::ordered_json triples = nlohmann::ordered_json::array();
        for (const Triple& tr : d3.witnesses)
            triples.push_back({tr.vertices[0], tr.vertices[1], tr.vertices[2]});
        j["min_triples"] = std::move(triples);
        j["h"] = h;
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }

    std::cout << "n: " << t.order() << '\n' << "m: " << t.arc_count() << '\n';
    std::cout << "in_degrees:";
    for (int d : degs)
        std::cout << ' ' << d;
    std::cout << '\n' << "delta3: " << d3.value << '\n';
    std::cout << "min_triples:";
    for (const Triple& tr : d3.witnesses)
        std::cout << " (" << tr.vertices[0] << ',' << tr.vertices[1] << ',' << tr.vertices[2]
                  << ')';
    std::cout << '\n' << "h: " << h << '\n';
    return kExitOk;
}

// ---- extremal ----------------------------------------------------------------

struct ExtremalArgs {
    std::string input;
    std::vector<int> triple;
    std::optional<std::string> out;
};

int cmd_extremal(const ExtremalArgs& args) {
    Tournament t = load_trn(args.input);
    Delta3 d3 = delta3_minus(t);
    std::array<Vertex, 3> triple{};
    if (args.triple.empty()) {
        triple = d3.witnesses.front().vertices;
    } else {
        if (args.triple.size() != 3)
            throw std::invalid_argument("extremal: --triple needs exactly three vertices");
        std::copy(args.triple.begin(), args.triple.end(), triple.begin());
    }

    ArcColoring g = extremal_coloring(t, triple);
    int h = h_value(t);
    std::cerr << "colors: " << g.k << " (h - 1 = " << h - 1 << ")\n";
    if (g.k != h - 1)
        std::cerr << "warning: triple (" << triple[0] << ',' << triple[1] << ',' << triple[2]
                  << ") is not delta3-minimizing; coloring uses " << g.k
                  << " colors instead of h - 1 = " << h - 1 << "\n";
    write_text(args.out, write_clr(g));
    return kExitOk;
}

// ---- search -------------------------------------------------------------------

struct SearchArgs {
    std::string tournament_file;
    std::string coloring_file;
    std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
};

int cmd_search(const SearchArgs& args) {
    Tournament t = load_trn(args.tournament_file);
    ArcColoring g = load_clr(args.coloring_file);
    if (static_cast<int>(g.colors.size()) != t.arc_count())
        throw std::invalid_argument("search: coloring has " + std::to_string(g.colors.size()) +
                                    " arcs but the tournament has " +
                                    std::to_string(t.arc_count()));

    SearchOutcome outcome = has_rainbow_arborescence(t, g, SearchOptions{args.budget});
    std::cerr << "nodes_expanded: " << outcome.nodes_expanded
              << " prunes: " << outcome.prunes << '\n';
    if (outcome.status == SearchStatus::budget_exceeded) {
        std::cout << "inconclusive\n";
        return kExitInconclusive;
    }
    if (outcome.status == SearchStatus::not_found) {
        std::cout << "none\n";
        return kExitCounterexample;
    }
    std::cout << witness_json(t, g, *outcome.witness).dump(2) << '\n';
    return kExitOk;
}

// ---- verify --------------------------------------------------------------------

struct VerifyArgs {
    std::string n_range;
    std::string mode = "exhaustive";
    std::uint64_t samples = 100000;
    int tournaments = 10;
    std::optional<std::uint64_t> seed;
    int jobs = 0;
    std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_colorings = 100'000'000;
    std::optional<std::string> out_dir;
};

std::pair<int, int> parse_n_range(const std::string& text) {
    auto dots = text.find("..");
    std::size_t pos = 0;
    int lo = 0, hi = 0;
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(text, &pos);
            if (pos != text.size())
                throw std::invalid_argument("");
        } else {
            lo = std::stoi(text.substr(0, dots), &pos);
            if (pos != dots)
                throw std::invalid_argument("");
            std::string rest = text.substr(dots + 2);
            hi = std::stoi(rest, &pos);
            if (pos != rest.size())
                throw std::invalid_argument("");
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("verify: --n-range expects N or LO..HI");
    }
    return {lo, hi};
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ':')
            c = '-';
    return s;
}

int cmd_verify(const VerifyArgs& args) {
    auto [n_lo, n_hi] = parse_n_range(args.n_range);

    SweepOptions opts;
    if (args.mode == "exhaustive")
        opts.mode = SweepMode::exhaustive;
    else if (args.mode == "sampled")
        opts.mode = SweepMode::sampled;
    else
        throw std::invalid_argument("verify: --mode must be exhaustive or sampled");
    opts.samples = args.samples;
    opts.tournaments_per_order = args.tournaments;
    opts.jobs = args.jobs > 0 ? args.jobs
                              : std::max(1u, std::thread::hardware_concurrency());
    opts.node_budget = args.budget;
    opts.max_colorings = args.max_colorings;
    if (opts.mode == SweepMode::sampled)
        opts.seed = seed_or_random(args.seed, "verify");
    else if (args.seed)
        opts.seed = *args.seed;

    std::optional<std::filesystem::path> out_dir;
    if (args.out_dir) {
        out_dir = std::filesystem::path(*args.out_dir);
        std::error_code ec;
        std::filesystem::create_directories(*out_dir, ec);
        if (ec || !std::filesystem::is_directory(*out_dir))
            throw std::invalid_argument("verify: cannot use output directory " + *args.out_dir);
        opts.quarantine_dir = *out_dir / "quarantine";
    }

    std::size_t report_index = 0;
    auto on_report = [&](const VerificationReport& r) {
        std::uint64_t checked = 0;
        for (auto& [k, count] : r.colorings_checked)
            checked += count;
        std::cout << "n=" << r.n << " id=" << r.tournament_id << " delta3=" << r.delta3
                  << " h=" << r.h << " mode="
                  << (r.mode == SweepMode::exhaustive ? "exhaustive" : "sampled")
                  << " checked=" << checked << " failures=" << r.failures.size()
                  << " verdict=" << verdict_name(r.verdict()) << " elapsed_ms="
                  << static_cast<std::uint64_t>(r.elapsed_ms) << '\n';
        if (out_dir) {
            std::string name =
                "report_" + std::to_string(report_index++) + "_" + sanitize(r.tournament_id) +
                ".json";
            std::ofstream out(*out_dir / name);
            out << report_to_json(r).dump(2) << '\n';
        }
    };

    std::vector<VerificationReport> reports = run_sweep(n_lo, n_hi, opts, on_report);

    if (out_dir) {
        std::ofstream csv(*out_dir / "summary.csv");
        csv << reports_to_csv(reports);
    }

    bool falsified = false, inconclusive = false;
    for (const VerificationReport& r : reports) {
        falsified |= r.verdict() == Verdict::falsified;
        inconclusive |= r.verdict() == Verdict::inconclusive;
    }
    std::cout << "sweep: " << reports.size() << " tournaments, verdict "
              << (falsified ? "falsified" : inconclusive ? "inconclusive" : "consistent")
              << '\n';
    if (falsified)
        return kExitCounterexample;
    if (inconclusive)
        return kExitInconclusive;
    return kExitOk;
}

// ---- count ---------------------------------------------------------------------

struct CountArgs {
    std::string input;
    std::optional<int> root;
    std::string format = "plain";
};

int cmd_count(const CountArgs& args) {
    Tournament t = load_trn(args.input);
    std::vector<std::int64_t> counts;
    if (args.root) {
        counts.push_back(count_arborescences(t, *args.root));
    } else {
        for (Vertex r = 0; r < t.order(); ++r)
            counts.push_back(count_arborescences(t, r));
    }

    if (args.format == "json") {
        nlohmann::ordered_json j;
        if (args.root)
            j["root"] = *args.root;
        j["counts"] = counts;
        std::cout << j.dump(2) << '\n';
        return kExitOk;
    }
    for (std::size_t i = 0; i < counts.size(); ++i)
        std::cout << (i > 0 ? "," : "") << counts[i];
    std::cout << '\n';
    return kExitOk;
}

// ---- bench ---------------------------------------------------------------------

struct BenchArgs {
    int n = 0;
    int trials = 100;
    std::optional<std::uint64_t> seed;
    std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
};

int cmd_bench(const BenchArgs& args) {
    if (args.n < 3)
        throw std::invalid_argument("bench: need n >= 3 (h is defined for order >= 3)");
    std::uint64_t seed = seed_or_random(args.seed, "bench");

    std::cout << "trial,n,seed,k,status,nodes_expanded,prunes,elapsed_us\n";
    for (int trial = 0; trial < args.trials; ++trial) {
        std::uint64_t tseed = derive_seed(seed, 2 * static_cast<std::uint64_t>(trial));
        std::uint64_t cseed = derive_seed(seed, 2 * static_cast<std::uint64_t>(trial) + 1);
        Tournament t = random_tournament(args.n, tseed);
        int h = h_value(t);
        ArcColoring g = random_surjective_coloring(t.arc_count(), h, cseed);

        RainbowSearcher searcher(t, SearchOptions{args.budget});
        auto started = std::chrono::steady_clock::now();
        SearchOutcome outcome = searcher.run(g);
        auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();

        const char* status = outcome.status == SearchStatus::found        ? "found"
                             : outcome.status == SearchStatus::not_found  ? "none"
                                                                          : "budget";
        std::cout << trial << ',' << args.n << ',' << tseed << ',' << h << ',' << status << ','
                  << outcome.nodes_expanded << ',' << outcome.prunes << ',' << micros << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anti-Ramsey toolkit: rainbow spanning arborescences in tournaments"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a tournament (trn to stdout or --out)");
    gen->add_option("--n", gen_args.n, "vertex count")->required()->check(CLI::Range(1, 100000));
    gen->add_option("--seed", gen_args.seed, "PRNG seed (random kind)");
    gen->add_option("--kind", gen_args.kind, "random | transitive | regular");
    gen->add_option("--out", gen_args.out, "output file");

    ComputeArgs compute_args;
    auto* compute =
        app.add_subcommand("compute", "in-degrees, delta3, minimizing triples and h(T)");
    compute->add_option("input", compute_args.input, "trn file")->required();
    compute->add_option("--format", compute_args.format, "plain | json");

    ExtremalArgs extremal_args;
    auto* extremal =
        app.add_subcommand("extremal", "write the extremal (h-1)-coloring of a tournament");
    extremal->add_option("input", extremal_args.input, "trn file")->required();
    extremal->add_option("--triple", extremal_args.triple, "three vertices (default: first minimizing triple)")
        ->delimiter(',')
        ->expected(3);
    extremal->add_option("--out", extremal_args.out, "output clr file");

    SearchArgs search_args;
    auto* search = app.add_subcommand(
        "search", "decide rainbow-arborescence existence; witness JSON or 'none'");
    search->add_option("tournament", search_args.tournament_file, "trn file")->required();
    search->add_option("coloring", search_args.coloring_file, "clr file")->required();
    search->add_option("--budget", search_args.budget, "node-expansion budget");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "machine-verify h(T) over a range of orders");
    verify->add_option("--n-range", verify_args.n_range, "N or LO..HI")->required();
    verify->add_option("--mode", verify_args.mode, "exhaustive | sampled");
    verify->add_option("--samples", verify_args.samples, "sampled colorings per tournament");
    verify->add_option("--tournaments", verify_args.tournaments,
                       "random tournaments per order (sampled mode)");
    verify->add_option("--seed", verify_args.seed, "seed for sampled mode");
    verify->add_option("--jobs", verify_args.jobs, "worker threads (default: hardware)");
    verify->add_option("--budget", verify_args.budget, "per-search node budget");
    verify->add_option("--max-colorings", verify_args.max_colorings,
                       "exhaustive cap per (tournament, k)");
    verify->add_option("--out", verify_args.out_dir, "report directory (JSON + summary.csv)");

    CountArgs count_args;
    auto* count = app.add_subcommand("count", "exact spanning-arborescence counts per root");
    count->add_option("input", count_args.input, "trn file")->required();
    count->add_option("--root", count_args.root, "single root (default: all)");
    count->add_option("--format", count_args.format, "plain | json");

    BenchArgs bench_args;
    auto* bench =
        app.add_subcommand("bench", "time the search on random h-colorings (CSV to stdout)");
    bench->add_option("--n", bench_args.n, "vertex count")->required();
    bench->add_option("--trials", bench_args.trials, "number of trials");
    bench->add_option("--seed", bench_args.seed, "PRNG seed");
    bench->add_option("--budget", bench_args.budget, "node-expansion budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_args);
        if (compute->parsed())
            return cmd_compute(compute_args);
        if (extremal->parsed())
            return cmd_extremal(extremal_args);
        if (search->parsed())
            return cmd_search(search_args);
        if (verify->parsed())
            return cmd_verify(verify_args);
        if (count->parsed())
            return cmd_count(count_args);
        if (bench->parsed())
            return cmd_bench(bench_args);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
