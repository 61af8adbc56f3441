#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpindex/fingerprint_index.hpp"
#include "fpindex/oracle.hpp"
#include "fpindex/participation_tree.hpp"
#include "fpindex/serialize.hpp"
#include "fpindex/suffix_tree.hpp"

namespace {

using namespace fpindex;

constexpr std::uint64_t kDefaultSeed = 20260819;

// Exit codes: 0 success / positive answer, 1 negative answer, 2 any error.
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
    if (seed_opt->count() > 0) return flag_value;
    if (const char* env = std::getenv("FPINDEX_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw Error("FPINDEX_SEED is not an unsigned integer: " + std::string(env));
        }
    }
    return kDefaultSeed;
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

BuildMode mode_of(const std::string& name) {
    if (name == "exact") return BuildMode::Exact;
    if (name == "randomized") return BuildMode::Randomized;
    if (name == "mc") return BuildMode::MonteCarlo;
    throw Error("unknown builder " + name);
}

// Comma-separated single characters ("a,c") -> query string ("ac").
std::string parse_set(const std::string& spec) {
    std::string out;
    std::size_t at = 0;
    while (at <= spec.size()) {
        std::size_t comma = spec.find(',', at);
        std::string item = spec.substr(at, comma == std::string::npos ? comma : comma - at);
        if (item.size() > 1)
            throw Error("set items must be single characters, got \"" + item + "\"");
        out += item;
        if (comma == std::string::npos) break;
        at = comma + 1;
    }
    return out;
}

struct BuildFlags {
    std::string input;
    std::string builder = "exact";
    std::uint64_t seed = kDefaultSeed;
    std::uint32_t mc_confidence = 2;
    bool names_only = false;
};

FingerprintIndex build_index(const BuildFlags& flags, const CLI::Option* seed_opt,
                             std::uint64_t* seed_out = nullptr) {
    std::string raw = read_input(flags.input);
    auto [s, a] = normalize(raw);
    std::uint64_t seed = resolve_seed(seed_opt, flags.seed);
    if (seed_out) *seed_out = seed;
    std::mt19937_64 rng(seed);
    if (flags.names_only && flags.builder != "mc")
        throw Error("--names-only applies to the mc builder only");
    return FingerprintIndex::build(s, a, mode_of(flags.builder), rng, flags.mc_confidence,
                                   !flags.names_only);
}

int run(int argc, char** argv) {
    CLI::App app{
        "Text fingerprint index: finds which character sets occur as the\n"
        "distinct-character set of a substring, and where"};
    app.require_subcommand(1);

    // --- build ---------------------------------------------------------
    BuildFlags build_flags;
    std::string out_path;
    CLI::App* build = app.add_subcommand("build", "Build an index file from a text file");
    build->add_option("input", build_flags.input, "Input text file ('-' for standard input)")
        ->required();
    build->add_option("--out", out_path, "Output index path")->required();
    build->add_option("--builder", build_flags.builder, "exact | randomized | mc")
        ->check(CLI::IsMember({"exact", "randomized", "mc"}));
    CLI::Option* build_seed = build->add_option("--seed", build_flags.seed,
                                                "Random seed (default FPINDEX_SEED or fixed)");
    build->add_option("--mc-confidence", build_flags.mc_confidence,
                      "mc builder: error probability at most n^-confidence")
        ->check(CLI::Range(1u, 8u));
    build->add_flag("--names-only", build_flags.names_only,
                    "mc builder: keep membership answers only, drop location lists");

    // --- exists --------------------------------------------------------
    std::string index_path, set_spec;
    CLI::App* exists = app.add_subcommand("exists", "Test whether a character set occurs");
    exists->add_option("index", index_path, "Index file built by 'build'")->required();
    exists->add_option("--set", set_spec, "Comma-separated characters, e.g. a,c")->required();

    // --- report --------------------------------------------------------
    bool raw_coords = false;
    CLI::App* report = app.add_subcommand("report", "List all maximal locations of a set");
    report->add_option("index", index_path, "Index file built by 'build'")->required();
    report->add_option("--set", set_spec, "Comma-separated characters, e.g. a,c")->required();
    report->add_flag("--raw-coords", raw_coords,
                     "Coordinates in the raw input instead of the run-collapsed text");

    // --- stats ---------------------------------------------------------
    BuildFlags stats_flags;
    bool verify = false;
    CLI::App* stats = app.add_subcommand("stats", "Build and print index statistics as JSON");
    stats->add_option("input", stats_flags.input, "Input text file ('-' for standard input)")
        ->required();
    stats->add_option("--builder", stats_flags.builder, "exact | randomized | mc")
        ->check(CLI::IsMember({"exact", "randomized", "mc"}));
    CLI::Option* stats_seed = stats->add_option("--seed", stats_flags.seed,
                                                "Random seed (default FPINDEX_SEED or fixed)");
    stats->add_flag("--verify", verify,
                    "Cross-check counts against the brute-force reference (small inputs)");

    // --- gen-wk --------------------------------------------------------
    unsigned wk_k = 1;
    CLI::App* genwk = app.add_subcommand("gen-wk", "Print the k-th scaling-family word");
    genwk->add_option("k", wk_k, "Family index, 1..26")->required()->check(CLI::Range(1u, 26u));

    // --- dump ----------------------------------------------------------
    CLI::App* dump = app.add_subcommand("dump", "Print an index file as JSON");
    dump->add_option("index", index_path, "Index file built by 'build'")->required();

    // --- dot -----------------------------------------------------------
    std::string dot_input;
    CLI::App* dot = app.add_subcommand(
        "dot", "Print the participation tree of a text in graphviz format");
    dot->add_option("input", dot_input, "Input text file ('-' for standard input)")->required();

    CLI11_PARSE(app, argc, argv);

    if (build->parsed()) {
        FingerprintIndex idx = build_index(build_flags, build_seed);
        save_index_file(idx, out_path);
        return kExitTrue;
    }

    if (exists->parsed()) {
        FingerprintIndex idx = load_index_file(index_path);
        bool has = idx.exists(parse_set(set_spec));
        std::cout << (has ? "true" : "false") << "\n";
        return has ? kExitTrue : kExitFalse;
    }

    if (report->parsed()) {
        FingerprintIndex idx = load_index_file(index_path);
        std::string query = parse_set(set_spec);
        if (raw_coords) {
            for (auto [i, j] : idx.report_raw(query)) std::cout << i << "\t" << j << "\n";
        } else {
            for (MaximalLocation loc : idx.report(query))
                std::cout << loc.i << "\t" << loc.j << "\n";
        }
        return kExitTrue;
    }

    if (stats->parsed()) {
        std::uint64_t seed = kDefaultSeed;
        auto start = std::chrono::steady_clock::now();
        FingerprintIndex idx = build_index(stats_flags, stats_seed, &seed);
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

        nlohmann::json j;
        j["n"] = idx.sequence().n();
        j["raw_length"] = idx.sequence().raw_length();
        j["sigma"] = idx.sequence().sigma();
        j["fingerprints"] = idx.fingerprint_count();
        j["maximal_locations"] = idx.location_count();
        j["builder"] = stats_flags.builder;
        j["build_seconds"] = elapsed.count();
        j["seed"] = seed;
        if (verify) {
            GroundTruth truth = oracle_all(idx.sequence());
            if (truth.fingerprint_count() != idx.fingerprint_count())
                throw Error("fingerprint count disagrees with the brute-force reference");
            if (truth.location_count() != idx.location_count())
                throw Error("location count disagrees with the brute-force reference");
            j["copy_classes"] = truth.class_count();
        }
        std::cout << j.dump() << "\n";
        return kExitTrue;
    }

    if (genwk->parsed()) {
        std::cout << gen_wk(wk_k);
        return kExitTrue;
    }

    if (dump->parsed()) {
        FingerprintIndex idx = load_index_file(index_path);
        std::cout << index_to_json(idx) << "\n";
        return kExitTrue;
    }

    if (dot->parsed()) {
        auto [s, a] = normalize(read_input(dot_input));
        SuffixTree st(s);
        ParticipationTree pt(s, st);
        std::cout << pt.to_dot(s, a);
        return kExitTrue;
    }

    return kExitError;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UnknownFingerprint& e) {
        std::cerr << "unknown fingerprint: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
