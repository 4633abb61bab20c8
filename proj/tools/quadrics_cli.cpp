#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "quadrics/quadrics.hpp"

namespace {

using namespace quadrics;

constexpr int kExitMismatch = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotArtinian = 3;
constexpr int kExitInternal = 4;

struct CommonFlags {
    bool json = false;
    bool certified = false;
    std::uint64_t seed = Options{}.seed;
    int max_power = 0;
    std::string out_path;
};

// Screening is the default only for large rings; --certified always wins.
Options resolve_options(const IdealFile& file, const CommonFlags& flags) {
    Options opt;
    opt.seed = flags.seed;
    opt.max_power = flags.max_power;
    opt = file.options(opt);
    if (flags.certified)
        opt.mode = Mode::certified;
    else if (file.rational_field && file.nvars() >= 5)
        opt.mode = Mode::screened;
    return opt;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

int cmd_analyze(const std::string& path, const CommonFlags& flags) {
    IdealFile file = load_ideal_file(path);
    Options opt = resolve_options(file, flags);
    IdealPtr I = file.ideal();
    InvariantReport rep;
    try {
        rep = run_invariants(I, opt);
    } catch (const NotArtinian& e) {
        json j = partial_report_json(file, opt, e.what());
        emit(flags.json ? j.dump(2) + "\n"
                        : "ideal " + file.name + ": not Artinian (" +
                              std::string(e.what()) + ")\n",
             flags.out_path);
        return kExitNotArtinian;
    }
    emit(flags.json ? report_json(file, rep, opt).dump(2) + "\n"
                    : report_text(file, rep, opt),
         flags.out_path);
    return 0;
}

int cmd_classify(const std::string& path, const CommonFlags& flags) {
    IdealFile file = load_ideal_file(path);
    Options opt = resolve_options(file, flags);
    ClassificationResult res = classify(file.ideal(), opt);
    emit(flags.json ? classification_json(file, res, opt).dump(2) + "\n"
                    : classification_text(file, res, opt),
         flags.out_path);
    return 0;
}

// ---------------------------------------------------------------------
// verify-corpus

struct CorpusEntry {
    std::string path;
    IdealFile file;
};

struct CorpusResult {
    std::string name;
    std::string group;
    bool skipped = false;
    bool internal_error = false;
    std::vector<std::string> mismatches;  // "key: expected X, computed Y"
    std::string note;
};

// Expectation keys priced by what they force the pipeline to compute.
Stages stages_for(const IdealFile& file) {
    auto any = [&](std::initializer_list<const char*> keys) {
        for (const char* k : keys)
            if (file.expectations.count(k)) return true;
        return false;
    };
    Stages s;
    s.square = any({"syzygetic", "nu_square", "square_is_m4"});
    s.powers = any({"e0", "e1", "s0", "fiber", "reduction_r", "huckaba_sum",
                    "huckaba_equality"});
    return s;
}

bool wants_classification(const IdealFile& file) {
    for (const char* k :
         {"signature", "plus_binomials", "decomposition_r", "core_signature",
          "dual_regenerates", "orbit", "orbit_c", "normalized_over_Q", "u",
          "v", "sally_identity"})
        if (file.expectations.count(k)) return true;
    return false;
}

CorpusResult verify_entry(const CorpusEntry& entry, const CommonFlags& flags) {
    CorpusResult res;
    res.name = entry.file.name;
    res.group = entry.file.group.empty() ? "(ungrouped)" : entry.file.group;
    try {
        Options opt = resolve_options(entry.file, flags);
        IdealPtr I = entry.file.ideal();
        InvariantReport rep = run_invariants(I, opt, stages_for(entry.file));
        std::optional<ClassificationResult> cls;
        if (wants_classification(entry.file)) {
            try {
                cls = classify(I, opt);
            } catch (const PreconditionError&) {
                // fixture outside the classification scope: invariants only
            }
        }
        auto values = expectation_values(rep, cls ? &*cls : nullptr);
        for (const auto& [key, want] : entry.file.expectations) {
            auto it = values.find(key);
            if (it == values.end())
                res.mismatches.push_back(key + ": expected " + want +
                                         ", but no such invariant was computed");
            else if (it->second != want)
                res.mismatches.push_back(key + ": expected " + want +
                                         ", computed " + it->second);
        }
        if (entry.file.expectations.empty())
            res.note = "no expectations";
    } catch (const InternalContradiction& e) {
        res.internal_error = true;
        res.mismatches.push_back(std::string("internal contradiction: ") +
                                 e.what());
    } catch (const std::exception& e) {
        res.mismatches.push_back(std::string("error: ") + e.what());
    }
    return res;
}

// Mathematical claims checked per fixture group, for the summary matrix.
const std::map<std::string, std::string>& group_claims() {
    static const std::map<std::string, std::string> claims = {
        {"five-gorenstein",
         "Gorenstein 5-quadrics (d=3): syzygetic, nu(I^2)=15, I^2=m^4, "
         "e1=4, reduction number 2, signature classes {0,3} and {1,2}"},
        {"five-orbit-A",
         "non-Gorenstein 5-quadrics, monomial orbit: type 2, not syzygetic, "
         "nu(I^2)=13, e1=4, Huckaba equality with reduction number 2"},
        {"five-orbit-B",
         "non-Gorenstein 5-quadrics, pencil orbit (1,c): type 2, not "
         "syzygetic, e1=4, Huckaba equality with reduction number 2"},
        {"four-quadrics",
         "4 quadrics (d=3): colength 6, never syzygetic, reduction number "
         "1 or 3, and e1-e0+colength = u+v on the reduction-3 branch"},
        {"normal-form",
         "Gorenstein submaximal: nonsingular bilinear form, normal form "
         "(x_i*x_j, x_1^2 - eps*x_k^2), I^2=m^4, e0=2^d, e1=(d-1)*2^(d-2)"},
        {"dual-basis",
         "dual basis y_j of the bilinear form regenerates the ideal as "
         "(x_i*y_j, i!=j; x_1*y_1 - x_k*y_k)"},
        {"decomposition",
         "type decomposition I=(x_1..x_r)m + I' with Gorenstein core and "
         "type r+1"},
        {"power-growth",
         "powers of the maximal ideal: lengths, multiplicities, fiber"},
    };
    return claims;
}

int cmd_verify_corpus(const std::string& dir, const CommonFlags& flags,
                      int jobs, int d_max) {
    namespace fs = std::filesystem;
    std::vector<std::string> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".ideal")
            paths.push_back(e.path().string());
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        std::cerr << "no .ideal files in '" << dir << "'\n";
        return kExitParse;
    }

    std::vector<CorpusEntry> entries;
    for (const auto& p : paths) {
        try {
            entries.push_back({p, load_ideal_file(p)});
        } catch (const std::exception& e) {
            std::cerr << p << ": " << e.what() << "\n";
            return kExitParse;
        }
    }

    std::vector<CorpusResult> results(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= entries.size()) return;
            if (entries[i].file.nvars() > d_max) {
                results[i].name = entries[i].file.name;
                results[i].group = entries[i].file.group.empty()
                                       ? "(ungrouped)"
                                       : entries[i].file.group;
                results[i].skipped = true;
            } else {
                results[i] = verify_entry(entries[i], flags);
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    int passed = 0, failed = 0, skipped = 0;
    bool internal = false;
    std::map<std::string, std::pair<int, int>> by_group;  // pass, fail
    for (const auto& r : results) {
        if (r.skipped) {
            ++skipped;
            std::cout << "skip  " << r.name << " (above --d-max)\n";
            continue;
        }
        if (r.mismatches.empty()) {
            ++passed;
            ++by_group[r.group].first;
            std::cout << "pass  " << r.name
                      << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
        } else {
            ++failed;
            ++by_group[r.group].second;
            internal = internal || r.internal_error;
            std::cout << "FAIL  " << r.name << "\n";
            for (const auto& m : r.mismatches)
                std::cout << "      " << m << "\n";
        }
    }

    std::cout << "\nclaim coverage:\n";
    for (const auto& [group, counts] : by_group) {
        auto it = group_claims().find(group);
        std::cout << "  [" << (counts.second == 0 ? "ok" : "FAIL") << "] "
                  << group << ": " << counts.first << " pass, "
                  << counts.second << " fail\n";
        if (it != group_claims().end())
            std::cout << "        " << it->second << "\n";
    }
    std::cout << "\n" << passed << " passed, " << failed << " failed, "
              << skipped << " skipped\n";
    if (internal) return kExitInternal;
    return failed == 0 ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants and classification for ideals of quadrics"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string path, dir;
    int jobs = 1, d_max = 4;

    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_flag("--json", flags.json, "emit a JSON report");
        cmd->add_flag("--certified", flags.certified,
                      "force exact arithmetic (default for up to 4 variables)");
        cmd->add_option("--seed", flags.seed, "seed for randomized searches");
        cmd->add_option("--max-power", flags.max_power,
                        "power horizon for multiplicity computations");
        if (with_out)
            cmd->add_option("--out", flags.out_path, "write the report here");
    };

    auto* analyze = app.add_subcommand("analyze", "compute all invariants");
    analyze->add_option("file", path, "ideal file")->required();
    add_common(analyze, true);

    auto* classify_cmd =
        app.add_subcommand("classify", "orbit / normal-form classification");
    classify_cmd->add_option("file", path, "ideal file")->required();
    add_common(classify_cmd, true);

    auto* corpus = app.add_subcommand("verify-corpus",
                                      "check every fixture's expectations");
    corpus->add_option("dir", dir, "fixture directory")->required();
    corpus->add_option("--jobs", jobs, "parallel workers");
    corpus->add_option("--d-max", d_max, "skip fixtures in more variables");
    add_common(corpus, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) return cmd_analyze(path, flags);
        if (classify_cmd->parsed()) return cmd_classify(path, flags);
        return cmd_verify_corpus(dir, flags, jobs, d_max);
    } catch (const IdealFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NotArtinian& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNotArtinian;
    } catch (const InternalContradiction& e) {
        std::cerr << "internal contradiction: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}
