// biswarm: biclustering of gene-expression matrices by multi-objective
// binary PSO with three-phase node-deletion/addition refinement.
//
// Subcommands:
//   run            full optimization; writes biclusters.json, report.json, report.txt
//   refine         three-phase refinement of one bicluster (debugging aid)
//   profile-export TSV of sampled gene profiles from one bicluster, for plotting
//
// Exit codes: 0 ok, 1 usage, 2 parse/dimension/validation, 3 infeasible, 4 I/O.

#include "biswarm/bicluster.hpp"
#include "biswarm/errors.hpp"
#include "biswarm/expression_matrix.hpp"
#include "biswarm/local_search.hpp"
#include "biswarm/mopso.hpp"
#include "biswarm/report.hpp"
#include "biswarm/rng.hpp"
#include "biswarm/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitIo = 4;

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw biswarm::IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Artifacts are staged in a temp directory next to the target and renamed
// into place only after every file is written, so a failed run leaves no
// partial output_dir behind.
class StagedDir {
public:
    explicit StagedDir(fs::path target)
        : target_(std::move(target)), staging_(target_.string() + ".tmp") {
        std::error_code ec;
        fs::remove_all(staging_, ec);
        if (!fs::create_directories(staging_, ec) && ec) {
            throw biswarm::IoError("cannot create " + staging_.string() + ": " + ec.message());
        }
    }

    ~StagedDir() {
        if (!committed_) {
            std::error_code ec;
            fs::remove_all(staging_, ec);
        }
    }

    void write_file(const std::string& name, const std::string& content) {
        const fs::path path = staging_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << content) || !out.flush()) {
            throw biswarm::IoError("cannot write " + path.string());
        }
    }

    void commit() {
        std::error_code ec;
        fs::remove_all(target_, ec);
        fs::rename(staging_, target_, ec);
        if (ec) {
            throw biswarm::IoError("cannot move " + staging_.string() + " to " +
                                   target_.string() + ": " + ec.message());
        }
        committed_ = true;
    }

    const fs::path& staging() const { return staging_; }

private:
    fs::path target_;
    fs::path staging_;
    bool committed_ = false;
};

void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !(out << content) || !out.flush()) {
            throw biswarm::IoError("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw biswarm::IoError("cannot move " + tmp.string() + " to " + path.string() + ": " +
                               ec.message());
    }
}

// Flat key=value config file; unknown keys are rejected so typos surface.
// CLI flags override anything set here.
std::map<std::string, std::string> parse_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw biswarm::IoError("cannot open config " + path.string());
    }
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw biswarm::ConfigError("config line " + std::to_string(line_no) +
                                       ": expected key=value");
        }
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        values[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return values;
}

biswarm::Bicluster bicluster_from_json(const json& item, std::size_t n_genes,
                                       std::size_t n_conditions) {
    const auto genes = item.at("genes").get<std::vector<std::size_t>>();
    const auto conditions = item.at("conditions").get<std::vector<std::size_t>>();
    if (genes.empty() || conditions.empty()) {
        throw biswarm::DimensionError("bicluster JSON has an empty gene or condition list");
    }
    return biswarm::Bicluster::from_indices(n_genes, n_conditions, genes, conditions);
}

struct RunOptions {
    std::string input;
    std::string out_dir;
    std::string config_path;
    std::string missing_marker = "-1";
    std::size_t snapshot_every = 0;
    biswarm::PsoParams params;
};

int cmd_run(const RunOptions& opts) {
    const std::string raw = slurp(opts.input);
    std::istringstream stream(raw);
    const biswarm::ExpressionMatrix matrix =
        biswarm::ExpressionMatrix::load_tsv(stream, opts.missing_marker);
    opts.params.validate();

    StagedDir staged{fs::path(opts.out_dir)};
    biswarm::GenerationHook hook;
    if (opts.snapshot_every > 0) {
        hook = [&](const biswarm::GenerationView& view) {
            if (view.gen % opts.snapshot_every != 0) {
                return;
            }
            const json snapshot = biswarm::archive_to_json(matrix, view.archive);
            std::ostringstream name;
            name << "archive_gen_" << view.gen << ".json";
            std::ofstream out(staged.staging() / name.str(), std::ios::binary);
            out << snapshot.dump(2) << '\n';
        };
    }

    const biswarm::RunResult result = biswarm::run(matrix, opts.params, hook);

    const biswarm::RunReportData report =
        biswarm::build_report(matrix, result, opts.params, biswarm::fnv1a64_hex(raw));
    staged.write_file("biclusters.json", biswarm::archive_to_json(matrix, result.archive).dump(2) + "\n");
    staged.write_file("report.json", biswarm::report_to_json(report).dump(2) + "\n");
    staged.write_file("report.txt", biswarm::report_to_text(report));
    staged.commit();

    std::cout << "wrote " << opts.out_dir << ": " << result.archive.size() << " biclusters; "
              << report.coverage.gene_pct << "% of the genes, " << report.coverage.cond_pct
              << "% of the conditions, " << report.coverage.cell_pct << "% cells\n";
    return 0;
}

struct RefineOptions {
    std::string input;
    std::string bicluster_path;
    std::string out_dir;
    std::string missing_marker = "-1";
    double delta = 0.0;
    double alpha = 1.2;
    std::size_t max_iterations = 500;
};

int cmd_refine(const RefineOptions& opts) {
    const biswarm::ExpressionMatrix matrix =
        biswarm::ExpressionMatrix::load_tsv_file(opts.input, opts.missing_marker);

    json item = json::parse(slurp(opts.bicluster_path));
    if (item.is_array()) {
        if (item.empty()) {
            throw biswarm::DimensionError("bicluster JSON array is empty");
        }
        item = item.front();
    }
    const biswarm::Bicluster start =
        bicluster_from_json(item, matrix.n_genes(), matrix.n_conditions());

    const biswarm::LocalSearchConfig config{opts.delta, opts.alpha, opts.max_iterations,
                                            biswarm::LocalSearchPhases::Full3Phase};
    config.validate();

    const biswarm::SubmatrixStats before = biswarm::compute_stats(matrix, start);
    const biswarm::Bicluster refined = biswarm::local_search(matrix, start, config);
    const biswarm::SubmatrixStats after = biswarm::compute_stats(matrix, refined);

    std::cout << "input:   " << start.n_genes_selected() << " genes x "
              << start.n_conditions_selected() << " conditions, residue " << before.residue
              << ", row variance " << before.row_variance << '\n';
    std::cout << "refined: " << refined.n_genes_selected() << " genes x "
              << refined.n_conditions_selected() << " conditions, residue " << after.residue
              << ", row variance " << after.row_variance << '\n';

    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    write_file_atomic(fs::path(opts.out_dir) / "refined.json",
                      biswarm::bicluster_to_json(matrix, refined).dump(2) + "\n");
    return 0;
}

struct ProfileOptions {
    std::string input;
    std::string biclusters_path;
    std::string out_path;
    std::string missing_marker = "-1";
    std::size_t id = 0;
    std::size_t sample_n = 100;
    std::uint64_t seed = 0;
};

int cmd_profile_export(const ProfileOptions& opts) {
    const biswarm::ExpressionMatrix matrix =
        biswarm::ExpressionMatrix::load_tsv_file(opts.input, opts.missing_marker);
    const json archive = json::parse(slurp(opts.biclusters_path));
    if (!archive.is_array()) {
        throw biswarm::ParseError("biclusters file is not a JSON array");
    }

    const json* found = nullptr;
    for (const auto& item : archive) {
        if (item.value("id", std::size_t{0}) == opts.id) {
            found = &item;
            break;
        }
    }
    if (found == nullptr) {
        throw biswarm::DimensionError("no bicluster with id " + std::to_string(opts.id));
    }
    const biswarm::Bicluster bic =
        bicluster_from_json(*found, matrix.n_genes(), matrix.n_conditions());

    // Uniform sample without replacement, original order preserved when the
    // whole gene set fits.
    std::vector<std::size_t> genes = bic.gene_indices();
    if (opts.sample_n < genes.size()) {
        biswarm::Rng rng(opts.seed);
        std::vector<std::size_t> picked;
        picked.reserve(opts.sample_n);
        for (std::size_t k = 0; k < opts.sample_n; ++k) {
            const std::size_t j = k + rng.below(genes.size() - k);
            std::swap(genes[k], genes[j]);
            picked.push_back(genes[k]);
        }
        genes.assign(picked.begin(), picked.end());
    }

    const std::vector<std::size_t> conditions = bic.cond_indices();
    std::ostringstream out;
    out << "gene";
    for (const auto j : conditions) {
        out << '\t' << matrix.condition_labels()[j];
    }
    out << '\n';
    for (const auto i : genes) {
        out << matrix.gene_labels()[i];
        for (const auto j : conditions) {
            out << '\t';
            if (matrix.is_present(i, j)) {
                out << matrix.value(i, j);
            } else {
                out << opts.missing_marker;
            }
        }
        out << '\n';
    }
    write_file_atomic(opts.out_path, out.str());
    std::cout << "wrote " << opts.out_path << ": " << genes.size() << " genes x "
              << conditions.size() << " conditions\n";
    return 0;
}

// Config-file values fill any option the command line left untouched.
void apply_config(CLI::App* sub, const std::map<std::string, std::string>& values) {
    for (const auto& [key, value] : values) {
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw biswarm::ConfigError("unknown config key: " + key);
        }
        if (opt->count() == 0) {
            opt->add_result(value);
            opt->run_callback();
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"biclustering by multi-objective binary PSO with local refinement"};
    app.require_subcommand(1);

    RunOptions run_opts;
    CLI::App* run = app.add_subcommand("run", "mine biclusters from a TSV expression matrix");
    run->add_option("--input", run_opts.input, "expression matrix TSV")->required();
    run->add_option("--delta", run_opts.params.delta, "residue threshold (> 0)")->required();
    run->add_option("--seed", run_opts.params.seed, "RNG seed (default 0)");
    run->add_option("--pop-size", run_opts.params.pop_size, "particles (default 200)");
    run->add_option("--max-gen", run_opts.params.max_gen, "generations (default 100)");
    run->add_option("--alpha", run_opts.params.alpha, "deletion threshold factor (default 1.2)");
    run->add_option("--prune-to", run_opts.params.prune_to, "post-prune archive size (default 50)");
    run->add_option("--archive-cap", run_opts.params.archive_cap,
                    "archive hard capacity (default 100)");
    run->add_option("--snapshot-every", run_opts.snapshot_every,
                    "archive snapshot period in generations (0 = final only)");
    run->add_option("--out", run_opts.out_dir, "output directory")->required();
    run->add_option("--missing-marker", run_opts.missing_marker,
                    "cell text marking a missing value (default -1)");
    run->add_option("--inertia", run_opts.params.inertia, "velocity inertia w (default 0.729)");
    run->add_option("--c1", run_opts.params.c1, "leader acceleration (default 1.49445)");
    run->add_option("--c2", run_opts.params.c2, "personal-best acceleration (default 1.49445)");
    run->add_option("--v-max", run_opts.params.v_max, "velocity clamp (default 4.0)");
    run->add_option("--mutation-prob", run_opts.params.mutation_prob,
                    "per-particle mutation probability (default 0.3)");
    run->add_option("--init-gene-prob", run_opts.params.init_gene_prob,
                    "initial gene-bit probability (default 0.5)");
    run->add_option("--init-cond-prob", run_opts.params.init_cond_prob,
                    "initial condition-bit probability (default 0.5)");
    run->add_option("--ls-max-iterations", run_opts.params.ls_max_iterations,
                    "local search iteration cap (default 500)");
    run->add_option("--threads", run_opts.params.threads,
                    "worker threads (default 0 = BISWARM_THREADS or hardware)");
    run->add_option("--config", run_opts.config_path, "key=value file; flags win");

    RefineOptions refine_opts;
    CLI::App* refine = app.add_subcommand("refine", "three-phase refinement of one bicluster");
    refine->add_option("--input", refine_opts.input, "expression matrix TSV")->required();
    refine->add_option("--delta", refine_opts.delta, "residue threshold (> 0)")->required();
    refine->add_option("--alpha", refine_opts.alpha, "deletion threshold factor (default 1.2)");
    refine->add_option("--bicluster", refine_opts.bicluster_path, "bicluster JSON file")
        ->required();
    refine->add_option("--out", refine_opts.out_dir, "output directory")->required();
    refine->add_option("--missing-marker", refine_opts.missing_marker,
                       "cell text marking a missing value (default -1)");
    refine->add_option("--ls-max-iterations", refine_opts.max_iterations,
                       "local search iteration cap (default 500)");

    ProfileOptions profile_opts;
    CLI::App* profile =
        app.add_subcommand("profile-export", "TSV of sampled gene profiles from one bicluster");
    profile->add_option("--input", profile_opts.input, "expression matrix TSV")->required();
    profile->add_option("--biclusters", profile_opts.biclusters_path, "archive JSON")->required();
    profile->add_option("--id", profile_opts.id, "bicluster id (1-based)")->required();
    profile->add_option("--sample", profile_opts.sample_n, "genes to sample (default 100)");
    profile->add_option("--seed", profile_opts.seed, "sampling seed (default 0)");
    profile->add_option("--out", profile_opts.out_path, "output TSV path")->required();
    profile->add_option("--missing-marker", profile_opts.missing_marker,
                        "cell text marking a missing value (default -1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*run) {
            if (!run_opts.config_path.empty()) {
                apply_config(run, parse_config_file(run_opts.config_path));
            }
            return cmd_run(run_opts);
        }
        if (*refine) {
            return cmd_refine(refine_opts);
        }
        return cmd_profile_export(profile_opts);
    } catch (const biswarm::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const biswarm::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const biswarm::Error& e) {
        // parse, format, dimension, config and empty-selection errors
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
}
