#include "biswarm/report.hpp"

#include "biswarm/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace biswarm {

namespace {

std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

nlohmann::json params_to_json(const PsoParams& p) {
    return nlohmann::json{{"pop_size", p.pop_size},
                          {"max_gen", p.max_gen},
                          {"inertia", p.inertia},
                          {"c1", p.c1},
                          {"c2", p.c2},
                          {"v_max", p.v_max},
                          {"mutation_prob", p.mutation_prob},
                          {"delta", p.delta},
                          {"alpha", p.alpha},
                          {"init_gene_prob", p.init_gene_prob},
                          {"init_cond_prob", p.init_cond_prob},
                          {"seed", p.seed},
                          {"epsilon_var", p.epsilon_var},
                          {"archive_cap", p.archive_cap},
                          {"prune_to", p.prune_to},
                          {"ls_max_iterations", p.ls_max_iterations},
                          {"threads", p.threads}};
}

} // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

RunReportData build_report(const ExpressionMatrix& matrix, const RunResult& result,
                           const PsoParams& params, const std::string& dataset_checksum) {
    RunReportData report;
    report.seed = result.seed;
    report.params = params;
    report.dataset_checksum = dataset_checksum;
    report.generations = result.generations;
    report.total_seconds = result.total_seconds;

    std::vector<Bicluster> set;
    SubmatrixStats stats;
    std::size_t id = 0;
    double sum_size = 0.0;
    double sum_residue = 0.0;
    double sum_genes = 0.0;
    double sum_conditions = 0.0;
    for (const auto& entry : result.archive.entries()) {
        compute_stats(matrix, entry.bicluster, stats);
        BiclusterRow row;
        row.id = ++id;
        row.n_genes = entry.bicluster.n_genes_selected();
        row.n_conditions = entry.bicluster.n_conditions_selected();
        row.residue = stats.residue;
        row.row_variance = stats.row_variance;
        row.volume = stats.volume;
        report.table.push_back(row);
        set.push_back(entry.bicluster);

        const std::size_t size = row.n_genes * row.n_conditions;
        sum_size += static_cast<double>(size);
        sum_residue += row.residue;
        sum_genes += static_cast<double>(row.n_genes);
        sum_conditions += static_cast<double>(row.n_conditions);
        report.summary.max_size = std::max(report.summary.max_size, size);
    }
    if (!report.table.empty()) {
        const auto n = static_cast<double>(report.table.size());
        report.summary.avg_size = sum_size / n;
        report.summary.avg_residue = sum_residue / n;
        report.summary.avg_genes = sum_genes / n;
        report.summary.avg_conditions = sum_conditions / n;
    }
    report.coverage = coverage(matrix, set);
    return report;
}

nlohmann::json bicluster_to_json(const ExpressionMatrix& matrix, const Bicluster& bicluster) {
    const SubmatrixStats stats = compute_stats(matrix, bicluster);
    return nlohmann::json{{"genes", bicluster.gene_indices()},
                          {"conditions", bicluster.cond_indices()},
                          {"residue", stats.residue},
                          {"row_variance", stats.row_variance},
                          {"volume", stats.volume}};
}

nlohmann::json archive_to_json(const ExpressionMatrix& matrix, const ParetoArchive& archive) {
    nlohmann::json out = nlohmann::json::array();
    std::size_t id = 0;
    for (const auto& entry : archive.entries()) {
        nlohmann::json item = bicluster_to_json(matrix, entry.bicluster);
        item["id"] = ++id;
        item["objectives"] = {{"f1", entry.objectives.f1},
                              {"f2", entry.objectives.f2},
                              {"f3", entry.objectives.f3},
                              {"f4", entry.objectives.f4}};
        out.push_back(std::move(item));
    }
    return out;
}

nlohmann::json report_to_json(const RunReportData& report) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& row : report.table) {
        table.push_back({{"id", row.id},
                         {"n_genes", row.n_genes},
                         {"n_conditions", row.n_conditions},
                         {"residue", row.residue},
                         {"row_variance", row.row_variance},
                         {"volume", row.volume}});
    }
    nlohmann::json generations = nlohmann::json::array();
    for (const auto& g : report.generations) {
        generations.push_back({{"gen", g.gen},
                               {"archive_size", g.archive_size},
                               {"best_residue", g.best_residue},
                               {"coverage_cells_pct", g.coverage_cells_pct}});
    }
    return nlohmann::json{
        {"seed", report.seed},
        {"params", params_to_json(report.params)},
        {"generations", std::move(generations)},
        {"total_seconds", report.total_seconds},
        {"bicluster_table", std::move(table)},
        {"summary",
         {{"avg_size", report.summary.avg_size},
          {"avg_residue", report.summary.avg_residue},
          {"avg_genes", report.summary.avg_genes},
          {"avg_conditions", report.summary.avg_conditions},
          {"max_size", report.summary.max_size}}},
        {"coverage",
         {{"gene_pct", report.coverage.gene_pct},
          {"cond_pct", report.coverage.cond_pct},
          {"cell_pct", report.coverage.cell_pct}}},
        {"provenance",
         {{"seed", report.seed},
          {"params", params_to_json(report.params)},
          {"dataset_checksum", report.dataset_checksum},
          {"wall_seconds", report.total_seconds}}}};
}

std::string report_to_text(const RunReportData& report) {
    std::ostringstream out;
    out << "BICLUSTERS\n";
    out << "Bicluster\tGenes\tConditions\tResidue\tRow variance\n";
    for (const auto& row : report.table) {
        out << row.id << '\t' << row.n_genes << '\t' << row.n_conditions << '\t'
            << fixed2(row.residue) << '\t' << fixed2(row.row_variance) << '\n';
    }
    out << '\n';
    out << "SUMMARY\n";
    out << "Avg size\tAvg residue\tAvg genes\tAvg condition\tMax size\n";
    out << fixed2(report.summary.avg_size) << '\t' << fixed2(report.summary.avg_residue) << '\t'
        << fixed2(report.summary.avg_genes) << '\t' << fixed2(report.summary.avg_conditions)
        << '\t' << report.summary.max_size << '\n';
    out << '\n';
    out << "COVERAGE\n";
    out << fixed2(report.coverage.gene_pct) << "% of the genes, "
        << fixed2(report.coverage.cond_pct) << "% of the conditions, "
        << fixed2(report.coverage.cell_pct) << "% cells\n";
    return out.str();
}

} // namespace biswarm
