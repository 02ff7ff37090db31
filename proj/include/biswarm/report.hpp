#pragma once

#include "biswarm/bicluster.hpp"
#include "biswarm/expression_matrix.hpp"
#include "biswarm/mopso.hpp"
#include "biswarm/pareto.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace biswarm {

/// 64-bit FNV-1a over raw bytes; recorded in run provenance so a report
/// can be tied to the exact input file.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

struct BiclusterRow {
    std::size_t id = 0; ///< 1-based, in archive order
    std::size_t n_genes = 0;
    std::size_t n_conditions = 0;
    double residue = 0.0;
    double row_variance = 0.0;
    std::size_t volume = 0; ///< present cells of the submatrix
};

struct ReportSummary {
    double avg_size = 0.0; ///< mean of n_genes * n_conditions
    double avg_residue = 0.0;
    double avg_genes = 0.0;
    double avg_conditions = 0.0;
    std::size_t max_size = 0;
};

struct RunReportData {
    std::vector<BiclusterRow> table;
    ReportSummary summary;
    Coverage coverage;
    std::uint64_t seed = 0;
    PsoParams params;
    std::string dataset_checksum;
    std::vector<GenerationStats> generations;
    double total_seconds = 0.0;
};

RunReportData build_report(const ExpressionMatrix& matrix, const RunResult& result,
                           const PsoParams& params, const std::string& dataset_checksum);

/// Archive export: array of {id, genes, conditions, residue, row_variance,
/// volume, objectives}, indices 0-based ascending, ids 1-based in archive
/// order. Carries no timing, so equal-seed runs serialize byte-identically.
nlohmann::json archive_to_json(const ExpressionMatrix& matrix, const ParetoArchive& archive);

nlohmann::json bicluster_to_json(const ExpressionMatrix& matrix, const Bicluster& bicluster);

/// Full-precision run report: provenance, per-generation trace, bicluster
/// table, summary and coverage.
nlohmann::json report_to_json(const RunReportData& report);

/// Tab-separated display tables (values rounded to 2 decimals) plus the
/// coverage sentence.
std::string report_to_text(const RunReportData& report);

} // namespace biswarm
