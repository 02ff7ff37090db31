#include "biswarm/expression_matrix.hpp"

#include "biswarm/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace biswarm {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
        fields.back().pop_back();
    }
    return fields;
}

double parse_cell(const std::string& field, std::size_t line_no, std::size_t col_no) {
    double out = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("unparseable numeric cell at row " + std::to_string(line_no) +
                         ", column " + std::to_string(col_no) + ": \"" + field + "\"");
    }
    return out;
}

} // namespace

ExpressionMatrix::ExpressionMatrix(std::vector<double> values, std::vector<double> present,
                                   std::size_t n_genes, std::size_t n_conditions,
                                   std::vector<std::string> gene_labels,
                                   std::vector<std::string> condition_labels)
    : values_(std::move(values)),
      present_(std::move(present)),
      n_genes_(n_genes),
      n_conditions_(n_conditions),
      gene_labels_(std::move(gene_labels)),
      condition_labels_(std::move(condition_labels)) {
    if (n_genes_ < 2 || n_conditions_ < 2) {
        throw DimensionError("matrix must have at least 2 genes and 2 conditions, got " +
                             std::to_string(n_genes_) + "x" + std::to_string(n_conditions_));
    }
    const std::size_t cells = n_genes_ * n_conditions_;
    if (values_.size() != cells || present_.size() != cells) {
        throw DimensionError("value/present grids do not match declared dimensions");
    }
    if (gene_labels_.size() != n_genes_ || condition_labels_.size() != n_conditions_) {
        throw DimensionError("label counts do not match declared dimensions");
    }
}

ExpressionMatrix ExpressionMatrix::load_tsv(std::istream& in, const std::string& missing_marker) {
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("empty input: no header row");
    }
    std::vector<std::string> header = split_tabs(line);

    std::vector<double> values;
    std::vector<double> present;
    std::vector<std::string> gene_labels;
    std::size_t n_conditions = 0;
    std::size_t line_no = 1;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) {
            continue;
        }
        std::vector<std::string> fields = split_tabs(line);
        if (gene_labels.empty()) {
            if (fields.size() < 2) {
                throw FormatError("line " + std::to_string(line_no) +
                                  ": expected a gene label plus at least one value");
            }
            n_conditions = fields.size() - 1;
            // Header may or may not carry a corner label over the gene column.
            if (header.size() == n_conditions + 1) {
                header.erase(header.begin());
            } else if (header.size() != n_conditions) {
                throw FormatError("header has " + std::to_string(header.size()) +
                                  " fields but data rows have " + std::to_string(n_conditions) +
                                  " value columns");
            }
        } else if (fields.size() != n_conditions + 1) {
            throw FormatError("ragged row at line " + std::to_string(line_no) + ": expected " +
                              std::to_string(n_conditions + 1) + " fields, got " +
                              std::to_string(fields.size()));
        }
        gene_labels.push_back(fields[0]);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            if (fields[j] == missing_marker) {
                values.push_back(0.0);
                present.push_back(0.0);
            } else {
                values.push_back(parse_cell(fields[j], line_no, j + 1));
                present.push_back(1.0);
            }
        }
    }

    const std::size_t n_genes = gene_labels.size();
    if (n_genes < 2 || n_conditions < 2) {
        throw DimensionError("matrix must have at least 2 genes and 2 conditions, got " +
                             std::to_string(n_genes) + "x" + std::to_string(n_conditions));
    }
    return ExpressionMatrix(std::move(values), std::move(present), n_genes, n_conditions,
                            std::move(gene_labels), std::move(header));
}

ExpressionMatrix ExpressionMatrix::load_tsv_file(const std::filesystem::path& path,
                                                 const std::string& missing_marker) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open input file: " + path.string());
    }
    return load_tsv(in, missing_marker);
}

ExpressionMatrix ExpressionMatrix::from_dense(const std::vector<std::vector<double>>& grid) {
    const std::size_t n = grid.size();
    const std::size_t m = n ? grid[0].size() : 0;
    std::vector<double> values;
    values.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        if (grid[i].size() != m) {
            throw DimensionError("ragged dense grid at row " + std::to_string(i));
        }
        values.insert(values.end(), grid[i].begin(), grid[i].end());
    }
    std::vector<double> present(n * m, 1.0);
    std::vector<std::string> gene_labels(n);
    std::vector<std::string> cond_labels(m);
    for (std::size_t i = 0; i < n; ++i) gene_labels[i] = "g" + std::to_string(i);
    for (std::size_t j = 0; j < m; ++j) cond_labels[j] = "c" + std::to_string(j);
    return ExpressionMatrix(std::move(values), std::move(present), n, m,
                            std::move(gene_labels), std::move(cond_labels));
}

} // namespace biswarm
