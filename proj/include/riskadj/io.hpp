#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "riskadj/estimation.hpp"
#include "riskadj/moments.hpp"

namespace riskadj {

struct LabeledMoments {
    std::vector<std::string> labels;
    AssetMoments moments;
};

/// Parses a moments document:
///
///     {"n": 2, "labels": ["A", "B"], "mu": [0.1, 0.2],
///      "omega": [[0.04, 0.01], [0.01, 0.09]]}
///
/// `labels` is optional (defaults to asset_1 .. asset_n). omega must be
/// exactly symmetric unless `symmetrize` is set, in which case (O + O^t)/2
/// is used. Throws ParseError for malformed documents and NotSpd for a
/// covariance that fails the SPD check.
LabeledMoments parse_moments_document(std::string_view text, bool symmetrize = false);

std::string write_moments_document(const std::vector<std::string>& labels,
                                   const AssetMoments& moments);
std::string write_moments_document(const std::vector<std::string>& labels, const Vec& mu,
                                   const SymMatrix& omega);

/// Header row of unique asset names, then one row of simple returns per
/// period. Comma-delimited; no missing cells.
ReturnSeries parse_returns_csv(std::string_view text);

struct BaselineComparison {
    Vec weights;
    PortfolioReport report;
};

struct SolveOutput {
    std::vector<std::string> labels;
    Vec weights;
    double weights_sum = 0.0;
    PortfolioReport report;
    double t_star = 0.0;
    bool all_means_equal = false;
    std::vector<std::size_t> permutation;
    std::optional<BaselineComparison> min_variance;
};

std::string write_solve_output(const SolveOutput& output);
SolveOutput parse_solve_output(std::string_view text);

/// "label,weight" lines, numbers in shortest round-trip form.
std::string write_weights_csv(const std::vector<std::string>& labels, const Vec& weights);

/// Pretty-printed JSON with doubles in shortest round-trip form and arrays
/// of scalars kept on one line. Ends with a newline.
std::string to_document_text(const nlohmann::ordered_json& node);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

std::vector<std::string> default_labels(std::size_t n);

} // namespace riskadj
