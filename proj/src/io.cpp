#include "riskadj/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "riskadj/errors.hpp"

namespace riskadj {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& message) {
    throw Error(ErrorCode::ParseError, message);
}

Vec number_array(const ordered_json& node, const std::string& what) {
    if (!node.is_array()) parse_fail(what + " must be an array of numbers");
    Vec out;
    out.reserve(node.size());
    for (const auto& x : node) {
        if (!x.is_number()) parse_fail(what + " must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

ordered_json report_json(const PortfolioReport& r) {
    return ordered_json{{"f", r.f}, {"g", r.g}, {"q", r.q}};
}

PortfolioReport report_from_json(const ordered_json& node) {
    return {node.at("f").get<double>(), node.at("g").get<double>(), node.at("q").get<double>()};
}

std::vector<std::string> check_labels(std::vector<std::string> labels, std::size_t n) {
    if (labels.size() != n) {
        parse_fail("expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
    }
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) parse_fail("duplicate label '" + l + "'");
    }
    return labels;
}

bool is_scalar(const ordered_json& node) { return !node.is_array() && !node.is_object(); }

void emit(const ordered_json& node, int indent, std::string& out);

void emit_scalar(const ordered_json& node, std::string& out) {
    if (node.is_number_float()) {
        out += format_double(node.get<double>());
    } else {
        out += node.dump();
    }
}

void emit(const ordered_json& node, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    if (node.is_object()) {
        if (node.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : node.items()) {
            if (!first) out += ",\n";
            first = false;
            out += pad + ordered_json(key).dump() + ": ";
            emit(value, indent + 2, out);
        }
        out += "\n" + close + "}";
    } else if (node.is_array()) {
        // Arrays of scalars stay on one line so vectors and matrix rows read
        // naturally.
        if (std::all_of(node.begin(), node.end(), is_scalar)) {
            out += "[";
            for (std::size_t i = 0; i < node.size(); ++i) {
                if (i) out += ", ";
                emit_scalar(node[i], out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < node.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            emit(node[i], indent + 2, out);
        }
        out += "\n" + close + "]";
    } else {
        emit_scalar(node, out);
    }
}

} // namespace

std::string to_document_text(const nlohmann::ordered_json& node) {
    std::string out;
    emit(node, 0, out);
    out += "\n";
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("asset_" + std::to_string(i + 1));
    return out;
}

LabeledMoments parse_moments_document(std::string_view text, bool symmetrize) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(std::string("moments document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) parse_fail("moments document must be a JSON object");
    if (!doc.contains("mu")) parse_fail("moments document is missing 'mu'");
    if (!doc.contains("omega")) parse_fail("moments document is missing 'omega'");

    Vec mu = number_array(doc["mu"], "mu");
    const std::size_t n = mu.size();
    if (n < 2) parse_fail("need at least 2 assets, got " + std::to_string(n));
    if (doc.contains("n")) {
        if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() != n) {
            parse_fail("'n' does not match the length of 'mu' (" + std::to_string(n) + ")");
        }
    }

    const auto& omega_node = doc["omega"];
    if (!omega_node.is_array() || omega_node.size() != n) {
        parse_fail("omega must have " + std::to_string(n) + " rows");
    }
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(number_array(omega_node[i], "omega row " + std::to_string(i)));
        if (rows.back().size() != n) {
            parse_fail("omega row " + std::to_string(i) + " must have " + std::to_string(n) +
                       " entries");
        }
    }

    std::vector<std::string> labels = default_labels(n);
    if (doc.contains("labels")) {
        if (!doc["labels"].is_array()) parse_fail("labels must be an array of strings");
        std::vector<std::string> given;
        for (const auto& l : doc["labels"]) {
            if (!l.is_string()) parse_fail("labels must be an array of strings");
            given.push_back(l.get<std::string>());
        }
        labels = check_labels(std::move(given), n);
    }

    SymMatrix omega = [&] {
        if (symmetrize) return SymMatrix::symmetrized(rows);
        try {
            return SymMatrix::from_rows(rows);
        } catch (const Error& e) {
            parse_fail(std::string(e.what()) + " (pass --symmetrize to average omega and its transpose)");
        }
    }();
    return {std::move(labels), AssetMoments(std::move(mu), std::move(omega))};
}

std::string write_moments_document(const std::vector<std::string>& labels, const Vec& mu,
                                   const SymMatrix& omega) {
    ordered_json doc;
    doc["n"] = mu.size();
    doc["labels"] = labels;
    doc["mu"] = mu;
    doc["omega"] = omega.rows();
    return to_document_text(doc);
}

std::string write_moments_document(const std::vector<std::string>& labels,
                                   const AssetMoments& moments) {
    return write_moments_document(labels, moments.mu(), moments.omega());
}

ReturnSeries parse_returns_csv(std::string_view text) {
    std::vector<std::string> lines;
    {
        std::string line;
        std::istringstream in{std::string(text)};
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty()) parse_fail("CSV is empty");

    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        for (auto& c : cells) {
            const auto b = c.find_first_not_of(" \t");
            const auto e = c.find_last_not_of(" \t");
            c = b == std::string::npos ? std::string() : c.substr(b, e - b + 1);
        }
        return cells;
    };

    ReturnSeries series;
    series.asset_names = split(lines[0]);
    const std::size_t n = series.assets();
    std::set<std::string> seen;
    for (const auto& name : series.asset_names) {
        if (name.empty()) parse_fail("CSV header has an empty asset name");
        if (!seen.insert(name).second) parse_fail("CSV header repeats asset name '" + name + "'");
    }
    if (n < 2) parse_fail("CSV needs at least 2 asset columns");

    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split(lines[r]);
        const std::string where = "CSV line " + std::to_string(r + 1);
        if (cells.size() != n) {
            parse_fail(where + " has " + std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(n));
        }
        Vec row(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& c = cells[i];
            if (c.empty()) parse_fail(where + " is missing a value for '" + series.asset_names[i] + "'");
            const auto res = std::from_chars(c.data(), c.data() + c.size(), row[i]);
            if (res.ec != std::errc() || res.ptr != c.data() + c.size() || !std::isfinite(row[i])) {
                parse_fail(where + " has a malformed number '" + c + "'");
            }
        }
        series.returns.push_back(std::move(row));
    }
    if (series.periods() < 2) {
        parse_fail("CSV needs at least 2 periods, got " + std::to_string(series.periods()));
    }
    return series;
}

std::string write_solve_output(const SolveOutput& output) {
    ordered_json doc;
    doc["labels"] = output.labels;
    doc["weights"] = output.weights;
    doc["weights_sum"] = output.weights_sum;
    doc["report"] = report_json(output.report);
    doc["trace"] = ordered_json{{"t_star", output.t_star},
                                {"all_means_equal", output.all_means_equal},
                                {"permutation", output.permutation}};
    if (output.min_variance) {
        doc["baseline"] = ordered_json{
            {"min_variance", ordered_json{{"weights", output.min_variance->weights},
                                          {"report", report_json(output.min_variance->report)}}}};
    }
    return to_document_text(doc);
}

SolveOutput parse_solve_output(std::string_view text) {
    try {
        const ordered_json doc = ordered_json::parse(text);
        SolveOutput out;
        out.labels = doc.at("labels").get<std::vector<std::string>>();
        out.weights = doc.at("weights").get<Vec>();
        out.weights_sum = doc.at("weights_sum").get<double>();
        out.report = report_from_json(doc.at("report"));
        const auto& trace = doc.at("trace");
        out.t_star = trace.at("t_star").get<double>();
        out.all_means_equal = trace.at("all_means_equal").get<bool>();
        out.permutation = trace.at("permutation").get<std::vector<std::size_t>>();
        if (doc.contains("baseline")) {
            const auto& mv = doc["baseline"].at("min_variance");
            out.min_variance = BaselineComparison{mv.at("weights").get<Vec>(),
                                                  report_from_json(mv.at("report"))};
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        parse_fail(std::string("malformed solve output: ") + e.what());
    }
}

std::string write_weights_csv(const std::vector<std::string>& labels, const Vec& weights) {
    std::string out = "label,weight\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += labels[i] + "," + format_double(weights[i]) + "\n";
    }
    return out;
}

} // namespace riskadj
