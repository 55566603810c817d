#include "riskadj/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "riskadj/closed_form.hpp"
#include "riskadj/errors.hpp"
#include "riskadj/estimation.hpp"
#include "riskadj/io.hpp"
#include "riskadj/verify.hpp"

namespace riskadj {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommonFlags {
    std::string input = "-";
    std::string output = "-";
    std::string format = "document";
    std::uint64_t seed = 42;
    bool symmetrize = false;
};

// Failure raised by the CLI layer itself, already mapped to an exit code.
struct CliFailure {
    int exit_code;
    std::string code;
    std::string message;
};

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidInput:
    case ErrorCode::DimensionMismatch: return exit_code::kParse;
    case ErrorCode::StationaryPointNotMax: return exit_code::kNotMax;
    default: return exit_code::kNumerical;
    }
}

std::string read_input(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw CliFailure{exit_code::kParse, "ParseError", "cannot open '" + path + "'"};
    buf << file.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw CliFailure{exit_code::kParse, "ParseError", "cannot write '" + path + "'"};
    file << text;
}

void print_error(std::ostream& err, int exit, const std::string& code, const std::string& message,
                 ordered_json extra = ordered_json::object()) {
    ordered_json body{{"code", code}, {"exit_code", exit}, {"message", message}};
    for (auto& [k, v] : extra.items()) body[k] = v;
    err << ordered_json{{"error", body}}.dump() << "\n";
}

ordered_json checks_json(const std::vector<CheckResult>& checks) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        arr.push_back(ordered_json{
            {"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    }
    return arr;
}

std::string failed_names(const std::vector<CheckResult>& checks) {
    std::string names;
    for (const auto& c : checks) {
        if (c.passed) continue;
        if (!names.empty()) names += ", ";
        names += c.name;
    }
    return names;
}

std::string cmd_solve(const CommonFlags& flags, bool baseline, std::istream& in) {
    if (flags.format != "document" && flags.format != "csv-weights") {
        throw CliFailure{exit_code::kParse, "ParseError", "unknown --format '" + flags.format + "'"};
    }
    const LabeledMoments input = parse_moments_document(read_input(flags.input, in), flags.symmetrize);
    const Solution sol = solve_weights(input.moments);
    if (flags.format == "csv-weights") return write_weights_csv(input.labels, sol.weights);

    SolveOutput out;
    out.labels = input.labels;
    out.weights = sol.weights;
    out.weights_sum = sum(sol.weights);
    out.report = portfolio_metrics(sol.weights, input.moments);
    out.t_star = sol.trace.t_star;
    out.all_means_equal = sol.trace.all_means_equal;
    out.permutation = sol.trace.permutation;
    if (baseline) {
        const Vec mv = min_variance_weights(input.moments.omega());
        out.min_variance = BaselineComparison{mv, portfolio_metrics(mv, input.moments)};
    }
    return write_solve_output(out);
}

std::string cmd_estimate(const CommonFlags& flags, std::istream& in) {
    if (flags.format != "document") {
        throw CliFailure{exit_code::kParse, "ParseError",
                         "estimate only supports --format document"};
    }
    const ReturnSeries series = parse_returns_csv(read_input(flags.input, in));
    const AssetMoments moments = estimate_moments(series);
    return write_moments_document(series.asset_names, moments);
}

struct VerifyFlags {
    std::string weights;
    int grid_resolution = 1001;
    int instances = 100;
    std::string dims = "2,3,5,10";
};

Vec parse_list(const std::string& text, const std::string& what) {
    Vec out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw CliFailure{exit_code::kParse, "ParseError",
                             "malformed " + what + " entry '" + cell + "'"};
        }
    }
    return out;
}

struct VerifyOutcome {
    std::string report;
    std::string failed;  // empty when every check passed
};

VerifyOutcome cmd_verify(const CommonFlags& flags, const VerifyFlags& vflags,
                                        bool random_mode, std::istream& in) {
    VerifyOptions options;
    options.grid_resolution = vflags.grid_resolution;
    options.seed = flags.seed;
    if (options.grid_resolution < 100) {
        throw CliFailure{exit_code::kParse, "ParseError", "--grid-resolution must be at least 100"};
    }

    if (random_mode) {
        if (!vflags.weights.empty()) {
            throw CliFailure{exit_code::kParse, "ParseError",
                             "--weights needs a moments file"};
        }
        std::vector<std::size_t> dims;
        for (double d : parse_list(vflags.dims, "--dims")) {
            if (d < 2 || d != std::floor(d)) {
                throw CliFailure{exit_code::kParse, "ParseError",
                                 "--dims entries must be integers >= 2"};
            }
            dims.push_back(static_cast<std::size_t>(d));
        }
        if (vflags.instances < 1) {
            throw CliFailure{exit_code::kParse, "ParseError", "--instances must be positive"};
        }
        const RandomVerifyReport report = verify_random(dims, vflags.instances, options);
        ordered_json doc{{"mode", "random"},
                         {"seed", report.seed},
                         {"dims", report.dims},
                         {"instances", report.instances},
                         {"rejected_not_max", report.rejected_not_max},
                         {"checks", checks_json(report.checks)},
                         {"passed", report.passed()}};
        return {to_document_text(doc), failed_names(report.checks)};
    }

    const LabeledMoments input = parse_moments_document(read_input(flags.input, in), flags.symmetrize);
    const AssetMoments& moments = input.moments;
    std::vector<CheckResult> checks;
    Vec w;
    std::string source;
    if (!vflags.weights.empty()) {
        w = parse_list(vflags.weights, "--weights");
        if (w.size() != moments.size()) {
            throw CliFailure{exit_code::kParse, "ParseError",
                             "--weights has " + std::to_string(w.size()) + " entries, expected " +
                                 std::to_string(moments.size())};
        }
        source = "override";
        checks = verify_optimum(moments, w, nullptr, options);
    } else {
        const Solution sol = solve_weights(moments);
        w = sol.weights;
        source = "solver";
        checks = verify_optimum(moments, w, &sol.trace, options);
    }
    const bool ok = all_passed(checks);
    ordered_json doc{{"mode", "single"},
                     {"labels", input.labels},
                     {"weights", w},
                     {"weights_source", source},
                     {"checks", checks_json(checks)},
                     {"passed", ok}};
    if (!ok) doc["failed"] = failed_names(checks);
    return {to_document_text(doc), failed_names(checks)};
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool input_required) {
    auto* opt = cmd->add_option("input", flags.input, "Input file, or '-' for standard input");
    if (input_required) opt->required();
    cmd->add_option("-o,--output", flags.output, "Output path, or '-' for standard output");
    cmd->add_option("--format", flags.format, "document | csv-weights");
    cmd->add_option("--seed", flags.seed, "Random seed");
    cmd->add_flag("--symmetrize", flags.symmetrize, "Average omega with its transpose on load");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Exact risk-adjusted-return (Sharpe-type) portfolio weights", "riskadj"};
    app.require_subcommand(1);

    CommonFlags solve_flags, estimate_flags, verify_flags;
    bool baseline = false;
    VerifyFlags vflags;

    auto* solve = app.add_subcommand("solve", "Optimal weights from a moments document");
    add_common(solve, solve_flags, true);
    solve->add_flag("--baseline", baseline, "Include the minimum-variance portfolio");

    auto* estimate = app.add_subcommand("estimate", "Sample moments from a CSV of returns");
    add_common(estimate, estimate_flags, true);

    auto* verify = app.add_subcommand(
        "verify", "Run the oracle checks on a moments document, or on random instances");
    verify_flags.input.clear();
    add_common(verify, verify_flags, false);
    verify->add_option("--weights", vflags.weights, "Comma-separated weights to check instead of solving");
    verify->add_option("--grid-resolution", vflags.grid_resolution, "Grid points per axis (>= 100)");
    verify->add_option("--instances", vflags.instances, "Random instances when no input is given");
    verify->add_option("--dims", vflags.dims, "Comma-separated asset counts for random instances");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::kOk;
    } catch (const CLI::ParseError& e) {
        print_error(err, exit_code::kParse, "UsageError", e.what());
        return exit_code::kParse;
    }

    try {
        std::string text;
        const CommonFlags* flags = nullptr;
        std::string failed;
        int code = exit_code::kOk;
        if (solve->parsed()) {
            flags = &solve_flags;
            text = cmd_solve(solve_flags, baseline, in);
        } else if (estimate->parsed()) {
            flags = &estimate_flags;
            text = cmd_estimate(estimate_flags, in);
        } else {
            flags = &verify_flags;
            if (verify_flags.format != "document") {
                throw CliFailure{exit_code::kParse, "ParseError",
                                 "verify only supports --format document"};
            }
            const bool random_mode = verify_flags.input.empty();
            VerifyOutcome outcome = cmd_verify(verify_flags, vflags, random_mode, in);
            text = std::move(outcome.report);
            failed = std::move(outcome.failed);
            if (!failed.empty()) code = exit_code::kVerification;
        }
        write_output(flags->output, text, out);
        if (code == exit_code::kVerification) {
            print_error(err, code, "VerificationFailed", "oracle checks failed: " + failed);
        }
        return code;
    } catch (const CliFailure& f) {
        print_error(err, f.exit_code, f.code, f.message);
        return f.exit_code;
    } catch (const StationaryPointNotMaxError& e) {
        ordered_json extra{{"stationary_weights", e.stationary_weights()},
                           {"stationary_q", e.stationary_q()},
                           {"candidate_weights", e.candidate_weights()},
                           {"candidate_q", e.candidate_q()}};
        print_error(err, exit_code::kNotMax, std::string(to_string(e.code())), e.what(), extra);
        return exit_code::kNotMax;
    } catch (const Error& e) {
        const int exit = exit_code_for(e.code());
        print_error(err, exit, std::string(to_string(e.code())), e.what());
        return exit;
    }
}

} // namespace riskadj
