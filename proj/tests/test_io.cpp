#include <doctest.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "riskadj/closed_form.hpp"
#include "riskadj/errors.hpp"
#include "riskadj/io.hpp"
#include "riskadj/random_instance.hpp"

using namespace riskadj;

namespace {

template <class Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an exception");
    return ErrorCode::InvalidInput;
}

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

} // namespace

TEST_CASE("format_double round-trips exactly") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-0.0) == "-0");
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::uint64_t> bits;
    int tested = 0;
    while (tested < 20000) {
        const std::uint64_t b = bits(rng);
        double x = 0.0;
        std::memcpy(&x, &b, sizeof x);
        if (!std::isfinite(x)) continue;
        ++tested;
        const std::string s = format_double(x);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(bit_equal(x, back));
    }
}

TEST_CASE("moments document round-trip") {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 12);
        const AssetMoments m = random_instance(n, rng);
        const std::vector<std::string> labels = default_labels(n);
        const std::string text = write_moments_document(labels, m);
        const LabeledMoments parsed = parse_moments_document(text);
        CHECK(parsed.labels == labels);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(bit_equal(parsed.moments.mu()[i], m.mu()[i]));
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(bit_equal(parsed.moments.omega()(i, j), m.omega()(i, j)));
            }
        }
        CHECK(write_moments_document(parsed.labels, parsed.moments) == text);
    }
}

TEST_CASE("moments document parsing") {
    SUBCASE("labels and n are optional") {
        const LabeledMoments lm = parse_moments_document(R"({"mu": [0.1, 0.2], "omega": [[1, 0], [0, 1]]})");
        CHECK(lm.labels == std::vector<std::string>{"asset_1", "asset_2"});
    }
    SUBCASE("strict symmetry unless asked to symmetrize") {
        const std::string text = R"({"mu": [0.1, 0.2], "omega": [[0.04, 0.02], [0.0, 0.09]]})";
        CHECK(code_of([&] { parse_moments_document(text); }) == ErrorCode::ParseError);
        const LabeledMoments lm = parse_moments_document(text, true);
        CHECK(lm.moments.omega()(0, 1) == 0.01);
        CHECK(lm.moments.omega()(1, 0) == 0.01);
    }
    SUBCASE("malformed documents") {
        CHECK(code_of([] { parse_moments_document("not json"); }) == ErrorCode::ParseError);
        CHECK(code_of([] { parse_moments_document(R"({"omega": [[1, 0], [0, 1]]})"); }) ==
              ErrorCode::ParseError);
        CHECK(code_of([] { parse_moments_document(R"({"mu": [0.1, 0.2]})"); }) == ErrorCode::ParseError);
        CHECK(code_of([] {
                  parse_moments_document(R"({"n": 3, "mu": [0.1, 0.2], "omega": [[1, 0], [0, 1]]})");
              }) == ErrorCode::ParseError);
        CHECK(code_of([] {
                  parse_moments_document(R"({"mu": [0.1, "x"], "omega": [[1, 0], [0, 1]]})");
              }) == ErrorCode::ParseError);
        CHECK(code_of([] {
                  parse_moments_document(
                      R"({"labels": ["a", "a"], "mu": [0.1, 0.2], "omega": [[1, 0], [0, 1]]})");
              }) == ErrorCode::ParseError);
        CHECK(code_of([] { parse_moments_document(R"({"mu": [0.1, 0.2], "omega": [[1, 0, 0], [0, 1]]})"); }) ==
              ErrorCode::ParseError);
    }
    SUBCASE("numerical problems surface with their own codes") {
        CHECK(code_of([] { parse_moments_document(R"({"mu": [0.1, 0.2], "omega": [[1, 1], [1, 1]]})"); }) ==
              ErrorCode::NotSpd);
    }
}

TEST_CASE("returns CSV parsing") {
    const ReturnSeries s = parse_returns_csv("X, Y\r\n0.1,0.0\r\n-0.1 , 0.0\r\n\r\n");
    CHECK(s.asset_names == std::vector<std::string>{"X", "Y"});
    REQUIRE(s.periods() == 2);
    CHECK(s.returns[1][0] == -0.1);

    CHECK(code_of([] { parse_returns_csv("X,Y\n0.1,0.2\n0.3,\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_returns_csv("X,Y\n0.1,0.2\n0.3,abc\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_returns_csv("X,Y\n0.1,0.2\n0.3,0.4,0.5\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_returns_csv("X,X\n0.1,0.2\n0.3,0.4\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_returns_csv("X,Y\n0.1,0.2\n"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { parse_returns_csv(""); }) == ErrorCode::ParseError);
}

TEST_CASE("solve output round-trip") {
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 8);
        const AssetMoments m = random_instance(n, rng);
        const ClosedFormTrace t = stationary_point(m);
        SolveOutput out;
        out.labels = default_labels(n);
        out.weights = to_original_order(t.weights, t.permutation);
        out.weights_sum = sum(out.weights);
        out.report = portfolio_metrics(out.weights, m);
        out.t_star = t.t_star;
        out.permutation = t.permutation;
        if (k % 2 == 0) {
            out.min_variance = BaselineComparison{Vec(n, 1.0 / static_cast<double>(n)), out.report};
        }
        const std::string text = write_solve_output(out);
        const SolveOutput back = parse_solve_output(text);
        CHECK(back.labels == out.labels);
        for (std::size_t i = 0; i < n; ++i) CHECK(bit_equal(back.weights[i], out.weights[i]));
        CHECK(bit_equal(back.report.q, out.report.q));
        CHECK(bit_equal(back.t_star, out.t_star));
        CHECK(back.permutation == out.permutation);
        CHECK(back.min_variance.has_value() == out.min_variance.has_value());
        CHECK(write_solve_output(back) == text);
    }
}

TEST_CASE("weights CSV") {
    CHECK(write_weights_csv({"A", "B"}, {0.25, 0.75}) == "label,weight\nA,0.25\nB,0.75\n");
}
