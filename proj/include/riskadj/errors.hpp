#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace riskadj {

enum class ErrorCode {
    ParseError,
    InvalidInput,
    DimensionMismatch,
    NotSpd,
    EqualConsecutiveMeans,
    DegenerateNormalization,
    DegenerateDenominator,
    StationaryPointNotMax,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when two assets adjacent in the solver's ordering share a mean.
/// `position` indexes the first of the pair in that ordering; `first` and
/// `second` are the original asset indices.
class EqualConsecutiveMeansError : public Error {
public:
    EqualConsecutiveMeansError(std::size_t position, std::size_t first,
                               std::size_t second, const std::string& message)
        : Error(ErrorCode::EqualConsecutiveMeans, message),
          position_(position), first_(first), second_(second) {}

    std::size_t position() const noexcept { return position_; }
    std::size_t first_asset() const noexcept { return first_; }
    std::size_t second_asset() const noexcept { return second_; }

private:
    std::size_t position_;
    std::size_t first_;
    std::size_t second_;
};

/// The budget-normalized stationary point scores below another feasible
/// candidate, so it is not the maximizer. Both portfolios are attached.
class StationaryPointNotMaxError : public Error {
public:
    StationaryPointNotMaxError(std::vector<double> stationary, double q_stationary,
                               std::vector<double> candidate, double q_candidate,
                               const std::string& message)
        : Error(ErrorCode::StationaryPointNotMax, message),
          stationary_(std::move(stationary)), candidate_(std::move(candidate)),
          q_stationary_(q_stationary), q_candidate_(q_candidate) {}

    const std::vector<double>& stationary_weights() const noexcept { return stationary_; }
    const std::vector<double>& candidate_weights() const noexcept { return candidate_; }
    double stationary_q() const noexcept { return q_stationary_; }
    double candidate_q() const noexcept { return q_candidate_; }

private:
    std::vector<double> stationary_;
    std::vector<double> candidate_;
    double q_stationary_;
    double q_candidate_;
};

} // namespace riskadj
