#pragma once

// Double-double arithmetic for the few scalar reductions whose cancellation
// decides the accuracy of t*. Error-free transforms: TwoSum (Knuth) and
// TwoProd via fma.

#include <cmath>
#include <cstddef>
#include <span>

#include "riskadj/linalg.hpp"

namespace riskadj::compensated {

struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    double value() const noexcept { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) noexcept {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DoubleDouble two_prod(double a, double b) noexcept {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) noexcept {
    DoubleDouble s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) noexcept { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) noexcept { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) noexcept {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(DoubleDouble a, double b) noexcept {
    DoubleDouble p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return two_sum(p.hi, p.lo);
}

inline DoubleDouble dot(std::span<const double> x, std::span<const double> y) noexcept {
    DoubleDouble acc;
    for (std::size_t i = 0; i < x.size(); ++i) acc = acc + two_prod(x[i], y[i]);
    return acc;
}

/// x^t A y with every product and partial sum carried in double-double.
inline DoubleDouble quad_form(std::span<const double> x, const SymMatrix& a,
                              std::span<const double> y) noexcept {
    DoubleDouble acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        DoubleDouble row;
        for (std::size_t j = 0; j < y.size(); ++j) row = row + two_prod(a(i, j), y[j]);
        acc = acc + row * x[i];
    }
    return acc;
}

} // namespace riskadj::compensated
