// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file map.hpp
 * @brief Piecewise-linear interval maps on [0,1] with exact branch data.
 *
 * A map is a strictly increasing breakpoint grid 0 = a_0 < ... < a_r = 1
 * together with one linear branch per subinterval. Branch membership is
 * half-open: [a_{i-1}, a_i), with the last branch closed at 1, so every
 * point has exactly one branch and breakpoints take the right-hand branch.
 *
 * Maps with rational breakpoints, slopes and intercepts evaluate exactly;
 * maps with declared-irrational slopes carry double coordinates and run in
 * float mode throughout.
 */

#include "cgentropy/rational.hpp"
#include "cgentropy/slope.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cgentropy {

/// x coincides with a breakpoint where the derivative is undefined.
struct BreakpointError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A coordinate that is exact when possible and always usable as double.
struct Coord {
    std::optional<Rational> exact;
    double value = 0.0;

    static Coord of(Rational r) {
        Coord c;
        c.value = r.to_double();
        c.exact = std::move(r);
        return c;
    }
    static Coord approx(double v) {
        Coord c;
        c.value = v;
        return c;
    }
    bool is_exact() const { return exact.has_value(); }
};

struct Branch {
    int sign = 1;  // +1 increasing, -1 decreasing
    SlopeClass magnitude = SlopeClass::integer(1);
    Coord intercept;

    double slope_value() const { return sign * magnitude.magnitude(); }
    Rational slope_rational() const {
        Rational m = magnitude.magnitude_rational();
        return sign < 0 ? -m : m;
    }
    bool is_exact() const { return magnitude.is_exact() && intercept.is_exact(); }
};

struct InvarianceReport {
    bool holds = false;
    bool exact_mode = false;
    // First sub-interval of [0,1] where the preimage weights 1/|f'| fail to sum to 1.
    std::optional<std::pair<double, double>> witness;
    std::optional<std::pair<Rational, Rational>> witness_exact;
    double max_deviation = 0.0;  // float mode only
    // Hypotheses the check cannot decide (reported, not verified).
    std::vector<std::string> unchecked;
};

class PiecewiseLinearMap {
    std::vector<Coord> breakpoints_;  // size r+1
    std::vector<Branch> branches_;    // size r
    bool exact_ = false;

    void validate() const;

  public:
    PiecewiseLinearMap(std::vector<Coord> breakpoints, std::vector<Branch> branches);

    std::size_t branch_count() const { return branches_.size(); }
    const std::vector<Coord>& breakpoints() const { return breakpoints_; }
    const std::vector<Branch>& branches() const { return branches_; }
    const Branch& branch(std::size_t i) const { return branches_[i]; }

    /// True when all breakpoints, slopes and intercepts are exact rationals.
    bool is_exact() const { return exact_; }

    /// Index of the branch whose half-open interval contains x (x = 1 -> last).
    std::size_t branch_index_at(double x) const;
    std::size_t branch_index_at(const Rational& x) const;

    double evaluate(double x) const;
    Rational evaluate(const Rational& x) const;

    SlopeClass derivative_magnitude(double x) const;
    SlopeClass derivative_magnitude(const Rational& x) const;

    /// Integral of log|f'| against Lebesgue measure (a finite branch sum).
    double lyapunov_exponent() const;

    /// Checks the transfer-operator identity sum_{f(y)=x} 1/|f'(y)| = 1 a.e.
    InvarianceReport verify_lebesgue_invariance() const;
};

}  // namespace cgentropy
