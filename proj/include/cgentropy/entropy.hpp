// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file entropy.hpp
 * @brief Shannon entropy of the coarse-grained chain and its fine-graining limit.
 *
 * H_N = (1/N) sum_{n,n'} phi(p(n'|n)) with phi(t) = -t log t, natural log.
 * As N grows this converges to lambda(f) + D(f), where the defect
 * D(f) = 2 * integral of rho(|f'|)/|f'| collects the boundary-cell
 * contribution rho(m): 0 for integer m, (1/p) sum phi(n/p) for reduced q/p,
 * and 1/4 for irrational m (the mean of phi over equidistributed fractional
 * parts).
 *
 * All entropies are in nats; callers wanting bits divide by log 2 at output.
 */

#include "cgentropy/map.hpp"
#include "cgentropy/slope.hpp"
#include "cgentropy/transition.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cgentropy {

/// phi(t) = -t log t on [0,1], with phi(0) = phi(1) = 0.
double phi(double t);

double shannon_entropy(const ExactMatrix& p);
double shannon_entropy(const FloatMatrix& p);

/// Entropy from a distinct-value histogram of transition probabilities.
/// Exact multiplicity weights keep structured matrices free of N-term float
/// summation error (an all-(1/2,1/2) matrix yields exactly log 2).
double shannon_entropy_from_distinct(const std::vector<std::pair<Rational, std::int64_t>>& distinct,
                                     std::int64_t n);

/// Boundary-cell entropy contribution; dispatches on the exact slope kind.
double rho(const SlopeClass& s);

/// D(f) = 2 * sum_i (a_i - a_{i-1}) * rho(|s_i|)/|s_i|.
double entropy_defect(const PiecewiseLinearMap& f);

/// lambda(f) + D(f), the fine-graining limit of the chain entropy.
double predicted_limit(const PiecewiseLinearMap& f);

/// Row entropy of an interior cell: log m + (phi(a) + phi(b))/m.
double cell_entropy_closed_form(double m, double a, double b);

/// (1/count) * sum_{n=1..count} phi({m n}); numerical oracle for rho.
/// For exact slope kinds the fractional parts are computed by modular
/// arithmetic, so a count that is a multiple of p reproduces rho bit-exactly.
double equidistribution_average(const SlopeClass& s, std::int64_t count);

/// Two-branch map with slopes +m and -l, 1/m + 1/l = 1, breakpoint 1/m.
PiecewiseLinearMap skew_tent(const SlopeClass& m);

/// Symmetric tent map (m = l = 2).
PiecewiseLinearMap tent_map();

struct EntropyReport {
    std::int64_t n = 0;
    double h_delta = 0.0;
    double lyapunov = 0.0;
    double defect = 0.0;
    double predicted_limit = 0.0;
    double gap = 0.0;  // h_delta - predicted_limit

    static EntropyReport make(const PiecewiseLinearMap& f, std::int64_t n, double h_delta);
    static std::string csv_header();
    std::string csv_row() const;
};

}  // namespace cgentropy
