// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file transition.hpp
 * @brief The coarse-grained Markov chain: exact and float transition matrices.
 *
 * Entry (n, n') is N * mu(f^{-1}(A^(n')) /\ A^(n)) for the uniform partition.
 * Rows whose closed cell lies inside a single branch are produced by a scaled
 * integer fast path (the per-cell closed form 1/m, a/m, b/m); cells containing
 * a breakpoint take the generic preimage route. Both routes agree exactly in
 * rational mode, which the tests pin down.
 *
 * Matrices are sparse by construction: a row holds at most ceil(|s|) + 1
 * entries for cells interior to a branch.
 */

#include "cgentropy/map.hpp"
#include "cgentropy/partition.hpp"
#include "cgentropy/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace cgentropy {

template <class T>
class TransitionMatrix {
  public:
    using Entry = std::pair<std::int64_t, T>;  // (column 1..N, probability)
    using Row = std::vector<Entry>;

    static constexpr bool exact_mode = !std::is_floating_point_v<T>;

    TransitionMatrix() : n_(0) {}
    TransitionMatrix(std::int64_t n, std::vector<Row> rows, std::vector<std::int64_t> straddling)
        : n_(n), rows_(std::move(rows)), straddling_(std::move(straddling)) {}

    std::int64_t size() const { return n_; }
    const Row& row(std::int64_t n) const { return rows_[static_cast<std::size_t>(n - 1)]; }
    const std::vector<Row>& rows() const { return rows_; }

    /// Rows (1-based) built via the generic path because their cell meets a breakpoint.
    const std::vector<std::int64_t>& straddling_rows() const { return straddling_; }

    T row_sum(std::int64_t n) const {
        T s{};
        for (const auto& [col, p] : row(n)) s += p;
        return s;
    }

    std::vector<T> column_sums() const {
        std::vector<T> sums(static_cast<std::size_t>(n_), T{});
        for (const Row& r : rows_)
            for (const auto& [col, p] : r) sums[static_cast<std::size_t>(col - 1)] += p;
        return sums;
    }

    bool operator==(const TransitionMatrix& o) const {
        return n_ == o.n_ && rows_ == o.rows_;
    }

  private:
    std::int64_t n_;
    std::vector<Row> rows_;
    std::vector<std::int64_t> straddling_;
};

using ExactMatrix = TransitionMatrix<Rational>;
using FloatMatrix = TransitionMatrix<double>;

/// Closed interval of [0,1]; endpoints carry no measure, so closedness is immaterial.
struct IntervalR {
    Rational lo, hi;
};
struct IntervalF {
    double lo = 0.0, hi = 0.0;
};

/// mu( f^{-1}(B) /\ A ), the preimage-measure factor of the transition kernel.
Rational preimage_measure(const PiecewiseLinearMap& f, const IntervalR& b, const IntervalR& a);
double preimage_measure(const PiecewiseLinearMap& f, const IntervalF& b, const IntervalF& a);

/// One row of the transition matrix via the generic preimage route (any cell).
ExactMatrix::Row generic_row(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                             std::int64_t n);
FloatMatrix::Row generic_row_float(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                                   std::int64_t n);

ExactMatrix build_transition_matrix(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                                    int threads = 1);
FloatMatrix build_transition_matrix_float(const PiecewiseLinearMap& f,
                                          const EquivolumePartition& part, int threads = 1);

/// Column sums all equal 1; with row-stochasticity this is uniform stationarity.
bool verify_doubly_stochastic(const ExactMatrix& m);
bool verify_doubly_stochastic(const FloatMatrix& m, double tol = 1e-12);

/// Sparse triplet CSV: "row,col,num,den" (exact) or "row,col,value" (float).
void dump_matrix_csv(const ExactMatrix& m, std::ostream& out);
void dump_matrix_csv(const FloatMatrix& m, std::ostream& out);

/// Aggregate facts about one exact chain, computed row-streaming so sweeps to
/// large N never hold a full matrix.
struct ChainStats {
    std::int64_t n = 0;
    double shannon_entropy = 0.0;
    std::int64_t straddling_rows = 0;
    std::int64_t min_row_entries = 0;
    std::int64_t max_row_entries = 0;
    bool rows_stochastic = false;    // every row sums to exactly 1
    bool doubly_stochastic = false;  // meaningful when columns were checked
    bool columns_checked = false;
    // Distinct transition probabilities with multiplicities, ascending.
    std::vector<std::pair<Rational, std::int64_t>> distinct;
};

ChainStats exact_chain_stats(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                             bool check_columns);

}  // namespace cgentropy
