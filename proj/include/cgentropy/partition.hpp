// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file partition.hpp
 * @brief Uniform equivolume partitions of [0,1] and the cell projection.
 *
 * Only the uniform Lebesgue partition x_n = n/N is constructible. Cells are
 * A^(n) = [x_{n-1}, x_n) for n < N and A^(N) = [x_{N-1}, 1], indexed 1..N.
 */

#include "cgentropy/rational.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cgentropy {

struct Cell {
    Rational lower;
    Rational upper;
    bool closed_right = false;  // true only for the last cell
};

class EquivolumePartition {
    std::int64_t n_ = 1;

    explicit EquivolumePartition(std::int64_t n) : n_(n) {}

  public:
    static EquivolumePartition uniform(std::int64_t n) {
        if (n < 1) throw std::invalid_argument("partition: N must be >= 1");
        return EquivolumePartition(n);
    }

    std::int64_t size() const { return n_; }

    /// Exact endpoint x_n = n/N, 0 <= n <= N.
    Rational endpoint(std::int64_t n) const {
        if (n < 0 || n > n_) throw std::out_of_range("partition: endpoint index");
        return Rational(n, n_);
    }

    Cell cell(std::int64_t n) const {
        if (n < 1 || n > n_) throw std::out_of_range("partition: cell index");
        return Cell{Rational(n - 1, n_), Rational(n, n_), n == n_};
    }

    /// Cell index of x under the half-open convention; x = 1 maps to N.
    std::int64_t project(const Rational& x) const {
        if (x.is_negative() || Rational(1) < x) throw std::domain_error("partition: point outside [0,1]");
        BigInt idx = (x * Rational(n_)).floor() + 1;
        if (idx > n_) idx = n_;
        return idx.convert_to<std::int64_t>();
    }

    std::int64_t project(double x) const {
        if (x < 0.0 || x > 1.0) throw std::domain_error("partition: point outside [0,1]");
        auto idx = static_cast<std::int64_t>(std::floor(x * static_cast<double>(n_))) + 1;
        if (idx > n_) idx = n_;
        if (idx < 1) idx = 1;
        return idx;
    }
};

}  // namespace cgentropy
