// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file slope.hpp
 * @brief Exact classification of slope magnitudes |f'|.
 *
 * The arithmetic nature of a slope (integer, reduced fraction q/p, or
 * irrational) decides the boundary-cell entropy contribution, so it must be
 * an exact input-level fact. Irrationality is never inferred from a float:
 * irrational slopes are declared by the caller and carried as a double
 * approximation plus a label.
 */

#include "cgentropy/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cgentropy {

enum class SlopeKind { Integer, Rational, Irrational };

class SlopeClass {
    SlopeKind kind_;
    Rational exact_;     // magnitude, valid for Integer/Rational kinds
    double approx_;      // magnitude as double, always valid
    std::string label_;  // human-readable description for Irrational

    SlopeClass(SlopeKind kind, Rational exact, double approx, std::string label)
        : kind_(kind), exact_(std::move(exact)), approx_(approx), label_(std::move(label)) {}

  public:
    /// Classifies an exact rational magnitude (> 0) as Integer or Rational.
    static SlopeClass from_rational(const Rational& magnitude) {
        if (!magnitude.is_positive())
            throw std::invalid_argument("SlopeClass: magnitude must be positive");
        SlopeKind kind = magnitude.is_integer() ? SlopeKind::Integer : SlopeKind::Rational;
        return SlopeClass(kind, magnitude, magnitude.to_double(), "");
    }

    static SlopeClass integer(std::int64_t magnitude) {
        return from_rational(Rational(magnitude));
    }

    /// Declares an irrational magnitude; `approx` should carry full double precision.
    static SlopeClass irrational(double approx, std::string label) {
        if (!(approx > 0.0))
            throw std::invalid_argument("SlopeClass: magnitude must be positive");
        return SlopeClass(SlopeKind::Irrational, Rational(), approx, std::move(label));
    }

    SlopeKind kind() const { return kind_; }
    bool is_exact() const { return kind_ != SlopeKind::Irrational; }

    /// Magnitude as double (approximation for Irrational, exact conversion otherwise).
    double magnitude() const { return approx_; }

    const Rational& magnitude_rational() const {
        if (!is_exact())
            throw std::logic_error("SlopeClass: irrational slope has no exact magnitude");
        return exact_;
    }

    /// Reduced denominator p of the magnitude; 1 for Integer kind.
    const BigInt& denominator() const { return magnitude_rational().den(); }

    const std::string& label() const { return label_; }

    std::string describe() const {
        if (kind_ == SlopeKind::Irrational)
            return label_.empty() ? std::to_string(approx_) : label_;
        return exact_.to_string();
    }

    bool operator==(const SlopeClass& o) const {
        if (kind_ != o.kind_) return false;
        if (kind_ == SlopeKind::Irrational) return approx_ == o.approx_ && label_ == o.label_;
        return exact_ == o.exact_;
    }
};

}  // namespace cgentropy
