// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/map.hpp"

#include <algorithm>
#include <cmath>

namespace cgentropy {

namespace {

constexpr double kImageTolerance = 1e-12;   // float-mode slack for image-in-[0,1] checks
constexpr double kSumTolerance = 1e-9;      // float-mode slack for covering sums
constexpr double kDegenerate = 1e-14;       // float-mode zero-length segment guard

// Image endpoints of branch i over its closed domain, low then high.
std::pair<double, double> branch_image(const PiecewiseLinearMap& f, std::size_t i) {
    const Branch& b = f.branch(i);
    double lo = f.breakpoints()[i].value;
    double hi = f.breakpoints()[i + 1].value;
    double y0 = b.slope_value() * lo + b.intercept.value;
    double y1 = b.slope_value() * hi + b.intercept.value;
    return {std::min(y0, y1), std::max(y0, y1)};
}

std::pair<Rational, Rational> branch_image_exact(const PiecewiseLinearMap& f, std::size_t i) {
    const Branch& b = f.branch(i);
    Rational s = b.slope_rational();
    const Rational& c = *b.intercept.exact;
    Rational y0 = s * (*f.breakpoints()[i].exact) + c;
    Rational y1 = s * (*f.breakpoints()[i + 1].exact) + c;
    return {min(y0, y1), max(y0, y1)};
}

}  // namespace

PiecewiseLinearMap::PiecewiseLinearMap(std::vector<Coord> breakpoints, std::vector<Branch> branches)
    : breakpoints_(std::move(breakpoints)), branches_(std::move(branches)) {
    exact_ = std::all_of(breakpoints_.begin(), breakpoints_.end(),
                         [](const Coord& c) { return c.is_exact(); }) &&
             std::all_of(branches_.begin(), branches_.end(),
                         [](const Branch& b) { return b.is_exact(); });
    validate();
}

void PiecewiseLinearMap::validate() const {
    if (branches_.empty()) throw std::invalid_argument("map: needs at least one branch");
    if (breakpoints_.size() != branches_.size() + 1)
        throw std::invalid_argument("map: breakpoint/branch count mismatch");

    if (exact_) {
        if (!breakpoints_.front().exact->is_zero() || *breakpoints_.back().exact != Rational(1))
            throw std::invalid_argument("map: domain must be exactly [0,1]");
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
            if (!(*breakpoints_[i].exact < *breakpoints_[i + 1].exact))
                throw std::invalid_argument("map: breakpoints must be strictly increasing");
        for (std::size_t i = 0; i < branches_.size(); ++i) {
            auto [lo, hi] = branch_image_exact(*this, i);
            if (lo.is_negative() || Rational(1) < hi)
                throw std::invalid_argument("map: branch " + std::to_string(i + 1) +
                                            " image leaves [0,1]");
        }
    } else {
        if (breakpoints_.front().value != 0.0 || breakpoints_.back().value != 1.0)
            throw std::invalid_argument("map: domain must be [0,1]");
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
            if (!(breakpoints_[i].value < breakpoints_[i + 1].value))
                throw std::invalid_argument("map: breakpoints must be strictly increasing");
        for (std::size_t i = 0; i < branches_.size(); ++i) {
            auto [lo, hi] = branch_image(*this, i);
            if (lo < -kImageTolerance || hi > 1.0 + kImageTolerance)
                throw std::invalid_argument("map: branch " + std::to_string(i + 1) +
                                            " image leaves [0,1]");
        }
    }
}

std::size_t PiecewiseLinearMap::branch_index_at(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("map: point outside [0,1]");
    std::size_t i = 0;
    while (i + 1 < branches_.size() && x >= breakpoints_[i + 1].value) ++i;
    return i;
}

std::size_t PiecewiseLinearMap::branch_index_at(const Rational& x) const {
    if (x.is_negative() || Rational(1) < x) throw std::domain_error("map: point outside [0,1]");
    std::size_t i = 0;
    while (i + 1 < branches_.size() && *breakpoints_[i + 1].exact <= x) ++i;
    return i;
}

double PiecewiseLinearMap::evaluate(double x) const {
    const Branch& b = branches_[branch_index_at(x)];
    double y = b.slope_value() * x + b.intercept.value;
    return std::clamp(y, 0.0, 1.0);
}

Rational PiecewiseLinearMap::evaluate(const Rational& x) const {
    if (!exact_) throw std::logic_error("map: exact evaluation on a float-mode map");
    const Branch& b = branches_[branch_index_at(x)];
    return b.slope_rational() * x + *b.intercept.exact;
}

SlopeClass PiecewiseLinearMap::derivative_magnitude(double x) const {
    for (const Coord& a : breakpoints_)
        if (x == a.value) throw BreakpointError("derivative undefined at breakpoint");
    return branches_[branch_index_at(x)].magnitude;
}

SlopeClass PiecewiseLinearMap::derivative_magnitude(const Rational& x) const {
    if (!exact_) throw std::logic_error("map: exact query on a float-mode map");
    for (const Coord& a : breakpoints_)
        if (x == *a.exact) throw BreakpointError("derivative undefined at breakpoint");
    return branches_[branch_index_at(x)].magnitude;
}

double PiecewiseLinearMap::lyapunov_exponent() const {
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        double len = exact_ ? (*breakpoints_[i + 1].exact - *breakpoints_[i].exact).to_double()
                            : breakpoints_[i + 1].value - breakpoints_[i].value;
        double term = len * std::log(branches_[i].magnitude.magnitude());
        double t = sum + term;  // Neumaier compensation
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

InvarianceReport PiecewiseLinearMap::verify_lebesgue_invariance() const {
    InvarianceReport report;
    report.exact_mode = exact_;
    report.unchecked = {"ergodicity of Lebesgue measure under f",
                        "uniqueness of the absolutely continuous invariant measure"};

    if (exact_) {
        std::vector<Rational> cuts{Rational(0), Rational(1)};
        std::vector<std::pair<Rational, Rational>> images;
        images.reserve(branches_.size());
        for (std::size_t i = 0; i < branches_.size(); ++i) {
            images.push_back(branch_image_exact(*this, i));
            cuts.push_back(images.back().first);
            cuts.push_back(images.back().second);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        report.holds = true;
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            if (!(cuts[k] < cuts[k + 1])) continue;
            Rational mid = (cuts[k] + cuts[k + 1]) / Rational(2);
            Rational sum(0);
            for (std::size_t i = 0; i < branches_.size(); ++i)
                if (images[i].first < mid && mid < images[i].second)
                    sum += branches_[i].magnitude.magnitude_rational().reciprocal();
            if (sum != Rational(1)) {
                report.holds = false;
                report.witness_exact = {cuts[k], cuts[k + 1]};
                report.witness = {cuts[k].to_double(), cuts[k + 1].to_double()};
                break;
            }
        }
        return report;
    }

    std::vector<double> cuts{0.0, 1.0};
    std::vector<std::pair<double, double>> images;
    images.reserve(branches_.size());
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        images.push_back(branch_image(*this, i));
        cuts.push_back(images.back().first);
        cuts.push_back(images.back().second);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    report.holds = true;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        if (cuts[k + 1] - cuts[k] <= kDegenerate) continue;
        double mid = 0.5 * (cuts[k] + cuts[k + 1]);
        double sum = 0.0;
        for (std::size_t i = 0; i < branches_.size(); ++i)
            if (images[i].first < mid && mid < images[i].second)
                sum += 1.0 / branches_[i].magnitude.magnitude();
        report.max_deviation = std::max(report.max_deviation, std::abs(sum - 1.0));
        if (std::abs(sum - 1.0) > kSumTolerance && report.holds) {
            report.holds = false;
            report.witness = {cuts[k], cuts[k + 1]};
        }
    }
    return report;
}

}  // namespace cgentropy
