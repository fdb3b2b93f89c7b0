// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/entropy.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace cgentropy {

namespace {

struct NeumaierSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

// sum_{j=1}^{p-1} phi(j/p); shared by rho and the rational-orbit average so
// the two agree bit-for-bit when the average reduces to it.
double phi_residue_sum(std::int64_t p) {
    NeumaierSum s;
    for (std::int64_t j = 1; j < p; ++j) s.add(phi(static_cast<double>(j) / static_cast<double>(p)));
    return s.total();
}

std::int64_t checked_denominator(const SlopeClass& s) {
    const BigInt& p = s.denominator();
    if (p > 10'000'000) throw std::invalid_argument("rho: denominator too large to enumerate");
    return p.convert_to<std::int64_t>();
}

}  // namespace

double phi(double t) {
    if (t < 0.0 || t > 1.0) throw std::domain_error("phi: argument outside [0,1]");
    if (t == 0.0 || t == 1.0) return 0.0;
    return -t * std::log(t);
}

double shannon_entropy_from_distinct(const std::vector<std::pair<Rational, std::int64_t>>& distinct,
                                     std::int64_t n) {
    NeumaierSum h;
    for (const auto& [value, count] : distinct)
        h.add(Rational(BigInt(count), BigInt(n)).to_double() * phi(value.to_double()));
    double result = h.total();
    if (result < 0.0 && result > -1e-12) result = 0.0;
    return result;
}

double shannon_entropy(const ExactMatrix& p) {
    std::map<Rational, std::int64_t> groups;
    for (const auto& row : p.rows())
        for (const auto& [col, value] : row) ++groups[value];
    std::vector<std::pair<Rational, std::int64_t>> distinct(groups.begin(), groups.end());
    return shannon_entropy_from_distinct(distinct, p.size());
}

double shannon_entropy(const FloatMatrix& p) {
    NeumaierSum total;
    for (const auto& row : p.rows())
        for (const auto& [col, value] : row) total.add(phi(value));
    return total.total() / static_cast<double>(p.size());
}

double rho(const SlopeClass& s) {
    if (s.magnitude() < 1.0 && (!s.is_exact() || s.magnitude_rational() < Rational(1)))
        throw std::domain_error("rho: slope magnitude must be >= 1");
    switch (s.kind()) {
        case SlopeKind::Integer:
            return 0.0;
        case SlopeKind::Rational: {
            std::int64_t p = checked_denominator(s);
            return phi_residue_sum(p) / static_cast<double>(p);
        }
        case SlopeKind::Irrational:
            return 0.25;
    }
    return 0.0;  // unreachable
}

double entropy_defect(const PiecewiseLinearMap& f) {
    NeumaierSum d;
    const auto& bps = f.breakpoints();
    for (std::size_t i = 0; i < f.branch_count(); ++i) {
        double len = f.is_exact() ? (*bps[i + 1].exact - *bps[i].exact).to_double()
                                  : bps[i + 1].value - bps[i].value;
        double r = rho(f.branch(i).magnitude);
        if (r == 0.0) continue;  // integer slopes contribute exactly nothing
        d.add(len * 2.0 * r / f.branch(i).magnitude.magnitude());
    }
    return d.total();
}

double predicted_limit(const PiecewiseLinearMap& f) {
    return f.lyapunov_exponent() + entropy_defect(f);
}

double cell_entropy_closed_form(double m, double a, double b) {
    if (m < 1.0) throw std::domain_error("cell_entropy_closed_form: m must be >= 1");
    return std::log(m) + (phi(a) + phi(b)) / m;
}

double equidistribution_average(const SlopeClass& s, std::int64_t count) {
    if (count < 1) throw std::invalid_argument("equidistribution_average: count must be >= 1");
    switch (s.kind()) {
        case SlopeKind::Integer:
            return 0.0;  // {m n} = 0 for every n
        case SlopeKind::Rational: {
            const std::int64_t p = checked_denominator(s);
            const std::int64_t q = (s.magnitude_rational().num() % p).convert_to<std::int64_t>();
            if (count % p == 0) return phi_residue_sum(p) / static_cast<double>(p);
            // Residues q*n mod p sweep all of {0..p-1} each cycle (q, p coprime).
            std::vector<std::int64_t> extra(static_cast<std::size_t>(p), 0);
            for (std::int64_t n = 1; n <= count % p; ++n) ++extra[static_cast<std::size_t>((q * (n % p)) % p)];
            const std::int64_t cycles = count / p;
            NeumaierSum total;
            for (std::int64_t j = 1; j < p; ++j)
                total.add(static_cast<double>(cycles + extra[static_cast<std::size_t>(j)]) *
                          phi(static_cast<double>(j) / static_cast<double>(p)));
            return total.total() / static_cast<double>(count);
        }
        case SlopeKind::Irrational: {
            const double m = s.magnitude();
            NeumaierSum total;
            for (std::int64_t n = 1; n <= count; ++n) {
                double x = m * static_cast<double>(n);
                total.add(phi(x - std::floor(x)));
            }
            return total.total() / static_cast<double>(count);
        }
    }
    return 0.0;  // unreachable
}

PiecewiseLinearMap skew_tent(const SlopeClass& m) {
    if (m.is_exact()) {
        const Rational& mag = m.magnitude_rational();
        if (!(Rational(1) < mag)) throw std::invalid_argument("skew_tent: m must be > 1");
        Rational l = mag / (mag - Rational(1));
        Rational bp = mag.reciprocal();
        std::vector<Coord> bps{Coord::of(Rational(0)), Coord::of(bp), Coord::of(Rational(1))};
        Branch up{+1, m, Coord::of(Rational(0))};
        Branch down{-1, SlopeClass::from_rational(l), Coord::of(l)};
        return PiecewiseLinearMap(std::move(bps), {up, down});
    }
    const double mv = m.magnitude();
    if (!(mv > 1.0)) throw std::invalid_argument("skew_tent: m must be > 1");
    const double l = mv / (mv - 1.0);
    std::string l_label = m.label().empty() ? "" : m.label() + "/(" + m.label() + "-1)";
    std::vector<Coord> bps{Coord::of(Rational(0)), Coord::approx(1.0 / mv), Coord::of(Rational(1))};
    Branch up{+1, m, Coord::of(Rational(0))};
    Branch down{-1, SlopeClass::irrational(l, std::move(l_label)), Coord::approx(l)};
    return PiecewiseLinearMap(std::move(bps), {up, down});
}

PiecewiseLinearMap tent_map() { return skew_tent(SlopeClass::integer(2)); }

EntropyReport EntropyReport::make(const PiecewiseLinearMap& f, std::int64_t n, double h_delta) {
    EntropyReport r;
    r.n = n;
    r.h_delta = h_delta;
    r.lyapunov = f.lyapunov_exponent();
    r.defect = entropy_defect(f);
    r.predicted_limit = r.lyapunov + r.defect;
    r.gap = r.h_delta - r.predicted_limit;
    const double bound = std::log(static_cast<double>(n)) + 1e-9;
    if (h_delta < -1e-9 || h_delta > bound)
        throw std::logic_error("EntropyReport: H outside [0, log N]");
    return r;
}

std::string EntropyReport::csv_header() {
    return "N,H_delta,lyapunov,defect,predicted_limit,gap";
}

std::string EntropyReport::csv_row() const {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%lld,%.17g,%.17g,%.17g,%.17g,%.17g",
                  static_cast<long long>(n), h_delta, lyapunov, defect, predicted_limit, gap);
    return buf;
}

}  // namespace cgentropy
