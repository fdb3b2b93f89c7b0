// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/transition.hpp"

#include "cgentropy/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <thread>
#include <unordered_map>

namespace cgentropy {

namespace {

// ---------------------------------------------------------------------------
// Generic preimage route (exact and float). Also serves straddling cells.
// ---------------------------------------------------------------------------

constexpr double kFloatEntryGuard = 1e-15;  // drop float entries below this

struct BranchGeomR {
    Rational dom_lo, dom_hi, slope, intercept, mag;
};

BranchGeomR branch_geom(const PiecewiseLinearMap& f, std::size_t i) {
    const Branch& b = f.branch(i);
    return BranchGeomR{*f.breakpoints()[i].exact, *f.breakpoints()[i + 1].exact,
                       b.slope_rational(), *b.intercept.exact, b.magnitude.magnitude_rational()};
}

}  // namespace

Rational preimage_measure(const PiecewiseLinearMap& f, const IntervalR& b, const IntervalR& a) {
    if (!f.is_exact()) throw std::logic_error("preimage_measure: exact call on float-mode map");
    Rational total(0);
    if (!(a.lo < a.hi) || !(b.lo < b.hi)) return total;
    for (std::size_t i = 0; i < f.branch_count(); ++i) {
        BranchGeomR g = branch_geom(f, i);
        Rational dlo = max(a.lo, g.dom_lo), dhi = min(a.hi, g.dom_hi);
        if (!(dlo < dhi)) continue;
        Rational y0 = g.slope * dlo + g.intercept;
        Rational y1 = g.slope * dhi + g.intercept;
        Rational ov = min(max(y0, y1), b.hi) - max(min(y0, y1), b.lo);
        if (ov.is_positive()) total += ov / g.mag;
    }
    return total;
}

double preimage_measure(const PiecewiseLinearMap& f, const IntervalF& b, const IntervalF& a) {
    double total = 0.0;
    if (!(a.lo < a.hi) || !(b.lo < b.hi)) return total;
    for (std::size_t i = 0; i < f.branch_count(); ++i) {
        const Branch& br = f.branch(i);
        double dlo = std::max(a.lo, f.breakpoints()[i].value);
        double dhi = std::min(a.hi, f.breakpoints()[i + 1].value);
        if (!(dlo < dhi)) continue;
        double y0 = br.slope_value() * dlo + br.intercept.value;
        double y1 = br.slope_value() * dhi + br.intercept.value;
        double ov = std::min(std::max(y0, y1), b.hi) - std::max(std::min(y0, y1), b.lo);
        if (ov > 0.0) total += ov / br.magnitude.magnitude();
    }
    return total;
}

ExactMatrix::Row generic_row(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                             std::int64_t n) {
    const std::int64_t N = part.size();
    Cell cell = part.cell(n);
    std::map<std::int64_t, Rational> acc;
    for (std::size_t i = 0; i < f.branch_count(); ++i) {
        BranchGeomR g = branch_geom(f, i);
        Rational dlo = max(cell.lower, g.dom_lo), dhi = min(cell.upper, g.dom_hi);
        if (!(dlo < dhi)) continue;
        Rational y0 = g.slope * dlo + g.intercept;
        Rational y1 = g.slope * dhi + g.intercept;
        Rational ilo = min(y0, y1), ihi = max(y0, y1);
        std::int64_t k = ((ilo * Rational(N)).floor() + 1).convert_to<std::int64_t>();
        if (k < 1) k = 1;
        for (; k <= N; ++k) {
            Rational cl(k - 1, N);
            if (!(cl < ihi)) break;
            Rational ov = min(ihi, Rational(k, N)) - max(ilo, cl);
            if (ov.is_positive()) acc[k] += Rational(N) * ov / g.mag;
        }
    }
    ExactMatrix::Row row(acc.begin(), acc.end());
    return row;
}

FloatMatrix::Row generic_row_float(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                                   std::int64_t n) {
    // Scaled coordinates t = N x throughout: keeps interval errors at the
    // long-double ulp of the scaled magnitudes instead of N times that.
    const std::int64_t N = part.size();
    const auto Nl = static_cast<long double>(N);
    const auto cell_lo = static_cast<long double>(n - 1);
    const auto cell_hi = static_cast<long double>(n);
    std::map<std::int64_t, double> acc;
    for (std::size_t i = 0; i < f.branch_count(); ++i) {
        const Branch& br = f.branch(i);
        long double dlo = std::max(cell_lo, Nl * f.breakpoints()[i].value);
        long double dhi = std::min(cell_hi, Nl * f.breakpoints()[i + 1].value);
        if (!(dlo < dhi)) continue;
        long double s = br.slope_value();
        long double c = Nl * static_cast<long double>(br.intercept.value);
        long double y0 = s * dlo + c, y1 = s * dhi + c;
        long double ilo = std::min(y0, y1), ihi = std::max(y0, y1);
        auto k = static_cast<std::int64_t>(std::floor(ilo)) + 1;
        if (k < 1) k = 1;
        for (; k <= N; ++k) {
            auto cl = static_cast<long double>(k - 1);
            if (!(cl < ihi)) break;
            long double ov = std::min(ihi, static_cast<long double>(k)) - std::max(ilo, cl);
            if (ov > 0.0L)
                acc[k] += static_cast<double>(ov / static_cast<long double>(br.magnitude.magnitude()));
        }
    }
    // Self-normalize, as the fast path does by construction: image mass that
    // float rounding pushes past the domain edge is redistributed pro rata.
    double total = 0.0;
    for (auto& [col, p] : acc) total += p;
    const double scale = (total > 0.0 && std::abs(total - 1.0) <= 1e-9) ? 1.0 / total : 1.0;
    FloatMatrix::Row row;
    for (auto& [col, p] : acc)
        if (p * scale > kFloatEntryGuard) row.emplace_back(col, std::min(p * scale, 1.0));
    return row;
}

// ---------------------------------------------------------------------------
// Exact fast path: scaled integer kernel.
//
// In scaled coordinates t = N x a cell is [n-1, n] and the branch image of a
// full cell is [lo, hi] = [y(n-1), y(n)] sorted, where y(t) = (A t + B)/L with
// integer A, B. Column overlaps are then pure integer arithmetic; the kernel
// runs on int64 (with __int128 intermediates) whenever precomputed bounds
// allow, and on cpp_int otherwise.
// ---------------------------------------------------------------------------

namespace {

template <class I>
struct PlanBranch {
    I A{}, B{};        // scaled image endpoints: y(t) = (A t + B) / L
    I abs_A{};         // |A| = scaled image length of one cell
    I mn{}, md{};      // |slope| = mn/md, reduced
    std::int64_t first = 1, last = 0;  // rows fully inside this branch
};

template <class I>
struct Plan {
    I L{};
    I D{};  // common column-sum denominator: L * lcm(mn_i)
    std::vector<PlanBranch<I>> branches;
};

struct PlanInfo {
    Plan<BigInt> big;
    std::vector<std::int64_t> straddle;  // ascending rows not inside any branch
    bool fits_int64 = false;
};

PlanInfo make_plan(const PiecewiseLinearMap& f, const EquivolumePartition& part) {
    if (!f.is_exact())
        throw std::invalid_argument("transition: exact mode requires all-rational map data");
    const std::int64_t N = part.size();

    PlanInfo info;
    Plan<BigInt>& plan = info.big;
    plan.L = 1;
    for (const Branch& b : f.branches()) {
        plan.L = boost::multiprecision::lcm(plan.L, b.magnitude.magnitude_rational().den());
        plan.L = boost::multiprecision::lcm(plan.L, b.intercept.exact->den());
    }
    BigInt lcm_mn = 1;

    BigInt max_abs = 0;
    auto bump = [&max_abs](const BigInt& v) {
        if (v > max_abs) max_abs = v;
    };
    for (std::size_t i = 0; i < f.branch_count(); ++i) {
        const Branch& b = f.branch(i);
        PlanBranch<BigInt> pb;
        const Rational mag = b.magnitude.magnitude_rational();
        pb.mn = mag.num();
        pb.md = mag.den();
        pb.A = (b.sign < 0 ? BigInt(-pb.mn) : pb.mn) * (plan.L / pb.md);
        // N * c * L is an integer because L is a multiple of c's denominator.
        pb.B = (Rational(N) * (*b.intercept.exact) * Rational(plan.L)).num();
        pb.abs_A = pb.A < 0 ? BigInt(-pb.A) : pb.A;

        Rational t_lo = Rational(N) * (*f.breakpoints()[i].exact);
        Rational t_hi = Rational(N) * (*f.breakpoints()[i + 1].exact);
        BigInt first = (t_lo + Rational(1)).ceil();
        BigInt last = t_hi.floor();
        if (first < 1) first = 1;
        if (last > N) last = N;
        pb.first = first.convert_to<std::int64_t>();
        pb.last = last.convert_to<std::int64_t>();

        bump(pb.abs_A * N + boost::multiprecision::abs(pb.B));
        bump(pb.abs_A * pb.md);
        bump(plan.L * pb.md);
        bump(plan.L * pb.mn);
        lcm_mn = boost::multiprecision::lcm(lcm_mn, pb.mn);
        plan.branches.push_back(std::move(pb));
    }
    plan.D = plan.L * lcm_mn;
    bump(plan.D);

    std::int64_t ptr = 1;
    for (const auto& pb : plan.branches) {
        if (pb.first > pb.last) continue;
        for (std::int64_t n = ptr; n < pb.first; ++n) info.straddle.push_back(n);
        ptr = pb.last + 1;
    }
    for (std::int64_t n = ptr; n <= N; ++n) info.straddle.push_back(n);

    info.fits_int64 = max_abs < (BigInt(1) << 61);
    return info;
}

template <class I>
Plan<I> narrow_plan(const Plan<BigInt>& big) {
    if constexpr (std::is_same_v<I, BigInt>) {
        return big;
    } else {
        Plan<I> plan;
        plan.L = big.L.convert_to<I>();
        plan.D = big.D.convert_to<I>();
        for (const auto& pb : big.branches)
            plan.branches.push_back(PlanBranch<I>{pb.A.convert_to<I>(), pb.B.convert_to<I>(),
                                                  pb.abs_A.convert_to<I>(), pb.mn.convert_to<I>(),
                                                  pb.md.convert_to<I>(), pb.first, pb.last});
        return plan;
    }
}

inline std::int64_t gcd_of(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline BigInt gcd_of(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

inline std::int64_t to_i64(std::int64_t v) { return v; }
inline std::int64_t to_i64(const BigInt& v) { return v.convert_to<std::int64_t>(); }

// One interior-cell row: image spans columns u..v; partial overlaps aL/L and
// bL/L at the ends, full cells between. single means the image fills exactly
// one cell (probability-1 transition).
template <class I>
struct FastRow {
    std::int64_t row = 0;
    std::size_t branch = 0;
    std::int64_t u = 0, v = 0;
    I aL{}, bL{};
    bool single = false;
};

template <class I, class Sink>
void run_fast_rows(const Plan<I>& plan, std::int64_t row_begin, std::int64_t row_end,
                   Sink&& sink) {
    FastRow<I> out;
    for (std::size_t bi = 0; bi < plan.branches.size(); ++bi) {
        const PlanBranch<I>& pb = plan.branches[bi];
        const std::int64_t lo_n = std::max(pb.first, row_begin);
        const std::int64_t hi_n = std::min(pb.last, row_end);
        if (lo_n > hi_n) continue;
        out.branch = bi;
        I y_prev = pb.A * I(lo_n - 1) + pb.B;
        for (std::int64_t n = lo_n; n <= hi_n; ++n) {
            I y_next = y_prev + pb.A;
            const I& lo = pb.A < 0 ? y_next : y_prev;
            const I& hi = pb.A < 0 ? y_prev : y_next;
            I u = I(floor_div(lo, plan.L)) + 1;
            I v = -I(floor_div(I(-hi), plan.L));
            out.row = n;
            if (u >= v) {
                out.u = out.v = to_i64(u);
                out.single = true;
            } else {
                out.u = to_i64(u);
                out.v = to_i64(v);
                out.aL = u * plan.L - lo;
                out.bL = hi - (v - 1) * plan.L;
                out.single = false;
            }
            sink(out);
            y_prev = y_next;
        }
    }
}

template <class I>
void append_row_entries(const Plan<I>& plan, const FastRow<I>& fr, ExactMatrix::Row& row) {
    row.clear();
    if (fr.single) {
        row.emplace_back(fr.u, Rational(1));
        return;
    }
    const PlanBranch<I>& pb = plan.branches[fr.branch];
    const I den = plan.L * pb.mn;
    {
        I num = fr.aL * pb.md;
        I g = gcd_of(num, den);
        row.emplace_back(fr.u, Rational(BigInt(num / g), BigInt(den / g)));
    }
    if (fr.v - fr.u > 1) {
        Rational inner(BigInt(pb.md), BigInt(pb.mn));  // already reduced
        for (std::int64_t col = fr.u + 1; col < fr.v; ++col) row.emplace_back(col, inner);
    }
    {
        I num = fr.bL * pb.md;
        I g = gcd_of(num, den);
        row.emplace_back(fr.v, Rational(BigInt(num / g), BigInt(den / g)));
    }
}

template <class I>
void materialize_rows(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                      const PlanInfo& info, std::vector<ExactMatrix::Row>& rows,
                      std::int64_t row_begin, std::int64_t row_end) {
    Plan<I> plan = narrow_plan<I>(info.big);
    run_fast_rows(plan, row_begin, row_end, [&](const FastRow<I>& fr) {
        append_row_entries(plan, fr, rows[static_cast<std::size_t>(fr.row - 1)]);
    });
    for (std::int64_t n : info.straddle)
        if (n >= row_begin && n <= row_end)
            rows[static_cast<std::size_t>(n - 1)] = generic_row(f, part, n);
}

void run_blocks(std::int64_t n, int threads, const std::function<void(std::int64_t, std::int64_t)>& work) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (threads == 1) {
        work(1, n);
        return;
    }
    std::vector<std::thread> pool;
    std::int64_t chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::int64_t b = 1 + t * chunk;
        std::int64_t e = std::min<std::int64_t>(n, b + chunk - 1);
        if (b > e) break;
        pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

ExactMatrix build_transition_matrix(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                                    int threads) {
    const std::int64_t N = part.size();
    PlanInfo info = make_plan(f, part);
    std::vector<ExactMatrix::Row> rows(static_cast<std::size_t>(N));
    auto work = [&](std::int64_t b, std::int64_t e) {
        if (info.fits_int64)
            materialize_rows<std::int64_t>(f, part, info, rows, b, e);
        else
            materialize_rows<BigInt>(f, part, info, rows, b, e);
    };
    run_blocks(N, threads, work);
    return ExactMatrix(N, std::move(rows), info.straddle);
}

FloatMatrix build_transition_matrix_float(const PiecewiseLinearMap& f,
                                          const EquivolumePartition& part, int threads) {
    const std::int64_t N = part.size();

    if (f.is_exact()) {
        // Rational data never meets float interval arithmetic: build exactly,
        // convert each probability once at the end.
        ExactMatrix exact = build_transition_matrix(f, part, threads);
        std::vector<FloatMatrix::Row> rows(static_cast<std::size_t>(N));
        for (std::int64_t n = 1; n <= N; ++n) {
            rows[static_cast<std::size_t>(n - 1)].reserve(exact.row(n).size());
            for (const auto& [col, p] : exact.row(n))
                rows[static_cast<std::size_t>(n - 1)].emplace_back(col, p.to_double());
        }
        return FloatMatrix(N, std::move(rows), exact.straddling_rows());
    }

    struct FloatBranch {
        long double A, B;
        std::int64_t first, last;
    };
    std::vector<FloatBranch> branches;
    std::vector<std::int64_t> straddle;
    {
        std::int64_t ptr = 1;
        for (std::size_t i = 0; i < f.branch_count(); ++i) {
            const Branch& b = f.branch(i);
            FloatBranch fb;
            fb.A = static_cast<long double>(b.slope_value());
            fb.B = static_cast<long double>(N) * static_cast<long double>(b.intercept.value);
            long double t_lo = static_cast<long double>(N) * f.breakpoints()[i].value;
            long double t_hi = static_cast<long double>(N) * f.breakpoints()[i + 1].value;
            long double fl = std::floor(t_lo);
            fb.first = static_cast<std::int64_t>(fl) + (t_lo == fl ? 1 : 2);
            fb.last = static_cast<std::int64_t>(std::floor(t_hi));
            fb.first = std::max<std::int64_t>(fb.first, 1);
            fb.last = std::min(fb.last, N);
            if (fb.first <= fb.last) {
                for (std::int64_t n = ptr; n < fb.first; ++n) straddle.push_back(n);
                ptr = fb.last + 1;
            }
            branches.push_back(fb);
        }
        for (std::int64_t n = ptr; n <= N; ++n) straddle.push_back(n);
    }

    std::vector<FloatMatrix::Row> rows(static_cast<std::size_t>(N));
    auto work = [&](std::int64_t row_begin, std::int64_t row_end) {
        for (const FloatBranch& fb : branches) {
            std::int64_t lo_n = std::max(fb.first, row_begin);
            std::int64_t hi_n = std::min(fb.last, row_end);
            for (std::int64_t n = lo_n; n <= hi_n; ++n) {
                long double y0 = fb.A * (n - 1) + fb.B;
                long double y1 = fb.A * n + fb.B;
                long double lo = std::min(y0, y1), hi = std::max(y0, y1);
                auto u = static_cast<std::int64_t>(std::floor(lo)) + 1;
                auto v = static_cast<std::int64_t>(std::ceil(hi));
                u = std::max<std::int64_t>(u, 1);
                v = std::min(v, N);
                FloatMatrix::Row& row = rows[static_cast<std::size_t>(n - 1)];
                if (u >= v) {
                    row.emplace_back(u, 1.0);
                    continue;
                }
                long double width = hi - lo;
                auto push = [&](std::int64_t col, long double p) {
                    if (p > kFloatEntryGuard) row.emplace_back(col, std::min(static_cast<double>(p), 1.0));
                };
                push(u, (static_cast<long double>(u) - lo) / width);
                if (v - u > 1) {
                    double inner = static_cast<double>(1.0L / width);
                    for (std::int64_t col = u + 1; col < v; ++col) row.emplace_back(col, inner);
                }
                push(v, (hi - static_cast<long double>(v - 1)) / width);
            }
        }
        for (std::int64_t n : straddle)
            if (n >= row_begin && n <= row_end)
                rows[static_cast<std::size_t>(n - 1)] = generic_row_float(f, part, n);
    };
    run_blocks(N, threads, work);
    return FloatMatrix(N, std::move(rows), straddle);
}

bool verify_doubly_stochastic(const ExactMatrix& m) {
    for (const Rational& s : m.column_sums())
        if (s != Rational(1)) return false;
    return true;
}

bool verify_doubly_stochastic(const FloatMatrix& m, double tol) {
    for (double s : m.column_sums())
        if (std::abs(s - 1.0) > tol) return false;
    return true;
}

void dump_matrix_csv(const ExactMatrix& m, std::ostream& out) {
    out << "row,col,num,den\n";
    for (std::int64_t n = 1; n <= m.size(); ++n)
        for (const auto& [col, p] : m.row(n))
            out << n << ',' << col << ',' << p.num().str() << ',' << p.den().str() << '\n';
}

void dump_matrix_csv(const FloatMatrix& m, std::ostream& out) {
    char buf[64];
    out << "row,col,value\n";
    for (std::int64_t n = 1; n <= m.size(); ++n)
        for (const auto& [col, p] : m.row(n)) {
            std::snprintf(buf, sizeof(buf), "%.17g", p);
            out << n << ',' << col << ',' << buf << '\n';
        }
}

// ---------------------------------------------------------------------------
// Row-streaming statistics (exact mode).
// ---------------------------------------------------------------------------

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const {
        std::uint64_t h = static_cast<std::uint64_t>(p.first) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(p.second) + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

BigInt to_bigint(unsigned __int128 v) {
    BigInt hi = static_cast<std::uint64_t>(v >> 64);
    return (hi << 64) | BigInt(static_cast<std::uint64_t>(v));
}

template <class I>
ChainStats run_stats(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                     const PlanInfo& info, bool check_columns) {
    const std::int64_t N = part.size();
    Plan<I> plan = narrow_plan<I>(info.big);

    using Key = std::pair<I, I>;
    using Groups = std::conditional_t<std::is_same_v<I, std::int64_t>,
                                      std::unordered_map<Key, std::int64_t, PairHash>,
                                      std::map<Key, std::int64_t>>;
    Groups groups;

    // Column accumulators scaled to the common denominator D; straddling rows
    // contribute exact rationals on the side.
    using ColAcc = std::conditional_t<std::is_same_v<I, std::int64_t>, unsigned __int128, BigInt>;
    auto wide_mul = [](const I& a, const I& b) -> ColAcc {
        if constexpr (std::is_same_v<I, std::int64_t>)
            return static_cast<unsigned __int128>(static_cast<std::uint64_t>(a)) *
                   static_cast<std::uint64_t>(b);
        else
            return a * b;
    };
    auto acc_to_bigint = [](const ColAcc& v) -> BigInt {
        if constexpr (std::is_same_v<I, std::int64_t>)
            return to_bigint(v);
        else
            return v;
    };
    std::vector<ColAcc> colacc;
    std::map<std::int64_t, Rational> col_extra;
    if (check_columns) colacc.assign(static_cast<std::size_t>(N) + 1, ColAcc(0));
    const ColAcc target_D = wide_mul(plan.D, I(1));

    struct BranchScale {
        I inner_scaled{};   // (md/mn) scaled to D
        I partial_scale{};  // multiply unreduced partial numerators by this
    };
    std::vector<BranchScale> scales(plan.branches.size());
    if (check_columns)
        for (std::size_t i = 0; i < plan.branches.size(); ++i) {
            const auto& pb = plan.branches[i];
            scales[i].inner_scaled = pb.md * (plan.D / pb.mn);
            scales[i].partial_scale = plan.D / (plan.L * pb.mn);
        }

    ChainStats stats;
    stats.n = N;
    stats.rows_stochastic = true;
    stats.columns_checked = check_columns;
    std::int64_t min_entries = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_entries = 0;

    run_fast_rows(plan, 1, N, [&](const FastRow<I>& fr) {
        const PlanBranch<I>& pb = plan.branches[fr.branch];
        if (fr.single) {
            ++groups[Key{1, 1}];  // the row is a point mass; sums to 1 trivially
            if (check_columns) colacc[static_cast<std::size_t>(fr.u)] += target_D;
            min_entries = std::min<std::int64_t>(min_entries, 1);
            max_entries = std::max<std::int64_t>(max_entries, 1);
            return;
        }
        const I den = plan.L * pb.mn;
        auto add_group = [&](I num) {
            I g = gcd_of(num, den);
            groups[Key{num / g, den / g}] += 1;
        };
        add_group(fr.aL * pb.md);
        add_group(fr.bL * pb.md);
        std::int64_t inner = fr.v - fr.u - 1;
        if (inner > 0) groups[Key{pb.md, pb.mn}] += inner;

        // Row-sum identity: the column overlaps must tile the image exactly.
        if (fr.aL + fr.bL + I(inner) * plan.L != pb.abs_A) stats.rows_stochastic = false;

        if (check_columns) {
            const BranchScale& sc = scales[fr.branch];
            colacc[static_cast<std::size_t>(fr.u)] += wide_mul(fr.aL * pb.md, sc.partial_scale);
            colacc[static_cast<std::size_t>(fr.v)] += wide_mul(fr.bL * pb.md, sc.partial_scale);
            const ColAcc inner_acc = wide_mul(sc.inner_scaled, I(1));
            for (std::int64_t col = fr.u + 1; col < fr.v; ++col)
                colacc[static_cast<std::size_t>(col)] += inner_acc;
        }

        std::int64_t cnt = fr.v - fr.u + 1;
        min_entries = std::min(min_entries, cnt);
        max_entries = std::max(max_entries, cnt);
    });

    // Straddling rows via the generic route.
    std::map<Rational, std::int64_t> straddle_groups;
    for (std::int64_t n : info.straddle) {
        ExactMatrix::Row row = generic_row(f, part, n);
        Rational sum(0);
        for (const auto& [col, p] : row) {
            sum += p;
            ++straddle_groups[p];
            if (check_columns) col_extra[col] += p;
        }
        if (sum != Rational(1)) stats.rows_stochastic = false;
        auto cnt = static_cast<std::int64_t>(row.size());
        min_entries = std::min(min_entries, cnt);
        max_entries = std::max(max_entries, cnt);
    }
    stats.straddling_rows = static_cast<std::int64_t>(info.straddle.size());
    stats.min_row_entries =
        (N > 0 && min_entries != std::numeric_limits<std::int64_t>::max()) ? min_entries : 0;
    stats.max_row_entries = max_entries;

    // Merge distinct values.
    std::map<Rational, std::int64_t> merged(straddle_groups);
    for (const auto& [key, count] : groups)
        merged[Rational(BigInt(key.first), BigInt(key.second))] += count;
    stats.distinct.assign(merged.begin(), merged.end());

    stats.shannon_entropy = shannon_entropy_from_distinct(stats.distinct, N);

    if (check_columns) {
        stats.doubly_stochastic = true;
        const BigInt D_big = info.big.D;
        for (std::int64_t col = 1; col <= N && stats.doubly_stochastic; ++col) {
            auto it = col_extra.find(col);
            if (it == col_extra.end()) {
                if (colacc[static_cast<std::size_t>(col)] != target_D)
                    stats.doubly_stochastic = false;
            } else {
                Rational total =
                    Rational(acc_to_bigint(colacc[static_cast<std::size_t>(col)]), D_big) +
                    it->second;
                if (total != Rational(1)) stats.doubly_stochastic = false;
            }
        }
    }
    return stats;
}

}  // namespace

ChainStats exact_chain_stats(const PiecewiseLinearMap& f, const EquivolumePartition& part,
                             bool check_columns) {
    PlanInfo info = make_plan(f, part);
    if (info.fits_int64) return run_stats<std::int64_t>(f, part, info, check_columns);
    return run_stats<BigInt>(f, part, info, check_columns);
}

}  // namespace cgentropy
