// SPDX-License-Identifier: Apache-2.0
#include "cgentropy/map_io.hpp"

#include "cgentropy/entropy.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace cgentropy {

namespace {

using nlohmann::json;

Coord coord_from_json(const json& j) {
    if (j.is_string()) return Coord::of(Rational::parse(j.get<std::string>()));
    if (j.is_number()) return Coord::approx(j.get<double>());
    throw std::invalid_argument("map json: coordinate must be a string or number");
}

json coord_to_json(const Coord& c) {
    if (c.is_exact()) return c.exact->to_string();
    return c.value;
}

bool fits_int64(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    return lo <= v && v <= hi;
}

json bigint_to_json(const BigInt& v) {
    if (fits_int64(v)) return v.convert_to<std::int64_t>();
    return v.str();  // too large for a JSON number; emit as string
}

BigInt bigint_from_json(const json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw std::invalid_argument("map json: expected an integer or integer string");
}

Branch branch_from_json(const json& j) {
    Branch b;
    const json& slope = j.at("slope");
    const std::string kind = slope.at("kind").get<std::string>();
    if (kind == "rational") {
        BigInt num = bigint_from_json(slope.at("num"));
        BigInt den = bigint_from_json(slope.at("den"));
        b.sign = num < 0 ? -1 : +1;
        b.magnitude = SlopeClass::from_rational(Rational(boost::multiprecision::abs(num), den));
    } else if (kind == "irrational") {
        double approx = slope.at("approx").get<double>();
        b.sign = approx < 0 ? -1 : +1;
        b.magnitude = SlopeClass::irrational(std::abs(approx),
                                             slope.value("label", std::string()));
    } else {
        throw std::invalid_argument("map json: slope kind must be rational or irrational");
    }
    b.intercept = coord_from_json(j.at("intercept"));
    return b;
}

json branch_to_json(const Branch& b) {
    json slope;
    if (b.magnitude.is_exact()) {
        const Rational& m = b.magnitude.magnitude_rational();
        slope["kind"] = "rational";
        slope["num"] = bigint_to_json(b.sign < 0 ? BigInt(-m.num()) : m.num());
        slope["den"] = bigint_to_json(m.den());
    } else {
        slope["kind"] = "irrational";
        slope["approx"] = b.sign * b.magnitude.magnitude();
        slope["label"] = b.magnitude.label();
    }
    return json{{"slope", slope}, {"intercept", coord_to_json(b.intercept)}};
}

}  // namespace

PiecewiseLinearMap read_map_json(std::istream& in) {
    json j;
    in >> j;
    std::vector<Coord> breakpoints;
    for (const json& bp : j.at("breakpoints")) breakpoints.push_back(coord_from_json(bp));
    std::vector<Branch> branches;
    for (const json& br : j.at("branches")) branches.push_back(branch_from_json(br));
    return PiecewiseLinearMap(std::move(breakpoints), std::move(branches));
}

PiecewiseLinearMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file '" + path + "'");
    try {
        return read_map_json(in);
    } catch (const json::exception& e) {
        throw std::invalid_argument("map file '" + path + "': " + e.what());
    }
}

void write_map_json(const PiecewiseLinearMap& f, std::ostream& out) {
    json j;
    j["breakpoints"] = json::array();
    for (const Coord& bp : f.breakpoints()) j["breakpoints"].push_back(coord_to_json(bp));
    j["branches"] = json::array();
    for (const Branch& b : f.branches()) j["branches"].push_back(branch_to_json(b));
    out << j.dump(2) << '\n';
}

void save_map(const PiecewiseLinearMap& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write map file '" + path + "'");
    write_map_json(f, out);
}

bool is_builtin_map_spec(const std::string& spec) {
    return spec.rfind("tent:", 0) == 0;
}

PiecewiseLinearMap parse_builtin_map(const std::string& spec) {
    const std::string prefix = "tent:m=";
    if (spec.rfind(prefix, 0) != 0)
        throw std::invalid_argument("unknown built-in map '" + spec + "' (expected tent:m=...)");
    std::string m = spec.substr(prefix.size());
    if (m == "sqrt2") return skew_tent(SlopeClass::irrational(std::sqrt(2.0), "sqrt2"));
    if (m == "pi") return skew_tent(SlopeClass::irrational(M_PI, "pi"));
    return skew_tent(SlopeClass::from_rational(Rational::parse(m)));
}

PiecewiseLinearMap resolve_map(const std::string& source) {
    if (is_builtin_map_spec(source)) return parse_builtin_map(source);
    return load_map(source);
}

}  // namespace cgentropy
