// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file map_io.hpp
 * @brief Map-spec JSON files and built-in map specs.
 *
 * Schema:
 *   {
 *     "breakpoints": ["0", "2/3", "1"],          // "a/b" strings, or numbers
 *     "branches": [                              //   for float coordinates
 *       {"slope": {"kind": "rational", "num": 3, "den": 2}, "intercept": "0"},
 *       {"slope": {"kind": "irrational", "approx": -3.414, "label": "..."},
 *        "intercept": 3.414}
 *     ]
 *   }
 * Rational slopes carry their sign on num. Rational fields round-trip
 * bit-exactly.
 *
 * Built-in specs: "tent:m=2", "tent:m=3/2", "tent:m=1.5", "tent:m=sqrt2",
 * "tent:m=pi".
 */

#include "cgentropy/map.hpp"

#include <iosfwd>
#include <string>

namespace cgentropy {

PiecewiseLinearMap load_map(const std::string& path);
PiecewiseLinearMap read_map_json(std::istream& in);

void save_map(const PiecewiseLinearMap& f, const std::string& path);
void write_map_json(const PiecewiseLinearMap& f, std::ostream& out);

/// True if the string names a built-in map rather than a file.
bool is_builtin_map_spec(const std::string& spec);

/// Builds a map from a built-in spec like "tent:m=3/2".
PiecewiseLinearMap parse_builtin_map(const std::string& spec);

/// Dispatch: built-in spec or path to a map-spec JSON file.
PiecewiseLinearMap resolve_map(const std::string& source);

}  // namespace cgentropy
