#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "valshare/expsum.hpp"
#include "valshare/roots.hpp"

namespace valshare::dsl {

using json = nlohmann::json;

/// {"re": "p/q" | "1.5", "im": ...}; bare JSON numbers and strings are
/// accepted as real values (integers exact, decimals float).
Scalar scalar_from_json(const json& j);
json scalar_to_json(const Scalar& s);
/// Float pair for measured quantities.
json complex_to_json(Complex z);

/// {"kind": "expsum", "terms": [{"coeff": {...}, "freq": {...}}, ...]}
ExpSum expsum_from_json(const json& j);
json expsum_to_json(const ExpSum& f);

/// Object {"re_min", "re_max", "im_min", "im_max"} or array [re_min, re_max, im_min, im_max].
Region region_from_json(const json& j);
json region_to_json(const Region& r);

std::vector<Scalar> values_from_json(const json& j);

/// Inline JSON when the text starts with '[' or '{', otherwise a file path.
json load_inline_or_file(const std::string& text);
json load_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace valshare::dsl
