#pragma once

// JSON and CSV emission for the report records. Numbers are rounded to 15
// significant digits and written with '.' regardless of locale.

#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "medianprime/cascade.hpp"
#include "medianprime/exact.hpp"
#include "medianprime/products.hpp"
#include "medianprime/saddle.hpp"

namespace medianprime::io {

using nlohmann::json;

constexpr int kDigits = 15;

/// v rounded to 15 significant digits.
double round15(double v);
/// Shortest text for round15(v); "nan", "inf", "-inf" for non-finite values.
std::string fmt15(double v);

json to_json(const exact::ExactSumReport& r);
exact::ExactSumReport exact_report_from_json(const json& j);

json to_json(const products::ConstantC& c);
products::ConstantC constant_from_json(const json& j);

/// {family, j, coefficients: [{degX, degL, degP, rational}]}
json to_json(const series::PolyFamily& f, int j);
/// (degX, coefficient) pairs read back from to_json(f, j).
std::vector<std::pair<int, series::SymPoly>> poly_from_json(const json& j);

json to_json(const saddle::SaddleState& s);
saddle::SaddleState saddle_from_json(const json& j);

std::string dump(const json& j);

}  // namespace medianprime::io
