#pragma once

#include "toprec/curve.hpp"
#include "toprec/dictionary.hpp"
#include "toprec/forms.hpp"
#include "toprec/series.hpp"

#include <json.hpp>

#include <string>

namespace toprec {

using Json = nlohmann::ordered_json;

// FieldElement text: a rational string when rational, else ["c0","c1","c2","c3"].
Json field_to_json(const FieldElement& x);
FieldElement field_from_json(const Json& j, const std::string& where);

Json series_to_json(const Series1& s);

// Curve spec: {"N", "a", "times", "jumps": {"i,j": rows}, "truncation": {"times", "jumps"}}.
// Branches are 1-based in the file. Without a truncation entry the data is exact.
LocalCurveData curve_from_json(const Json& doc);
Json curve_to_json(const LocalCurveData& data);
LocalCurveData parse_curve_text(const std::string& text);
std::string emit_curve_text(const LocalCurveData& data);
LocalCurveData parse_curve_file(const std::string& path);  // IoError, ParseError, ValidationError
void emit_curve_file(const LocalCurveData& data, const std::string& path);

// {"N", "R": [matrix per order], optional "delta", "unit"}
GiventalData givental_from_json(const Json& doc);
Json givental_to_json(const GiventalData& gd);
Json rseries_to_json(const RSeries& R);

Json form_to_json(const CorrelationForm& f);
Json expansion_to_json(const DxiExpansion& e, const std::string& basis = "dxi");

std::string read_text_file(const std::string& path);  // IoError
void write_text_file(const std::string& path, const std::string& text);

}  // namespace toprec
