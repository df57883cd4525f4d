// JSON encodings for every value that crosses the tool boundary.
//
// Key order is insertion order and all numbers are finite, so a report
// dumped twice from the same data is byte-identical; that property is
// what makes the scenario suite replayable as a regression check.
#pragma once

#include <json.hpp>

#include "cstar/bitcommit.hpp"
#include "cstar/classical.hpp"

namespace cstar {

using Json = nlohmann::ordered_json;

Json to_json(const Mat& m);  // {dim, re, im}, rows listed outermost
Mat matrix_from_json(const Json& j);

Json to_json(const CheckReport& r);
CheckReport check_report_from_json(const Json& j);

Json to_json(const Transcript& t);
Transcript transcript_from_json(const Json& j);

Json to_json(const Measure& mu);  // weight array
Measure measure_from_json(const Json& j);

Json to_json(const FinitePhaseSpace& space);  // point-label list

std::string to_string(const Json& j);  // 2-space indent, trailing newline

}  // namespace cstar
