#pragma once

#include <string>

#include <json.hpp>

#include "crepanto/hk.hpp"
#include "crepanto/quotient.hpp"
#include "crepanto/series.hpp"

namespace crepanto {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "crepanto/1";
inline constexpr const char* kVersion = "0.1.0";

// Envelope shared by every command: schema, version, command, input, result.
Json make_report(const std::string& command, Json input, Json result);

Json analyze_report(const CyclicQuotientType& t);
Json hilbert_report(const CyclicQuotientType& t);
Json criterion_report(const CyclicQuotientType& t);
Json cohomology_report(const CyclicQuotientType& t);
Json series_report(const SeriesType& t);
Json series_scan_report(long l_min, long l_max, long r, unsigned threads);
Json factorization_report(const SeriesType& t, FactorMode mode);
Json bundle_report(long r, const std::vector<long>& twists);

// {"l": ..., "weights": [...], "simplices": [[point, ...], ...]} with points as numerator lists.
LatticeTriangulation triangulation_from_json(const Json& j);
Json triangulation_check_report(const LatticeTriangulation& t);

// "key: value" lines, nested keys joined by dots.
std::string render_plain(const Json& j);

}  // namespace crepanto
