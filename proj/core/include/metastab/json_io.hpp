#pragma once

// Versioned JSON documents for every externally visible type. Top-level
// documents carry "schema_version" and "type"; nested objects carry only
// their own fields. Serialization is deterministic (keys sorted, doubles
// printed round-trip exact), so from_document(to_document(x)) == x.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "metastab/analyze.hpp"
#include "metastab/families.hpp"
#include "metastab/meta.hpp"
#include "metastab/net.hpp"
#include "metastab/order.hpp"

namespace metastab::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Adds schema_version and type to a body.
Json document(std::string_view type, Json body);
// Throws schema_error unless doc is an object of this type and version.
void require_document(const Json& doc, std::string_view type);
// Throws schema_error for unparseable text.
Json parse(std::string_view text);
Json read_file(const std::string& path);
// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const Json& doc);

Json to_json(const DirectedWindow& w);
DirectedWindow window_from_json(const Json& j);

Json to_json(const MetricSpace& s);
MetricSpace space_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Json& j, const MetricSpace& space);

Json to_json(const Sampling& s);
Sampling sampling_from_json(const Json& j);

Json to_json(const Net& a, const std::optional<Point>& target = std::nullopt);
Net net_from_json(const Json& j);
std::optional<Point> net_target_from_json(const Json& j);

// A materialized family: one window, one space, members and optional targets.
struct FamilyData {
  std::string tag;
  std::vector<Net> members;
  std::vector<Point> targets;
};
Json to_json(const FamilyData& f);
FamilyData family_from_json(const Json& j);

Json to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const Json& j);

Json to_json(const Rate& r);
Rate rate_from_json(const Json& j);

Json to_json(const WitnessReport& r);
WitnessReport witness_report_from_json(const Json& j);

Json to_json(const RefutationCertificate& c);
RefutationCertificate certificate_from_json(const Json& j);

Json to_json(const AnalysisReport& r);
Json to_json(const UmpVerdict& v);

// Top-level documents (type names: window, sampling, net, family,
// family_spec, rate, witness_report, refutation_certificate,
// analysis_report, ump_verdict).
Json to_document(const DirectedWindow& w);
Json to_document(const Sampling& s);
Json to_document(const Net& a, const std::optional<Point>& target = std::nullopt);
Json to_document(const FamilyData& f);
Json to_document(const FamilySpec& spec);
Json to_document(const Rate& r);
Json to_document(const WitnessReport& r);
Json to_document(const RefutationCertificate& c);
Json to_document(const AnalysisReport& r);
Json to_document(const UmpVerdict& v);

DirectedWindow window_document(const Json& doc);
Sampling sampling_document(const Json& doc);
Net net_document(const Json& doc);
FamilyData family_document(const Json& doc);
FamilySpec family_spec_document(const Json& doc);
Rate rate_document(const Json& doc);
WitnessReport witness_report_document(const Json& doc);
RefutationCertificate certificate_document(const Json& doc);

}  // namespace metastab::io
