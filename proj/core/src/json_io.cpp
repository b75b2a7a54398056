#include "metastab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "metastab/error.hpp"

namespace metastab::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw schema_error(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw schema_error(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw schema_error(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

std::uint64_t unsigned_int(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw schema_error(std::string("'") + what + "' must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

Index index_of(const Json& j) {
  const std::uint64_t v = unsigned_int(j, "index");
  if (v > UINT32_MAX) throw schema_error("index out of range");
  return static_cast<Index>(v);
}

const std::string& text(const Json& j, const char* what) {
  if (!j.is_string()) throw schema_error(std::string("'") + what + "' must be a string");
  return j.get_ref<const std::string&>();
}

const Json::array_t& array(const Json& j, const char* what) {
  if (!j.is_array()) throw schema_error(std::string("'") + what + "' must be an array");
  return j.get_ref<const Json::array_t&>();
}

Json index_set(const IndexSet& s) { return Json(s); }

IndexSet read_index_set(const Json& j) {
  IndexSet s;
  for (const Json& e : array(j, "index set")) s.push_back(index_of(e));
  return s;
}

Json witness(const Witness& w) { return w ? Json(*w) : Json(nullptr); }

Witness read_witness(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return index_of(j);
}

Json witness_list(const std::vector<Witness>& ws) {
  Json out = Json::array();
  for (const Witness& w : ws) out.push_back(witness(w));
  return out;
}

Json assignment(const std::vector<IndexSet>& assign) {
  Json out = Json::array();
  for (const IndexSet& s : assign) out.push_back(index_set(s));
  return out;
}

std::vector<IndexSet> read_assignment(const Json& j) {
  std::vector<IndexSet> assign;
  for (const Json& e : array(j, "assign")) assign.push_back(read_index_set(e));
  return assign;
}

Json cell(const AnalysisCell& c) {
  Json out;
  out["eps"] = c.eps;
  out["sampling_id"] = c.sampling_id;
  out["first_witness"] = witness_list(c.first_witness);
  out["candidates"] = index_set(c.candidates);
  out["uncovered"] = c.uncovered;
  out["refuted"] = c.refuted();
  return out;
}

// Readers below report malformed input as schema_error, including input that
// parses but violates a domain precondition.
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const schema_error&) {
    throw;
  } catch (const precondition_error& e) {
    throw schema_error(std::string("invalid document: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw schema_error(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

Json document(std::string_view type, Json body) {
  body["schema_version"] = kSchemaVersion;
  body["type"] = std::string(type);
  return body;
}

void require_document(const Json& doc, std::string_view type) {
  if (!doc.is_object()) throw schema_error("document must be a JSON object");
  const auto v = doc.find("schema_version");
  if (v == doc.end()) throw schema_error("document has no schema_version");
  if (!v->is_number_integer() || v->get<std::int64_t>() != kSchemaVersion)
    throw schema_error("unsupported schema_version " + v->dump() + " (expected " + std::to_string(kSchemaVersion) +
                       ")");
  const auto t = doc.find("type");
  if (t == doc.end() || !t->is_string()) throw schema_error("document has no type");
  if (t->get<std::string>() != type)
    throw schema_error("expected a '" + std::string(type) + "' document, found '" + t->get<std::string>() + "'");
}

Json parse(std::string_view input) {
  try {
    return Json::parse(input.begin(), input.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw schema_error(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw schema_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Windows

Json to_json(const DirectedWindow& w) {
  Json out;
  out["kind"] = std::string(to_string(w.kind()));
  switch (w.kind()) {
    case WindowKind::omega:
    case WindowKind::ordinal:
      out["size"] = w.size();
      break;
    case WindowKind::product:
      out["factors"] = Json::array({to_json(w.left()), to_json(w.right())});
      break;
    case WindowKind::custom: {
      const std::size_t n = w.size();
      Json order = Json::array();
      Json join = Json::array();
      for (std::size_t i = 0; i < n; ++i) {
        Json orow = Json::array();
        Json jrow = Json::array();
        for (std::size_t j = 0; j < n; ++j) {
          orow.push_back(w.leq(static_cast<Index>(i), static_cast<Index>(j)) ? 1 : 0);
          jrow.push_back(w.join(static_cast<Index>(i), static_cast<Index>(j)));
        }
        order.push_back(std::move(orow));
        join.push_back(std::move(jrow));
      }
      out["size"] = n;
      out["order"] = std::move(order);
      out["join"] = std::move(join);
      break;
    }
  }
  return out;
}

DirectedWindow window_from_json(const Json& j) {
  return guarded([&]() -> DirectedWindow {
    const std::string& kind = text(field(j, "kind"), "kind");
    if (kind == "omega") return DirectedWindow::omega(unsigned_int(field(j, "size"), "size"));
    if (kind == "ordinal") return DirectedWindow::ordinal(unsigned_int(field(j, "size"), "size"));
    if (kind == "product") {
      const auto& factors = array(field(j, "factors"), "factors");
      if (factors.size() != 2) throw schema_error("a product window has exactly two factors");
      return DirectedWindow::product(window_from_json(factors[0]), window_from_json(factors[1]));
    }
    if (kind == "custom") {
      std::vector<std::vector<bool>> order;
      for (const Json& row : array(field(j, "order"), "order")) {
        std::vector<bool> r;
        for (const Json& e : array(row, "order row")) r.push_back(unsigned_int(e, "order entry") != 0);
        order.push_back(std::move(r));
      }
      std::optional<std::vector<std::vector<Index>>> join;
      if (j.contains("join")) {
        join.emplace();
        for (const Json& row : array(j.at("join"), "join")) {
          std::vector<Index> r;
          for (const Json& e : array(row, "join row")) r.push_back(index_of(e));
          join->push_back(std::move(r));
        }
      }
      return DirectedWindow::custom(std::move(order), std::move(join));
    }
    throw schema_error("unknown window kind '" + kind + "'");
  });
}

// ---------------------------------------------------------------------------
// Spaces and points

Json to_json(const MetricSpace& s) {
  Json out;
  out["kind"] = std::string(to_string(s.kind()));
  if (s.kind() == SpaceKind::euclidean) out["dim"] = s.dimension();
  if (s.kind() == SpaceKind::table) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.table_size(); ++i) {
      Json row = Json::array();
      for (std::size_t k = 0; k < s.table_size(); ++k) row.push_back(s.table_entry(i, k));
      rows.push_back(std::move(row));
    }
    out["distances"] = std::move(rows);
  }
  return out;
}

MetricSpace space_from_json(const Json& j) {
  return guarded([&]() -> MetricSpace {
    const std::string& kind = text(field(j, "kind"), "kind");
    if (kind == to_string(SpaceKind::binary)) return MetricSpace::binary();
    if (kind == to_string(SpaceKind::unit_interval)) return MetricSpace::unit_interval();
    if (kind == to_string(SpaceKind::real_line)) return MetricSpace::real_line();
    if (kind == to_string(SpaceKind::euclidean)) return MetricSpace::euclidean(unsigned_int(field(j, "dim"), "dim"));
    if (kind == to_string(SpaceKind::table)) {
      std::vector<std::vector<double>> rows;
      for (const Json& row : array(field(j, "distances"), "distances")) {
        std::vector<double> r;
        for (const Json& e : array(row, "distance row")) r.push_back(number(e, "distance"));
        rows.push_back(std::move(r));
      }
      return MetricSpace::table(std::move(rows));
    }
    throw schema_error("unknown space kind '" + kind + "'");
  });
}

Json to_json(const Point& p) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Bit>) return v.value;
        else if constexpr (std::is_same_v<T, Symbol>) return v.id;
        else return Json(v);
      },
      p);
}

Point point_from_json(const Json& j, const MetricSpace& space) {
  return guarded([&]() -> Point {
    Point p;
    switch (space.kind()) {
      case SpaceKind::binary: {
        const std::uint64_t b = unsigned_int(j, "bit");
        if (b > 1) throw schema_error("a binary point is 0 or 1");
        p = Bit{static_cast<std::uint8_t>(b)};
        break;
      }
      case SpaceKind::unit_interval:
      case SpaceKind::real_line:
        p = number(j, "point");
        break;
      case SpaceKind::euclidean: {
        Coordinates c;
        for (const Json& e : array(j, "point")) c.push_back(number(e, "coordinate"));
        p = std::move(c);
        break;
      }
      case SpaceKind::table:
        p = Symbol{index_of(j)};
        break;
    }
    if (!space.contains(p)) throw schema_error("point " + j.dump() + " is not in the space");
    return p;
  });
}

// ---------------------------------------------------------------------------
// Samplings and nets

Json to_json(const Sampling& s) {
  Json out;
  out["id"] = s.id();
  out["window"] = to_json(s.window());
  out["assign"] = assignment(s.assign());
  return out;
}

Sampling sampling_from_json(const Json& j) {
  return guarded([&] {
    const std::string id = j.contains("id") ? text(j.at("id"), "id") : std::string();
    Sampling s(window_from_json(field(j, "window")), read_assignment(field(j, "assign")), id);
    validate_sampling(s);  // size check only; violations are reported by callers
    return s;
  });
}

Json to_json(const Net& a, const std::optional<Point>& target) {
  Json out;
  out["window"] = to_json(a.window());
  out["space"] = to_json(a.space());
  Json values = Json::array();
  for (const Point& p : a.values()) values.push_back(to_json(p));
  out["values"] = std::move(values);
  if (target) out["target"] = to_json(*target);
  return out;
}

Net net_from_json(const Json& j) {
  return guarded([&] {
    const DirectedWindow w = window_from_json(field(j, "window"));
    const MetricSpace space = space_from_json(field(j, "space"));
    std::vector<Point> values;
    for (const Json& v : array(field(j, "values"), "values")) values.push_back(point_from_json(v, space));
    return Net(w, space, std::move(values));
  });
}

std::optional<Point> net_target_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("target")) return std::nullopt;
  return point_from_json(j.at("target"), space_from_json(field(j, "space")));
}

Json to_json(const FamilyData& f) {
  Json out;
  out["tag"] = f.tag;
  if (f.members.empty()) throw precondition_error("cannot serialize an empty family");
  const Net& first = f.members.front();
  out["window"] = to_json(first.window());
  out["space"] = to_json(first.space());
  Json members = Json::array();
  for (const Net& a : f.members) {
    if (!(a.window() == first.window()) || !(a.space() == first.space()))
      throw precondition_error("family members must share one window and one space");
    Json values = Json::array();
    for (const Point& p : a.values()) values.push_back(to_json(p));
    members.push_back(std::move(values));
  }
  out["members"] = std::move(members);
  if (!f.targets.empty()) {
    if (f.targets.size() != f.members.size()) throw precondition_error("one target per member is required");
    Json targets = Json::array();
    for (const Point& p : f.targets) targets.push_back(to_json(p));
    out["targets"] = std::move(targets);
  }
  return out;
}

FamilyData family_from_json(const Json& j) {
  return guarded([&] {
    FamilyData f;
    f.tag = j.contains("tag") ? text(j.at("tag"), "tag") : std::string();
    const DirectedWindow w = window_from_json(field(j, "window"));
    const MetricSpace space = space_from_json(field(j, "space"));
    for (const Json& m : array(field(j, "members"), "members")) {
      std::vector<Point> values;
      for (const Json& v : array(m, "member")) values.push_back(point_from_json(v, space));
      f.members.emplace_back(w, space, std::move(values));
    }
    if (f.members.empty()) throw schema_error("a family needs at least one member");
    if (j.contains("targets")) {
      for (const Json& t : array(j.at("targets"), "targets")) f.targets.push_back(point_from_json(t, space));
      if (f.targets.size() != f.members.size()) throw schema_error("targets and members differ in length");
    }
    return f;
  });
}

Json to_json(const FamilySpec& spec) {
  Json out;
  out["tag"] = std::string(to_string(spec.tag));
  out["window"] = to_json(spec.window);
  out["points"] = spec.points;
  out["enumeration_cap"] = spec.enumeration_cap;
  if (spec.alpha_range) out["alpha_range"] = Json::array({spec.alpha_range->first, spec.alpha_range->second});
  return out;
}

FamilySpec family_spec_from_json(const Json& j) {
  return guarded([&] {
    FamilySpec spec;
    spec.tag = family_tag_from_string(text(field(j, "tag"), "tag"));
    spec.window = window_from_json(field(j, "window"));
    if (j.contains("points")) spec.points = unsigned_int(j.at("points"), "points");
    if (j.contains("enumeration_cap")) spec.enumeration_cap = unsigned_int(j.at("enumeration_cap"), "enumeration_cap");
    if (j.contains("alpha_range")) {
      const auto& r = array(j.at("alpha_range"), "alpha_range");
      if (r.size() != 2) throw schema_error("alpha_range is [lo, hi]");
      spec.alpha_range = std::pair{index_of(r[0]), index_of(r[1])};
    }
    return spec;
  });
}

// ---------------------------------------------------------------------------
// Rates and reports

Json to_json(const Rate& r) {
  Json out;
  out["window"] = to_json(r.window());
  out["thresholds"] = r.thresholds();
  out["pointed"] = r.pointed();
  Json samplings = Json::array();
  for (const Sampling& s : r.samplings()) {
    Json e;
    e["id"] = s.id();
    e["assign"] = assignment(s.assign());
    samplings.push_back(std::move(e));
  }
  out["samplings"] = std::move(samplings);
  Json entries = Json::array();
  for (const auto& [key, candidates] : r.entries()) {
    Json e;
    e["threshold"] = r.thresholds()[key.first];
    e["sampling"] = key.second == Rate::kAnySampling ? Json(nullptr) : Json(key.second);
    e["candidates"] = index_set(candidates);
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  return out;
}

Rate rate_from_json(const Json& j) {
  return guarded([&] {
    const DirectedWindow w = window_from_json(field(j, "window"));
    std::vector<double> thresholds;
    for (const Json& t : array(field(j, "thresholds"), "thresholds")) thresholds.push_back(number(t, "threshold"));
    const Json& pointed = field(j, "pointed");
    if (!pointed.is_boolean()) throw schema_error("'pointed' must be a boolean");
    Rate rate(w, thresholds, pointed.get<bool>());
    for (const Json& s : array(field(j, "samplings"), "samplings")) {
      const std::string id = s.contains("id") ? text(s.at("id"), "id") : std::string();
      const std::size_t before = rate.samplings().size();
      if (rate.add_sampling(Sampling(w, read_assignment(field(s, "assign")), id)) != before)
        throw schema_error("duplicate sampling in rate");
    }
    for (const Json& e : array(field(j, "entries"), "entries")) {
      const double t = number(field(e, "threshold"), "threshold");
      const auto slot = rate.threshold_slot(t);
      if (!slot) throw schema_error("entry threshold is not on the grid");
      const Json& s = field(e, "sampling");
      std::size_t sampling_slot = Rate::kAnySampling;
      if (!s.is_null()) {
        sampling_slot = unsigned_int(s, "sampling");
        if (sampling_slot >= rate.samplings().size()) throw schema_error("entry refers to an unknown sampling");
      }
      rate.set_slot(*slot, sampling_slot, read_index_set(field(e, "candidates")));
    }
    return rate;
  });
}

Json to_json(const WitnessReport& r) {
  Json out;
  out["eps"] = r.eps;
  out["sampling_id"] = r.sampling_id;
  out["window_size"] = r.window_size;
  out["pointed"] = r.pointed;
  out["candidates"] = index_set(r.candidates);
  out["outcomes"] = witness_list(r.outcomes);
  out["overall"] = r.overall;
  return out;
}

WitnessReport witness_report_from_json(const Json& j) {
  return guarded([&] {
    WitnessReport r;
    r.eps = number(field(j, "eps"), "eps");
    r.sampling_id = text(field(j, "sampling_id"), "sampling_id");
    r.window_size = unsigned_int(field(j, "window_size"), "window_size");
    r.pointed = field(j, "pointed").get<bool>();
    r.candidates = read_index_set(field(j, "candidates"));
    for (const Json& o : array(field(j, "outcomes"), "outcomes")) r.outcomes.push_back(read_witness(o));
    r.overall = field(j, "overall").get<bool>();
    return r;
  });
}

Json to_json(const RefutationCertificate& c) {
  Json out;
  out["eps"] = c.eps;
  out["sampling"] = to_json(c.sampling);
  out["member"] = to_json(c.member);
  out["candidates"] = index_set(c.candidates);
  out["pointed_target"] = c.pointed_target ? to_json(*c.pointed_target) : Json(nullptr);
  out["family_tag"] = c.family_tag;
  out["member_index"] = c.member_index ? Json(*c.member_index) : Json(nullptr);
  out["method"] = c.method;
  return out;
}

RefutationCertificate certificate_from_json(const Json& j) {
  return guarded([&] {
    Net member = net_from_json(field(j, "member"));
    RefutationCertificate c{number(field(j, "eps"), "eps"), sampling_from_json(field(j, "sampling")), member, {}, {},
                            {}, {}, {}};
    c.candidates = read_index_set(field(j, "candidates"));
    if (j.contains("pointed_target") && !j.at("pointed_target").is_null())
      c.pointed_target = point_from_json(j.at("pointed_target"), member.space());
    if (j.contains("family_tag")) c.family_tag = text(j.at("family_tag"), "family_tag");
    if (j.contains("member_index") && !j.at("member_index").is_null())
      c.member_index = unsigned_int(j.at("member_index"), "member_index");
    if (j.contains("method")) c.method = text(j.at("method"), "method");
    return c;
  });
}

Json to_json(const AnalysisReport& r) {
  Json out;
  out["window_size"] = r.window_size;
  out["family_size"] = r.family_size;
  out["eps_grid"] = r.eps_grid;
  out["sampling_ids"] = r.sampling_ids;
  Json cells = Json::array();
  for (const AnalysisCell& c : r.cells) cells.push_back(cell(c));
  out["cells"] = std::move(cells);
  Json cauchy = Json::array();
  for (const auto& row : r.cauchy_index) cauchy.push_back(witness_list(row));
  out["cauchy_index"] = std::move(cauchy);
  out["refutation_found"] = r.refutation_found();
  return out;
}

Json to_json(const UmpVerdict& v) {
  Json out;
  out["uniform"] = v.uniform;
  out["non_cauchy_points"] = v.non_cauchy_points;
  Json cells = Json::array();
  for (const AnalysisCell& c : v.cells) cells.push_back(cell(c));
  out["cells"] = std::move(cells);
  return out;
}

// ---------------------------------------------------------------------------
// Documents

Json to_document(const DirectedWindow& w) { return document("window", to_json(w)); }
Json to_document(const Sampling& s) { return document("sampling", to_json(s)); }
Json to_document(const Net& a, const std::optional<Point>& target) { return document("net", to_json(a, target)); }
Json to_document(const FamilyData& f) { return document("family", to_json(f)); }
Json to_document(const FamilySpec& spec) { return document("family_spec", to_json(spec)); }
Json to_document(const Rate& r) { return document("rate", to_json(r)); }
Json to_document(const WitnessReport& r) { return document("witness_report", to_json(r)); }
Json to_document(const RefutationCertificate& c) { return document("refutation_certificate", to_json(c)); }
Json to_document(const AnalysisReport& r) { return document("analysis_report", to_json(r)); }
Json to_document(const UmpVerdict& v) { return document("ump_verdict", to_json(v)); }

DirectedWindow window_document(const Json& doc) {
  require_document(doc, "window");
  return window_from_json(doc);
}

Sampling sampling_document(const Json& doc) {
  require_document(doc, "sampling");
  return sampling_from_json(doc);
}

Net net_document(const Json& doc) {
  require_document(doc, "net");
  return net_from_json(doc);
}

FamilyData family_document(const Json& doc) {
  require_document(doc, "family");
  return family_from_json(doc);
}

FamilySpec family_spec_document(const Json& doc) {
  require_document(doc, "family_spec");
  return family_spec_from_json(doc);
}

Rate rate_document(const Json& doc) {
  require_document(doc, "rate");
  return rate_from_json(doc);
}

WitnessReport witness_report_document(const Json& doc) {
  require_document(doc, "witness_report");
  return witness_report_from_json(doc);
}

RefutationCertificate certificate_document(const Json& doc) {
  require_document(doc, "refutation_certificate");
  return certificate_from_json(doc);
}

}  // namespace metastab::io
