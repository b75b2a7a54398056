// metastab: verify rates, refute candidate uniform rates, analyze numeric
// sequences and run the built-in demonstrations.
//
// Exit status: 0 verified or report written, 1 certificate does not replay
// (or a demo did not behave as expected), 2 refutation found, 3 precondition violation, 4 I/O or schema error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metastab/analyze.hpp"
#include "metastab/error.hpp"
#include "metastab/families.hpp"
#include "metastab/json_io.hpp"
#include "metastab/meta.hpp"
#include "metastab/mvlogic.hpp"

using namespace metastab;
namespace io = metastab::io;

namespace {

enum Exit { kOk = 0, kNoReplay = 1, kRefuted = 2, kPrecondition = 3, kSchema = 4 };

struct FamilyOptions {
  std::string file;
  std::string tag;
  std::size_t window_size = 0;
  std::size_t points = 0;
  std::vector<Index> alpha;
};

void add_family_options(CLI::App* cmd, FamilyOptions& f) {
  cmd->add_option("--family", f.file, "family_spec or family JSON document");
  cmd->add_option("--tag", f.tag, "built-in family: B, B0, C, D or paracompact");
  cmd->add_option("--window-size", f.window_size, "omega window size (horizon for paracompact)");
  cmd->add_option("--points", f.points, "paracompact: number of points");
  cmd->add_option("--alpha", f.alpha, "D: inclusive alpha range LO HI")->expected(2);
}

struct LoadedFamily {
  std::string tag;
  DirectedWindow window = DirectedWindow::omega(1);
  std::vector<Net> members;
  std::vector<Point> targets;
  std::optional<NetGenerator> generator;
};

FamilySpec spec_from_flags(const FamilyOptions& f) {
  if (f.tag.empty()) throw precondition_error("give --family FILE or --tag with --window-size");
  if (f.window_size == 0) throw precondition_error("--window-size must be positive");
  FamilySpec spec;
  spec.tag = family_tag_from_string(f.tag);
  spec.window = DirectedWindow::omega(f.window_size);
  spec.points = f.points;
  if (!f.alpha.empty()) spec.alpha_range = std::pair{f.alpha[0], f.alpha[1]};
  if (spec.tag == FamilyTag::paracompact && spec.points == 0) throw precondition_error("paracompact needs --points");
  return spec;
}

LoadedFamily load_family(const FamilyOptions& f) {
  LoadedFamily out;
  std::optional<FamilySpec> spec;
  if (!f.file.empty()) {
    const io::Json doc = io::read_file(f.file);
    const std::string type = doc.is_object() && doc.contains("type") && doc["type"].is_string() ? doc["type"] : "";
    if (type == "family") {
      io::FamilyData data = io::family_document(doc);
      out.tag = data.tag;
      out.window = data.members.front().window();
      out.members = std::move(data.members);
      out.targets = std::move(data.targets);
      auto members = std::make_shared<std::vector<Net>>(out.members);
      auto targets = std::make_shared<std::vector<Point>>(out.targets);
      NetGenerator::TargetFn target;
      if (!targets->empty()) target = [targets](std::uint64_t k) { return (*targets)[k]; };
      out.generator.emplace(out.tag, out.window, members->size(),
                            [members](std::uint64_t k) { return (*members)[k]; }, target);
      return out;
    }
    spec = io::family_spec_document(doc);
  } else {
    spec = spec_from_flags(f);
  }
  out.generator.emplace(enumerate_family(*spec));
  out.tag = std::string(to_string(spec->tag));
  out.window = out.generator->window();
  return out;
}

// Materializes members and targets of a generated family.
void materialize(LoadedFamily& fam) {
  if (!fam.members.empty()) return;
  fam.members = fam.generator->members();
  if (fam.generator->has_targets()) fam.targets = fam.generator->targets();
}

struct SuiteOptions {
  std::string name = "builtin";
  std::size_t count = 8;
  std::optional<std::uint64_t> seed;
};

void add_suite_options(CLI::App* cmd, SuiteOptions& s) {
  cmd->add_option("--suite", s.name, "identity, successor, doubling, builtin or random-K")->capture_default_str();
  cmd->add_option("--count", s.count, "number of samplings in a random suite")->capture_default_str();
  cmd->add_option("--seed", s.seed, "seed (required for random suites)");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw precondition_error("malformed number '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw precondition_error("empty list");
  return out;
}

IndexSet parse_index_set(const std::string& text) {
  IndexSet out;
  for (double v : parse_list(text)) {
    if (v < 0 || v != std::floor(v) || v > 4294967295.0) throw precondition_error("bad index in '" + text + "'");
    out.push_back(static_cast<Index>(v));
  }
  return normalized(std::move(out));
}

MetricSpace parse_space(const std::string& name) {
  if (name == "binary") return MetricSpace::binary();
  if (name == "unit") return MetricSpace::unit_interval();
  if (name == "real") return MetricSpace::real_line();
  if (name.starts_with("euclidean:")) {
    const auto dims = parse_list(name.substr(10));
    if (dims.size() != 1 || dims[0] < 1 || dims[0] != std::floor(dims[0]))
      throw precondition_error("bad euclidean dimension in '" + name + "'");
    return MetricSpace::euclidean(static_cast<std::size_t>(dims[0]));
  }
  throw precondition_error("unknown space '" + name + "' (binary, unit, real, euclidean:D)");
}

void emit(const io::Json& doc, const std::string& path) {
  const std::string text = io::dump(doc);
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw schema_error("cannot write " + path);
  out << text;
  if (!out) throw schema_error("write failed for " + path);
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  FamilyOptions family;
  SuiteOptions suite;
  std::string rate_file;
  bool rate_b = false;
  double eps = 0.5;
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  LoadedFamily fam = load_family(o.family);
  materialize(fam);
  if (o.rate_file.empty() == !o.rate_b) throw precondition_error("give exactly one of --rate FILE and --rate-b");
  const auto suite = make_suite(o.suite.name, fam.window, o.suite.seed, o.suite.count);

  io::Json reports = io::Json::array();
  bool overall = true;
  std::optional<Rate> file_rate;
  if (!o.rate_file.empty()) file_rate = io::rate_document(io::read_file(o.rate_file));
  for (const Sampling& eta : suite) {
    WitnessReport report;
    if (file_rate) {
      report = verify_rate(fam.members, *file_rate, o.eps, eta, fam.targets);
    } else {
      Rate r(fam.window, {o.eps});
      r.set(o.eps, eta, rate_B(eta, fam.window));
      report = verify_rate(fam.members, r, o.eps, eta);
    }
    overall = overall && report.overall;
    reports.push_back(io::to_json(report));
  }
  io::Json body;
  body["family_tag"] = fam.tag;
  body["family_size"] = fam.members.size();
  body["window_size"] = fam.window.size();
  body["eps"] = o.eps;
  body["rate"] = o.rate_b ? "rate_B" : o.rate_file;
  body["reports"] = std::move(reports);
  body["overall"] = overall;
  emit(io::document("verification", std::move(body)), o.out);
  return overall ? kOk : kRefuted;
}

struct RefuteOptionsCli {
  FamilyOptions family;
  std::vector<std::string> candidates;
  double eps = 0.5;
  std::uint64_t budget = 10000;
  std::uint64_t seed = 0;
  bool pointed = false;
  std::string out;
};

int run_refute(const RefuteOptionsCli& o) {
  LoadedFamily fam = load_family(o.family);
  std::vector<IndexSet> sets;
  for (const auto& c : o.candidates) sets.push_back(parse_index_set(c));
  const auto cert = refute_uniform(*fam.generator, sets, o.eps, {.budget = o.budget, .seed = o.seed, .pointed = o.pointed});
  if (cert) {
    emit(io::to_document(*cert), o.out);
    return kRefuted;
  }
  io::Json body;
  body["family_tag"] = fam.tag;
  body["window_size"] = fam.window.size();
  body["eps"] = o.eps;
  io::Json cs = io::Json::array();
  for (const auto& s : sets) cs.push_back(s);
  body["candidate_sets"] = std::move(cs);
  body["budget"] = o.budget;
  body["seed"] = o.seed;
  body["pointed"] = o.pointed;
  emit(io::document("refutation_exhausted", std::move(body)), o.out);
  return kOk;
}

struct AnalyzeOptions {
  FamilyOptions family;
  SuiteOptions suite;
  std::string csv;
  std::string space = "unit";
  std::optional<double> round;
  std::string eps_grid = "0.5,0.25,0.125";
  bool ump = false;
  std::string out;
  std::string summary;
};

void write_summary(const AnalysisReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw schema_error("cannot write " + path);
  out << "eps,sampling_id,candidates,uncovered,refuted\n";
  for (const auto& c : r.cells) {
    std::string cands;
    for (Index i : c.candidates) cands += (cands.empty() ? "" : " ") + std::to_string(i);
    std::string unc;
    for (std::size_t k : c.uncovered) unc += (unc.empty() ? "" : " ") + std::to_string(k);
    out << io::Json(c.eps).dump() << "," << c.sampling_id << "," << cands << "," << unc << ","
        << (c.refuted() ? "true" : "false") << "\n";
  }
}

int run_analyze(const AnalyzeOptions& o) {
  std::vector<Net> family;
  if (!o.csv.empty()) {
    family = ingest_csv(o.csv, parse_space(o.space), {.rounding_grid = o.round});
  } else {
    LoadedFamily fam = load_family(o.family);
    materialize(fam);
    family = std::move(fam.members);
  }
  const auto grid = parse_list(o.eps_grid);
  const auto suite = make_suite(o.suite.name, family.front().window(), o.suite.seed, o.suite.count);
  if (o.ump) {
    const UmpVerdict v = finite_space_ump_check(family, grid, suite);
    emit(io::to_document(v), o.out);
    return v.uniform ? kOk : kRefuted;
  }
  const AnalysisReport report = empirical_rate(family, grid, suite);
  emit(io::to_document(report), o.out);
  if (!o.summary.empty()) write_summary(report, o.summary);
  return report.refutation_found() ? kRefuted : kOk;
}

// ---------------------------------------------------------------------------
// Demos

std::string set_text(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "}";
}

std::string net_text(const Net& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Point& p = a[static_cast<Index>(i)];
    out += i ? "," : "";
    if (const Bit* b = std::get_if<Bit>(&p)) out += std::to_string(b->value);
    else if (const double* d = std::get_if<double>(&p)) out += io::Json(*d).dump();
    else out += io::to_json(p).dump();
  }
  return out + ")";
}

bool print_certificate(const RefutationCertificate& c) {
  std::cout << "  candidates " << set_text(c.candidates) << " at eps " << c.eps << "\n"
            << "  member     " << net_text(c.member) << "\n"
            << "  sampling   ";
  for (Index i : c.candidates) std::cout << "eta_" << i << "=" << set_text(c.sampling[i]) << " ";
  const bool ok = replay(c);
  std::cout << "\n  replay     " << (ok ? "no witness among the candidates" : "FAILED") << "\n";
  return ok;
}

int demo_b_rate(std::size_t n, std::optional<std::uint64_t> seed, std::size_t count) {
  if (!seed) throw precondition_error("demo b-rate draws random samplings; pass --seed");
  const auto w = DirectedWindow::omega(n);
  FamilySpec spec;
  spec.window = w;
  const auto family = enumerate_family(spec).members();
  const auto suite = make_suite("random-2", w, seed, count);
  std::cout << "family B on omega(" << n << "): " << family.size() << " non-increasing nets\n";
  bool all = true;
  for (const Sampling& eta : suite) {
    const IndexSet e = rate_B(eta, w);
    Rate r(w, Rate::default_grid());
    r.set(0x1p-10, eta, e);
    bool ok = true;
    for (double eps : Rate::default_grid()) ok = ok && verify_rate(family, r, eps, eta).overall;
    all = all && ok;
    std::cout << "  " << eta.id() << ": E = " << set_text(e) << (ok ? "  verified" : "  FAILED") << " on the default grid\n";
  }
  return all ? kOk : kNoReplay;
}

int demo_c_refute(std::size_t n) {
  const auto w = DirectedWindow::omega(n);
  std::cout << "family C (eventually zero) on omega(" << n << ")\n";
  bool ok = true;
  for (Index top = 0; top + 3 <= n && top < 4; ++top) {
    IndexSet s;
    for (Index i = 0; i <= top; ++i) s.push_back(i);
    ok = print_certificate(refute_C(s, w)) && ok;
  }
  return ok ? kOk : kNoReplay;
}

int demo_d_refute(std::size_t n) {
  const auto w = DirectedWindow::omega(n);
  std::cout << "family D (parity nets) on omega(" << n << "), pointed at 1\n";
  bool ok = true;
  for (Index top = 0; top + 3 <= n && top < 4; ++top) {
    IndexSet s;
    for (Index i = 0; i <= top; ++i) s.push_back(i);
    const auto c = refute_D_pointed(s, w);
    std::cout << " alpha = " << *c.member_index << "\n";
    ok = print_certificate(c) && ok;
  }
  return ok ? kOk : kNoReplay;
}

int demo_paracompact(std::size_t m, std::size_t horizon) {
  const auto gen = paracompact_nets(m, horizon);
  std::cout << "paracompact construction: " << m << " points, horizon " << horizon << "\n";
  for (std::size_t x = 0; x < m; ++x) {
    const Net a = gen.member(x);
    std::cout << "  x_" << x << ": f = " << net_text(a) << "  tail index "
              << window_cauchy_index(a, 0.5).value_or(horizon) << "\n";
  }
  const auto suite = make_suite("builtin", gen.window());
  const std::vector<double> grid{0.5};
  const auto v = finite_space_ump_check(gen.members(), grid, suite);
  std::cout << "plain uniform candidate sets over the finite family: " << (v.uniform ? "found" : "NOT FOUND") << "\n";
  for (const auto& c : v.cells) std::cout << "  " << c.sampling_id << ": " << set_text(c.candidates) << "\n";
  IndexSet s;
  for (Index i = 0; i + 1 < m; ++i) s.push_back(i);
  if (s.empty()) return kOk;
  const std::vector<IndexSet> sets{s};
  const auto cert = refute_uniform(gen, sets, 0.5, {.budget = 1000, .seed = 0, .pointed = true});
  std::cout << "pointed refutation near h = 1:\n";
  if (!cert) {
    std::cout << "  none found\n";
    return kNoReplay;
  }
  return print_certificate(*cert) ? kOk : kNoReplay;
}

int demo_cesaro(std::size_t horizon) {
  const std::vector<double> angles{std::numbers::pi / 2, std::numbers::pi / 3, 1.0};
  const char* names[] = {"pi/2", "pi/3", "1 rad"};
  const auto nets = cesaro_rotation_nets(angles, horizon);
  std::cout << "Cesaro averages of rotations (illustrative), horizon " << horizon << "\n";
  std::cout << "theta   n       |a_n|          envelope\n";
  for (std::size_t a = 0; a < angles.size(); ++a)
    for (std::size_t n = 1; n <= horizon; n *= 4) {
      const auto& p = std::get<Coordinates>(nets[a][static_cast<Index>(n - 1)]);
      std::printf("%-7s %-7zu %-14.6g %.6g\n", names[a], n, std::hypot(p[0], p[1]), cesaro_envelope(angles[a], n));
    }
  const std::vector<Sampling> suite{successor_sampling(nets[0].window())};
  const std::vector<double> grid{0.05};
  const auto report = empirical_rate(nets, grid, suite);
  const AnalysisCell& cell = report.cells[0];
  std::cout << "eps 0.05, successor sampling, first witnesses:";
  for (std::size_t a = 0; a < angles.size(); ++a) {
    std::cout << " " << names[a] << "=";
    if (cell.first_witness[a]) std::cout << *cell.first_witness[a];
    else std::cout << "none";
  }
  std::cout << "\n  uniform candidates " << set_text(cell.candidates) << "\n";
  return kOk;
}

int demo_lukasiewicz() {
  using namespace mvlogic;
  std::cout << "n      sup |approx_half(x,n) - x/2| over x in {0, 0.001, ..., 1}   1/(2n)\n";
  for (std::uint64_t n = 1; n <= 256; n *= 2) {
    double sup = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double x = k / 1000.0;
      sup = std::max(sup, std::fabs(approx_half(TruthValue(x), n).value() - x / 2));
    }
    std::printf("%-6llu %-60.6g %.6g\n", static_cast<unsigned long long>(n), sup, 1.0 / (2.0 * static_cast<double>(n)));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metastable convergence toolkit"};
  app.require_subcommand(1);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "check a rate against a family over a sampling suite");
  add_family_options(verify, vo.family);
  add_suite_options(verify, vo.suite);
  verify->add_option("--rate", vo.rate_file, "rate JSON document");
  verify->add_flag("--rate-b", vo.rate_b, "use the non-increasing family's rate {k, l}");
  verify->add_option("--eps", vo.eps, "tolerance")->capture_default_str();
  verify->add_option("--out", vo.out, "output file (default stdout)");

  RefuteOptionsCli ro;
  auto* refute = app.add_subcommand("refute", "search for a certificate defeating candidate witness sets");
  add_family_options(refute, ro.family);
  refute->add_option("--candidates", ro.candidates, "comma-separated candidate set (repeatable)")->required();
  refute->add_option("--eps", ro.eps, "tolerance")->capture_default_str();
  refute->add_option("--budget", ro.budget, "members probed by the search")->capture_default_str();
  refute->add_option("--seed", ro.seed, "search seed")->required();
  refute->add_flag("--pointed", ro.pointed, "refute pointed metastability against declared targets");
  refute->add_option("--out", ro.out, "output file (default stdout)");

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "empirical rates for a family or CSV sequences");
  add_family_options(analyze, ao.family);
  add_suite_options(analyze, ao.suite);
  analyze->add_option("--csv", ao.csv, "CSV file: one row per index");
  analyze->add_option("--space", ao.space, "binary, unit, real or euclidean:D")->capture_default_str();
  analyze->add_option("--round", ao.round, "round CSV values to this grid");
  analyze->add_option("--eps-grid", ao.eps_grid, "comma-separated eps values")->capture_default_str();
  analyze->add_flag("--ump", ao.ump, "run the finite-space uniform check instead");
  analyze->add_option("--out", ao.out, "report file (default stdout)");
  analyze->add_option("--summary", ao.summary, "CSV summary file");

  std::string demo_name;
  std::size_t demo_n = 8;
  std::size_t demo_points = 5;
  std::size_t demo_count = 4;
  std::optional<std::uint64_t> demo_seed;
  auto* demo = app.add_subcommand("demo", "built-in scenarios");
  demo->add_option("name", demo_name, "b-rate, c-refute, d-refute, paracompact, cesaro or lukasiewicz")->required();
  demo->add_option("--window-size", demo_n, "window size or horizon")->capture_default_str();
  demo->add_option("--points", demo_points, "paracompact: number of points")->capture_default_str();
  demo->add_option("--count", demo_count, "b-rate: number of random samplings")->capture_default_str();
  demo->add_option("--seed", demo_seed, "seed for randomized demos");

  std::string cert_file;
  auto* replay_cmd = app.add_subcommand("replay", "replay a refutation certificate");
  replay_cmd->add_option("certificate", cert_file, "certificate JSON document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kPrecondition;
  }

  try {
    if (verify->parsed()) return run_verify(vo);
    if (refute->parsed()) return run_refute(ro);
    if (analyze->parsed()) return run_analyze(ao);
    if (replay_cmd->parsed()) {
      const auto cert = io::certificate_document(io::read_file(cert_file));
      const bool ok = replay(cert);
      std::cout << (ok ? "certificate replays: no candidate witnesses\n" : "certificate does NOT replay\n");
      return ok ? kOk : kNoReplay;
    }
    if (demo_name == "b-rate") return demo_b_rate(demo_n, demo_seed, demo_count);
    if (demo_name == "c-refute") return demo_c_refute(demo_n);
    if (demo_name == "d-refute") return demo_d_refute(demo_n);
    if (demo_name == "paracompact") return demo_paracompact(demo_points, std::max(demo_n, 2 * demo_points + 2));
    if (demo_name == "cesaro") return demo_cesaro(std::max<std::size_t>(demo_n, 1));
    if (demo_name == "lukasiewicz") return demo_lukasiewicz();
    throw precondition_error("unknown demo '" + demo_name + "'");
  } catch (const schema_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSchema;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  }
}
