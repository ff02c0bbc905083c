#include "valshare/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "valshare/battery.hpp"
#include "valshare/dsl.hpp"
#include "valshare/error.hpp"
#include "valshare/expr.hpp"
#include "valshare/format.hpp"
#include "valshare/families.hpp"
#include "valshare/nevanlinna.hpp"
#include "valshare/sharing.hpp"

namespace valshare {

namespace {

using dsl::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<double> tol;
  double match_tol = 1e-8;
  double value_tol = 1e-8;
  double margin = 0.05;
  std::optional<double> isolation_size;
  std::optional<double> mult_radius;
  std::string mode = "auto";
  std::string format;
  std::string out;
  int threads = 0;
};

json config_json(const RunConfig& c) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return json{{"command", c.command},
              {"inputs", c.inputs},
              {"tol", opt(c.tol)},
              {"match_tol", c.match_tol},
              {"value_tol", c.value_tol},
              {"margin", c.margin},
              {"isolation_size", opt(c.isolation_size)},
              {"mult_radius", opt(c.mult_radius)},
              {"mode", c.mode},
              {"format", c.format.empty() ? "json" : c.format},
              {"out", c.out},
              {"threads", c.threads}};
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Syntax:
    case ErrorKind::UnboundIdentifier:
    case ErrorKind::ZeroParameter:
    case ErrorKind::DegenerateGamma:
    case ErrorKind::Io:
      return kExitUsage;
    default:
      return kExitNumeric;
  }
}

Scalar scalar_arg(const std::string& text, const std::string& what) {
  auto pos = text.find_first_not_of(" \t");
  if (pos == std::string::npos) throw UsageError(what + " is empty");
  try {
    if (text[pos] == '{' || text[pos] == '[') return dsl::scalar_from_json(json::parse(text));
    return Scalar::parse(text.substr(pos));
  } catch (const std::exception& e) {
    throw UsageError(what + ": cannot read '" + text + "' as a number (" + e.what() + ")");
  }
}

std::vector<Scalar> values_arg(const std::string& text) { return dsl::values_from_json(dsl::load_inline_or_file(text)); }

std::vector<double> radii_arg(const std::string& text) {
  std::vector<double> out;
  auto pos = text.find_first_not_of(" \t");
  if (pos != std::string::npos && text[pos] == '[') {
    for (const auto& v : dsl::load_inline_or_file(text)) out.push_back(dsl::scalar_from_json(v).to_complex().real());
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(scalar_arg(item, "--radii").to_complex().real());
  }
  if (out.empty()) throw UsageError("--radii needs at least one radius");
  for (double r : out)
    if (!(r > 0.0)) throw UsageError("radii must be positive");
  return out;
}

std::pair<std::string, std::string> binding(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) return {"f", text};
  return {text.substr(0, eq), text.substr(eq + 1)};
}

ExpSum load_fn(const std::string& path) { return dsl::expsum_from_json(dsl::load_inline_or_file(path)); }

/// "exact" or "float" for the given inputs.
std::string resolve_mode(const std::string& requested, bool all_exact) {
  if (requested == "exact") {
    if (!all_exact) throw UsageError("exact mode needs rational inputs");
    return "exact";
  }
  if (requested == "float") return "float";
  return all_exact ? "exact" : "float";
}

json point_json(const APoint& p) {
  return json{{"z", dsl::complex_to_json(p.location)},
              {"multiplicity", p.multiplicity},
              {"residual", p.residual},
              {"fprime", dsl::complex_to_json(p.derivative_value)}};
}

json points_json(const std::vector<APoint>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(point_json(p));
  return a;
}

json scalar_out(const Scalar& s, const std::string& mode) {
  if (mode == "exact" && s.is_exact()) return s.to_string();
  return dsl::complex_to_json(s.to_complex());
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv);

 private:
  RootOptions roots() const {
    RootOptions o;
    if (cfg_.tol) o.tol = *cfg_.tol;
    if (cfg_.isolation_size) o.isolation_size = *cfg_.isolation_size;
    if (cfg_.mult_radius) o.mult_radius = *cfg_.mult_radius;
    o.threads = cfg_.threads;
    return o;
  }
  NevOptions nev() const {
    NevOptions o;
    o.roots = roots();
    return o;
  }
  SharingOptions sharing() const {
    SharingOptions o;
    o.roots = roots();
    o.match_tol = cfg_.match_tol;
    o.value_tol = cfg_.value_tol;
    o.margin = cfg_.margin;
    return o;
  }

  ExpSum single_fn(std::string& mode) {
    if (fns_.size() != 1) throw UsageError(cfg_.command + " needs exactly one --fn");
    ExpSum f = load_fn(binding(fns_[0]).second);
    mode = resolve_mode(cfg_.mode, f.is_exact());
    return mode == "float" ? to_float(f) : f;
  }

  json report(const std::string& mode) const { return json{{"command", cfg_.command}, {"mode", mode}, {"config", config_json(cfg_)}}; }

  void emit(const std::string& text) {
    if (cfg_.out.empty())
      out_ << text;
    else
      dsl::write_file(cfg_.out, text);
  }
  void emit(const json& j) { emit(j.dump(2) + "\n"); }
  void need_json() const {
    if (!cfg_.format.empty() && cfg_.format != "json") throw UsageError(cfg_.command + " only writes JSON");
  }

  int verify();
  int locate();
  int profile();
  int share();
  int derive();
  int classify_curve();
  int probe();
  int reproduce();
  int export_fixtures();

  std::ostream& out_;
  std::ostream& err_;
  RunConfig cfg_;
  std::vector<std::string> fns_;
  std::string expr_, expect_, value_ = "0", region_, radii_, values_, grid_, fixtures_, export_dir_ = "fixtures";
  std::vector<std::string> conditions_;
  std::string delta_, gamma_, c2_ = "0", c1_ = "0", c0_, a_, b_;
};

int Cli::verify() {
  need_json();
  if (fns_.empty()) throw UsageError("verify needs at least one --fn name=path");
  Env env;
  bool all_exact = true;
  for (const auto& spec : fns_) {
    auto [name, path] = binding(spec);
    ExpSum f = load_fn(path);
    all_exact &= f.is_exact();
    env[name] = f;
  }
  std::string mode = resolve_mode(cfg_.mode, all_exact);
  CheckOptions co;
  if (mode == "float") {
    co.preference = CheckPreference::Sampled;
    for (auto& [name, f] : env) f = to_float(f);
  } else if (cfg_.mode == "exact") {
    co.preference = CheckPreference::Exact;
  }
  ConstancyReport r = check_identity(parse(expr_), env, co);
  std::string used = r.mode == CheckMode::Exact ? "exact" : "float";

  json j = report(used);
  j["expression"] = expr_;
  j["verdict"] = std::string(to_string(r.verdict));
  if (r.value) j["value"] = scalar_out(*r.value, used);
  auto witness = [](const Witness& w) {
    return json{{"z", dsl::complex_to_json(w.z)}, {"value", dsl::complex_to_json(w.value)}};
  };
  if (r.witness) j["witness"] = witness(*r.witness);
  if (r.contrast) j["contrast"] = witness(*r.contrast);
  j["samples_used"] = r.samples_used;
  if (r.numerator) j["numerator"] = r.numerator->to_string();
  if (r.denominator) j["denominator"] = r.denominator->to_string();
  if (!r.note.empty()) j["note"] = r.note;

  int code = kExitOk;
  if (!expect_.empty()) {
    bool ok = false;
    if (expect_ == "zero") ok = r.verdict == Verdict::IdenticallyZero;
    if (expect_ == "constant") ok = r.verdict == Verdict::Constant || r.verdict == Verdict::IdenticallyZero;
    if (expect_ == "nonconstant") ok = r.verdict == Verdict::NonConstant;
    j["expect"] = expect_;
    j["expectation_met"] = ok;
    if (!ok) code = kExitMismatch;
  }
  emit(j);
  if (code == kExitMismatch) err_ << "expected " << expect_ << ", got " << to_string(r.verdict) << "\n";
  return code;
}

int Cli::locate() {
  if (!cfg_.format.empty() && cfg_.format != "json" && cfg_.format != "csv") throw UsageError("locate writes json or csv");
  std::string mode;
  ExpSum f = single_fn(mode);
  if (region_.empty()) throw UsageError("locate needs --region");
  Region region = dsl::region_from_json(dsl::load_inline_or_file(region_));
  Complex a = scalar_arg(value_, "--value").to_complex();
  LocateResult loc = locate_a_points(f, a, region, roots());

  if (cfg_.format == "csv") {
    std::ostringstream os;
    os << "re,im,multiplicity,residual\n";
    for (const auto& p : loc.points)
      os << format_double(p.location.real()) << ',' << format_double(p.location.imag()) << ',' << p.multiplicity << ','
         << format_double(p.residual) << '\n';
    emit(os.str());
    return kExitOk;
  }
  json j = report(mode);
  j["value"] = dsl::complex_to_json(a);
  j["region"] = dsl::region_to_json(loc.region);
  j["winding"] = loc.winding;
  j["points"] = points_json(loc.points);
  j["notes"] = loc.notes;
  emit(j);
  return kExitOk;
}

int Cli::profile() {
  if (!cfg_.format.empty() && cfg_.format != "json" && cfg_.format != "csv") throw UsageError("profile writes json or csv");
  std::string mode;
  ExpSum f = single_fn(mode);
  if (radii_.empty()) throw UsageError("profile needs --radii");
  std::vector<double> radii = radii_arg(radii_);
  std::vector<Complex> values;
  if (!values_.empty())
    for (const auto& s : values_arg(values_)) values.push_back(s.to_complex());
  NevanlinnaProfile p = valshare::profile(f, values, radii, nev());

  if (cfg_.format == "csv") {
    emit(profile_csv(p));
    return kExitOk;
  }
  json j = report(mode);
  j["radii"] = p.radii;
  j["m"] = p.m;
  j["T"] = p.T;
  json vals = json::array();
  for (const auto& v : p.values) {
    json n = json::array(), N = json::array(), Nb = json::array();
    for (const auto& c : v.counts) {
      n.push_back(c.n);
      N.push_back(c.N);
      Nb.push_back(c.N_bar);
    }
    vals.push_back(json{{"a", dsl::complex_to_json(v.a)}, {"n", n}, {"N", N}, {"N_bar", Nb}});
  }
  j["values"] = vals;
  emit(j);
  return kExitOk;
}

int Cli::share() {
  need_json();
  std::string mode;
  ExpSum f = single_fn(mode);
  if (values_.empty()) throw UsageError("share needs --values");
  if (region_.empty()) throw UsageError("share needs --region");
  Region region = dsl::region_from_json(dsl::load_inline_or_file(region_));
  std::vector<SharingCondition> conds;
  for (const auto& c : conditions_) {
    auto pc = parse_condition(c);
    if (!pc) throw UsageError("unknown condition '" + c + "' (share-simple, s2s, s2a)");
    conds.push_back(*pc);
  }
  SharingOptions so = sharing();

  json reports = json::array();
  for (const auto& s : values_arg(values_)) {
    SharingReport rep = check_condition(f, s.to_complex(), region, conds, so);
    json verdicts = json::object();
    for (const auto& [c, v] : rep.verdicts) verdicts[std::string(to_string(c))] = std::string(to_string(v));
    json matches = json::array();
    for (const auto& m : rep.matches)
      matches.push_back(json{{"f", point_json(m.f_point)}, {"fprime", point_json(m.fprime_point)}, {"distance", m.distance}});
    json violations = json::array();
    for (const auto& v : rep.violations) {
      json cs = json::array();
      for (auto c : v.conditions) cs.push_back(std::string(to_string(c)));
      violations.push_back(json{{"point", point_json(v.point)},
                                {"of", v.of_fprime ? "fprime" : "f"},
                                {"conditions", cs},
                                {"f_value", dsl::complex_to_json(v.f_value)},
                                {"fprime_value", dsl::complex_to_json(v.fprime_value)}});
    }
    reports.push_back(json{{"a", dsl::complex_to_json(rep.a)},
                           {"verdicts", verdicts},
                           {"simple_points_f", points_json(rep.simple_points_f)},
                           {"simple_points_fprime", points_json(rep.simple_points_fprime)},
                           {"matches", matches},
                           {"violations", violations},
                           {"unmatched", points_json(rep.unmatched)},
                           {"boundary_excluded", points_json(rep.boundary_excluded)},
                           {"notes", rep.notes}});
  }
  json j = report(mode);
  j["region"] = dsl::region_to_json(region);
  j["reports"] = reports;
  emit(j);
  return kExitOk;
}

int Cli::derive() {
  need_json();
  if (delta_.empty()) throw UsageError("derive needs --delta");
  Scalar delta = scalar_arg(delta_, "--delta");
  std::string mode = resolve_mode(cfg_.mode, delta.is_exact());
  if (mode == "float") delta = delta.to_float();
  DerivedConstants d = derive_family_constants(delta);
  json j = report(mode);
  j["delta"] = scalar_out(delta, mode);
  j["alpha"] = scalar_out(d.alpha, mode);
  j["gamma"] = scalar_out(d.gamma, mode);
  j["b2"] = scalar_out(d.b2, mode);
  j["b1"] = scalar_out(d.b1, mode);
  j["b0"] = scalar_out(d.b0, mode);
  j["c2"] = scalar_out(d.c2, mode);
  j["c1"] = scalar_out(d.c1, mode);
  json residuals = json::object();
  for (const auto& [k, v] : d.residuals) residuals["t^" + std::to_string(k)] = scalar_out(v, mode);
  j["residuals"] = residuals;
  json steps = json::array();
  for (const auto& s : d.steps)
    steps.push_back(json{{"equation", s.equation}, {"polynomial", s.polynomial}, {"variable", s.variable},
                         {"value", s.value}, {"note", s.note}});
  j["steps"] = steps;
  j["notes"] = d.notes;
  emit(j);
  return kExitOk;
}

int Cli::classify_curve() {
  need_json();
  if (gamma_.empty() || c0_.empty()) throw UsageError("classify-curve needs --gamma and --c0");
  CubicCurve c{scalar_arg(gamma_, "--gamma"), scalar_arg(c2_, "--c2"), scalar_arg(c1_, "--c1"), scalar_arg(c0_, "--c0")};
  std::string mode = resolve_mode(cfg_.mode, c.is_exact());
  if (mode == "float") c = {c.gamma.to_float(), c.c2.to_float(), c.c1.to_float(), c.c0.to_float()};
  CurveClass cc = classify_cubic(c);
  std::string claim = cc.exact ? mode : "float";
  json j = report(claim);
  j["kind"] = std::string(to_string(cc.kind));
  j["exact"] = cc.exact && mode == "exact";
  if (cc.factor) j["factor"] = json{{"u", scalar_out(cc.factor->first, claim)}, {"v", scalar_out(cc.factor->second, claim)}};
  json sing = json::array();
  for (const auto& p : cc.singular_points)
    sing.push_back(json::array({scalar_out(p.x, claim), scalar_out(p.y, claim), scalar_out(p.z, claim)}));
  j["singular_points"] = sing;
  json slice = json::array();
  for (const auto& s : infinity_slice(c)) {
    json e{{"y", dsl::complex_to_json(s.value)}, {"multiplicity", s.multiplicity}};
    if (s.exact && claim == "exact") e["exact"] = s.exact->to_string();
    slice.push_back(e);
  }
  j["slice_at_infinity"] = slice;
  j["notes"] = cc.notes;
  emit(j);
  return kExitOk;
}

int Cli::probe() {
  need_json();
  if (a_.empty() || b_.empty()) throw UsageError("probe needs --a and --b");
  Complex a = scalar_arg(a_, "--a").to_complex();
  Complex b = scalar_arg(b_, "--b").to_complex();
  ProbeGrid grid = default_probe_grid();
  if (!grid_.empty()) {
    json g = dsl::load_inline_or_file(grid_);
    if (!g.is_object()) throw UsageError("--grid must be a JSON object");
    grid = ProbeGrid{};
    if (g.contains("coeffs")) grid.coeffs = dsl::values_from_json(g.at("coeffs"));
    if (g.contains("freqs")) grid.freqs = dsl::values_from_json(g.at("freqs"));
    if (g.contains("functions"))
      for (const auto& fj : g.at("functions")) grid.functions.push_back(dsl::expsum_from_json(fj));
  }
  Region region{-4, 4, -4, 4};
  if (!region_.empty()) region = dsl::region_from_json(dsl::load_inline_or_file(region_));
  ProbeResult res = question_probe(a, b, grid, region, sharing());

  json j = report("float");
  j["tag"] = ProbeResult::kTag;
  j["a"] = dsl::complex_to_json(a);
  j["b"] = dsl::complex_to_json(b);
  j["region"] = dsl::region_to_json(region);
  j["tested"] = res.tested;
  json skipped = json::array();
  for (const auto& [fn, why] : res.skipped) skipped.push_back(json{{"function", fn}, {"reason", why}});
  j["skipped"] = skipped;
  json cands = json::array();
  for (const auto& c : res.candidates) {
    json vals = json::array();
    for (const auto& pc : c.values)
      vals.push_back(json{{"a", dsl::complex_to_json(pc.a)},
                          {"strongest", pc.strongest ? json(std::string(to_string(*pc.strongest))) : json(nullptr)},
                          {"vacuous", pc.vacuous}});
    cands.push_back(json{{"f", dsl::expsum_to_json(c.f)}, {"text", c.f.to_string()}, {"vacuous", c.vacuous}, {"values", vals}});
  }
  j["candidates"] = cands;
  emit(j);
  return kExitOk;
}

int Cli::reproduce() {
  if (!cfg_.format.empty() && cfg_.format != "json" && cfg_.format != "text")
    throw UsageError("reproduce-paper writes text or json");
  BatteryOptions bo;
  if (cfg_.tol) bo.tol = *cfg_.tol;
  bo.fixtures_dir = fixtures_;
  bo.threads = cfg_.threads;
  auto results = run_battery(bo);

  std::vector<std::string> failed;
  for (const auto& r : results)
    if (!r.pass) failed.push_back(r.id);
  if (cfg_.format == "json") {
    json checks = json::array();
    for (const auto& r : results)
      checks.push_back(json{{"id", r.id}, {"label", r.label}, {"pass", r.pass}, {"detail", r.detail}});
    json j = report("exact");
    j["checks"] = checks;
    j["failed"] = failed;
    emit(j);
  } else {
    std::ostringstream os;
    for (const auto& r : results)
      os << std::left << std::setw(4) << r.id << ' ' << (r.pass ? "PASS" : "FAIL") << ' ' << std::right
         << std::fixed << std::setprecision(2) << std::setw(6) << r.seconds << "s  " << r.label << "  [" << r.detail
         << "]\n";
    os << (failed.empty() ? "all checks passed" : std::to_string(failed.size()) + " check(s) failed") << "\n";
    emit(os.str());
  }
  if (failed.empty()) return kExitOk;
  err_ << "failed:";
  for (const auto& id : failed) err_ << ' ' << id;
  err_ << "\n";
  return kExitBattery;
}

int Cli::export_fixtures() {
  need_json();
  std::error_code ec;
  std::filesystem::create_directories(export_dir_, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + export_dir_ + ": " + ec.message());
  json written = json::array();
  for (const auto& [name, text] : fixture_files()) {
    std::string path = (std::filesystem::path(export_dir_) / name).string();
    dsl::write_file(path, text);
    written.push_back(path);
  }
  json j = report("exact");
  j["written"] = written;
  emit(j);
  return kExitOk;
}

int Cli::run(int argc, const char* const* argv) {
  CLI::App app{"Verification toolkit for exponential sums and their derivatives", "valshare"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--mode", cfg_.mode, "exact, float or auto")->check(CLI::IsMember({"exact", "float", "auto"}));
  app.add_option("--format", cfg_.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg_.out, "write the report here instead of stdout");
  app.add_option("--threads", cfg_.threads, "worker threads (0: VALSHARE_THREADS or 1)")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", cfg_.tol, "residual tolerance; for reproduce-paper a floor on every threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--isolation-size", cfg_.isolation_size)->check(CLI::PositiveNumber);
  app.add_option("--mult-radius", cfg_.mult_radius)->check(CLI::PositiveNumber);

  auto fn_opt = [&](CLI::App* sub, const char* help) { sub->add_option("--fn", fns_, help); };
  auto region_opt = [&](CLI::App* sub) {
    sub->add_option("--region", region_, "[re_min,re_max,im_min,im_max] inline or a JSON file");
  };

  auto* verify = app.add_subcommand("verify", "decide whether an expression is zero, constant or neither");
  verify->add_option("--expr", expr_)->required();
  fn_opt(verify, "name=path binding, repeatable");
  verify->add_option("--expect", expect_)->check(CLI::IsMember({"zero", "constant", "nonconstant"}));

  auto* locate = app.add_subcommand("locate", "find the a-points of f in a rectangle");
  fn_opt(locate, "function file or inline JSON");
  locate->add_option("--value", value_, "the value a (default 0)");
  region_opt(locate);

  auto* profile = app.add_subcommand("profile", "Nevanlinna functions over a list of radii");
  fn_opt(profile, "function file or inline JSON");
  profile->add_option("--radii", radii_, "comma list or JSON array");
  profile->add_option("--values", values_, "JSON array of values for the counting functions");

  auto* share = app.add_subcommand("share", "compare the simple a-points of f and f'");
  fn_opt(share, "function file or inline JSON");
  share->add_option("--values", values_, "JSON array of values");
  region_opt(share);
  share->add_option("--condition", conditions_, "share-simple, s2s or s2a; repeatable (default all)");
  share->add_option("--match-tol", cfg_.match_tol)->check(CLI::PositiveNumber);
  share->add_option("--value-tol", cfg_.value_tol)->check(CLI::PositiveNumber);
  share->add_option("--margin", cfg_.margin)->check(CLI::NonNegativeNumber);

  auto* derive = app.add_subcommand("derive", "solve the coefficient system of the two-term family");
  derive->add_option("--delta", delta_)->required();

  auto* classify = app.add_subcommand("classify-curve", "classify Y^3 - XY^2 + gamma (X^3 + c2 X^2 + c1 X + c0)");
  classify->add_option("--gamma", gamma_)->required();
  classify->add_option("--c2", c2_);
  classify->add_option("--c1", c1_);
  classify->add_option("--c0", c0_)->required();

  auto* probe = app.add_subcommand("probe", "search a grid of two-term sums sharing a and b with f' (experimental)");
  probe->add_option("--a", a_)->required();
  probe->add_option("--b", b_)->required();
  probe->add_option("--grid", grid_, "JSON with coeffs, freqs and optional functions");
  region_opt(probe);
  probe->add_option("--match-tol", cfg_.match_tol)->check(CLI::PositiveNumber);
  probe->add_option("--margin", cfg_.margin)->check(CLI::NonNegativeNumber);

  auto* reproduce = app.add_subcommand("reproduce-paper", "run the full check battery");
  reproduce->add_option("--fixtures", fixtures_, "load the battery's functions from this directory");

  auto* exportf = app.add_subcommand("export-fixtures", "write the fixture functions as JSON");
  exportf->add_option("dir", export_dir_, "target directory (default fixtures)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg_.command = sub->get_name();
  for (const auto& f : fns_) cfg_.inputs.push_back(binding(f).second);
  for (const auto* s : {&region_, &grid_, &fixtures_, &values_})
    if (!s->empty() && s->front() != '[' && s->front() != '{') cfg_.inputs.push_back(*s);

  try {
    if (sub == verify) return this->verify();
    if (sub == locate) return this->locate();
    if (sub == profile) return this->profile();
    if (sub == share) return this->share();
    if (sub == derive) return this->derive();
    if (sub == classify) return classify_curve();
    if (sub == probe) return this->probe();
    if (sub == reproduce) return this->reproduce();
    return export_fixtures();
  } catch (const UsageError& e) {
    err_ << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err_ << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(argc, argv);
}

}  // namespace valshare
