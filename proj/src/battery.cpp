#include "valshare/battery.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "valshare/dsl.hpp"
#include "valshare/error.hpp"
#include "valshare/expr.hpp"
#include "valshare/families.hpp"
#include "valshare/nevanlinna.hpp"
#include "valshare/roots.hpp"
#include "valshare/sharing.hpp"

namespace valshare {

namespace {

using dsl::json;

ExpSum sin2z_plus(long c) {
  Scalar i = Scalar::imaginary_unit();
  std::vector<Term> terms = {{-i * Scalar::rational(1, 2), Scalar(2) * i}, {i * Scalar::rational(1, 2), Scalar(-2) * i}};
  if (c != 0) terms.push_back({Scalar(c), Scalar()});
  return ExpSum::normalize(terms);
}

struct Fixtures {
  std::string dir;

  ExpSum get(const std::string& name, const std::function<ExpSum()>& build) const {
    if (dir.empty()) return build();
    return dsl::expsum_from_json(dsl::load_file(dir + "/" + name + ".json"));
  }
  ExpSum thm2prime() const { return get("thm2prime_d1_b1", [] { return thm2prime_family(1, 1); }); }
  ExpSum exp() const { return get("exp", [] { return ExpSum::exponential(1, 1); }); }
  ExpSum exp_plus2() const {
    return get("exp_plus2", [] { return ExpSum::exponential(1, 1) + ExpSum::constant(2); });
  }
  ExpSum example2() const { return get("example2_a1", [] { return valshare::example2(1).first; }); }
  ExpSum example3() const { return get("example3_a1", [] { return valshare::example3(1).first; }); }
  ExpSum thmC() const { return get("thmC_b1_A2", [] { return thmC_family(1, 2); }); }
  ExpSum sin2z() const { return get("sin2z", [] { return sin2z_plus(0); }); }
  ExpSum sin2z_plus2() const { return get("sin2z_plus2", [] { return sin2z_plus(2); }); }
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

class Battery {
 public:
  explicit Battery(const BatteryOptions& o) : opts_(o), fx_{o.fixtures_dir} {
    roots_.threads = o.threads;
    if (o.tol > 0.0) roots_.tol = std::max(roots_.tol, o.tol);
  }

  std::vector<BatteryResult> run() {
    add("C1", "cubic ODE of the two-term family is exactly zero", [&] { return cubic_ode(); });
    add("C2", "h3 is exactly the constant 4/27", [&] { return h3_constant(); });
    add("C3", "second-order linear ODE is exactly zero", [&] { return linear_ode(); });
    add("C4", "coefficient matching yields alpha=1/3, gamma=4/27, b2=4/27", [&] { return derive(); });
    add("C5", "1-point of f' with f'' != 0 and f = sqrt(6) - 1/2", [&] { return thm2_point(); });
    add("C6", "all 0- and 1-points of (sin 2z + 1)/2 and 1-points of f' are double", [&] { return ex2_mult(); });
    add("C7", "a sin z shares +-1 with f' only vacuously", [&] { return ex3_vacuous(); });
    add("C8", "squared family: f=0 gives f'=0 and f=1 gives f'=1", [&] { return thmC(); });
    add("C9", "proximity, Jensen and order estimates", [&] { return nevanlinna(); });
    add("C10", "defect estimates for the double-point example", [&] { return defects(); });
    add("C11", "logarithmic derivative proximity stays small", [&] { return log_derivative(); });
    add("C12", "the derived cubic has one singular point, at infinity", [&] { return curve(); });
    add("C13", "simple cube-root-of-unity points of f are simple for f'", [&] { return cube_roots(); });
    return results_;
  }

 private:
  double loosen(double t) const { return opts_.tol > 0.0 ? std::max(t, opts_.tol) : t; }

  void add(const char* id, const char* label, const std::function<std::string()>& body) {
    BatteryResult r;
    r.id = id;
    r.label = label;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.detail = body();
      r.pass = true;
    } catch (const Failed& f) {
      r.detail = f.what;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results_.push_back(r);
  }

  struct Failed {
    std::string what;
  };
  static void expect(bool ok, const std::string& msg) {
    if (!ok) throw Failed{msg};
  }

  ConstancyReport check(const char* src) {
    CheckOptions co;
    co.preference = CheckPreference::Exact;
    return check_identity(parse(src), Env{{"f", fx_.thm2prime()}}, co);
  }

  std::string cubic_ode() {
    auto r = check("D(f)^3 - f*D(f)^2 + (4/27)*(f^3 - 1)");
    expect(r.mode == CheckMode::Exact, "not checked exactly");
    expect(r.verdict == Verdict::IdenticallyZero, std::string("verdict ") + std::string(to_string(r.verdict)));
    return "IdenticallyZero (exact)";
  }

  std::string h3_constant() {
    auto r = check("D(f)^2*(f - D(f))/(f^3 - 1)");
    expect(r.mode == CheckMode::Exact, "not checked exactly");
    expect(r.verdict == Verdict::Constant && r.value && *r.value == Scalar::rational(4, 27),
           std::string("verdict ") + std::string(to_string(r.verdict)) + (r.value ? " " + r.value->to_string() : ""));
    return "Constant 4/27 (exact)";
  }

  std::string linear_ode() {
    auto r = check("D(D(f)) - (1/3)*D(f) - (2/9)*f");
    expect(r.mode == CheckMode::Exact && r.verdict == Verdict::IdenticallyZero,
           std::string("verdict ") + std::string(to_string(r.verdict)));
    return "IdenticallyZero (exact)";
  }

  std::string derive() {
    auto d = derive_family_constants(1);
    expect(d.alpha == Scalar::rational(1, 3) && d.gamma == Scalar::rational(4, 27) &&
               d.b2 == Scalar::rational(4, 27) && d.b1.is_zero() && d.b0.is_zero() && d.c2.is_zero() &&
               d.c1.is_zero() && d.residuals.empty(),
           "unexpected constants");
    return "alpha=1/3 gamma=4/27 b2=4/27 b1=b0=c2=c1=0";
  }

  std::string thm2_point() {
    ExpSum f = fx_.thm2prime();
    ExpSum fp = differentiate(f);
    double t = 3.0 * (2.0 + std::sqrt(6.0)) / 4.0;
    Complex z0(3.0 * std::log(t), 0.0);
    LocateResult loc = locate_a_points(fp, 1.0, Region{-5, 25, -15, 15}, roots_);
    const APoint* hit = nullptr;
    for (const auto& p : loc.points)
      if (std::abs(p.location - z0) < 1e-6) hit = &p;
    expect(hit != nullptr, "no 1-point of f' near 3 ln(3(2+sqrt 6)/4)");
    Jet j = f.jet(hit->location, 2);
    Complex fv = j.d[0] * std::exp(j.log_scale);
    Complex f1 = j.d[1] * std::exp(j.log_scale);
    Complex f2 = j.d[2] * std::exp(j.log_scale);
    expect(std::abs(f1 - 1.0) <= loosen(1e-9), "|f'(z0) - 1| = " + num(std::abs(f1 - 1.0)));
    expect(std::abs(f2) > 1e-3, "f''(z0) vanishes");
    double target = std::sqrt(6.0) - 0.5;
    expect(std::abs(fv - target) <= loosen(1e-9), "|f(z0) - (sqrt6 - 1/2)| = " + num(std::abs(fv - target)));
    return "z0 = " + num(hit->location.real()) + ", f(z0) = " + num(fv.real());
  }

  std::string ex2_mult() {
    ExpSum f = fx_.example2();
    ExpSum fp = differentiate(f);
    Region r{-6, 6, -6, 6};
    std::size_t n = 0;
    auto audit = [&](const ExpSum& g, Complex a, const char* what) {
      LocateResult loc = locate_a_points(g, a, r, roots_);
      long sum = 0;
      for (const auto& p : loc.points) {
        expect(p.multiplicity == 2, std::string(what) + " has a point of multiplicity " + std::to_string(p.multiplicity));
        sum += p.multiplicity;
      }
      expect(sum == winding_count(g, a, loc.region), std::string(what) + ": multiplicities do not match winding");
      n += loc.points.size();
    };
    audit(f, 1.0, "f = 1");
    audit(fp, 1.0, "f' = 1");
    audit(f, 0.0, "f = 0");
    return std::to_string(n) + " points, all double";
  }

  std::string ex3_vacuous() {
    ExpSum f = fx_.example3();
    for (double a : {1.0, -1.0}) {
      SharingOptions so;
      so.roots = roots_;
      auto rep = check_condition(f, a, Region{-7, 7, -7, 7}, {SharingCondition::ShareSimple}, so);
      expect(rep.verdict(SharingCondition::ShareSimple) == SharingVerdict::HoldsVacuously,
             "value " + num(a) + ": " + std::string(to_string(*rep.verdict(SharingCondition::ShareSimple))));
    }
    return "holds-vacuously for 1 and -1";
  }

  std::string thmC() {
    ExpSum f = fx_.thmC();
    Region r{-10, 10, -40, 40};
    LocateResult zeros = locate_a_points(f, 0.0, r, roots_);
    LocateResult ones = locate_a_points(f, 1.0, r, roots_);
    expect(zeros.points.size() >= 3 && ones.points.size() >= 3, "fewer than 3 zeros or 1-points in the region");
    double worst0 = 0.0, worst1 = 0.0;
    for (const auto& p : zeros.points) worst0 = std::max(worst0, std::abs(p.derivative_value));
    for (const auto& p : ones.points) worst1 = std::max(worst1, std::abs(p.derivative_value - 1.0));
    expect(worst0 <= loosen(1e-8), "max |f'| at zeros = " + num(worst0));
    expect(worst1 <= loosen(1e-8), "max |f' - 1| at 1-points = " + num(worst1));
    return std::to_string(zeros.points.size()) + " zeros, " + std::to_string(ones.points.size()) + " 1-points";
  }

  NevOptions nev() const {
    NevOptions o;
    o.roots = roots_;
    return o;
  }

  std::string nevanlinna() {
    ExpSum e = fx_.exp();
    for (double r : {1.0, 5.0, 20.0}) {
      double m = proximity(e, r, std::nullopt, nev());
      double rel = std::abs(m - r / std::numbers::pi) / (r / std::numbers::pi);
      expect(rel <= loosen(1e-6), "m(" + num(r) + ", e^z) relative error " + num(rel));
    }
    for (double r : {2.0, 5.0}) {
      double res = jensen_check(fx_.exp_plus2(), r, nev());
      expect(res <= loosen(1e-6), "Jensen residual " + num(res) + " at r = " + num(r));
    }
    std::vector<double> radii = {10, 20, 50, 100};
    double oe = order_estimate(e, radii, nev());
    double os = order_estimate(fx_.sin2z(), radii, nev());
    expect(oe >= 0.95 && oe <= 1.05, "order of e^z estimated as " + num(oe));
    expect(os >= 0.95 && os <= 1.05, "order of sin 2z estimated as " + num(os));
    return "orders " + num(oe) + ", " + num(os);
  }

  std::string defects() {
    ExpSum f = fx_.example2();
    double t0 = defect_estimate(f, 0.0, 200, nev()).theta_hat;
    double t1 = defect_estimate(f, 1.0, 200, nev()).theta_hat;
    expect(t0 >= 0.4 && t0 <= 0.6, "theta(0) = " + num(t0));
    expect(t1 >= 0.4 && t1 <= 0.6, "theta(1) = " + num(t1));
    expect(t0 + t1 <= 1.15, "sum " + num(t0 + t1));
    return "theta(0) = " + num(t0) + ", theta(1) = " + num(t1);
  }

  std::string log_derivative() {
    double worst = 0.0;
    for (const ExpSum& f : {fx_.thm2prime(), fx_.sin2z_plus2()})
      for (double r : {10.0, 100.0, 1000.0}) worst = std::max(worst, log_derivative_proximity(f, r, nev()));
    expect(worst <= 5.0, "max m(r, f'/f) = " + num(worst));
    return "max m(r, f'/f) = " + num(worst);
  }

  std::string curve() {
    CubicCurve c{Scalar::rational(4, 27), 0, 0, -1};
    CurveClass cc = classify_cubic(c);
    expect(cc.kind == CurveKind::SingularGenus0, "classified as " + std::string(to_string(cc.kind)));
    expect(cc.singular_points.size() == 1, "expected exactly one singular point");
    const auto& p = cc.singular_points[0];
    expect(p.x == Scalar(1) && p.y == Scalar::rational(2, 3) && p.z.is_zero(), "singular point is not [1 : 2/3 : 0]");
    auto slice = infinity_slice(c);
    bool ok = slice.size() == 2;
    for (const auto& s : slice) {
      if (!s.exact) ok = false;
      else if (*s.exact == Scalar::rational(-1, 3)) ok &= s.multiplicity == 1;
      else if (*s.exact == Scalar::rational(2, 3)) ok &= s.multiplicity == 2;
      else ok = false;
    }
    expect(ok, "slice at infinity does not factor as (Y + X/3)(Y - 2X/3)^2");
    return "SingularGenus0 at [1 : 2/3 : 0]";
  }

  std::string cube_roots() {
    ExpSum f = fx_.thm2prime();
    std::size_t simple = 0;
    SharingOptions so;
    so.roots = roots_;
    for (int j = 0; j < 3; ++j) {
      Complex w = std::polar(1.0, 2.0 * std::numbers::pi * j / 3.0);
      auto rep = check_condition(f, w, Region{-6, 6, -6, 6}, {SharingCondition::SimpleToSimple}, so);
      auto v = rep.verdict(SharingCondition::SimpleToSimple);
      expect(v && *v != SharingVerdict::Fails, "fails for the value " + num(w.real()) + "+" + num(w.imag()) + "i");
      simple += rep.simple_points_f.size();
    }
    return std::to_string(simple) + " simple points checked";
  }

  BatteryOptions opts_;
  Fixtures fx_;
  RootOptions roots_;
  std::vector<BatteryResult> results_;
};

}  // namespace

std::vector<BatteryResult> run_battery(const BatteryOptions& opts) { return Battery(opts).run(); }

std::vector<std::pair<std::string, std::string>> fixture_files() {
  std::vector<std::pair<std::string, ExpSum>> fns = {
      {"thm2prime_d1_b1", thm2prime_family(1, 1)},
      {"exp", ExpSum::exponential(1, 1)},
      {"exp_plus2", ExpSum::exponential(1, 1) + ExpSum::constant(2)},
      {"example1_C1_a1_b2", example1(1, 1, 2)},
      {"example2_a1", example2(1).first},
      {"example3_a1", example3(1).first},
      {"thmC_b1_A2", thmC_family(1, 2)},
      {"sin2z", sin2z_plus(0)},
      {"sin2z_plus2", sin2z_plus(2)},
  };
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, f] : fns) out.emplace_back(name + ".json", dsl::expsum_to_json(f).dump(2) + "\n");
  ProbeGrid g = default_probe_grid();
  json grid{{"coeffs", json::array()}, {"freqs", json::array()}};
  for (const auto& c : g.coeffs) grid["coeffs"].push_back(dsl::scalar_to_json(c));
  for (const auto& c : g.freqs) grid["freqs"].push_back(dsl::scalar_to_json(c));
  out.emplace_back("default_grid.json", grid.dump(2) + "\n");
  return out;
}

}  // namespace valshare
