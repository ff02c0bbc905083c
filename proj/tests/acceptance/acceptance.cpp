// One PASS/FAIL line per acceptance criterion. Tolerances and runtime
// limits are pinned here; oracles are closed forms computed locally.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "valshare/expr.hpp"
#include "valshare/families.hpp"
#include "valshare/nevanlinna.hpp"
#include "valshare/roots.hpp"
#include "valshare/sharing.hpp"

using namespace valshare;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double nearest(const std::vector<APoint>& pts, Complex z) {
  double best = 1e300;
  for (const auto& p : pts) best = std::min(best, std::abs(p.location - z));
  return best;
}

ExpSum sin2z_plus(long c) {
  Scalar i = Scalar::imaginary_unit();
  std::vector<Term> t = {{-i * Scalar::rational(1, 2), Scalar(2) * i}, {i * Scalar::rational(1, 2), Scalar(-2) * i}};
  if (c) t.push_back({Scalar(c), Scalar()});
  return ExpSum::normalize(t);
}

ConstancyReport exact_check(const char* src) {
  CheckOptions o;
  o.preference = CheckPreference::Exact;
  return check_identity(parse(src), Env{{"f", thm2prime_family(1, 1)}}, o);
}

Outcome c1() {
  Outcome o;
  auto r = exact_check("D(f)^3 - f*D(f)^2 + (4/27)*(f^3 - 1)");
  o.require(r.mode == CheckMode::Exact, "not exact");
  o.require(r.verdict == Verdict::IdenticallyZero, std::string(to_string(r.verdict)));
  return o;
}

Outcome c2() {
  Outcome o;
  auto r = exact_check("D(f)^2*(f - D(f))/(f^3 - 1)");
  o.require(r.mode == CheckMode::Exact, "not exact");
  o.require(r.verdict == Verdict::Constant, std::string(to_string(r.verdict)));
  o.require(r.value && *r.value == Scalar::rational(4, 27), "value is not 4/27");
  return o;
}

Outcome c3() {
  Outcome o;
  auto r = exact_check("D(D(f)) - (1/3)*D(f) - (2/9)*f");
  o.require(r.mode == CheckMode::Exact && r.verdict == Verdict::IdenticallyZero, std::string(to_string(r.verdict)));
  return o;
}

Outcome c4() {
  Outcome o;
  auto d = derive_family_constants(1);
  o.require(d.alpha == Scalar::rational(1, 3), "alpha " + d.alpha.to_string());
  o.require(d.gamma == Scalar::rational(4, 27), "gamma " + d.gamma.to_string());
  o.require(d.b2 == Scalar::rational(4, 27), "b2 " + d.b2.to_string());
  o.require(d.b1.is_zero() && d.b0.is_zero() && d.c2.is_zero() && d.c1.is_zero(), "b1, b0, c2, c1 not all zero");
  o.require(d.residuals.empty(), "residuals left");
  return o;
}

Outcome c5() {
  Outcome o;
  ExpSum f = thm2prime_family(1, 1);
  double z0 = 3 * std::log(3 * (2 + std::sqrt(6.0)) / 4);
  auto loc = locate_a_points(differentiate(f), 1.0, Region{-5, 25, -15, 15});
  const APoint* hit = nullptr;
  for (const auto& p : loc.points)
    if (std::abs(p.location - z0) < 1e-6) hit = &p;
  o.require(hit != nullptr, "no located 1-point of f' at z0");
  if (!hit) return o;
  // f = (4/27)e^{2z/3} + e^{-z/3}, written out directly
  Complex z = hit->location;
  Complex e2 = std::exp(2.0 * z / 3.0), em = std::exp(-z / 3.0);
  Complex fv = 4.0 / 27 * e2 + em;
  Complex f1 = 8.0 / 81 * e2 - em / 3.0;
  Complex f2 = 16.0 / 243 * e2 + em / 9.0;
  o.require(std::abs(f1 - 1.0) <= 1e-9, "|f'(z0) - 1| = " + fmt(std::abs(f1 - 1.0)));
  o.require(std::abs(f2) > 1e-3, "|f''(z0)| = " + fmt(std::abs(f2)));
  o.require(std::abs(fv - (std::sqrt(6.0) - 0.5)) <= 1e-9, "|f(z0) - (sqrt6 - 1/2)| = " + fmt(std::abs(fv - (std::sqrt(6.0) - 0.5))));
  if (o.ok) o.detail = "z0 = " + fmt(z.real());
  return o;
}

Outcome c6() {
  Outcome o;
  ExpSum f = example2(1).first, fp = differentiate(f);
  Region r{-6, 6, -6, 6};
  // f = 1: pi/4 + k pi;  f = 0: -pi/4 + k pi;  f' = cos 2z = 1: k pi; all real
  auto audit = [&](const ExpSum& g, Complex a, double offset, const char* what) {
    auto loc = locate_a_points(g, a, r);
    std::vector<double> want;
    for (int k = -3; k <= 3; ++k)
      if (std::abs(offset + k * kPi) < 6) want.push_back(offset + k * kPi);
    o.require(loc.points.size() == want.size(), std::string(what) + ": located " + std::to_string(loc.points.size()) +
                                                    ", expected " + std::to_string(want.size()));
    long sum = 0;
    for (const auto& p : loc.points) {
      o.require(p.multiplicity == 2, std::string(what) + ": multiplicity " + std::to_string(p.multiplicity));
      sum += p.multiplicity;
    }
    for (double x : want) o.require(nearest(loc.points, x) < 1e-6, std::string(what) + ": missed " + fmt(x));
    o.require(sum == winding_count(g, a, loc.region), std::string(what) + ": winding differs from multiplicity sum");
  };
  audit(f, 1.0, kPi / 4, "f = 1");
  audit(fp, 1.0, 0.0, "f' = 1");
  audit(f, 0.0, -kPi / 4, "f = 0");
  return o;
}

Outcome c7() {
  Outcome o;
  for (double a : {1.0, -1.0}) {
    auto rep = check_condition(example3(1).first, a, Region{-7, 7, -7, 7}, {SharingCondition::ShareSimple});
    auto v = rep.verdict(SharingCondition::ShareSimple);
    o.require(v == SharingVerdict::HoldsVacuously, "value " + fmt(a) + ": " + (v ? std::string(to_string(*v)) : "none"));
  }
  return o;
}

Outcome c8() {
  Outcome o;
  // f = (1 + e^{z/4})^2: zeros at 4 pi i (2k+1), 1-points at 4 ln 2 + 4 pi i (2k+1)
  ExpSum f = thmC_family(1, 2), fp = differentiate(f);
  Region r{-10, 10, -40, 40};
  auto zeros = locate_a_points(f, 0.0, r), ones = locate_a_points(f, 1.0, r);
  o.require(zeros.points.size() >= 3 && ones.points.size() >= 3, "fewer than 3 zeros or 1-points");
  for (int k = -2; k <= 1; ++k) {
    double y = 4 * kPi * (2 * k + 1);
    o.require(nearest(zeros.points, Complex(0, y)) < 1e-6, "missed zero at " + fmt(y) + "i");
    o.require(nearest(ones.points, Complex(4 * std::log(2.0), y)) < 1e-6, "missed 1-point at " + fmt(y) + "i");
  }
  for (const auto& p : zeros.points) o.require(std::abs(fp(p.location)) <= 1e-8, "|f'| at a zero");
  for (const auto& p : ones.points) o.require(std::abs(fp(p.location) - 1.0) <= 1e-8, "|f' - 1| at a 1-point");
  return o;
}

Outcome c9() {
  Outcome o;
  ExpSum e = ExpSum::exponential(1, 1);
  for (double r : {1.0, 5.0, 20.0}) {
    double rel = std::abs(proximity(e, r) - r / kPi) / (r / kPi);
    o.require(rel <= 1e-6, "m(" + fmt(r) + ", e^z) rel err " + fmt(rel));
  }
  for (double r : {2.0, 5.0}) {
    double res = jensen_check(e + ExpSum::constant(2), r);
    o.require(res <= 1e-6, "Jensen residual " + fmt(res));
  }
  std::vector<double> radii = {10, 20, 50, 100};
  double a = order_estimate(e, radii), b = order_estimate(sin2z_plus(0), radii);
  o.require(a >= 0.95 && a <= 1.05, "order(e^z) = " + fmt(a));
  o.require(b >= 0.95 && b <= 1.05, "order(sin 2z) = " + fmt(b));
  return o;
}

Outcome c10() {
  Outcome o;
  ExpSum f = example2(1).first;
  double t0 = defect_estimate(f, 0.0, 200).theta_hat, t1 = defect_estimate(f, 1.0, 200).theta_hat;
  o.require(t0 >= 0.4 && t0 <= 0.6, "theta(0) = " + fmt(t0));
  o.require(t1 >= 0.4 && t1 <= 0.6, "theta(1) = " + fmt(t1));
  o.require(t0 + t1 <= 1.15, "sum = " + fmt(t0 + t1));
  if (o.ok) o.detail = "theta = " + fmt(t0) + ", " + fmt(t1);
  return o;
}

Outcome c11() {
  Outcome o;
  for (const ExpSum& f : {thm2prime_family(1, 1), sin2z_plus(2)})
    for (double r : {10.0, 100.0, 1000.0}) {
      double m = log_derivative_proximity(f, r);
      o.require(m <= 5.0, "m(" + fmt(r) + ", f'/f) = " + fmt(m));
    }
  return o;
}

Outcome c12() {
  Outcome o;
  CubicCurve c{Scalar::rational(4, 27), 0, 0, -1};
  CurveClass cc = classify_cubic(c);
  o.require(cc.kind == CurveKind::SingularGenus0, std::string(to_string(cc.kind)));
  o.require(cc.singular_points.size() == 1, "singular point count " + std::to_string(cc.singular_points.size()));
  if (cc.singular_points.size() == 1) {
    const auto& p = cc.singular_points[0];
    o.require(p.x == Scalar(1) && p.y == Scalar::rational(2, 3) && p.z.is_zero(), "singular point is not [1:2/3:0]");
    // hand-written gradient of Y^3 - XY^2 + (4/27)(X^3 - Z^3)
    Scalar g = Scalar::rational(4, 27);
    Scalar Fx = Scalar(0) - p.y * p.y + Scalar(3) * g * p.x * p.x;
    Scalar Fy = Scalar(3) * p.y * p.y - Scalar(2) * p.x * p.y;
    Scalar Fz = Scalar(-3) * g * p.z * p.z;
    o.require(Fx.is_zero() && Fy.is_zero() && Fz.is_zero(), "gradient does not vanish");
  }
  // (Y + X/3)(Y - 2X/3)^2 at X = 1
  auto slice = infinity_slice(c);
  bool ok = slice.size() == 2;
  for (const auto& s : slice) {
    if (!s.exact) ok = false;
    else if (*s.exact == Scalar::rational(-1, 3)) ok = ok && s.multiplicity == 1;
    else if (*s.exact == Scalar::rational(2, 3)) ok = ok && s.multiplicity == 2;
    else ok = false;
  }
  o.require(ok, "slice at infinity does not factor as expected");
  return o;
}

Outcome c13() {
  Outcome o;
  ExpSum f = thm2prime_family(1, 1);
  std::size_t simple = 0;
  for (int j = 0; j < 3; ++j) {
    Complex w = std::polar(1.0, 2 * kPi * j / 3);
    auto rep = check_condition(f, w, Region{-6, 6, -6, 6}, {SharingCondition::SimpleToSimple});
    auto v = rep.verdict(SharingCondition::SimpleToSimple);
    o.require(v && *v != SharingVerdict::Fails, "fails at the cube root " + std::to_string(j));
    for (const auto& p : rep.simple_points_f) {
      Complex z = p.location;
      Complex e2 = std::exp(2.0 * z / 3.0), em = std::exp(-z / 3.0);
      Complex fv = 4.0 / 27 * e2 + em, f1 = 8.0 / 81 * e2 - em / 3.0, f2 = 16.0 / 243 * e2 + em / 9.0;
      o.require(std::abs(fv - w) < 1e-9 && std::abs(f1 - w) < 1e-9, "point is not a common w-point");
      o.require(std::abs(f2) > 1e-6, "f' - w has a multiple root there");
      ++simple;
    }
  }
  if (o.ok) o.detail = std::to_string(simple) + " simple points";
  return o;
}

struct Criterion {
  const char* id;
  const char* label;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> all = {
      {"1", "exact cubic ODE for the two-term family", 1, c1},
      {"2", "h3 is exactly 4/27", 1, c2},
      {"3", "exact second-order linear ODE", 1, c3},
      {"4", "coefficient system solved exactly", 1, c4},
      {"5", "1-point of f' with f = sqrt(6) - 1/2", 5, c5},
      {"6", "double points of (sin 2z + 1)/2 and its derivative", 10, c6},
      {"7", "sin z shares +-1 with cos z vacuously", 5, c7},
      {"8", "zeros and 1-points of (1 + e^{z/4})^2", 10, c8},
      {"9", "proximity, Jensen and order estimates", 20, c9},
      {"10", "defect estimates at r = 200", 30, c10},
      {"11", "logarithmic derivative proximity", 20, c11},
      {"12", "cubic curve singular only at [1:2/3:0]", 1, c12},
      {"13", "cube roots of unity: simple points stay simple for f'", 15, c13},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s > c.limit_s) {
      o.ok = false;
      o.detail = "took " + fmt(s) + " s, limit " + fmt(c.limit_s) + " s";
    }
    failed += !o.ok;
    std::printf("%s criterion %-2s %-55s %.2fs%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.label, s,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
