#include "valshare/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "valshare/error.hpp"
#include "valshare/parallel.hpp"

namespace valshare {

namespace {

void require_nonzero(const Scalar& s, const char* name) {
  if (s.is_zero()) throw Error(ErrorKind::ZeroParameter, std::string(name) + " must be nonzero");
}

Scalar q(long n, long d = 1) { return Scalar::rational(n, d); }

}  // namespace

ExpSum thm2prime_family(const Scalar& delta, const Scalar& beta) {
  require_nonzero(delta, "delta");
  require_nonzero(beta, "beta");
  Scalar lead = q(4, 27) * delta / (beta * beta);
  return ExpSum::normalize({{lead, q(2, 3)}, {beta, q(-1, 3)}});
}

ExpSum thmC_family(const Scalar& b, const Scalar& A) {
  require_nonzero(b, "b");
  require_nonzero(A, "A");
  return ExpSum::normalize({{b * q(1, 4) * A * A, q(1, 2)}, {b * A, q(1, 4)}, {b, Scalar()}});
}

ExpSum example1(const Scalar& C, const Scalar& a, const Scalar& b) {
  require_nonzero(C, "C");
  require_nonzero(a, "a");
  require_nonzero(b, "b");
  if ((b - a).is_zero()) throw Error(ErrorKind::InvalidArgument, "example1 needs b != a");
  return ExpSum::normalize({{C, b / (b - a)}, {a, Scalar()}});
}

std::pair<ExpSum, ExpSum> example2(const Scalar& a) {
  require_nonzero(a, "a");
  Scalar i = Scalar::imaginary_unit();
  // sin w = (−i/2)e^{iw} + (i/2)e^{−iw}
  ExpSum f = ExpSum::normalize(
      {{-i * a * q(1, 4), Scalar(2) * i}, {i * a * q(1, 4), Scalar(-2) * i}, {a * q(1, 2), Scalar()}});
  return {f, differentiate(f)};
}

std::pair<ExpSum, ExpSum> example3(const Scalar& a) {
  require_nonzero(a, "a");
  Scalar i = Scalar::imaginary_unit();
  ExpSum f = ExpSum::normalize({{-i * a * q(1, 2), i}, {i * a * q(1, 2), -i}});
  return {f, differentiate(f)};
}

std::string_view to_string(FamilyId id) {
  switch (id) {
    case FamilyId::Thm2Prime: return "thm2prime";
    case FamilyId::ThmC: return "thmC";
    case FamilyId::Example1: return "example1";
    case FamilyId::Example2: return "example2";
    case FamilyId::Example3: return "example3";
  }
  return "?";
}

std::optional<FamilyId> parse_family(std::string_view name) {
  for (auto id : {FamilyId::Thm2Prime, FamilyId::ThmC, FamilyId::Example1, FamilyId::Example2, FamilyId::Example3})
    if (to_string(id) == name) return id;
  return std::nullopt;
}

ExpSum build_family(const FamilyParams& p) {
  auto get = [&](const char* name) {
    auto it = p.params.find(name);
    if (it == p.params.end())
      throw Error(ErrorKind::InvalidArgument, std::string(to_string(p.id)) + " needs parameter " + name);
    return it->second;
  };
  switch (p.id) {
    case FamilyId::Thm2Prime: return thm2prime_family(get("delta"), get("beta"));
    case FamilyId::ThmC: return thmC_family(get("b"), get("A"));
    case FamilyId::Example1: return example1(get("C"), get("a"), get("b"));
    case FamilyId::Example2: return example2(get("a")).first;
    case FamilyId::Example3: return example3(get("a")).first;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown family");
}

// --- coefficient matching ---------------------------------------------------

namespace {

enum Var : std::size_t { ALPHA, GAMMA, B2, B1, B0, C2, C1, NVARS };

using Laurent = std::map<long, MPoly>;

Laurent lmul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [i, p] : a) {
    for (const auto& [j, r] : b) {
      auto [it, fresh] = out.try_emplace(i + j, MPoly(NVARS));
      it->second += p * r;
    }
  }
  return out;
}

Laurent ladd(Laurent a, const Laurent& b, const Scalar& scale = Scalar(1)) {
  for (const auto& [k, p] : b) {
    auto [it, fresh] = a.try_emplace(k, MPoly(NVARS));
    it->second += scale * p;
  }
  return a;
}

MPoly var(Var v) { return MPoly::variable(NVARS, v); }
MPoly cst(const Scalar& s) { return MPoly::constant(NVARS, s); }

std::string power_label(long k) { return "t^" + std::to_string(k); }

[[noreturn]] void inconsistent(const std::string& msg) { throw Error(ErrorKind::InconsistentSystem, msg); }

}  // namespace

const std::vector<std::string>& derive_variable_names() {
  static const std::vector<std::string> names = {"alpha", "gamma", "b2", "b1", "b0", "c2", "c1"};
  return names;
}

std::map<long, MPoly> curve_substitution_coefficients(const Scalar& delta) {
  Laurent X = {{2, var(B2)}, {1, var(B1)}, {0, var(B0)}, {-1, cst(1)}};
  Laurent Y = {{2, Scalar(2) * var(ALPHA) * var(B2)}, {1, var(ALPHA) * var(B1)}, {-1, Scalar(-1) * var(ALPHA)}};
  Laurent X2 = lmul(X, X);
  Laurent X3 = lmul(X2, X);
  Laurent Y2 = lmul(Y, Y);
  Laurent Y3 = lmul(Y2, Y);
  // P(X) = X³ + c₂X² + c₁X + c₀ with c₀ = −δ
  Laurent P = X3;
  P = ladd(P, lmul(Laurent{{0, var(C2)}}, X2));
  P = ladd(P, lmul(Laurent{{0, var(C1)}}, X));
  P = ladd(P, Laurent{{0, cst(-delta)}});
  Laurent F = ladd(Y3, lmul(X, Y2), Scalar(-1));
  F = ladd(F, lmul(Laurent{{0, var(GAMMA)}}, P));
  std::map<long, MPoly> out;
  for (auto& [k, p] : F)
    if (!p.is_zero()) out.emplace(k, p);
  return out;
}

DerivedConstants derive_family_constants(const Scalar& delta) {
  if (!delta.is_exact()) throw Error(ErrorKind::InvalidArgument, "derive needs an exact delta");
  require_nonzero(delta, "delta");
  const auto& names = derive_variable_names();
  std::map<long, MPoly> E = curve_substitution_coefficients(delta);
  auto coeff = [&](long k) {
    auto it = E.find(k);
    return it == E.end() ? MPoly(NVARS) : it->second;
  };

  DerivedConstants out;
  auto t6 = coeff(6).divide_by_power(B2, 3);
  if (!t6 || t6->mentions(B2)) inconsistent("coefficient of t^6 is not b2^3 times a polynomial in alpha, gamma");
  out.seed_t6 = *t6;
  out.seed_tm3 = coeff(-3);

  // γ from the t^-3 equation, which is linear in γ with unit coefficient.
  MPoly g1 = out.seed_tm3.coefficient(GAMMA, 1);
  if (out.seed_tm3.degree_in(GAMMA) != 1 || !g1.is_constant() || g1.is_zero())
    inconsistent("t^-3 equation is not linear in gamma");
  MPoly gamma_of_alpha = (Scalar(-1) / g1.constant_value()) * out.seed_tm3.coefficient(GAMMA, 0);
  MPoly alpha_eq = out.seed_t6.substitute(GAMMA, gamma_of_alpha);
  auto uni = alpha_eq.as_univariate(ALPHA);
  if (!uni) inconsistent("seed system does not reduce to a polynomial in alpha");
  auto roots = upoly::rational_roots(*uni);
  if (!roots) inconsistent("no rational root search possible for the alpha equation");
  std::vector<mpq_class> nonzero;
  for (const auto& r : *roots) {
    if (r == 0)
      out.notes.push_back("alpha = 0 solves the seed system but makes t constant; discarded");
    else
      nonzero.push_back(r);
  }
  if (nonzero.empty()) inconsistent("seed system has no nonzero rational alpha");
  if (nonzero.size() > 1) out.notes.push_back("several nonzero alpha roots; using the first");

  std::map<Var, MPoly> known;
  known[ALPHA] = cst(Scalar(nonzero.front(), 0));
  known[GAMMA] = gamma_of_alpha.substitute(ALPHA, known[ALPHA]);
  out.steps.push_back({"t^6, t^-3",
                       out.seed_t6.to_string(names) + " = 0, " + out.seed_tm3.to_string(names) + " = 0", "alpha, gamma",
                       known[ALPHA].constant_value().to_string() + ", " + known[GAMMA].constant_value().to_string(),
                       out.notes.empty() ? "" : out.notes.front()});

  auto reduce = [&](MPoly p) {
    for (const auto& [v, val] : known) p = p.substitute(v, val);
    return p;
  };

  struct Plan {
    long power;
    Var v;
    bool factor;  // solve by taking the branch v = 0 of v·(...) = 0
  };
  // t^4 only pins c2 once b1 = 0, so t^3 goes first.
  const Plan plan[] = {{3, B1, true}, {4, C2, false}, {-2, B0, false}, {-1, C1, false}, {0, B2, false}};
  for (const auto& st : plan) {
    MPoly eq = reduce(coeff(st.power));
    DerivationStep step{power_label(st.power), eq.to_string(names), names[st.v], "", ""};
    if (st.factor) {
      if (!eq.coefficient(st.v, 0).is_zero()) inconsistent(power_label(st.power) + " equation has no factor " + names[st.v]);
      MPoly cof = *eq.divide_by_power(st.v, 1);
      known[st.v] = cst(Scalar());
      MPoly rest = reduce(cof);
      if (!(rest.is_constant() && !rest.is_zero())) {
        step.note = "branch " + cof.to_string(names) + " = 0 is not followed";
        out.notes.push_back(power_label(st.power) + ": " + step.note);
      }
    } else {
      if (eq.degree_in(st.v) != 1) inconsistent(power_label(st.power) + " equation is not linear in " + names[st.v]);
      MPoly A = eq.coefficient(st.v, 1);
      MPoly B = eq.coefficient(st.v, 0);
      if (B.is_zero()) {
        // A must be a monomial in variables taken nonzero (alpha, b2).
        bool ok = A.terms().size() == 1;
        for (const auto& [e, c] : A.terms())
          for (std::size_t i = 0; i < NVARS; ++i)
            if (e[i] != 0 && i != ALPHA && i != B2) ok = false;
        if (!ok) inconsistent(power_label(st.power) + ": cannot divide by " + A.to_string(names));
        known[st.v] = cst(Scalar());
      } else {
        if (!A.is_constant() || !B.is_constant())
          inconsistent(power_label(st.power) + " equation does not determine " + names[st.v]);
        known[st.v] = cst(-B.constant_value() / A.constant_value());
      }
    }
    step.value = known[st.v].constant_value().to_string();
    out.steps.push_back(step);
  }

  for (const auto& [k, p] : E) {
    MPoly r = reduce(p);
    if (r.is_zero()) continue;
    if (!r.is_constant()) inconsistent(power_label(k) + " still has unknowns: " + r.to_string(names));
    out.residuals[k] = r.constant_value();
  }
  if (!out.residuals.empty()) {
    const auto& [k, v] = *out.residuals.begin();
    inconsistent("coefficient of " + power_label(k) + " is " + v.to_string() + " instead of 0");
  }
  out.alpha = known[ALPHA].constant_value();
  out.gamma = known[GAMMA].constant_value();
  out.b2 = known[B2].constant_value();
  out.b1 = known[B1].constant_value();
  out.b0 = known[B0].constant_value();
  out.c2 = known[C2].constant_value();
  out.c1 = known[C1].constant_value();
  return out;
}

std::vector<IdentityCheck> verify_family_identities(const Scalar& delta, const Scalar& beta) {
  ExpSum f = thm2prime_family(delta, beta);
  Env env{{"f", f}, {"delta", ExpSum::constant(delta)}};
  CheckOptions opts;
  opts.preference = CheckPreference::Exact;
  struct Item {
    const char* name;
    const char* src;
    bool zero;
  };
  const Item items[] = {
      {"cubic ODE", "D(f)^3 - f*D(f)^2 + (4/27)*(f^3 - delta)", true},
      {"linear ODE", "D(D(f)) - (1/3)*D(f) - (2/9)*f", true},
      {"h3 constant", "D(f)^2*(f - D(f))/(f^3 - delta)", false},
  };
  std::vector<IdentityCheck> out;
  for (const auto& it : items) {
    IdentityCheck c;
    c.name = it.name;
    c.expression = it.src;
    c.report = check_identity(parse(it.src), env, opts);
    if (it.zero)
      c.ok = c.report.verdict == Verdict::IdenticallyZero;
    else
      c.ok = c.report.verdict == Verdict::Constant && c.report.value && *c.report.value == q(4, 27);
    out.push_back(std::move(c));
  }
  return out;
}

// --- cubic curves -----------------------------------------------------------

std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::Reducible: return "Reducible";
    case CurveKind::SingularGenus0: return "SingularGenus0";
    case CurveKind::SmoothGenus1: return "SmoothGenus1";
  }
  return "?";
}

std::array<Scalar, 4> cubic_gradient(const CubicCurve& c, const ProjectivePoint& p) {
  const Scalar &X = p.x, &Y = p.y, &Z = p.z, &g = c.gamma;
  Scalar F = Y * Y * Y - X * Y * Y +
             g * (X * X * X + c.c2 * X * X * Z + c.c1 * X * Z * Z + c.c0 * Z * Z * Z);
  Scalar FX = -(Y * Y) + g * (Scalar(3) * X * X + Scalar(2) * c.c2 * X * Z + c.c1 * Z * Z);
  Scalar FY = Scalar(3) * Y * Y - Scalar(2) * X * Y;
  Scalar FZ = g * (c.c2 * X * X + Scalar(2) * c.c1 * X * Z + Scalar(3) * c.c0 * Z * Z);
  return {F, FX, FY, FZ};
}

namespace {

// Best rational approximation with bounded denominator.
std::optional<mpq_class> snap_rational(double x, long max_den = 1000000) {
  if (!std::isfinite(x)) return std::nullopt;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    double a = std::floor(r);
    if (std::abs(a) > 1e12) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0;
    long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / k1) <= 1e-12 * std::max(1.0, std::abs(x))) return mpq_class(h1, k1);
    double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  if (k1 != 0 && std::abs(x - static_cast<double>(h1) / k1) <= 1e-12 * std::max(1.0, std::abs(x)))
    return mpq_class(h1, k1);
  return std::nullopt;
}

std::optional<Scalar> snap(Complex z) {
  auto re = snap_rational(z.real());
  auto im = snap_rational(z.imag());
  if (!re || !im) return std::nullopt;
  re->canonicalize();
  im->canonicalize();
  return Scalar(*re, *im);
}

std::array<Scalar, 4> factor_equations(const CubicCurve& c, const Scalar& u, const Scalar& v) {
  const Scalar& g = c.gamma;
  return {u * u * u - u * u + g, Scalar(3) * u * u * v - Scalar(2) * u * v + g * c.c2,
          Scalar(3) * u * v * v - v * v + g * c.c1, v * v * v + g * c.c0};
}

double coefficient_scale(const CubicCurve& c) {
  return std::max({1.0, c.gamma.abs(), c.gamma.abs() * c.c2.abs(), c.gamma.abs() * c.c1.abs(),
                   c.gamma.abs() * c.c0.abs()});
}

// Finds a line Y = uX + vZ contained in the curve.
std::optional<std::pair<Scalar, Scalar>> find_linear_factor(const CubicCurve& c, CurveClass& out) {
  Complex g = c.gamma.to_complex();
  double scale = coefficient_scale(c);
  upoly::Poly cubic_u = {c.gamma, Scalar(), Scalar(-1), Scalar(1)};
  for (Complex u : upoly::numeric_roots(cubic_u)) {
    std::vector<Complex> vs;
    Complex lin = 3.0 * u * u - 2.0 * u;
    if (std::abs(lin) > 1e-9) {
      vs.push_back(-g * c.c2.to_complex() / lin);
    } else {
      Complex w = std::pow(-g * c.c0.to_complex(), 1.0 / 3.0);
      for (int k = 0; k < 3; ++k) vs.push_back(w * std::polar(1.0, 2.0 * 3.141592653589793 * k / 3.0));
    }
    for (Complex v : vs) {
      Scalar us = Scalar::from_complex(u);
      Scalar vsx = Scalar::from_complex(v);
      double worst = 0.0;
      for (const auto& e : factor_equations(CubicCurve{c.gamma.to_float(), c.c2.to_float(), c.c1.to_float(),
                                                       c.c0.to_float()},
                                            us, vsx))
        worst = std::max(worst, e.abs());
      worst /= scale;
      if (worst > 1e-6) continue;
      if (c.is_exact()) {
        auto ue = snap(u);
        auto ve = snap(v);
        if (ue && ve) {
          auto eqs = factor_equations(c, *ue, *ve);
          if (std::all_of(eqs.begin(), eqs.end(), [](const Scalar& s) { return s.is_zero(); }))
            return std::make_pair(*ue, *ve);
        }
      }
      if (worst > 1e-9)
        throw Error(ErrorKind::NumericAmbiguity,
                    "linear-factor residual is near the decision threshold; use exact coefficients");
      out.exact = false;
      out.notes.push_back("linear factor found numerically; its coefficients are not rational");
      return std::make_pair(us, vsx);
    }
  }
  return std::nullopt;
}

// Distinct roots of gcd(p, p'), i.e. the multiple roots of p, exactly.
std::vector<Scalar> multiple_roots_exact(const upoly::Poly& p) {
  if (upoly::degree(p) < 2) return {};
  upoly::Poly g = upoly::gcd(p, upoly::derivative(p));
  int d = upoly::degree(g);
  if (d == 1) return {-g[0]};
  // gcd of degree 2 for a cubic means a triple root r, gcd = (x − r)²
  if (d == 2) return {-g[1] / Scalar(2)};
  return {};
}

std::vector<Complex> multiple_roots_numeric(const upoly::Poly& p, double scale) {
  std::vector<Complex> out;
  if (upoly::degree(p) < 2) return out;
  upoly::Poly dp = upoly::derivative(p);
  for (Complex x : upoly::numeric_roots(p)) {
    double r = std::abs(upoly::eval(dp, x)) / (scale * std::max(1.0, std::norm(x)));
    if (r <= 1e-9) {
      bool dup = false;
      for (Complex y : out) dup |= std::abs(x - y) <= 1e-6 * std::max(1.0, std::abs(x));
      if (!dup) out.push_back(x);
    } else if (r <= 1e-6) {
      throw Error(ErrorKind::NumericAmbiguity, "discriminant is nearly zero; use exact coefficients");
    }
  }
  return out;
}

}  // namespace

CurveClass classify_cubic(const CubicCurve& c) {
  if (c.gamma.is_zero()) throw Error(ErrorKind::DegenerateGamma, "gamma = 0 degenerates the cubic");
  CurveClass out;
  out.exact = c.is_exact();
  out.factor = find_linear_factor(c, out);

  // F_Y = Y(3Y − 2X), so singular points have Y = 0 or Y = 2X/3.
  upoly::Poly P = {c.c0, c.c1, c.c2, Scalar(1)};
  upoly::Poly G = {c.gamma * c.c0, c.gamma * c.c1, c.gamma * c.c2, c.gamma - q(4, 27)};
  auto add = [&](const ProjectivePoint& p) {
    for (const auto& s : out.singular_points)
      if (approx_equal(s.x, p.x, 1e-9) && approx_equal(s.y, p.y, 1e-9) && approx_equal(s.z, p.z, 1e-9)) return;
    out.singular_points.push_back(p);
  };
  if (out.exact) {
    if (c.gamma == q(4, 27) && c.c2.is_zero()) add({Scalar(1), q(2, 3), Scalar()});
    for (const auto& x : multiple_roots_exact(P)) add({x, Scalar(), Scalar(1)});
    upoly::Poly Gt = G;
    upoly::trim(Gt);
    if (!Gt.empty())
      for (const auto& x : multiple_roots_exact(G)) add({x, q(2, 3) * x, Scalar(1)});
    for (const auto& p : out.singular_points) {
      auto grad = cubic_gradient(c, p);
      if (!std::all_of(grad.begin(), grad.end(), [](const Scalar& s) { return s.is_zero(); }))
        inconsistent("singular point candidate fails the gradient check");
    }
  } else {
    double scale = coefficient_scale(c);
    double dg = std::abs(c.gamma.to_complex() - 4.0 / 27.0);
    double d2 = c.c2.abs();
    if (dg <= 1e-9 && d2 <= 1e-9)
      add({Scalar::from_double(1.0), Scalar::from_double(2.0 / 3.0), Scalar::from_double(0.0)});
    else if (std::max(dg, d2) <= 1e-6 && std::min(dg, d2) <= 1e-9)
      throw Error(ErrorKind::NumericAmbiguity, "point at infinity is nearly singular; use exact coefficients");
    upoly::Poly Pf, Gf;
    for (const auto& s : P) Pf.push_back(s.to_float());
    for (const auto& s : G) Gf.push_back(std::abs(s.to_complex()) <= 1e-12 * scale ? Scalar() : s.to_float());
    for (Complex x : multiple_roots_numeric(Pf, scale))
      add({Scalar::from_complex(x), Scalar::from_double(0.0), Scalar::from_double(1.0)});
    for (Complex x : multiple_roots_numeric(Gf, scale))
      add({Scalar::from_complex(x), Scalar::from_complex(2.0 / 3.0 * x), Scalar::from_double(1.0)});
  }

  if (out.factor) {
    out.kind = CurveKind::Reducible;
  } else if (out.singular_points.empty()) {
    out.kind = CurveKind::SmoothGenus1;
  } else if (out.singular_points.size() == 1) {
    out.kind = CurveKind::SingularGenus0;
  } else {
    throw Error(ErrorKind::NumericAmbiguity, "irreducible cubic with several singular points");
  }
  return out;
}

std::vector<SliceRoot> infinity_slice(const CubicCurve& c) {
  upoly::Poly p = {c.gamma, Scalar(), Scalar(-1), Scalar(1)};
  std::vector<SliceRoot> out;
  if (auto rr = upoly::rational_roots(p)) {
    int total = 0;
    for (const auto& r : *rr) {
      Scalar x(r, 0);
      int m = upoly::multiplicity(p, x);
      out.push_back({x.to_complex(), x, m});
      total += m;
    }
    if (total == 3) return out;
    out.clear();
  }
  for (Complex z : upoly::numeric_roots(p)) {
    bool merged = false;
    for (auto& s : out) {
      if (std::abs(s.value - z) <= 1e-6 * std::max(1.0, std::abs(z))) {
        ++s.multiplicity;
        merged = true;
      }
    }
    if (!merged) out.push_back({z, std::nullopt, 1});
  }
  return out;
}

// --- the open question ------------------------------------------------------

ProbeGrid default_probe_grid() {
  ProbeGrid g;
  g.coeffs = {Scalar(1), Scalar(-1), Scalar(2)};
  g.freqs = {Scalar(-1), q(1, 2), Scalar(1), Scalar(2)};
  return g;
}

ProbeResult question_probe(Complex a, Complex b, const ProbeGrid& grid, const Region& region,
                           const SharingOptions& opts) {
  if (std::abs(a - b) == 0.0) throw Error(ErrorKind::InvalidArgument, "probe needs a != b");
  if (a == Complex{} || b == Complex{}) throw Error(ErrorKind::InvalidArgument, "probe needs a*b != 0");
  if (std::abs(a + b) <= 1e-12 * std::max(std::abs(a), std::abs(b)))
    throw Error(ErrorKind::InvalidArgument, "probe needs a + b != 0");
  region.validate();

  std::vector<ExpSum> fs;
  for (std::size_t i = 0; i < grid.freqs.size(); ++i)
    for (std::size_t j = i + 1; j < grid.freqs.size(); ++j)
      for (const auto& c1 : grid.coeffs)
        for (const auto& c2 : grid.coeffs)
          fs.push_back(ExpSum::normalize({{c1, grid.freqs[i]}, {c2, grid.freqs[j]}}));
  fs.insert(fs.end(), grid.functions.begin(), grid.functions.end());

  ProbeResult res;
  std::vector<std::optional<ProbeCandidate>> slots(fs.size());
  std::vector<std::string> skip(fs.size());
  parallel_for(fs.size(), resolve_threads(opts.roots.threads), [&](std::size_t k) {
    const ExpSum& f = fs[k];
    if (f.is_constant()) {
      skip[k] = "constant";
      return;
    }
    if (approx_equal(f, differentiate(f), 1e-12)) {
      skip[k] = "f = f'";
      return;
    }
    SharingOptions inner = opts;
    inner.roots.threads = 1;
    ProbeCandidate cand;
    cand.f = f;
    cand.values = classify_pair(f, {a, b}, region, inner);
    bool all = true;
    for (const auto& pc : cand.values) {
      auto v = pc.report.verdict(SharingCondition::ShareSimple);
      if (!v || *v == SharingVerdict::Fails) all = false;
      if (v && *v == SharingVerdict::HoldsVacuously) cand.vacuous = true;
    }
    if (all) slots[k] = std::move(cand);
  });
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (!skip[k].empty()) {
      res.skipped.emplace_back(fs[k].to_string(), skip[k]);
      continue;
    }
    ++res.tested;
    if (slots[k]) res.candidates.push_back(std::move(*slots[k]));
  }
  return res;
}

}  // namespace valshare
