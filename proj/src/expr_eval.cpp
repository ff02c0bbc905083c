#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "valshare/error.hpp"
#include "valshare/expr.hpp"

namespace valshare {

namespace {

constexpr double kPoleThreshold = 1e-300;

std::string where(const Node& n) {
  return " at " + std::to_string(n.pos.line) + ":" + std::to_string(n.pos.column);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// Taylor-style jets: entry k holds the k-th z-derivative of the node's value.
using Jet = std::vector<Complex>;

class JetEvaluator {
 public:
  JetEvaluator(const Env& env, Complex z) : env_(env), z_(z) {}

  Jet eval(const Node& n, int order) {
    Jet out = eval_inner(n, order);
    max_magnitude_ = std::max(max_magnitude_, std::abs(out[0]));
    return out;
  }

  double max_magnitude() const { return max_magnitude_; }

 private:
  Jet eval_inner(const Node& n, int order) {
    Jet out(order + 1, Complex(0.0, 0.0));
    switch (n.kind) {
      case NodeKind::Rational: {
        if (n.den == 0) throw Error(ErrorKind::DivisionByZero, "literal with zero denominator" + where(n));
        double v = mpq_class(n.num, n.den).get_d();
        out[0] = n.imaginary ? Complex(0.0, v) : Complex(v, 0.0);
        return out;
      }
      case NodeKind::Ident: {
        auto it = env_.find(n.name);
        if (it == env_.end()) throw Error(ErrorKind::UnboundIdentifier, "'" + n.name + "'" + where(n));
        ExpSum g = it->second;
        for (int k = 0; k <= order; ++k) {
          out[k] = g(z_);
          if (k < order) g = differentiate(g);
        }
        return out;
      }
      case NodeKind::Add:
      case NodeKind::Sub: {
        Jet a = eval(*n.lhs, order);
        Jet b = eval(*n.rhs, order);
        for (int k = 0; k <= order; ++k) out[k] = n.kind == NodeKind::Add ? a[k] + b[k] : a[k] - b[k];
        return out;
      }
      case NodeKind::Mul: return mul(eval(*n.lhs, order), eval(*n.rhs, order));
      case NodeKind::Div: {
        Jet a = eval(*n.lhs, order);
        Jet b = eval(*n.rhs, order);
        if (std::abs(b[0]) < kPoleThreshold) {
          throw PointError(ErrorKind::Pole, "division by ~0" + where(n), z_);
        }
        for (int k = 0; k <= order; ++k) {
          Complex s = a[k];
          for (int j = 1; j <= k; ++j) s -= binomial(k, j) * b[j] * out[k - j];
          out[k] = s / b[0];
        }
        return out;
      }
      case NodeKind::Pow: {
        Jet base = eval(*n.lhs, order);
        out[0] = Complex(1.0, 0.0);
        for (unsigned long i = 0; i < n.exponent; ++i) out = mul(out, base);
        return out;
      }
      case NodeKind::Deriv: {
        Jet inner = eval(*n.lhs, order + 1);
        for (int k = 0; k <= order; ++k) out[k] = inner[k + 1];
        return out;
      }
    }
    return out;
  }

  static Jet mul(const Jet& a, const Jet& b) {
    Jet out(a.size(), Complex(0.0, 0.0));
    for (std::size_t k = 0; k < a.size(); ++k) {
      for (std::size_t j = 0; j <= k; ++j) out[k] += binomial(static_cast<int>(k), static_cast<int>(j)) * a[j] * b[k - j];
    }
    return out;
  }

  const Env& env_;
  Complex z_;
  double max_magnitude_ = 0.0;
};

struct Fraction {
  LaurentPoly num;
  LaurentPoly den;
};

bool is_one(const LaurentPoly& p) {
  return p.coeffs().size() == 1 && p.coeffs().begin()->first == 0 && p.coeffs().begin()->second.is_one();
}

class ExactCompiler {
 public:
  ExactCompiler(const Env& env, Scalar base) : env_(env), base_(std::move(base)) {}

  Fraction compile(const Node& n) {
    switch (n.kind) {
      case NodeKind::Rational: {
        if (n.den == 0) throw Error(ErrorKind::DivisionByZero, "literal with zero denominator" + where(n));
        mpq_class q(n.num, n.den);
        q.canonicalize();
        Scalar v = n.imaginary ? Scalar(mpq_class(0), q) : Scalar(q, mpq_class(0));
        return {LaurentPoly::constant(base_, v), one()};
      }
      case NodeKind::Ident: {
        auto it = env_.find(n.name);
        if (it == env_.end()) throw Error(ErrorKind::UnboundIdentifier, "'" + n.name + "'" + where(n));
        return {lp_from_expsum(it->second, base_), one()};
      }
      case NodeKind::Add:
      case NodeKind::Sub: {
        Fraction a = compile(*n.lhs);
        Fraction b = compile(*n.rhs);
        auto combine = [&](const LaurentPoly& x, const LaurentPoly& y) {
          return n.kind == NodeKind::Add ? lp_add(x, y) : lp_sub(x, y);
        };
        if (a.den == b.den) return {combine(a.num, b.num), a.den};
        return {combine(lp_mul(a.num, b.den), lp_mul(b.num, a.den)), lp_mul(a.den, b.den)};
      }
      case NodeKind::Mul: {
        Fraction a = compile(*n.lhs);
        Fraction b = compile(*n.rhs);
        return {lp_mul(a.num, b.num), mul_den(a.den, b.den)};
      }
      case NodeKind::Div: {
        Fraction a = compile(*n.lhs);
        Fraction b = compile(*n.rhs);
        return {mul_den(a.num, b.den), mul_den(a.den, b.num)};
      }
      case NodeKind::Pow: {
        Fraction a = compile(*n.lhs);
        return {lp_pow(a.num, n.exponent), is_one(a.den) ? a.den : lp_pow(a.den, n.exponent)};
      }
      case NodeKind::Deriv: {
        Fraction a = compile(*n.lhs);
        if (is_one(a.den)) return {lp_derivative_z(a.num), a.den};
        LaurentPoly top = lp_sub(lp_mul(lp_derivative_z(a.num), a.den), lp_mul(a.num, lp_derivative_z(a.den)));
        return {top, lp_mul(a.den, a.den)};
      }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown node");
  }

 private:
  LaurentPoly one() const { return LaurentPoly::constant(base_, Scalar(1)); }
  static LaurentPoly mul_den(const LaurentPoly& a, const LaurentPoly& b) {
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return lp_mul(a, b);
  }

  const Env& env_;
  Scalar base_;
};

void collect_idents(const Node& n, std::set<std::string>& out) {
  if (n.kind == NodeKind::Ident) out.insert(n.name);
  if (n.lhs) collect_idents(*n.lhs, out);
  if (n.rhs) collect_idents(*n.rhs, out);
}

struct Sample {
  Complex z;
  Complex value;
  double scale;
};

std::vector<Complex> sample_points(const CheckOptions& opts, std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> jitter(0.1, 0.9);
  std::vector<Complex> pts;
  int per_circle = std::max(1, count / 2);
  for (double radius : {opts.inner_radius, opts.outer_radius}) {
    for (int j = 0; j < per_circle; ++j) {
      double theta = 2.0 * std::numbers::pi * (j + jitter(rng)) / per_circle;
      pts.push_back(std::polar(radius, theta));
    }
  }
  return pts;
}

std::optional<Sample> try_sample(const Expr& e, const Env& env, Complex z) {
  try {
    JetEvaluator ev(env, z);
    Complex v = ev.eval(*e, 0)[0];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return std::nullopt;
    return Sample{z, v, ev.max_magnitude()};
  } catch (const PointError&) {
    return std::nullopt;
  } catch (const RangeError&) {
    return std::nullopt;
  }
}

std::vector<Sample> collect_samples(const Expr& e, const Env& env, const CheckOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Sample> out;
  for (Complex z : sample_points(opts, rng, opts.samples)) {
    double radius = std::abs(z);
    std::optional<Sample> s = try_sample(e, env, z);
    for (int retry = 0; !s && retry < 8; ++retry) s = try_sample(e, env, std::polar(radius, angle(rng)));
    if (s) out.push_back(*s);
  }
  if (out.empty()) throw Error(ErrorKind::PoleAtAllSamples, "every sample point hit a pole or overflow");
  return out;
}

ConstancyReport sampled_check(const Expr& e, const Env& env, const CheckOptions& opts) {
  std::vector<Sample> samples = collect_samples(e, env, opts);
  ConstancyReport r;
  r.mode = CheckMode::Sampled;
  r.samples_used = static_cast<int>(samples.size());
  double scale = 0.0;
  double max_abs = 0.0;
  double spread = 0.0;
  std::size_t worst = 0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    scale = std::max(scale, samples[k].scale);
    max_abs = std::max(max_abs, std::abs(samples[k].value));
    double d = std::abs(samples[k].value - samples[0].value);
    if (d > spread) {
      spread = d;
      worst = k;
    }
  }
  double threshold = opts.rel_tol * std::max(scale, std::numeric_limits<double>::min());
  if (max_abs <= threshold) {
    r.verdict = Verdict::IdenticallyZero;
    r.value = Scalar::from_double(0.0);
  } else if (spread <= threshold) {
    Complex mean(0.0, 0.0);
    for (const auto& s : samples) mean += s.value;
    mean /= static_cast<double>(samples.size());
    r.verdict = Verdict::Constant;
    r.value = Scalar::from_complex(mean);
  } else {
    r.verdict = Verdict::NonConstant;
    r.witness = Witness{samples[worst].z, samples[worst].value};
    r.contrast = Witness{samples[0].z, samples[0].value};
  }
  return r;
}

void attach_witness(ConstancyReport& r, const Expr& e, const Env& env, const CheckOptions& opts) {
  std::vector<Complex> candidates{Complex(0.0, 0.0)};
  std::mt19937_64 rng(opts.seed);
  for (Complex z : sample_points(opts, rng, opts.samples)) candidates.push_back(z);
  std::optional<Sample> first;
  for (Complex z : candidates) {
    std::optional<Sample> s = try_sample(e, env, z);
    if (!s) continue;
    if (!first) {
      first = s;
      r.witness = Witness{s->z, s->value};
      continue;
    }
    if (std::abs(s->value - first->value) > 1e-12 * std::max(1.0, s->scale)) {
      r.contrast = Witness{s->z, s->value};
      return;
    }
  }
}

}  // namespace

Complex eval_expr(const Expr& e, const Env& env, Complex z) {
  JetEvaluator ev(env, z);
  return ev.eval(*e, 0)[0];
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::IdenticallyZero: return "IdenticallyZero";
    case Verdict::Constant: return "Constant";
    case Verdict::NonConstant: return "NonConstant";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "";
}

std::string_view to_string(CheckMode m) { return m == CheckMode::Exact ? "exact" : "sampled"; }

ConstancyReport check_identity(const Expr& e, const Env& env, const CheckOptions& opts) {
  std::set<std::string> names;
  collect_idents(*e, names);
  std::vector<const ExpSum*> fns;
  for (const auto& name : names) {
    auto it = env.find(name);
    if (it == env.end()) throw Error(ErrorKind::UnboundIdentifier, "'" + name + "' is not bound");
    fns.push_back(&it->second);
  }

  std::optional<Scalar> base;
  std::string why_sampled;
  bool all_exact = std::all_of(fns.begin(), fns.end(), [](const ExpSum* f) { return f->is_exact(); });
  if (opts.preference != CheckPreference::Sampled) {
    if (!all_exact) {
      why_sampled = "float-mode inputs";
    } else {
      try {
        base = infer_base(fns);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::IncommensurableFrequencies) throw;
        why_sampled = "incommensurable frequencies";
      }
    }
    if (!base && opts.preference == CheckPreference::Exact) {
      throw Error(ErrorKind::InvalidArgument, "exact check impossible: " + why_sampled);
    }
  } else {
    why_sampled = "sampling requested";
  }

  if (!base) {
    ConstancyReport r = sampled_check(e, env, opts);
    r.note = why_sampled;
    return r;
  }

  ExactCompiler compiler(env, *base);
  Fraction frac = compiler.compile(*e);
  ConstancyReport r;
  r.mode = CheckMode::Exact;
  r.numerator = frac.num;
  r.denominator = frac.den;
  if (frac.den.empty()) throw Error(ErrorKind::DenominatorIdenticallyZero, "cleared denominator is identically zero");
  if (frac.num.empty()) {
    r.verdict = Verdict::IdenticallyZero;
    r.value = Scalar(0);
    return r;
  }
  DivisionResult div = lp_div_exact(frac.num, frac.den);
  if (div.exact) {
    ConstantCheck cc = lp_is_constant(div.quotient);
    if (cc.value) {
      r.verdict = Verdict::Constant;
      r.value = cc.value;
      return r;
    }
  }
  r.verdict = Verdict::NonConstant;
  attach_witness(r, e, env, opts);
  if (!r.witness) throw Error(ErrorKind::PoleAtAllSamples, "no finite witness point for a nonconstant expression");
  return r;
}

}  // namespace valshare
