#include "valshare/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "valshare/error.hpp"

namespace valshare {

namespace {

constexpr double kBaseTol = 1e-12;
constexpr double kRatioTol = 1e-9;
constexpr long kMaxFloatDenominator = 10000;

void require_same_base(const LaurentPoly& p, const LaurentPoly& q) {
  if (!approx_equal(p.base(), q.base(), kBaseTol)) {
    throw Error(ErrorKind::BaseMismatch,
                "bases " + p.base().to_string() + " and " + q.base().to_string() + " differ");
  }
}

Scalar merged_base(const LaurentPoly& p, const LaurentPoly& q) {
  require_same_base(p, q);
  return p.base().is_exact() ? q.base() : p.base();
}

void insert_add(std::map<long, Scalar>& m, long d, const Scalar& c) {
  auto it = m.find(d);
  if (it == m.end()) {
    if (!c.is_zero()) m.emplace(d, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m.erase(it);
}

// Best rational approximation p/q of x with q ≤ max_den, by continued fractions.
std::optional<std::pair<long, long>> rationalize(double x, double tol, long max_den) {
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    double a = std::floor(r);
    if (std::abs(a) > 1e12) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0;
    long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tol) {
      return std::make_pair(h1, k1);
    }
    double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

Scalar normalize_sign(const Scalar& s) {
  Complex z = s.to_complex();
  bool flip = z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0);
  if (s.is_exact()) {
    int re = sgn(s.re_exact());
    flip = re < 0 || (re == 0 && sgn(s.im_exact()) < 0);
  }
  return flip ? -s : s;
}

Scalar infer_exact_base(const std::vector<Scalar>& freqs) {
  const Scalar& unit = freqs.front();
  mpz_class g = 0;
  mpz_class l = 1;
  for (const auto& lam : freqs) {
    Scalar ratio = lam / unit;
    if (!ratio.is_real()) {
      throw Error(ErrorKind::IncommensurableFrequencies,
                  lam.to_string() + " is not a rational multiple of " + unit.to_string());
    }
    const mpq_class& q = ratio.re_exact();
    mpz_class num = abs(q.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  }
  mpq_class factor(g, l);
  factor.canonicalize();
  return normalize_sign(unit * Scalar(factor, mpq_class(0)));
}

Scalar infer_float_base(const std::vector<Scalar>& freqs) {
  Complex unit = freqs.front().to_complex();
  std::vector<std::pair<long, long>> ratios;
  for (const auto& lam : freqs) {
    Complex r = lam.to_complex() / unit;
    if (std::abs(r.imag()) > kRatioTol * std::max(1.0, std::abs(r))) {
      throw Error(ErrorKind::IncommensurableFrequencies,
                  lam.to_string() + " is not a real multiple of " + freqs.front().to_string());
    }
    auto pq = rationalize(r.real(), kRatioTol * std::max(1.0, std::abs(r)), kMaxFloatDenominator);
    if (!pq) {
      throw Error(ErrorKind::IncommensurableFrequencies,
                  "no small rational ratio between " + lam.to_string() + " and " +
                      freqs.front().to_string());
    }
    ratios.push_back(*pq);
  }
  long g = 0;
  long l = 1;
  for (auto [p, q] : ratios) {
    g = std::gcd(g, std::abs(p));
    l = std::lcm(l, q);
  }
  return normalize_sign(Scalar::from_complex(unit * (static_cast<double>(g) / static_cast<double>(l))));
}

double max_abs(const LaurentPoly& p) {
  double m = 0.0;
  for (const auto& [d, c] : p.coeffs()) m = std::max(m, c.abs());
  return m;
}

}  // namespace

LaurentPoly::LaurentPoly(Scalar base) : base_(std::move(base)) {
  if (base_.is_zero()) throw Error(ErrorKind::InvalidArgument, "Laurent base must be nonzero");
}

LaurentPoly::LaurentPoly(Scalar base, std::map<long, Scalar> coeffs) : LaurentPoly(std::move(base)) {
  for (auto& [d, c] : coeffs) {
    if (!c.is_zero()) coeffs_.emplace(d, std::move(c));
  }
}

LaurentPoly LaurentPoly::constant(const Scalar& base, const Scalar& c) { return monomial(base, 0, c); }

LaurentPoly LaurentPoly::monomial(const Scalar& base, long degree, const Scalar& c) {
  return LaurentPoly(base, {{degree, c}});
}

bool LaurentPoly::is_exact() const {
  if (!base_.is_exact()) return false;
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.is_exact(); });
}

long LaurentPoly::min_degree() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
long LaurentPoly::max_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

Scalar LaurentPoly::at(long d) const {
  auto it = coeffs_.find(d);
  return it == coeffs_.end() ? Scalar(0) : it->second;
}

Complex LaurentPoly::operator()(Complex z) const {
  Complex sigma_z = base_.to_complex() * z;
  Complex sum(0.0, 0.0);
  for (const auto& [d, c] : coeffs_) sum += c.to_complex() * std::exp(static_cast<double>(d) * sigma_z);
  return sum;
}

ExpSum LaurentPoly::to_expsum() const {
  std::vector<Term> terms;
  for (const auto& [d, c] : coeffs_) terms.push_back(Term{c, base_ * Scalar(d)});
  return ExpSum::normalize(std::move(terms));
}

std::string LaurentPoly::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [d, c] : coeffs_) {
    if (!first) os << ", ";
    first = false;
    os << d << ": " << c.to_string();
  }
  os << "} (t = e^((" << base_.to_string() << ")*z))";
  return os.str();
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.base_ != b.base_ || a.coeffs_.size() != b.coeffs_.size()) return false;
  return std::equal(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

Scalar infer_base(const std::vector<const ExpSum*>& fs) {
  std::vector<Scalar> freqs;
  bool exact = true;
  for (const ExpSum* f : fs) {
    exact = exact && f->is_exact();
    for (const auto& t : f->terms()) {
      if (!t.freq.is_zero()) freqs.push_back(t.freq);
    }
  }
  if (freqs.empty()) return exact ? Scalar(1) : Scalar::from_double(1.0);
  if (exact) return infer_exact_base(freqs);
  return infer_float_base(freqs);
}

LaurentPoly lp_from_expsum(const ExpSum& f, const std::optional<Scalar>& base) {
  Scalar sigma = base ? *base : infer_base({&f});
  if (sigma.is_zero()) throw Error(ErrorKind::InvalidArgument, "Laurent base must be nonzero");
  std::map<long, Scalar> coeffs;
  for (const auto& t : f.terms()) {
    long degree = 0;
    if (t.freq.is_exact() && sigma.is_exact()) {
      Scalar ratio = t.freq / sigma;
      if (!ratio.is_real() || ratio.re_exact().get_den() != 1 || !ratio.re_exact().get_num().fits_slong_p()) {
        throw Error(ErrorKind::NonIntegerRatio,
                    t.freq.to_string() + " / " + sigma.to_string() + " = " + ratio.to_string() +
                        " is not an integer");
      }
      degree = ratio.re_exact().get_num().get_si();
    } else {
      Complex ratio = t.freq.to_complex() / sigma.to_complex();
      double rounded = std::round(ratio.real());
      if (std::abs(ratio - Complex(rounded, 0.0)) > kRatioTol * std::max(1.0, std::abs(ratio))) {
        throw Error(ErrorKind::NonIntegerRatio,
                    t.freq.to_string() + " / " + sigma.to_string() + " is not an integer");
      }
      degree = static_cast<long>(rounded);
    }
    insert_add(coeffs, degree, t.coeff);
  }
  return LaurentPoly(sigma, std::move(coeffs));
}

LaurentPoly lp_add(const LaurentPoly& p, const LaurentPoly& q) {
  std::map<long, Scalar> out = p.coeffs();
  for (const auto& [d, c] : q.coeffs()) insert_add(out, d, c);
  return LaurentPoly(merged_base(p, q), std::move(out));
}

LaurentPoly lp_sub(const LaurentPoly& p, const LaurentPoly& q) { return lp_add(p, lp_scale(Scalar(-1), q)); }

LaurentPoly lp_mul(const LaurentPoly& p, const LaurentPoly& q) {
  Scalar base = merged_base(p, q);
  std::map<long, Scalar> out;
  for (const auto& [d1, c1] : p.coeffs()) {
    for (const auto& [d2, c2] : q.coeffs()) insert_add(out, d1 + d2, c1 * c2);
  }
  return LaurentPoly(std::move(base), std::move(out));
}

LaurentPoly lp_scale(const Scalar& c, const LaurentPoly& p) {
  std::map<long, Scalar> out;
  for (const auto& [d, v] : p.coeffs()) {
    Scalar w = c * v;
    if (!w.is_zero()) out.emplace(d, std::move(w));
  }
  return LaurentPoly(p.base(), std::move(out));
}

LaurentPoly lp_pow(const LaurentPoly& p, unsigned long k) {
  LaurentPoly result = LaurentPoly::constant(p.base(), Scalar(1));
  LaurentPoly base = p;
  while (k > 0) {
    if (k & 1UL) result = lp_mul(result, base);
    k >>= 1U;
    if (k > 0) base = lp_mul(base, base);
  }
  return result;
}

LaurentPoly lp_derivative_z(const LaurentPoly& p) {
  std::map<long, Scalar> out;
  for (const auto& [d, c] : p.coeffs()) {
    if (d != 0) out.emplace(d, Scalar(d) * p.base() * c);
  }
  return LaurentPoly(p.base(), std::move(out));
}

LaurentPoly lp_prune(const LaurentPoly& p, const ZeroTest& zt) {
  if (p.is_exact()) return p;
  double threshold = zt.rel_tol * zt.reference.value_or(std::max(1.0, max_abs(p)));
  std::map<long, Scalar> out;
  for (const auto& [d, c] : p.coeffs()) {
    if (c.abs() > threshold) out.emplace(d, c);
  }
  return LaurentPoly(p.base(), std::move(out));
}

ConstantCheck lp_is_constant(const LaurentPoly& p, const ZeroTest& zt) {
  LaurentPoly pruned = lp_prune(p, zt);
  ConstantCheck out;
  out.tolerance_based = pruned.coeffs().size() != p.coeffs().size();
  if (pruned.empty()) {
    out.value = p.is_exact() ? Scalar(0) : Scalar::from_double(0.0);
  } else if (pruned.coeffs().size() == 1 && pruned.coeffs().begin()->first == 0) {
    out.value = pruned.coeffs().begin()->second;
  }
  return out;
}

bool lp_is_zero(const LaurentPoly& p, const ZeroTest& zt) { return lp_prune(p, zt).empty(); }

DivisionResult lp_div_exact(const LaurentPoly& num, const LaurentPoly& den, const ZeroTest& zt) {
  LaurentPoly d = lp_prune(den, zt);
  if (d.empty()) throw Error(ErrorKind::DivisionByZeroPolynomial, "division by the zero Laurent polynomial");
  Scalar base = merged_base(num, d);
  ZeroTest rem_test = zt;
  if (!rem_test.reference && !num.is_exact()) rem_test.reference = std::max(1.0, max_abs(num));

  LaurentPoly quotient(base);
  LaurentPoly rem = lp_prune(num, rem_test);
  const long d_top = d.max_degree();
  const Scalar lead = d.coeffs().rbegin()->second;
  const long q_low = num.min_degree() - d.min_degree();

  while (!rem.empty() && rem.max_degree() - d_top >= q_low) {
    long shift = rem.max_degree() - d_top;
    Scalar factor = rem.coeffs().rbegin()->second / lead;
    LaurentPoly step = LaurentPoly::monomial(base, shift, factor);
    quotient = lp_add(quotient, step);
    LaurentPoly next = lp_sub(rem, lp_mul(step, d));
    // The leading term cancels exactly in exact mode; force it in float mode.
    std::map<long, Scalar> cleaned = next.coeffs();
    cleaned.erase(rem.max_degree());
    rem = lp_prune(LaurentPoly(base, std::move(cleaned)), rem_test);
  }
  DivisionResult out{quotient, rem, rem.empty()};
  return out;
}

}  // namespace valshare
