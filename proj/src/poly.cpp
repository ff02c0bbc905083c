#include "valshare/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "valshare/error.hpp"

namespace valshare {

MPoly MPoly::constant(std::size_t nvars, const Scalar& c) {
  MPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
  MPoly p(nvars);
  Exponents e(nvars, 0);
  e.at(index) = 1;
  p.add_term(e, Scalar(1));
  return p;
}

void MPoly::add_term(const Exponents& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool MPoly::is_constant() const {
  for (const auto& [e, c] : terms_)
    if (std::any_of(e.begin(), e.end(), [](int k) { return k != 0; })) return false;
  return true;
}

Scalar MPoly::constant_value() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Scalar() : it->second;
}

int MPoly::degree_in(std::size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

MPoly MPoly::coefficient(std::size_t var, int k) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != k) continue;
    Exponents f = e;
    f[var] = 0;
    out.add_term(f, c);
  }
  return out;
}

MPoly MPoly::substitute(std::size_t var, const MPoly& value) const {
  MPoly out(nvars_);
  std::vector<MPoly> powers{constant(nvars_, Scalar(1))};
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(powers.size()) <= e[var]) powers.push_back(powers.back() * value);
    Exponents f = e;
    f[var] = 0;
    MPoly rest(nvars_);
    rest.add_term(f, c);
    out += rest * powers[e[var]];
  }
  return out;
}

std::optional<MPoly> MPoly::divide_by_power(std::size_t var, int k) const {
  MPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] < k) return std::nullopt;
    Exponents f = e;
    f[var] -= k;
    out.add_term(f, c);
  }
  return out;
}

std::optional<std::vector<Scalar>> MPoly::as_univariate(std::size_t var) const {
  std::vector<Scalar> out(degree_in(var) + 1);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (i != var && e[i] != 0) return std::nullopt;
    out[e[var]] += c;
  }
  return out;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  // Highest total degree first reads most naturally.
  std::vector<std::pair<Exponents, Scalar>> items(terms_.begin(), terms_.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int k : a.first) da += k;
    for (int k : b.first) db += k;
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : items) {
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Scalar coef = c;
    bool negative = c.is_exact() && c.is_real() && sgn(c.re_exact()) < 0;
    if (negative) coef = -c;
    std::string cs = coef.to_string();
    if (!coef.is_real()) cs = "(" + cs + ")";
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (mono.empty())
      os << cs;
    else if (coef.is_one())
      os << mono;
    else
      os << cs << "*" << mono;
  }
  return os.str();
}

MPoly& MPoly::operator+=(const MPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exponents e(a.nvars_);
      for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MPoly operator*(const Scalar& c, const MPoly& p) {
  MPoly out(p.nvars_);
  for (const auto& [e, v] : p.terms_) out.add_term(e, c * v);
  return out;
}

MPoly MPoly::pow(unsigned k) const {
  MPoly out = constant(nvars_, Scalar(1));
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

namespace upoly {

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const Poly& p) {
  Poly q = p;
  trim(q);
  return static_cast<int>(q.size()) - 1;
}

Poly derivative(const Poly& p) {
  Poly out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(Scalar(static_cast<long>(k)) * p[k]);
  trim(out);
  return out;
}

Poly monic(const Poly& p) {
  Poly q = p;
  trim(q);
  if (q.empty()) return q;
  Scalar lead = q.back();
  for (auto& c : q) c /= lead;
  return q;
}

Poly remainder(const Poly& a, const Poly& b) {
  Poly r = a;
  Poly d = b;
  trim(r);
  trim(d);
  if (d.empty()) throw Error(ErrorKind::DivisionByZeroPolynomial, "polynomial remainder by zero");
  while (r.size() >= d.size()) {
    Scalar f = r.back() / d.back();
    std::size_t shift = r.size() - d.size();
    for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= f * d[i];
    r.pop_back();
    trim(r);
  }
  return r;
}

Poly quotient(const Poly& a, const Poly& b) {
  Poly r = a;
  Poly d = b;
  trim(r);
  trim(d);
  if (d.empty()) throw Error(ErrorKind::DivisionByZeroPolynomial, "polynomial quotient by zero");
  if (r.size() < d.size()) return {};
  Poly q(r.size() - d.size() + 1);
  while (r.size() >= d.size() && !r.empty()) {
    Scalar f = r.back() / d.back();
    std::size_t shift = r.size() - d.size();
    q[shift] = f;
    for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= f * d[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
  return q;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Scalar eval(const Poly& p, const Scalar& x) {
  Scalar acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex eval(const Poly& p, Complex x) {
  Complex acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->to_complex();
  return acc;
}

std::vector<Complex> numeric_roots(const Poly& p) {
  Poly q = p;
  trim(q);
  int n = static_cast<int>(q.size()) - 1;
  if (n < 1) return {};
  std::vector<Complex> c(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) c[i] = q[i].to_complex() / q.back().to_complex();
  auto ev = [&](Complex x) {
    Complex acc;
    for (int i = n; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  };
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i]));
  bound = 1.0 + bound;
  std::vector<Complex> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::polar(0.5 * bound, 0.4 + 2.0 * 3.141592653589793 * i / n);
  for (int it = 0; it < 2000; ++it) {
    double change = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex den = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (den == Complex{}) den = 1e-300;
      Complex step = ev(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-16 * bound) break;
  }
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return z;
}

namespace {

std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
  n = abs(n);
  if (n == 0) return std::nullopt;
  if (n > mpz_class("1000000000000")) return std::nullopt;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::optional<std::vector<mpq_class>> rational_roots(const Poly& p) {
  Poly q = p;
  trim(q);
  for (const auto& c : q)
    if (!c.is_exact() || !c.is_real()) return std::nullopt;
  std::vector<mpq_class> roots;
  // strip x^k
  std::size_t low = 0;
  while (low < q.size() && q[low].is_zero()) ++low;
  if (low > 0 && q.size() > 1) roots.push_back(0);
  if (q.size() - low <= 1) return roots;
  mpz_class lcm_den = 1;
  for (std::size_t i = low; i < q.size(); ++i) lcm_den = lcm(lcm_den, q[i].re_exact().get_den());
  std::vector<mpz_class> ints;
  for (std::size_t i = low; i < q.size(); ++i) ints.push_back(mpz_class(q[i].re_exact() * lcm_den));
  auto dp = divisors(ints.front());
  auto dq = divisors(ints.back());
  if (!dp || !dq) return std::nullopt;
  for (const auto& a : *dp) {
    for (const auto& b : *dq) {
      for (int s : {1, -1}) {
        mpq_class cand(s * a, b);
        cand.canonicalize();
        if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
        if (eval(q, Scalar(cand, 0)).is_zero()) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int multiplicity(Poly p, const Scalar& x) {
  trim(p);
  int m = 0;
  while (!p.empty() && eval(p, x).is_zero()) {
    ++m;
    p = derivative(p);
  }
  return m;
}

}  // namespace upoly

}  // namespace valshare
