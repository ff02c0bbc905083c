#include "valshare/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "valshare/error.hpp"

namespace valshare {

namespace {

// log(DBL_MAX) with a little headroom for the summation.
constexpr double kMaxExponent = 709.0;

bool same_freq(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return approx_equal(a, b, tol);
}

}  // namespace

ExpSum ExpSum::normalize(std::vector<Term> terms, double freq_tol) {
  bool all_exact = std::all_of(terms.begin(), terms.end(), [](const Term& t) {
    return t.coeff.is_exact() && t.freq.is_exact();
  });
  if (!all_exact) {
    for (auto& t : terms) {
      t.coeff = t.coeff.to_float();
      t.freq = t.freq.to_float();
    }
  }

  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Term& m) { return same_freq(m.freq, t.freq, freq_tol); });
    if (it == merged.end()) {
      merged.push_back(std::move(t));
    } else {
      it->coeff += t.coeff;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff.is_zero(); });
  std::sort(merged.begin(), merged.end(),
            [](const Term& a, const Term& b) { return lex_less(a.freq, b.freq); });

  ExpSum out;
  out.terms_ = std::move(merged);
  out.exact_ = all_exact;
  out.build_cache();
  return out;
}

ExpSum ExpSum::constant(const Scalar& c) { return normalize({Term{c, c.is_exact() ? Scalar(0) : Scalar::from_double(0.0)}}); }

ExpSum ExpSum::exponential(const Scalar& coeff, const Scalar& freq) {
  return normalize({Term{coeff, freq}});
}

void ExpSum::build_cache() {
  c_.clear();
  lam_.clear();
  log_abs_c_.clear();
  for (const auto& t : terms_) {
    c_.push_back(t.coeff.to_complex());
    lam_.push_back(t.freq.to_complex());
    log_abs_c_.push_back(std::log(std::abs(c_.back())));
  }
}

bool ExpSum::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_[0].freq.is_zero();
}

Complex ExpSum::operator()(Complex z) const {
  Complex sum(0.0, 0.0);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    Complex e = lam_[k] * z;
    double mag = e.real() + log_abs_c_[k];
    if (mag > kMaxExponent) {
      throw RangeError("term e^{λz} overflows at exponent " + std::to_string(e.real()), e.real());
    }
    sum += c_[k] * std::exp(e);
  }
  return sum;
}

Jet ExpSum::jet(Complex z, int order) const {
  Jet out;
  if (c_.empty()) return out;
  std::vector<Complex> e(c_.size());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c_.size(); ++k) {
    e[k] = lam_[k] * z;
    m = std::max(m, e[k].real() + log_abs_c_[k]);
  }
  out.log_scale = m;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    Complex w = c_[k] * std::exp(e[k] - m);
    for (int j = 0; j <= order && j < 4; ++j) {
      out.d[j] += w;
      w *= lam_[k];
    }
  }
  return out;
}

double ExpSum::magnitude(Complex z, int k) const {
  double s = 0.0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    double lam_abs = std::pow(std::abs(lam_[i]), k);
    s += std::abs(c_[i]) * lam_abs * std::exp((lam_[i] * z).real());
  }
  return s;
}

std::string ExpSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.to_string() << ")";
    if (!t.freq.is_zero()) os << "*e^((" << t.freq.to_string() << ")*z)";
  }
  return os.str();
}

bool operator==(const ExpSum& a, const ExpSum& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff || a.terms_[i].freq != b.terms_[i].freq) return false;
  }
  return true;
}

bool approx_equal(const ExpSum& a, const ExpSum& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!approx_equal(a.terms()[i].coeff, b.terms()[i].coeff, tol) ||
        !approx_equal(a.terms()[i].freq, b.terms()[i].freq, tol)) {
      return false;
    }
  }
  return true;
}

ExpSum operator+(const ExpSum& f, const ExpSum& g) {
  std::vector<Term> terms = f.terms();
  terms.insert(terms.end(), g.terms().begin(), g.terms().end());
  return ExpSum::normalize(std::move(terms));
}

ExpSum operator-(const ExpSum& f) { return scale(Scalar(-1), f); }

ExpSum operator-(const ExpSum& f, const ExpSum& g) { return f + (-g); }

ExpSum operator*(const ExpSum& f, const ExpSum& g) {
  std::vector<Term> terms;
  terms.reserve(f.size() * g.size());
  for (const auto& a : f.terms()) {
    for (const auto& b : g.terms()) terms.push_back(Term{a.coeff * b.coeff, a.freq + b.freq});
  }
  return ExpSum::normalize(std::move(terms));
}

ExpSum scale(const Scalar& c, const ExpSum& f) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) terms.push_back(Term{c * t.coeff, t.freq});
  return ExpSum::normalize(std::move(terms));
}

ExpSum pow(const ExpSum& f, unsigned k) {
  ExpSum result = ExpSum::constant(Scalar(1));
  ExpSum base = f;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

ExpSum differentiate(const ExpSum& f) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) terms.push_back(Term{t.coeff * t.freq, t.freq});
  return ExpSum::normalize(std::move(terms));
}

ExpSum derivative(const ExpSum& f, int order) {
  ExpSum g = f;
  for (int i = 0; i < order; ++i) g = differentiate(g);
  return g;
}

ExpSum to_float(const ExpSum& f) {
  std::vector<Term> terms;
  for (const auto& t : f.terms()) terms.push_back(Term{t.coeff.to_float(), t.freq.to_float()});
  return ExpSum::normalize(std::move(terms));
}

}  // namespace valshare
