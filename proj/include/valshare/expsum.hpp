#pragma once

#include <array>
#include <vector>

#include "valshare/scalar.hpp"

namespace valshare {

/// One term c·e^{λz}.
struct Term {
  Scalar coeff;
  Scalar freq;
};

/// Absolute tolerance used to merge float-mode frequencies.
inline constexpr double kDefaultFreqTol = 1e-12;

/// f^{(k)}(z) = d[k]·e^{log_scale}; the mantissas stay O(number of terms)
/// even where f itself would overflow a double.
struct Jet {
  std::array<Complex, 4> d{};
  double log_scale = 0.0;
};

/// Finite exponential sum Σ cₖ·e^{λₖ z} in canonical form: distinct
/// frequencies, nonzero coefficients, terms sorted by (Re λ, Im λ).
/// Values are immutable once built.
class ExpSum {
 public:
  ExpSum() = default;  // the zero function

  static ExpSum normalize(std::vector<Term> terms, double freq_tol = kDefaultFreqTol);
  static ExpSum constant(const Scalar& c);
  static ExpSum exponential(const Scalar& coeff, const Scalar& freq);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_exact() const noexcept { return exact_; }
  bool is_constant() const;

  /// Σ cₖ e^{λₖ z}; throws RangeError when a term overflows.
  Complex operator()(Complex z) const;
  /// Overflow-free evaluation of f, f', ..., f^{(order)} with a shared scale.
  Jet jet(Complex z, int order) const;
  /// Σ |cₖ λₖ^k e^{λₖ z}|, the natural magnitude scale for f^{(k)}(z).
  double magnitude(Complex z, int k = 0) const;

  std::string to_string() const;

  friend bool operator==(const ExpSum& a, const ExpSum& b);
  friend bool operator!=(const ExpSum& a, const ExpSum& b) { return !(a == b); }

 private:
  void build_cache();

  std::vector<Term> terms_;
  bool exact_ = true;
  std::vector<Complex> c_;
  std::vector<Complex> lam_;
  std::vector<double> log_abs_c_;
};

/// Termwise comparison within tol on coefficients and frequencies.
bool approx_equal(const ExpSum& a, const ExpSum& b, double tol);

ExpSum operator+(const ExpSum& f, const ExpSum& g);
ExpSum operator-(const ExpSum& f, const ExpSum& g);
ExpSum operator-(const ExpSum& f);
ExpSum operator*(const ExpSum& f, const ExpSum& g);
ExpSum scale(const Scalar& c, const ExpSum& f);
ExpSum pow(const ExpSum& f, unsigned k);
ExpSum differentiate(const ExpSum& f);
ExpSum derivative(const ExpSum& f, int order);
ExpSum to_float(const ExpSum& f);

}  // namespace valshare
