#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valshare/scalar.hpp"

namespace valshare {

/// Sparse polynomial in a fixed number of named variables with Scalar
/// coefficients. Exponent vectors are the map keys, zero terms are dropped.
class MPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}
  static MPoly constant(std::size_t nvars, const Scalar& c);
  static MPoly variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_value() const;  // coefficient of the empty monomial
  int degree_in(std::size_t var) const;
  bool mentions(std::size_t var) const { return degree_in(var) > 0; }

  /// Coefficient of var^k as a polynomial in the remaining variables.
  MPoly coefficient(std::size_t var, int k) const;
  MPoly substitute(std::size_t var, const MPoly& value) const;
  /// Divides by var^k; nullopt when some term has a lower power of var.
  std::optional<MPoly> divide_by_power(std::size_t var, int k) const;
  /// Univariate coefficients (low to high) when var is the only variable present.
  std::optional<std::vector<Scalar>> as_univariate(std::size_t var) const;

  std::string to_string(const std::vector<std::string>& names) const;

  MPoly& operator+=(const MPoly& rhs);
  MPoly& operator-=(const MPoly& rhs);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const Scalar& c, const MPoly& p);
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  MPoly pow(unsigned k) const;

 private:
  void add_term(const Exponents& e, const Scalar& c);

  std::size_t nvars_;
  std::map<Exponents, Scalar> terms_;
};

/// Univariate helpers on exact coefficient vectors, lowest degree first.
namespace upoly {

using Poly = std::vector<Scalar>;

void trim(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
Poly derivative(const Poly& p);
Poly monic(const Poly& p);
/// Remainder of a by b (b nonzero).
Poly remainder(const Poly& a, const Poly& b);
/// Monic gcd over the field of Gaussian rationals.
Poly gcd(Poly a, Poly b);
Poly quotient(const Poly& a, const Poly& b);
Scalar eval(const Poly& p, const Scalar& x);
Complex eval(const Poly& p, Complex x);
/// All complex roots (with repetition) by Durand–Kerner iteration.
std::vector<Complex> numeric_roots(const Poly& p);
/// Distinct rational roots of a polynomial with rational coefficients.
/// Returns nullopt when coefficients are not real rationals or too large to
/// enumerate divisors of.
std::optional<std::vector<mpq_class>> rational_roots(const Poly& p);
/// Multiplicity of the exact root x.
int multiplicity(Poly p, const Scalar& x);

}  // namespace upoly

}  // namespace valshare
