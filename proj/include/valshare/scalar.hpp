#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace valshare {

using Complex = std::complex<double>;

/// A complex number that is either an exact Gaussian rational or an IEEE
/// complex double. Exact arithmetic stays exact; any operation with a float
/// operand produces a float result.
class Scalar {
 public:
  Scalar() = default;  // exact zero
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im);

  static Scalar rational(long num, long den = 1);
  static Scalar imaginary_unit() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar from_complex(Complex z);
  static Scalar from_double(double x) { return from_complex(Complex(x, 0.0)); }

  /// Parses DSL component strings: "p/q" or an integer is exact, any decimal
  /// literal ("0.5", "1e-3") is float. Both parts must agree in mode, else the
  /// whole value is float.
  static Scalar parse(std::string_view re, std::string_view im = "0");

  bool is_exact() const noexcept { return exact_; }
  bool is_zero() const;
  bool is_real() const;
  bool is_one() const;

  /// Exact parts; only meaningful when is_exact().
  const mpq_class& re_exact() const { return re_; }
  const mpq_class& im_exact() const { return im_; }

  Complex to_complex() const;
  double abs() const { return std::abs(to_complex()); }
  Scalar to_float() const { return from_complex(to_complex()); }
  Scalar conj() const;

  /// DSL component strings. Exact values print canonical "p/q" (or "p");
  /// float values print the shortest round-tripping decimal with a '.' or 'e'.
  std::string re_string() const;
  std::string im_string() const;
  /// Human readable form such as "4/27", "-1/2*i", "1/3 + 2*i".
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  /// Exact values compare exactly; anything involving a float compares the
  /// double representations bit for bit. Use approx_equal for tolerances.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar pow(unsigned long k) const;

 private:
  bool exact_ = true;
  mpq_class re_{0};
  mpq_class im_{0};
  Complex z_{0.0, 0.0};
};

bool approx_equal(const Scalar& a, const Scalar& b, double abs_tol);

/// Lexicographic order by (Re, Im). Exact pairs compare exactly.
bool lex_less(const Scalar& a, const Scalar& b);

std::string rational_to_string(const mpq_class& q);
mpq_class parse_rational(std::string_view text);
bool looks_rational(std::string_view text);

}  // namespace valshare
