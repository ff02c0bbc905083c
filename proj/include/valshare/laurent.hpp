#pragma once

#include <map>
#include <optional>

#include "valshare/expsum.hpp"

namespace valshare {

/// Relative zero test for float coefficients: |c| ≤ rel_tol·reference, where
/// reference defaults to max(1, largest coefficient magnitude).
struct ZeroTest {
  double rel_tol = 1e-12;
  std::optional<double> reference;
};

/// Σ c_d t^d with t = e^{σz}. Only nonzero coefficients are stored.
class LaurentPoly {
 public:
  explicit LaurentPoly(Scalar base = Scalar(1));
  LaurentPoly(Scalar base, std::map<long, Scalar> coeffs);

  static LaurentPoly constant(const Scalar& base, const Scalar& c);
  static LaurentPoly monomial(const Scalar& base, long degree, const Scalar& c);

  const Scalar& base() const noexcept { return base_; }
  const std::map<long, Scalar>& coeffs() const noexcept { return coeffs_; }
  bool empty() const noexcept { return coeffs_.empty(); }
  bool is_exact() const;
  long min_degree() const;
  long max_degree() const;
  /// Coefficient at degree d (exact zero when absent).
  Scalar at(long d) const;

  Complex operator()(Complex z) const;
  ExpSum to_expsum() const;
  std::string to_string() const;

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

 private:
  Scalar base_;
  std::map<long, Scalar> coeffs_;
};

/// Infers the coarsest base σ (normalized to Re σ > 0, or Im σ > 0 when
/// purely imaginary) unless one is supplied.
LaurentPoly lp_from_expsum(const ExpSum& f, const std::optional<Scalar>& base = std::nullopt);
/// Coarsest common base for every frequency of every function given.
Scalar infer_base(const std::vector<const ExpSum*>& fs);

LaurentPoly lp_add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly lp_sub(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly lp_mul(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly lp_scale(const Scalar& c, const LaurentPoly& p);
LaurentPoly lp_pow(const LaurentPoly& p, unsigned long k);
/// d/dz = σ·t·d/dt: coefficient c at degree d becomes d·σ·c.
LaurentPoly lp_derivative_z(const LaurentPoly& p);

struct ConstantCheck {
  std::optional<Scalar> value;  // set iff the polynomial is constant (zero included)
  bool tolerance_based = false; // some coefficient was discarded by the float rule
};

/// Drops float coefficients below the zero-test threshold.
LaurentPoly lp_prune(const LaurentPoly& p, const ZeroTest& zt = {});
ConstantCheck lp_is_constant(const LaurentPoly& p, const ZeroTest& zt = {});
bool lp_is_zero(const LaurentPoly& p, const ZeroTest& zt = {});

struct DivisionResult {
  LaurentPoly quotient;
  LaurentPoly remainder;
  bool exact = false;
};

/// Long division from the top degree. exact is true iff num = quotient·den.
DivisionResult lp_div_exact(const LaurentPoly& num, const LaurentPoly& den, const ZeroTest& zt = {});

}  // namespace valshare
