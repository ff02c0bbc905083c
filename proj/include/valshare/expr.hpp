#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "valshare/expsum.hpp"
#include "valshare/laurent.hpp"

namespace valshare {

struct SourcePos {
  int line = 1;
  int column = 1;
};

enum class NodeKind { Rational, Ident, Add, Sub, Mul, Div, Pow, Deriv };

struct Node;
using Expr = std::shared_ptr<const Node>;

/// Expression tree node. Rational covers integer and p/q literals as well
/// as the imaginary unit (imaginary = true). Pow has a nonnegative exponent.
struct Node {
  NodeKind kind = NodeKind::Rational;
  SourcePos pos;
  mpz_class num{0};
  mpz_class den{1};
  bool explicit_den = false;
  bool imaginary = false;
  std::string name;
  unsigned long exponent = 0;
  Expr lhs;
  Expr rhs;
};

using Env = std::map<std::string, ExpSum>;

Expr parse(std::string_view src);
/// Fully parenthesized source text; parse(print(e)) reproduces e.
std::string print(const Expr& e);
/// Structural equality ignoring source positions.
bool same_tree(const Expr& a, const Expr& b);

Expr make_rational(long num, long den = 1);
Expr make_ident(std::string name);
Expr make_binary(NodeKind kind, Expr lhs, Expr rhs);
Expr make_pow(Expr base, unsigned long exponent);
Expr make_deriv(Expr inner);

/// Pointwise IEEE evaluation. Division by a value of magnitude < 1e-300
/// raises a Pole error carrying z.
Complex eval_expr(const Expr& e, const Env& env, Complex z);

enum class Verdict { IdenticallyZero, Constant, NonConstant, Inconclusive };
enum class CheckMode { Exact, Sampled };
enum class CheckPreference { Auto, Exact, Sampled };

std::string_view to_string(Verdict v);
std::string_view to_string(CheckMode m);

struct Witness {
  Complex z;
  Complex value;
};

struct ConstancyReport {
  Verdict verdict = Verdict::Inconclusive;
  CheckMode mode = CheckMode::Exact;
  std::optional<Scalar> value;     // Constant verdicts (and 0 for IdenticallyZero)
  std::optional<Witness> witness;  // always present for NonConstant
  std::optional<Witness> contrast; // a second point with a different value
  int samples_used = 0;
  std::optional<LaurentPoly> numerator;    // exact mode: cleared numerator
  std::optional<LaurentPoly> denominator;  // exact mode: cleared denominator
  std::string note;
};

struct CheckOptions {
  CheckPreference preference = CheckPreference::Auto;
  int samples = 64;
  double inner_radius = 1.3;
  double outer_radius = 2.7;
  double rel_tol = 1e-8;
  unsigned long seed = 0x5eedUL;
};

/// Decides whether e is identically zero, a nonzero constant or
/// nonconstant. Exact when every bound function is exact with commensurable
/// frequencies, sampled otherwise.
ConstancyReport check_identity(const Expr& e, const Env& env, const CheckOptions& opts = {});

}  // namespace valshare
