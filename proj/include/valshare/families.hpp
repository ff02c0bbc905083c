#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valshare/expr.hpp"
#include "valshare/expsum.hpp"
#include "valshare/poly.hpp"
#include "valshare/roots.hpp"
#include "valshare/sharing.hpp"

namespace valshare {

// --- named functions --------------------------------------------------------

/// (4δ/(27β²))·e^{2z/3} + β·e^{−z/3}
ExpSum thm2prime_family(const Scalar& delta, const Scalar& beta);
/// b·(¼A²e^{z/2} + A·e^{z/4} + 1)
ExpSum thmC_family(const Scalar& b, const Scalar& A);
/// C·e^{bz/(b−a)} + a
ExpSum example1(const Scalar& C, const Scalar& a, const Scalar& b);
/// (a/2)(sin 2z + 1) and its derivative.
std::pair<ExpSum, ExpSum> example2(const Scalar& a);
/// a·sin z and its derivative.
std::pair<ExpSum, ExpSum> example3(const Scalar& a);

enum class FamilyId { Thm2Prime, ThmC, Example1, Example2, Example3 };

struct FamilyParams {
  FamilyId id = FamilyId::Thm2Prime;
  std::map<std::string, Scalar> params;  // delta, beta | b, A | C, a, b | a
};

std::string_view to_string(FamilyId id);
std::optional<FamilyId> parse_family(std::string_view name);
ExpSum build_family(const FamilyParams& p);

// --- coefficient matching ---------------------------------------------------

struct DerivationStep {
  std::string equation;  // which coefficient, e.g. "t^4"
  std::string polynomial;  // the equation after earlier substitutions
  std::string variable;
  std::string value;
  std::string note;
};

struct DerivedConstants {
  Scalar alpha, gamma, b2, b1, b0, c2, c1;
  std::map<long, Scalar> residuals;  // t-power -> leftover coefficient; empty on success
  std::vector<DerivationStep> steps;
  std::vector<std::string> notes;
  MPoly seed_t6;    // coefficient of t^6 divided by b2^3
  MPoly seed_tm3;   // coefficient of t^-3
};

/// Variable order used by the solver's polynomials.
const std::vector<std::string>& derive_variable_names();

/// Coefficients of Y³ − XY² + γ(X³ + c₂X² + c₁X − δ) under
/// X = b₂t² + b₁t + b₀ + 1/t, Y = α(2b₂t² + b₁t − 1/t), keyed by the power of t.
std::map<long, MPoly> curve_substitution_coefficients(const Scalar& delta);

DerivedConstants derive_family_constants(const Scalar& delta);

struct IdentityCheck {
  std::string name;
  std::string expression;
  ConstancyReport report;
  bool ok = false;
};

/// The cubic ODE, the linear ODE and the constancy of h₃ for thm2prime_family(δ, β).
std::vector<IdentityCheck> verify_family_identities(const Scalar& delta, const Scalar& beta);

// --- cubic curves -----------------------------------------------------------

/// Y³ − XY² + γ(X³ + c₂X²Z + c₁XZ² + c₀Z³) = 0 in the projective plane.
struct CubicCurve {
  Scalar gamma, c2, c1, c0;
  bool is_exact() const { return gamma.is_exact() && c2.is_exact() && c1.is_exact() && c0.is_exact(); }
};

enum class CurveKind { Reducible, SingularGenus0, SmoothGenus1 };
std::string_view to_string(CurveKind k);

struct ProjectivePoint {
  Scalar x, y, z;
};

struct CurveClass {
  CurveKind kind = CurveKind::SmoothGenus1;
  bool exact = true;
  std::optional<std::pair<Scalar, Scalar>> factor;  // (u, v): Y − uX − vZ divides the cubic
  std::vector<ProjectivePoint> singular_points;
  std::vector<std::string> notes;
};

CurveClass classify_cubic(const CubicCurve& curve);

/// Values of F, F_X, F_Y, F_Z at a point; the oracle side of singularity checks.
std::array<Scalar, 4> cubic_gradient(const CubicCurve& curve, const ProjectivePoint& p);

struct SliceRoot {
  Complex value;
  std::optional<Scalar> exact;
  int multiplicity = 1;
};

/// Roots y of y³ − y² + γ, i.e. the points [1 : y : 0] of the curve at infinity.
std::vector<SliceRoot> infinity_slice(const CubicCurve& curve);

// --- the open question ------------------------------------------------------

struct ProbeGrid {
  std::vector<Scalar> coeffs;
  std::vector<Scalar> freqs;
  std::vector<ExpSum> functions;  // used as-is in addition to the generated ones
};

ProbeGrid default_probe_grid();

struct ProbeCandidate {
  ExpSum f;
  std::vector<PairClass> values;
  bool vacuous = false;
};

struct ProbeResult {
  std::vector<ProbeCandidate> candidates;
  std::size_t tested = 0;
  std::vector<std::pair<std::string, std::string>> skipped;  // function, reason
  static constexpr const char* kTag = "EXPERIMENTAL";
};

/// Searches two-term sums c₁e^{λ₁z} + c₂e^{λ₂z} for ones whose simple a- and
/// b-points coincide with those of f' over the region.
ProbeResult question_probe(Complex a, Complex b, const ProbeGrid& grid, const Region& region,
                           const SharingOptions& opts = {});

}  // namespace valshare
