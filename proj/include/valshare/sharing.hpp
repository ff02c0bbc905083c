#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valshare/expsum.hpp"
#include "valshare/roots.hpp"

namespace valshare {

// Listed strongest first.
enum class SharingCondition { ShareSimple, SimpleToSimple, SimpleToAny };
enum class SharingVerdict { Holds, HoldsVacuously, Fails };

std::string_view to_string(SharingCondition c);
std::string_view to_string(SharingVerdict v);
std::optional<SharingCondition> parse_condition(std::string_view s);  // share-simple | s2s | s2a

inline constexpr SharingCondition kAllConditions[] = {SharingCondition::ShareSimple, SharingCondition::SimpleToSimple,
                                                      SharingCondition::SimpleToAny};

struct SharingOptions {
  double match_tol = 1e-8;
  double value_tol = 1e-8;
  double margin = 0.05;
  RootOptions roots;
};

struct PointMatch {
  APoint f_point;
  APoint fprime_point;
  double distance = 0.0;
};

struct Violation {
  APoint point;
  bool of_fprime = false;  // the point is an a-point of f' rather than of f
  std::vector<SharingCondition> conditions;
  Complex f_value;
  Complex fprime_value;
};

struct SharingReport {
  Complex a;
  Region region;
  std::vector<APoint> simple_points_f;
  std::vector<APoint> simple_points_fprime;
  std::vector<PointMatch> matches;
  std::vector<Violation> violations;
  std::vector<APoint> unmatched;
  std::vector<APoint> boundary_excluded;
  std::vector<std::pair<SharingCondition, SharingVerdict>> verdicts;  // in request order
  std::vector<std::string> notes;

  std::optional<SharingVerdict> verdict(SharingCondition c) const;
};

std::vector<APoint> simple_points(const ExpSum& f, Complex a, const Region& r, const RootOptions& opts = {});

/// Audits the requested conditions (all three when empty) for the value a.
SharingReport check_condition(const ExpSum& f, Complex a, const Region& r,
                              const std::vector<SharingCondition>& conditions = {}, const SharingOptions& opts = {});

struct PairClass {
  Complex a;
  std::optional<SharingCondition> strongest;
  bool vacuous = false;
  SharingReport report;
};

std::vector<PairClass> classify_pair(const ExpSum& f, const std::vector<Complex>& values, const Region& r,
                                     const SharingOptions& opts = {});

struct AuditItem {
  std::string name;
  SharingVerdict status = SharingVerdict::HoldsVacuously;
  std::vector<APoint> witnesses;  // counterexamples when status is Fails
  std::string detail;
};

struct Lemma1Audit {
  AuditItem hypothesis;  // f and f' share their simple zeros in the region
  AuditItem no_simple_zeros_of_fprime;
  AuditItem multiple_points_at_least_triple;
  AuditItem zeros_at_least_triple;
};

/// Checks the consequences of f and f' sharing simple zeros. Multiple points
/// are searched over `value_grid`. With require_hypothesis set, a failing
/// hypothesis raises HypothesisFails carrying a witness instead.
Lemma1Audit lemma1_audit(const ExpSum& f, const Region& r, const std::vector<Complex>& value_grid,
                         const SharingOptions& opts = {}, bool require_hypothesis = false);

}  // namespace valshare
