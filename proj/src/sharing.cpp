#include "valshare/sharing.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "valshare/error.hpp"
#include "valshare/parallel.hpp"

namespace valshare {

namespace {

bool has(const std::vector<SharingCondition>& cs, SharingCondition c) {
  return std::find(cs.begin(), cs.end(), c) != cs.end();
}

Complex eval_safe(const ExpSum& f, Complex z) {
  try {
    return f(z);
  } catch (const RangeError&) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
}

}  // namespace

std::string_view to_string(SharingCondition c) {
  switch (c) {
    case SharingCondition::ShareSimple: return "ShareSimple";
    case SharingCondition::SimpleToSimple: return "SimpleToSimple";
    case SharingCondition::SimpleToAny: return "SimpleToAny";
  }
  return "?";
}

std::string_view to_string(SharingVerdict v) {
  switch (v) {
    case SharingVerdict::Holds: return "holds";
    case SharingVerdict::HoldsVacuously: return "holds-vacuously";
    case SharingVerdict::Fails: return "fails";
  }
  return "?";
}

std::optional<SharingCondition> parse_condition(std::string_view s) {
  if (s == "share-simple" || s == "ShareSimple") return SharingCondition::ShareSimple;
  if (s == "s2s" || s == "SimpleToSimple") return SharingCondition::SimpleToSimple;
  if (s == "s2a" || s == "SimpleToAny") return SharingCondition::SimpleToAny;
  return std::nullopt;
}

std::optional<SharingVerdict> SharingReport::verdict(SharingCondition c) const {
  for (const auto& [cond, v] : verdicts)
    if (cond == c) return v;
  return std::nullopt;
}

std::vector<APoint> simple_points(const ExpSum& f, Complex a, const Region& r, const RootOptions& opts) {
  LocateResult loc = locate_a_points(f, a, r, opts);
  std::vector<APoint> out;
  for (const auto& p : loc.points)
    if (p.multiplicity == 1) out.push_back(p);
  return out;
}

SharingReport check_condition(const ExpSum& f, Complex a, const Region& r,
                              const std::vector<SharingCondition>& requested, const SharingOptions& opts) {
  std::vector<SharingCondition> conds = requested;
  if (conds.empty()) conds.assign(std::begin(kAllConditions), std::end(kAllConditions));
  ExpSum fp = differentiate(f);

  SharingReport rep;
  rep.a = a;
  rep.region = r;
  LocateResult lf = locate_a_points(f, a, r, opts.roots);
  LocateResult lg = locate_a_points(fp, a, r, opts.roots);
  for (const auto& n : lf.notes) rep.notes.push_back("f: " + n);
  for (const auto& n : lg.notes) rep.notes.push_back("f': " + n);

  auto keep = [&](const LocateResult& loc, std::vector<APoint>& dst) {
    for (const auto& p : loc.points) {
      if (p.multiplicity != 1) continue;
      if (r.inset(p.location) < opts.margin)
        rep.boundary_excluded.push_back(p);
      else
        dst.push_back(p);
    }
  };
  keep(lf, rep.simple_points_f);
  keep(lg, rep.simple_points_fprime);

  // Greedy nearest matching in sorted order; each f'-point is used once.
  std::vector<int> partner_of_f(rep.simple_points_f.size(), -1);
  std::vector<bool> used(rep.simple_points_fprime.size(), false);
  for (std::size_t i = 0; i < rep.simple_points_f.size(); ++i) {
    double best = opts.match_tol;
    int best_j = -1;
    for (std::size_t j = 0; j < rep.simple_points_fprime.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(rep.simple_points_f[i].location - rep.simple_points_fprime[j].location);
      if (d <= best) {
        best = d;
        best_j = static_cast<int>(j);
      }
    }
    if (best_j >= 0) {
      partner_of_f[i] = best_j;
      used[best_j] = true;
    }
  }

  bool share_fail = false, s2s_fail = false, s2a_fail = false;
  for (std::size_t i = 0; i < rep.simple_points_f.size(); ++i) {
    const APoint& p = rep.simple_points_f[i];
    Complex d1 = p.derivative_value;
    std::vector<SharingCondition> broken;
    bool matched = partner_of_f[i] >= 0;
    if (!matched) {
      if (has(conds, SharingCondition::ShareSimple)) broken.push_back(SharingCondition::ShareSimple);
      if (has(conds, SharingCondition::SimpleToSimple)) broken.push_back(SharingCondition::SimpleToSimple);
    }
    double off = std::min(std::abs(d1 - a), std::abs(d1));
    if (has(conds, SharingCondition::SimpleToAny) && !(off <= opts.value_tol))
      broken.push_back(SharingCondition::SimpleToAny);
    if (!broken.empty()) {
      for (auto c : broken) {
        share_fail |= c == SharingCondition::ShareSimple;
        s2s_fail |= c == SharingCondition::SimpleToSimple;
        s2a_fail |= c == SharingCondition::SimpleToAny;
      }
      rep.violations.push_back({p, false, broken, eval_safe(f, p.location), d1});
    } else if (matched) {
      const APoint& q = rep.simple_points_fprime[partner_of_f[i]];
      rep.matches.push_back({p, q, std::abs(p.location - q.location)});
    } else {
      rep.unmatched.push_back(p);
    }
  }
  for (std::size_t j = 0; j < rep.simple_points_fprime.size(); ++j) {
    if (used[j]) continue;
    const APoint& q = rep.simple_points_fprime[j];
    if (has(conds, SharingCondition::ShareSimple)) {
      share_fail = true;
      rep.violations.push_back({q, true, {SharingCondition::ShareSimple}, eval_safe(f, q.location), q.target});
    } else {
      rep.unmatched.push_back(q);
    }
  }

  bool f_empty = rep.simple_points_f.empty();
  bool both_empty = f_empty && rep.simple_points_fprime.empty();
  for (auto c : conds) {
    SharingVerdict v = SharingVerdict::Fails;
    switch (c) {
      case SharingCondition::ShareSimple:
        v = share_fail ? SharingVerdict::Fails : both_empty ? SharingVerdict::HoldsVacuously : SharingVerdict::Holds;
        break;
      case SharingCondition::SimpleToSimple:
        v = s2s_fail ? SharingVerdict::Fails : f_empty ? SharingVerdict::HoldsVacuously : SharingVerdict::Holds;
        break;
      case SharingCondition::SimpleToAny:
        v = s2a_fail ? SharingVerdict::Fails : f_empty ? SharingVerdict::HoldsVacuously : SharingVerdict::Holds;
        break;
    }
    rep.verdicts.emplace_back(c, v);
  }
  rep.notes.push_back("verdicts refer to the region only");
  return rep;
}

std::vector<PairClass> classify_pair(const ExpSum& f, const std::vector<Complex>& values, const Region& r,
                                     const SharingOptions& opts) {
  std::vector<PairClass> out(values.size());
  parallel_for(values.size(), resolve_threads(opts.roots.threads), [&](std::size_t i) {
    SharingOptions inner = opts;
    inner.roots.threads = 1;
    PairClass pc;
    pc.a = values[i];
    pc.report = check_condition(f, values[i], r, {}, inner);
    for (auto c : kAllConditions) {
      auto v = pc.report.verdict(c);
      if (v && *v != SharingVerdict::Fails) {
        pc.strongest = c;
        pc.vacuous = *v == SharingVerdict::HoldsVacuously;
        break;
      }
    }
    out[i] = std::move(pc);
  });
  return out;
}

Lemma1Audit lemma1_audit(const ExpSum& f, const Region& r, const std::vector<Complex>& value_grid,
                         const SharingOptions& opts, bool require_hypothesis) {
  Lemma1Audit audit;
  ExpSum fp = differentiate(f);

  SharingReport zero_rep = check_condition(f, 0.0, r, {SharingCondition::ShareSimple}, opts);
  audit.hypothesis.name = "f and f' share simple zeros";
  audit.hypothesis.status = *zero_rep.verdict(SharingCondition::ShareSimple);
  for (const auto& v : zero_rep.violations) audit.hypothesis.witnesses.push_back(v.point);
  if (audit.hypothesis.status == SharingVerdict::Fails) {
    const Violation& w = zero_rep.violations.front();
    std::ostringstream os;
    os << "simple zero of " << (w.of_fprime ? "f'" : "f") << " at " << w.point.location.real()
       << (w.point.location.imag() < 0 ? "" : "+") << w.point.location.imag() << "i is not a simple zero of "
       << (w.of_fprime ? "f" : "f'");
    audit.hypothesis.detail = os.str();
    if (require_hypothesis) throw PointError(ErrorKind::HypothesisFails, os.str(), w.point.location);
  }

  auto audit_points = [&](AuditItem& item, const std::vector<APoint>& pts, auto is_bad) {
    bool any = false;
    for (const auto& p : pts) {
      if (r.inset(p.location) < opts.margin) continue;
      any = true;
      if (is_bad(p)) item.witnesses.push_back(p);
    }
    item.status = !item.witnesses.empty() ? SharingVerdict::Fails
                  : any                   ? SharingVerdict::Holds
                                          : SharingVerdict::HoldsVacuously;
  };

  audit.no_simple_zeros_of_fprime.name = "f' has no simple zeros";
  LocateResult zf = locate_a_points(fp, 0.0, r, opts.roots);
  audit_points(audit.no_simple_zeros_of_fprime, zf.points, [](const APoint& p) { return p.multiplicity == 1; });

  audit.multiple_points_at_least_triple.name = "multiple points of f have multiplicity >= 3";
  std::vector<APoint> multiple;
  for (Complex c : value_grid) {
    LocateResult lc = locate_a_points(f, c, r, opts.roots);
    for (const auto& p : lc.points)
      if (p.multiplicity >= 2) multiple.push_back(p);
  }
  audit_points(audit.multiple_points_at_least_triple, multiple, [](const APoint& p) { return p.multiplicity < 3; });
  audit.multiple_points_at_least_triple.detail = "searched over " + std::to_string(value_grid.size()) + " values";

  audit.zeros_at_least_triple.name = "zeros of f have multiplicity >= 3";
  LocateResult z0 = locate_a_points(f, 0.0, r, opts.roots);
  audit_points(audit.zeros_at_least_triple, z0.points, [](const APoint& p) { return p.multiplicity < 3; });
  return audit;
}

}  // namespace valshare
