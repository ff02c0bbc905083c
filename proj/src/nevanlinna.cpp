#include "valshare/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "valshare/error.hpp"
#include "valshare/format.hpp"
#include "valshare/parallel.hpp"
#include "valshare/quadrature.hpp"

namespace valshare {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOnCircle = 1e-9;

Complex on_circle(double r, double theta) { return std::polar(r, theta); }

// Panels where f − a gets small relative to its scale are pre-split, since
// log|f − a| has a logarithmic spike there.
std::function<int(double, double)> near_zero_refiner(const ExpSum& f, Complex a, double r) {
  return [&f, a, r](double ta, double tb) {
    double worst = 0.0;
    for (double t : {ta, 0.5 * (ta + tb), tb}) {
      Complex z = on_circle(r, t);
      worst = std::min(worst, log_abs_shifted(f, a, z) - log_value_scale(f, a, z));
    }
    return worst < std::log(1e-3) ? 16 : 1;
  };
}

double circle_mean(const std::function<double(double)>& fn, const NevOptions& opts,
                   const std::function<int(double, double)>& refine) {
  quad::Result q = quad::adaptive_trapezoid(fn, 0.0, kTwoPi, opts.abs_tol * kTwoPi, opts.panels, 40, refine);
  return q.value / kTwoPi;
}

void guard(const ExpSum& f, Complex a, Complex z, ErrorKind kind) {
  if (newton_distance(f, a, z) < kOnCircle) throw PointError(kind, "a-point on the integration circle", z);
}

// Runs fn(r'), nudging r' away from r when the circle passes through an
// a-point.
template <class Fn>
double with_radius_jitter(double r, int attempts, Fn fn) {
  for (int k = 0;; ++k) {
    double sign = (k % 2 == 1) ? 1.0 : -1.0;
    double rr = k == 0 ? r : r * (1.0 + sign * 1e-7 * k);
    try {
      return fn(rr);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::APointOnCircle || k >= attempts) throw;
    }
  }
}

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
}

}  // namespace

double proximity(const ExpSum& f, double r, std::optional<Complex> a, const NevOptions& opts) {
  check_radius(r);
  if (!a) {
    if (f.is_zero()) return 0.0;
    return circle_mean([&](double t) { return std::max(0.0, log_abs_shifted(f, 0.0, on_circle(r, t))); }, opts,
                       nullptr);
  }
  Complex av = *a;
  return with_radius_jitter(r, opts.jitter_attempts, [&](double rr) {
    return circle_mean(
        [&](double t) {
          Complex z = on_circle(rr, t);
          guard(f, av, z, ErrorKind::APointOnCircle);
          return std::max(0.0, -log_abs_shifted(f, av, z));
        },
        opts, near_zero_refiner(f, av, rr));
  });
}

CountingResult counting_from(const std::vector<APoint>& inventory, double r) {
  CountingResult out;
  for (const auto& p : inventory) {
    double d = std::abs(p.location);
    if (d > r) continue;
    out.points.push_back(p);
    out.n += p.multiplicity;
    // a-points at the origin enter as n(0)·log r
    double w = d < 1e-12 ? std::log(r) : std::log(r / d);
    out.N += p.multiplicity * w;
    out.N_bar += w;
  }
  return out;
}

CountingResult counting(const ExpSum& f, Complex a, double r, const NevOptions& opts) {
  check_radius(r);
  double s = r * 1.001;
  LocateResult loc = locate_a_points(f, a, Region{-s, s, -s, s}, opts.roots);
  return counting_from(loc.points, r);
}

double characteristic(const ExpSum& f, double r, const NevOptions& opts) { return proximity(f, r, std::nullopt, opts); }

double jensen_check(const ExpSum& f, double r, const NevOptions& opts) {
  check_radius(r);
  if (f.is_zero() || log_abs_shifted(f, 0.0, 0.0) < std::log(1e-12) + log_value_scale(f, 0.0, 0.0))
    throw PointError(ErrorKind::ZeroAtOrigin, "f(0) = 0; shift the function first", 0.0);
  CountingResult c = counting(f, 0.0, r, opts);
  for (const auto& p : c.points)
    if (std::abs(std::abs(p.location) - r) <= kOnCircle * std::max(1.0, r))
      throw PointError(ErrorKind::ZeroOnCircle, "zero of f on the circle", p.location);
  double mean = circle_mean(
      [&](double t) {
        Complex z = on_circle(r, t);
        guard(f, 0.0, z, ErrorKind::ZeroOnCircle);
        return log_abs_shifted(f, 0.0, z);
      },
      opts, near_zero_refiner(f, 0.0, r));
  double sum = 0.0;
  for (const auto& p : c.points)
    if (std::abs(p.location) < r) sum += p.multiplicity * std::log(r / std::abs(p.location));
  return std::abs(mean - log_abs_shifted(f, 0.0, 0.0) - sum);
}

double log_derivative_proximity(const ExpSum& f, double r, const NevOptions& opts) {
  check_radius(r);
  if (f.is_zero()) throw Error(ErrorKind::InvalidArgument, "f'/f is undefined for f = 0");
  return with_radius_jitter(r, opts.jitter_attempts, [&](double rr) {
    return circle_mean(
        [&](double t) {
          Complex z = on_circle(rr, t);
          guard(f, 0.0, z, ErrorKind::APointOnCircle);
          Jet j = f.jet(z, 1);
          double v = std::log(std::abs(j.d[1])) - std::log(std::abs(j.d[0]));
          return std::max(0.0, v);
        },
        opts, near_zero_refiner(f, 0.0, rr));
  });
}

double order_estimate(const ExpSum& f, const std::vector<double>& radii, const NevOptions& opts) {
  if (radii.size() < 4) throw Error(ErrorKind::InvalidArgument, "order estimate needs at least 4 radii");
  auto [lo, hi] = std::minmax_element(radii.begin(), radii.end());
  if (!(*lo > 0.0) || *hi < 10.0 * *lo * (1.0 - 1e-12))
    throw Error(ErrorKind::InvalidArgument, "radii must be positive and span at least one decade");
  std::vector<double> T(radii.size());
  parallel_for(radii.size(), resolve_threads(opts.roots.threads),
               [&](std::size_t i) { T[i] = characteristic(f, radii[i], opts); });
  auto [tlo, thi] = std::minmax_element(T.begin(), T.end());
  if (!(*tlo > 0.0) || *thi - *tlo <= 1e-9 * std::max(1.0, *thi))
    throw Error(ErrorKind::DegenerateFit, "T(r) is constant or zero over the radii");
  double n = static_cast<double>(radii.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double x = std::log(radii[i]);
    double y = std::log(T[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DefectEstimate defect_estimate(const ExpSum& f, Complex a, double r, const NevOptions& opts) {
  double T = characteristic(f, r, opts);
  if (!(T > 10.0)) {
    std::ostringstream os;
    os << "T(" << r << ") = " << T << " is not above 10";
    throw Error(ErrorKind::CharacteristicTooSmall, os.str());
  }
  CountingResult c = counting(f, a, r, opts);
  return {a, std::clamp(1.0 - c.N_bar / T, 0.0, 1.0), r};
}

NevanlinnaProfile profile(const ExpSum& f, const std::vector<Complex>& values, const std::vector<double>& radii,
                          const NevOptions& opts) {
  if (radii.empty()) throw Error(ErrorKind::InvalidArgument, "no radii given");
  for (double r : radii) check_radius(r);
  NevanlinnaProfile p;
  p.radii = radii;
  p.m.resize(radii.size());
  int threads = resolve_threads(opts.roots.threads);
  parallel_for(radii.size(), threads, [&](std::size_t i) { p.m[i] = proximity(f, radii[i], std::nullopt, opts); });
  p.T = p.m;
  double rmax = *std::max_element(radii.begin(), radii.end());
  double s = rmax * 1.001;
  p.values.resize(values.size());
  for (std::size_t v = 0; v < values.size(); ++v) {
    LocateResult loc = locate_a_points(f, values[v], Region{-s, s, -s, s}, opts.roots);
    p.values[v].a = values[v];
    for (double r : radii) p.values[v].counts.push_back(counting_from(loc.points, r));
  }
  return p;
}

std::string profile_csv(const NevanlinnaProfile& p) {
  std::ostringstream os;
  os << "r,a_re,a_im,m,N,N_bar,T,n\n";
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    if (p.values.empty()) os << format_double(p.radii[i]) << ",,," << format_double(p.m[i]) << ",,," << format_double(p.T[i]) << ",\n";
    for (const auto& v : p.values) {
      const CountingResult& c = v.counts[i];
      os << format_double(p.radii[i]) << ',' << format_double(v.a.real()) << ',' << format_double(v.a.imag()) << ','
         << format_double(p.m[i]) << ',' << format_double(c.N) << ',' << format_double(c.N_bar) << ','
         << format_double(p.T[i]) << ',' << c.n << '\n';
    }
  }
  return os.str();
}

}  // namespace valshare
