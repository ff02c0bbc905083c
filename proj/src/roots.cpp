#include "valshare/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "valshare/error.hpp"
#include "valshare/parallel.hpp"
#include "valshare/quadrature.hpp"

namespace valshare {

namespace {

constexpr double kPi = std::numbers::pi;

// (f − a) and its derivatives, all multiplied by e^{−ls}.
struct Shifted {
  Complex g, g1, g2, g3;
  double ls = 0.0;
};

Shifted shifted_jet(const ExpSum& f, Complex a, Complex z, int order) {
  Jet j = f.jet(z, order);
  Shifted s;
  double la = std::abs(a) > 0.0 ? std::log(std::abs(a)) : -std::numeric_limits<double>::infinity();
  double base = f.is_zero() ? la : j.log_scale;
  double L = std::max(base, la);
  if (!std::isfinite(L)) L = 0.0;
  double w = f.is_zero() ? 0.0 : std::exp(j.log_scale - L);
  s.ls = L;
  s.g = j.d[0] * w - (std::abs(a) > 0.0 ? a * std::exp(-L) : Complex{});
  s.g1 = j.d[1] * w;
  s.g2 = j.d[2] * w;
  s.g3 = j.d[3] * w;
  return s;
}

double log_sum_abs(const ExpSum& f, Complex z, int k) {
  double m = -std::numeric_limits<double>::infinity();
  std::vector<double> parts;
  parts.reserve(f.size());
  for (const auto& t : f.terms()) {
    Complex c = t.coeff.to_complex();
    Complex lam = t.freq.to_complex();
    if (k > 0 && lam == Complex{}) continue;
    double p = std::log(std::abs(c)) + k * std::log(std::abs(lam)) + (lam * z).real();
    parts.push_back(p);
    m = std::max(m, p);
  }
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double p : parts) s += std::exp(p - m);
  return m + std::log(s);
}

double max_abs_freq(const ExpSum& f) {
  double m = 0.0;
  for (const auto& t : f.terms()) m = std::max(m, std::abs(t.freq.to_complex()));
  return m;
}

double wrap_pi(double x) {
  x = std::remainder(x, 2.0 * kPi);
  return x;
}

// Accumulates the change of arg(f − a) along a parametrised path, using
// Gauss–Kronrod panels of f'/(f − a) that are cross-checked against the
// endpoint logarithms. A panel is trusted only when both agree and the
// change of argument is below π/2, so the principal differences add up to
// the true winding.
class ArgTracker {
 public:
  ArgTracker(const ExpSum& f, Complex a, double too_close, int max_depth)
      : f_(f), a_(a), too_close_(too_close), max_depth_(max_depth) {}

  template <class ZFn, class DzFn>
  double run(ZFn zf, DzFn dzf, double t0, double t1, int panels) {
    double total = 0.0;
    double h = (t1 - t0) / panels;
    double ta = t0;
    Complex La = log_at(zf(ta));
    for (int i = 0; i < panels; ++i) {
      double tb = (i + 1 == panels) ? t1 : t0 + (i + 1) * h;
      Complex Lb = log_at(zf(tb));
      total += panel(zf, dzf, ta, tb, La, Lb, 0);
      ta = tb;
      La = Lb;
    }
    return total;
  }

 private:
  Complex log_at(Complex z) {
    Shifted s = shifted_jet(f_, a_, z, 1);
    check_distance(z, s);
    return std::log(s.g) + s.ls;
  }

  void check_distance(Complex z, const Shifted& s) const {
    double ag = std::abs(s.g);
    double ad = std::abs(s.g1);
    if (ag == 0.0 || (ad > 0.0 && ag / ad < too_close_)) {
      std::ostringstream os;
      os << "a-point within " << too_close_ << " of the contour near " << z.real() << (z.imag() < 0 ? "" : "+")
         << z.imag() << "i";
      throw PointError(ErrorKind::BoundaryTooClose, os.str(), z);
    }
  }

  template <class ZFn, class DzFn>
  double panel(ZFn& zf, DzFn& dzf, double ta, double tb, Complex La, Complex Lb, int depth) {
    auto integrand = [&](double t) {
      Complex z = zf(t);
      Shifted s = shifted_jet(f_, a_, z, 1);
      check_distance(z, s);
      return s.g1 / s.g * dzf(t);
    };
    quad::GkPanel gk = quad::gauss_kronrod15(integrand, ta, tb);
    Complex K = gk.kronrod;
    Complex delta = Lb - La;
    delta.imag(wrap_pi(delta.imag()));
    bool ok = std::isfinite(K.real()) && std::isfinite(K.imag()) &&
              std::abs(K - gk.gauss) <= 1e-4 * std::max(1.0, std::abs(K)) &&
              std::abs(K.real() - delta.real()) <= 1e-3 * std::max(1.0, std::abs(delta.real())) &&
              std::abs(K.imag() - delta.imag()) <= 1e-3 && std::abs(K.imag()) < kPi / 2;
    if (ok) return delta.imag();
    if (depth >= max_depth_) {
      Complex z = zf(0.5 * (ta + tb));
      throw PointError(ErrorKind::QuadratureNonConvergent, "contour quadrature did not settle", z);
    }
    double tm = 0.5 * (ta + tb);
    Complex Lm = log_at(zf(tm));
    return panel(zf, dzf, ta, tm, La, Lm, depth + 1) + panel(zf, dzf, tm, tb, Lm, Lb, depth + 1);
  }

  const ExpSum& f_;
  Complex a_;
  double too_close_;
  int max_depth_;
};

long snap_winding(double total_arg, Complex where) {
  double w = total_arg / (2.0 * kPi);
  double n = std::round(w);
  if (std::abs(w - n) > 0.25)
    throw PointError(ErrorKind::QuadratureNonConvergent, "winding number not close to an integer", where);
  return static_cast<long>(n);
}

int initial_panels(double length, double freq) {
  double p = std::ceil(length * freq);
  return static_cast<int>(std::clamp(p, 4.0, 8192.0));
}

constexpr double kSplits[] = {0.5137, 0.4381, 0.6123, 0.3897, 0.5611, 0.4629};
constexpr int kSplitCount = 6;

struct Box {
  Region r;
  long count;
};

Complex grid_min(const ExpSum& f, Complex a, const Region& r) {
  Region cur = r;
  Complex best = cur.center();
  for (int round = 0; round < 4; ++round) {
    double best_v = std::numeric_limits<double>::infinity();
    const int n = 9;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        Complex z{cur.re_min + cur.width() * i / n, cur.im_min + cur.height() * j / n};
        double v = log_abs_shifted(f, a, z);
        if (v < best_v) {
          best_v = v;
          best = z;
        }
      }
    }
    double hw = cur.width() / n;
    double hh = cur.height() / n;
    cur = Region{best.real() - hw, best.real() + hw, best.imag() - hh, best.imag() + hh};
  }
  return best;
}

// Newton on q = (f − a)/f', which has a simple zero at an a-point of any
// multiplicity. Runs until the step stops shrinking.
std::optional<Complex> newton_q(const ExpSum& f, Complex a, Complex z, const Region& box) {
  double prev = std::numeric_limits<double>::infinity();
  Complex c = box.center();
  double diam = box.diameter();
  for (int it = 0; it < 100; ++it) {
    Shifted s = shifted_jet(f, a, z, 2);
    if (s.g == Complex{}) return z;
    Complex den = s.g1 * s.g1 - s.g * s.g2;
    if (den == Complex{}) return std::nullopt;
    Complex step = s.g * s.g1 / den;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
    z -= step;
    if (std::abs(z - c) > 2.0 * diam) return std::nullopt;
    double as = std::abs(step);
    if (as <= 1e-15 * std::max(1.0, std::abs(z))) return z;
    if (it > 6 && as >= prev) return z;
    prev = as;
  }
  return z;
}

Complex polish(const ExpSum& f, Complex z, int m) {
  ExpSum h = derivative(f, m - 1);
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    Jet j = h.jet(z, 1);
    if (j.d[1] == Complex{}) break;
    Complex step = j.d[0] / j.d[1];
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    double as = std::abs(step);
    if (as >= prev) break;
    z -= step;
    if (as <= 1e-16 * std::max(1.0, std::abs(z))) break;
    prev = as;
  }
  return z;
}

struct Isolation {
  std::optional<APoint> point;
  std::string note;
};

Isolation try_isolate(const ExpSum& f, Complex a, const Box& box, const RootOptions& opts) {
  Isolation out;
  auto z = newton_q(f, a, box.r.center(), box.r);
  if (!z || !box.r.contains(*z)) {
    z = newton_q(f, a, grid_min(f, a, box.r), box.r);
    out.note = "Newton from box centre failed; restarted from grid minimum";
  }
  if (!z || !box.r.contains(*z)) return out;
  int m = 0;
  try {
    m = multiplicity_at(f, a, *z, opts);
  } catch (const Error&) {
    return out;
  }
  Complex p = *z;
  if (m > 1) {
    Complex q = polish(f, p, m);
    if (std::abs(q - p) < opts.mult_radius && box.r.contains(q) &&
        log_abs_shifted(f, a, q) <= log_abs_shifted(f, a, p) + std::log(2.0))
      p = q;
  }
  double lr = log_abs_shifted(f, a, p);
  if (lr > std::log(opts.tol) + log_value_scale(f, a, p)) return out;
  APoint ap;
  ap.location = p;
  ap.target = a;
  ap.multiplicity = m;
  ap.residual = std::exp(lr);
  Shifted s = shifted_jet(f, a, p, 1);
  ap.derivative_value = s.g1 * std::exp(s.ls);
  out.point = ap;
  return out;
}

std::vector<Box> split(const ExpSum& f, Complex a, const Box& box, const RootOptions& opts) {
  const Region& r = box.r;
  for (int k = 0; k < kSplitCount; ++k) {
    double xm = r.re_min + kSplits[k] * r.width();
    double ym = r.im_min + kSplits[(k + 3) % kSplitCount] * r.height();
    Region kids[4] = {{r.re_min, xm, r.im_min, ym},
                      {xm, r.re_max, r.im_min, ym},
                      {r.re_min, xm, ym, r.im_max},
                      {xm, r.re_max, ym, r.im_max}};
    std::vector<Box> out;
    long sum = 0;
    try {
      for (const auto& kr : kids) {
        long c = winding_count(f, a, kr, opts.max_depth);
        sum += c;
        if (c != 0) out.push_back({kr, c});
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryTooClose && e.kind() != ErrorKind::QuadratureNonConvergent) throw;
      continue;
    }
    if (sum == box.count) return out;
  }
  std::ostringstream os;
  os << "could not subdivide [" << r.re_min << ", " << r.re_max << "] x [" << r.im_min << ", " << r.im_max
     << "] with conserved counts";
  throw PointError(ErrorKind::NumericAmbiguity, os.str(), r.center());
}

}  // namespace

void Region::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max) || !std::isfinite(re_min) || !std::isfinite(re_max) ||
      !std::isfinite(im_min) || !std::isfinite(im_max))
    throw Error(ErrorKind::InvalidArgument, "region needs re_min < re_max and im_min < im_max");
}

double Region::diameter() const { return std::hypot(width(), height()); }

bool Region::contains(Complex z, double slack) const {
  return z.real() >= re_min - slack && z.real() <= re_max + slack && z.imag() >= im_min - slack &&
         z.imag() <= im_max + slack;
}

double Region::inset(Complex z) const {
  return std::min({z.real() - re_min, re_max - z.real(), z.imag() - im_min, im_max - z.imag()});
}

double log_value_scale(const ExpSum& f, Complex a, Complex z, int k) {
  double s = std::max(0.0, log_sum_abs(f, z, k));
  if (k == 0 && std::abs(a) > 0.0) s = std::max(s, std::log(std::abs(a)));
  return s;
}

double log_abs_shifted(const ExpSum& f, Complex a, Complex z) {
  Shifted s = shifted_jet(f, a, z, 0);
  return std::log(std::abs(s.g)) + s.ls;
}

double newton_distance(const ExpSum& f, Complex a, Complex z) {
  Shifted s = shifted_jet(f, a, z, 1);
  if (s.g == Complex{}) return 0.0;
  if (s.g1 == Complex{}) return std::numeric_limits<double>::infinity();
  return std::abs(s.g) / std::abs(s.g1);
}

// Real parts closer than the locator's accuracy count as equal, so that
// e.g. the points of e^z = 1 come out as -2πi, 0, 2πi.
bool point_less(const APoint& p, const APoint& q) {
  double pr = p.location.real();
  double qr = q.location.real();
  if (std::abs(pr - qr) > 1e-9 * std::max({1.0, std::abs(pr), std::abs(qr)})) return pr < qr;
  return p.location.imag() < q.location.imag();
}

long winding_count(const ExpSum& f, Complex a, const Region& r, int max_depth) {
  r.validate();
  ArgTracker tracker(f, a, 1e-7 * r.diameter(), max_depth);
  double freq = max_abs_freq(f);
  Complex corners[4] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max}, {r.re_min, r.im_max}};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    Complex p0 = corners[e];
    Complex p1 = corners[(e + 1) % 4];
    Complex d = p1 - p0;
    total += tracker.run([&](double t) { return p0 + t * d; }, [&](double) { return d; }, 0.0, 1.0,
                         initial_panels(std::abs(d), freq));
  }
  return snap_winding(total, r.center());
}

long circle_winding(const ExpSum& f, Complex a, Complex center, double radius, int max_depth) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "circle radius must be positive");
  ArgTracker tracker(f, a, 2e-7 * radius, max_depth);
  double freq = max_abs_freq(f);
  auto zf = [&](double t) { return center + radius * std::polar(1.0, t); };
  auto dzf = [&](double t) { return Complex(0.0, radius) * std::polar(1.0, t); };
  int panels = std::max(8, initial_panels(2.0 * kPi * radius, freq));
  return snap_winding(tracker.run(zf, dzf, 0.0, 2.0 * kPi, panels), center);
}

int multiplicity_at(const ExpSum& f, Complex a, Complex z0, const RootOptions& opts) {
  double scale = log_value_scale(f, a, z0);
  if (log_abs_shifted(f, a, z0) > std::log(1e-9) + scale)
    throw PointError(ErrorKind::NotAnAPoint, "|f(z0) - a| is not small at z0", z0);

  int by_derivative = 0;
  ExpSum d = f;
  for (int k = 1; k <= 16; ++k) {
    d = differentiate(d);
    if (d.is_zero()) break;
    Jet j = d.jet(z0, 0);
    double lhs = std::log(std::abs(j.d[0])) + j.log_scale;
    double rhs = std::log(1e-6) + log_sum_abs(f, z0, k);
    if (lhs > rhs) {
      by_derivative = k;
      break;
    }
  }
  if (by_derivative == 0)
    throw PointError(ErrorKind::AmbiguousMultiplicity, "f - a has no non-vanishing derivative at z0", z0);

  const double factors[] = {1.0, 1e-1, 1e-2, 1e-3, 10.0, 100.0};
  std::vector<long> seen;
  for (double fac : factors) {
    double rho = opts.mult_radius * fac;
    long c;
    try {
      c = circle_winding(f, a, z0, rho, opts.max_depth);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryTooClose && e.kind() != ErrorKind::QuadratureNonConvergent) throw;
      continue;
    }
    if (c == by_derivative) return static_cast<int>(c);
    seen.push_back(c);
  }
  std::ostringstream os;
  os << "derivative test gives " << by_derivative << " but circle counts were";
  for (long c : seen) os << " " << c;
  throw PointError(ErrorKind::AmbiguousMultiplicity, os.str(), z0);
}

LocateResult locate_a_points(const ExpSum& f, Complex a, const Region& r, const RootOptions& opts) {
  r.validate();
  if (!(opts.isolation_size > 0.0) || !(opts.mult_radius > 0.0) || !(opts.tol > 0.0))
    throw Error(ErrorKind::InvalidArgument, "root options must be positive");
  LocateResult result;
  double diam = r.diameter();

  std::optional<long> outer;
  Region used = r;
  for (int attempt = 0; attempt <= opts.jitter_attempts; ++attempt) {
    double sign = (attempt % 2 == 1) ? 1.0 : -1.0;
    double shift = attempt == 0 ? 0.0 : sign * opts.jitter * diam * attempt;
    used = r.shifted(shift, 0.71 * shift);
    try {
      outer = winding_count(f, a, used, opts.max_depth);
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BoundaryTooClose && e.kind() != ErrorKind::QuadratureNonConvergent) throw;
      if (attempt == opts.jitter_attempts) throw;
      std::ostringstream os;
      os << "outer contour rejected (" << to_string(e.kind()) << "); retrying with shifted region";
      result.notes.push_back(os.str());
    }
  }
  result.region = used;
  result.winding = *outer;

  int threads = resolve_threads(opts.threads);
  std::vector<Box> level;
  if (*outer != 0) level.push_back({used, *outer});
  while (!level.empty()) {
    std::vector<std::vector<Box>> kids(level.size());
    std::vector<std::optional<APoint>> pts(level.size());
    std::vector<std::string> notes(level.size());
    parallel_for(level.size(), threads, [&](std::size_t i) {
      const Box& b = level[i];
      double size = std::max(b.r.width(), b.r.height());
      if (size <= opts.isolation_size) {
        Isolation iso = try_isolate(f, a, b, opts);
        notes[i] = iso.note;
        if (iso.point && iso.point->multiplicity == b.count) {
          pts[i] = iso.point;
          return;
        }
        if (size < 1e-10 * (1.0 + std::abs(b.r.center())))
          throw PointError(ErrorKind::NumericAmbiguity, "a-point cluster could not be isolated", b.r.center());
      }
      kids[i] = split(f, a, b, opts);
    });
    std::vector<Box> next;
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (!notes[i].empty()) result.notes.push_back(notes[i]);
      if (pts[i]) result.points.push_back(*pts[i]);
      for (auto& k : kids[i]) next.push_back(k);
    }
    level = std::move(next);
  }
  std::sort(result.points.begin(), result.points.end(), point_less);
  long total = 0;
  for (const auto& p : result.points) total += p.multiplicity;
  if (total != result.winding)
    throw Error(ErrorKind::NumericAmbiguity, "located multiplicities do not add up to the outer winding count");
  return result;
}

}  // namespace valshare
