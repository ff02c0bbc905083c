#pragma once

#include <string>
#include <vector>

#include "valshare/expsum.hpp"

namespace valshare {

struct Region {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;

  void validate() const;  // throws InvalidArgument
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  double diameter() const;
  Complex center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  bool contains(Complex z, double slack = 0.0) const;
  /// Distance from z (assumed inside) to the nearest edge.
  double inset(Complex z) const;
  Region shifted(double dre, double dim) const { return {re_min + dre, re_max + dre, im_min + dim, im_max + dim}; }
};

struct APoint {
  Complex location;
  Complex target;
  int multiplicity = 1;
  double residual = 0.0;  // |f(z) - a|
  Complex derivative_value;
};

struct RootOptions {
  double tol = 1e-12;  // residual bound, relative to max(1, |a|, Σ|cₖ e^{λₖ z}|)
  double isolation_size = 1e-2;
  double mult_radius = 1e-4;
  int max_depth = 24;
  int jitter_attempts = 3;
  double jitter = 1e-6;  // relative to the region diameter
  int threads = 0;       // 0: VALSHARE_THREADS or 1
};

struct LocateResult {
  std::vector<APoint> points;  // sorted by (Re, Im)
  long winding = 0;
  Region region;  // region actually used (after any jitter)
  std::vector<std::string> notes;
};

/// (1/2πi)∮ f'/(f−a) dz over the boundary of r.
long winding_count(const ExpSum& f, Complex a, const Region& r, int max_depth = 24);

/// Same count on the circle |z − center| = radius.
long circle_winding(const ExpSum& f, Complex a, Complex center, double radius, int max_depth = 24);

LocateResult locate_a_points(const ExpSum& f, Complex a, const Region& r, const RootOptions& opts = {});

/// Multiplicity of the a-point z0 by the circle test, cross-checked against
/// the first non-vanishing derivative.
int multiplicity_at(const ExpSum& f, Complex a, Complex z0, const RootOptions& opts = {});

/// log max(1, |a|, Σ|cₖ λₖ^k e^{λₖ z}|); the scale residuals are measured against.
double log_value_scale(const ExpSum& f, Complex a, Complex z, int k = 0);

/// log|f(z) − a| without overflow.
double log_abs_shifted(const ExpSum& f, Complex a, Complex z);

/// |f(z) − a| / |f'(z)|, the Newton estimate of the distance to the nearest a-point.
double newton_distance(const ExpSum& f, Complex a, Complex z);

bool point_less(const APoint& p, const APoint& q);

}  // namespace valshare
