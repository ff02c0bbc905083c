#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valshare/expsum.hpp"
#include "valshare/roots.hpp"

namespace valshare {

struct NevOptions {
  double abs_tol = 1e-8;
  int panels = 128;
  int jitter_attempts = 3;
  RootOptions roots;
};

struct CountingResult {
  long n = 0;
  double N = 0.0;
  double N_bar = 0.0;
  std::vector<APoint> points;  // a-points in |z| ≤ r
};

struct DefectEstimate {
  Complex a;
  double theta_hat = 0.0;
  double r_used = 0.0;
};

struct ValueProfile {
  Complex a;
  std::vector<CountingResult> counts;  // one per radius
};

struct NevanlinnaProfile {
  std::vector<double> radii;
  std::vector<double> m;  // m(r, f)
  std::vector<double> T;
  std::vector<ValueProfile> values;
};

/// m(r, f) when a is absent, m(r, 1/(f − a)) otherwise.
double proximity(const ExpSum& f, double r, std::optional<Complex> a = std::nullopt, const NevOptions& opts = {});

CountingResult counting(const ExpSum& f, Complex a, double r, const NevOptions& opts = {});

/// Counting data at radius r from an inventory located on a larger square.
CountingResult counting_from(const std::vector<APoint>& inventory, double r);

double characteristic(const ExpSum& f, double r, const NevOptions& opts = {});

/// |mean of log|f| on |z| = r − log|f(0)| − Σ mult·log(r/|zₖ|)|.
double jensen_check(const ExpSum& f, double r, const NevOptions& opts = {});

/// m(r, f'/f).
double log_derivative_proximity(const ExpSum& f, double r, const NevOptions& opts = {});

/// Least-squares slope of log T(r) against log r.
double order_estimate(const ExpSum& f, const std::vector<double>& radii, const NevOptions& opts = {});

DefectEstimate defect_estimate(const ExpSum& f, Complex a, double r, const NevOptions& opts = {});

NevanlinnaProfile profile(const ExpSum& f, const std::vector<Complex>& values, const std::vector<double>& radii,
                          const NevOptions& opts = {});

/// Rows r,a_re,a_im,m,N,N_bar,T,n; one per (radius, value), radius-major.
/// Without values there is one row per radius with the value columns empty.
std::string profile_csv(const NevanlinnaProfile& p);

}  // namespace valshare
