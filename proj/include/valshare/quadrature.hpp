#pragma once

#include <complex>
#include <functional>

namespace valshare::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  int evaluations = 0;
};

/// Adaptive trapezoid with a Richardson check on each panel (the
/// extrapolated value is Simpson's rule). [a, b] is split into `panels`
/// equal pieces first; `refine` may request extra splitting of a panel.
Result adaptive_trapezoid(const std::function<double(double)>& fn, double a, double b, double abs_tol,
                          int panels = 64, int max_depth = 40,
                          const std::function<int(double, double)>& refine = nullptr);

/// One Gauss–Kronrod (7, 15) panel of a complex integrand over [a, b].
struct GkPanel {
  std::complex<double> kronrod;
  std::complex<double> gauss;
};
GkPanel gauss_kronrod15(const std::function<std::complex<double>(double)>& fn, double a, double b);

}  // namespace valshare::quad
