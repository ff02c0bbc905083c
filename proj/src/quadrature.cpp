#include "valshare/quadrature.hpp"

#include <array>
#include <cmath>

namespace valshare::quad {

namespace {

struct PanelState {
  double a, b;
  double fa, fm, fb;
  double trap1, trap2;
};

void recurse(const std::function<double(double)>& fn, const PanelState& p, double tol, int depth, int max_depth,
             Result& out) {
  double m = 0.5 * (p.a + p.b);
  double lm = 0.5 * (p.a + m);
  double rm = 0.5 * (m + p.b);
  double flm = fn(lm);
  double frm = fn(rm);
  out.evaluations += 2;
  double h = p.b - p.a;
  // Trapezoid on 2 and 4 intervals; Richardson gives the Simpson value.
  double t2 = p.trap2;
  double t4 = 0.25 * h * (0.5 * p.fa + flm + p.fm + frm + 0.5 * p.fb);
  double richardson = t4 + (t4 - t2) / 3.0;
  double err = std::abs(t4 - t2) / 3.0;
  if (err <= tol || depth >= max_depth || !std::isfinite(err)) {
    if (depth >= max_depth && err > tol) out.converged = false;
    out.value += richardson;
    out.error += err;
    return;
  }
  PanelState left{p.a, m, p.fa, flm, p.fm, 0.0, 0.5 * (m - p.a) * (0.5 * p.fa + flm + 0.5 * p.fm)};
  PanelState right{m, p.b, p.fm, frm, p.fb, 0.0, 0.5 * (p.b - m) * (0.5 * p.fm + frm + 0.5 * p.fb)};
  recurse(fn, left, 0.5 * tol, depth + 1, max_depth, out);
  recurse(fn, right, 0.5 * tol, depth + 1, max_depth, out);
}

// Nodes and weights for the 15-point Kronrod rule and its embedded 7-point
// Gauss rule on [-1, 1].
constexpr std::array<double, 8> kXgk = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace

Result adaptive_trapezoid(const std::function<double(double)>& fn, double a, double b, double abs_tol, int panels,
                          int max_depth, const std::function<int(double, double)>& refine) {
  Result out;
  double width = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    double pa = a + i * width;
    double pb = (i + 1 == panels) ? b : pa + width;
    int pieces = refine ? std::max(1, refine(pa, pb)) : 1;
    double w = (pb - pa) / pieces;
    for (int j = 0; j < pieces; ++j) {
      double qa = pa + j * w;
      double qb = (j + 1 == pieces) ? pb : qa + w;
      double qm = 0.5 * (qa + qb);
      double fa = fn(qa);
      double fm = fn(qm);
      double fb = fn(qb);
      out.evaluations += 3;
      PanelState s{qa, qb, fa, fm, fb, 0.0, 0.5 * (qb - qa) * (0.5 * fa + fm + 0.5 * fb)};
      double tol = abs_tol * (qb - qa) / (b - a);
      recurse(fn, s, tol, 0, max_depth, out);
    }
  }
  return out;
}

GkPanel gauss_kronrod15(const std::function<std::complex<double>(double)>& fn, double a, double b) {
  double center = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  std::complex<double> fc = fn(center);
  std::complex<double> kronrod = fc * kWgk[7];
  std::complex<double> gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    double dx = half * kXgk[j];
    std::complex<double> f1 = fn(center - dx);
    std::complex<double> f2 = fn(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {kronrod * half, gauss * half};
}

}  // namespace valshare::quad
