#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "valshare/error.hpp"
#include "valshare/roots.hpp"

using namespace valshare;

namespace {

constexpr double kPi = std::numbers::pi;

// zeros of c1 e^{l1 z} + c2 e^{l2 z}: e^{(l1-l2)z} = -c2/c1
std::vector<Complex> two_term_zeros(Complex c1, Complex l1, Complex c2, Complex l2, const Region& r) {
  std::vector<Complex> out;
  Complex d = l1 - l2;
  Complex base = std::log(-c2 / c1);
  for (int k = -400; k <= 400; ++k) {
    Complex z = (base + Complex(0, 2 * kPi * k)) / d;
    if (r.contains(z, 0.0)) out.push_back(z);
  }
  return out;
}

bool near_boundary(const std::vector<Complex>& zs, const Region& r, double eps) {
  for (Complex z : zs)
    if (r.inset(z) < eps) return true;
  return false;
}

}  // namespace

TEST_CASE("e^z = 1 has the points 2 pi i k") {
  LocateResult loc = locate_a_points(ExpSum::exponential(1, 1), 1.0, Region{-8, 8, -8, 8});
  REQUIRE(loc.points.size() == 3);
  CHECK(loc.winding == 3);
  for (int k = -1; k <= 1; ++k) {
    const APoint& p = loc.points[k + 1];
    CHECK(std::abs(p.location - Complex(0, 2 * kPi * k)) < 1e-12);
    CHECK(p.multiplicity == 1);
    CHECK(std::abs(p.derivative_value - 1.0) < 1e-12);
  }
}

TEST_CASE("zeros of sin z are k pi, all simple") {
  Scalar i = Scalar::imaginary_unit();
  ExpSum s = ExpSum::normalize({{-i * Scalar::rational(1, 2), i}, {i * Scalar::rational(1, 2), -i}});
  LocateResult loc = locate_a_points(s, 0.0, Region{-10, 10, -3, 3});
  REQUIRE(loc.points.size() == 7);
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(std::abs(loc.points[k].location - Complex(kPi * (int(k) - 3), 0)) < 1e-11);
    CHECK(loc.points[k].multiplicity == 1);
  }
}

TEST_CASE("multiplicities of powers of e^z - 1") {
  ExpSum base = ExpSum::exponential(1, 1) - ExpSum::constant(1);
  ExpSum g = base;
  for (int m = 1; m <= 3; ++m) {
    CAPTURE(m);
    LocateResult loc = locate_a_points(g, 0.0, Region{-1, 1.3, -7, 7.5});
    REQUIRE(loc.points.size() == 3);
    for (const auto& p : loc.points) CHECK(p.multiplicity == m);
    CHECK(loc.winding == 3 * m);
    CHECK(multiplicity_at(g, 0.0, Complex(0, 2 * kPi)) == m);
    g = g * base;
  }
}

TEST_CASE("random two-term sums: located zeros match the closed form") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  int tested = 0;
  for (int k = 0; k < 60 && tested < 25; ++k) {
    Scalar c1 = Scalar::rational(num(rng), den(rng)), c2 = Scalar::rational(num(rng), den(rng));
    Scalar l1 = Scalar::rational(num(rng), den(rng)), l2 = Scalar::rational(num(rng), den(rng));
    if (c1.is_zero() || c2.is_zero() || l1 == l2) continue;
    ExpSum f = ExpSum::normalize({{c1, l1}, {c2, l2}});
    double x = u(rng), y = u(rng);
    Region r{x - 3, x + 3, y - 6, y + 6};
    auto want = two_term_zeros(c1.to_complex(), l1.to_complex(), c2.to_complex(), l2.to_complex(), r);
    if (near_boundary(want, r, 1e-3)) continue;
    ++tested;
    LocateResult loc = locate_a_points(f, 0.0, r);
    REQUIRE(loc.points.size() == want.size());
    CHECK(loc.winding == long(want.size()));
    for (Complex z : want) {
      double best = 1e300;
      for (const auto& p : loc.points) best = std::min(best, std::abs(p.location - z));
      CHECK(best < 1e-9);
    }
  }
  CHECK(tested >= 20);
}

TEST_CASE("multiplicity sums equal the winding count") {
  Scalar i = Scalar::imaginary_unit();
  std::vector<ExpSum> fs = {
      ExpSum::normalize({{Scalar(1), Scalar(2) * i}, {Scalar(3), Scalar(-1)}, {Scalar(-2), Scalar(0)}}),
      pow(ExpSum::exponential(1, i) - ExpSum::constant(1), 2),
      ExpSum::normalize({{Scalar(1), Scalar::rational(2, 3)}, {Scalar(2), Scalar::rational(-1, 3)}, {Scalar(1), Scalar(1)}}),
  };
  for (const auto& f : fs) {
    LocateResult loc = locate_a_points(f, 0.5, Region{-4.1, 4.3, -5.2, 5.05});
    long sum = 0;
    for (const auto& p : loc.points) sum += p.multiplicity;
    CHECK(sum == loc.winding);
    for (const auto& p : loc.points) CHECK(std::abs(f(p.location) - 0.5) < 1e-9);
  }
}

TEST_CASE("results are sorted and independent of thread count") {
  ExpSum f = ExpSum::normalize({{Scalar(1), Scalar(2) * Scalar::imaginary_unit()}, {Scalar(1), Scalar(0)}});
  RootOptions one, four;
  one.threads = 1;
  four.threads = 4;
  Region r{-2, 2, -30, 30};
  auto a = locate_a_points(f, 2.0, r, one), b = locate_a_points(f, 2.0, r, four);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t k = 0; k < a.points.size(); ++k) CHECK(a.points[k].location == b.points[k].location);
  CHECK(std::is_sorted(a.points.begin(), a.points.end(), point_less));
}

TEST_CASE("a point on the boundary is handled by jitter or reported") {
  ExpSum f = ExpSum::exponential(1, 1);
  Region r{0.0, 1.0, -1.0, 1.0};  // e^0 = 1 sits on the left edge
  RootOptions strict;
  strict.jitter_attempts = 0;
  CHECK_THROWS_AS(locate_a_points(f, 1.0, r, strict), PointError);
  LocateResult loc = locate_a_points(f, 1.0, r);
  CHECK_FALSE(loc.notes.empty());
  CHECK(loc.points.size() <= 1);
}

TEST_CASE("circle winding counts zeros inside the disk") {
  ExpSum f = ExpSum::exponential(1, 1);
  CHECK(circle_winding(f, 1.0, 0.0, 7.0) == 3);
  CHECK(circle_winding(f, 1.0, 0.0, 5.0) == 1);
  CHECK(circle_winding(f, 1.0, Complex(0, 3.1), 0.5) == 0);
}

TEST_CASE("invalid regions are rejected") {
  CHECK_THROWS_AS(locate_a_points(ExpSum::exponential(1, 1), 1.0, Region{1, 0, 0, 1}), Error);
}

TEST_CASE("a nonzero constant has no zeros") {
  LocateResult loc = locate_a_points(ExpSum::constant(1), 0.0, Region{-1, 1, -1, 1});
  CHECK(loc.points.empty());
  CHECK(loc.winding == 0);
}

TEST_CASE("newton distance estimates the gap to the root") {
  ExpSum f = ExpSum::exponential(1, 1);
  CHECK(newton_distance(f, 1.0, Complex(1e-6, 0)) == doctest::Approx(1e-6).epsilon(1e-5));
}
