#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "valshare/error.hpp"
#include "valshare/families.hpp"
#include "valshare/nevanlinna.hpp"

using namespace valshare;

namespace {

constexpr double kPi = std::numbers::pi;

// plain midpoint rule, many nodes; the kinks of log+ only cost O(1/n^2)
double midpoint_mean_log_plus(const ExpSum& f, double r, int n = 400000) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) {
    double t = 2 * kPi * (k + 0.5) / n;
    s += std::max(0.0, std::log(std::abs(f(std::polar(r, t)))));
  }
  return s / n;
}

ExpSum sin2z_plus(long c) {
  Scalar i = Scalar::imaginary_unit();
  std::vector<Term> t = {{-i * Scalar::rational(1, 2), Scalar(2) * i}, {i * Scalar::rational(1, 2), Scalar(-2) * i}};
  if (c) t.push_back({Scalar(c), Scalar()});
  return ExpSum::normalize(t);
}

}  // namespace

TEST_CASE("proximity of e^z is r / pi") {
  ExpSum e = ExpSum::exponential(1, 1);
  for (double r : {0.5, 1.0, 5.0, 20.0, 100.0}) CHECK(proximity(e, r) == doctest::Approx(r / kPi).epsilon(1e-7));
}

TEST_CASE("characteristic matches an independent quadrature") {
  ExpSum f = thm2prime_family(1, 1);
  for (double r : {3.0, 20.0, 60.0}) {
    CAPTURE(r);
    CHECK(characteristic(f, r) == doctest::Approx(midpoint_mean_log_plus(f, r)).epsilon(1e-6));
  }
  ExpSum g = sin2z_plus(2);
  CHECK(characteristic(g, 7.0) == doctest::Approx(midpoint_mean_log_plus(g, 7.0)).epsilon(1e-6));
}

TEST_CASE("counting e^z = 1 against the explicit points") {
  CountingResult c = counting(ExpSum::exponential(1, 1), 1.0, 7.0);
  CHECK(c.n == 3);
  double want = std::log(7.0) + 2 * std::log(7.0 / (2 * kPi));
  CHECK(c.N == doctest::Approx(want).epsilon(1e-10));
  CHECK(c.N_bar == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("double points count twice in N and once in N_bar") {
  ExpSum f = example2(1).first;
  double r = 4.0;
  CountingResult c = counting(f, 0.0, r);
  // zeros of (sin 2z + 1)/2 are -pi/4 + k pi, each double
  double want = 0.0;
  long n = 0;
  for (int k = -3; k <= 3; ++k) {
    double x = std::abs(-kPi / 4 + k * kPi);
    if (x <= r) {
      want += 2 * std::log(r / x);
      n += 2;
    }
  }
  CHECK(c.n == n);
  CHECK(c.N == doctest::Approx(want).epsilon(1e-9));
  CHECK(c.N_bar == doctest::Approx(want / 2).epsilon(1e-9));
}

TEST_CASE("Jensen's formula balances for functions without a zero at 0") {
  for (const ExpSum& f : {ExpSum::exponential(1, 1) + ExpSum::constant(2), sin2z_plus(2), thm2prime_family(1, 1)})
    for (double r : {2.0, 5.0, 10.0}) CHECK(jensen_check(f, r) < 1e-6);
}

TEST_CASE("Jensen preconditions") {
  ExpSum g = ExpSum::exponential(1, 1) - ExpSum::constant(1);
  CHECK_THROWS_AS(jensen_check(g, 2.0), Error);
  CHECK_THROWS_AS(jensen_check(ExpSum::exponential(1, 1) - ExpSum::constant(2), std::log(2.0)), Error);
}

TEST_CASE("T is nondecreasing in r") {
  for (const ExpSum& f : {thm2prime_family(1, 1), sin2z_plus(0), example2(1).first, thmC_family(1, 2)}) {
    double prev = -1.0;
    for (double r : {1.0, 2.0, 5.0, 10.0, 20.0, 40.0}) {
      double t = characteristic(f, r);
      CHECK(t >= prev - 1e-6);
      prev = t;
    }
  }
}

TEST_CASE("first fundamental theorem: T and m + N stay within a bounded gap") {
  ExpSum f = ExpSum::exponential(1, 1) + ExpSum::constant(2);
  for (Complex a : {Complex(1, 0), Complex(4, 0), Complex(0, 1)}) {
    double bound = std::log(std::max(1.0, std::abs(a))) + std::abs(std::log(std::abs(f(0.0) - a))) + 2.0;
    for (double r : {5.0, 10.0, 20.0, 40.0}) {
      double gap = characteristic(f, r) - (proximity(f, r, a) + counting(f, a, r).N);
      CHECK(std::abs(gap) <= bound);
    }
  }
}

TEST_CASE("order of growth") {
  std::vector<double> radii = {10, 20, 50, 100};
  CHECK(order_estimate(ExpSum::exponential(1, 1), radii) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(order_estimate(sin2z_plus(0), radii) == doctest::Approx(1.0).epsilon(0.05));
  CHECK_THROWS_AS(order_estimate(ExpSum::exponential(1, 1), {10, 20, 50}), Error);
  CHECK_THROWS_AS(order_estimate(ExpSum::exponential(1, 1), {10, 11, 12, 13}), Error);
}

TEST_CASE("defect estimates") {
  ExpSum e = ExpSum::exponential(1, 1);
  // 0 is omitted by e^z: full defect
  CHECK(defect_estimate(e, 0.0, 60).theta_hat == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(defect_estimate(e, 1.0, 60).theta_hat < 0.1);
  CHECK_THROWS_AS(defect_estimate(e, 1.0, 5.0), Error);
}

TEST_CASE("log derivative proximity against f'/f closed forms") {
  CHECK(log_derivative_proximity(ExpSum::exponential(1, 1), 10) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(log_derivative_proximity(ExpSum::exponential(1, 2), 10) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  for (double r : {10.0, 100.0, 1000.0}) CHECK(log_derivative_proximity(thm2prime_family(1, 1), r) <= 5.0);
}

TEST_CASE("profile reuses one inventory and matches counting") {
  ExpSum f = ExpSum::exponential(1, 1);
  NevanlinnaProfile p = profile(f, {Complex(1, 0), Complex(-1, 0)}, {5.0, 10.0});
  REQUIRE(p.values.size() == 2);
  for (const auto& v : p.values)
    for (std::size_t i = 0; i < p.radii.size(); ++i)
      CHECK(v.counts[i].N == doctest::Approx(counting(f, v.a, p.radii[i]).N).epsilon(1e-10));
  std::string csv = profile_csv(p);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "r,a_re,a_im,m,N,N_bar,T,n");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  NevanlinnaProfile bare = profile(f, {}, {5.0});
  CHECK(profile_csv(bare).find("\n5.0,,,") != std::string::npos);
}
