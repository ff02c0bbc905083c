#include <doctest.h>

#include <algorithm>
#include <random>

#include "valshare/poly.hpp"

using namespace valshare;
using upoly::Poly;

namespace {

// product of (x - r) over the roots
Poly from_roots(const std::vector<Scalar>& roots, const Scalar& lead = Scalar(1)) {
  Poly p = {lead};
  for (const auto& r : roots) {
    Poly q(p.size() + 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= r * p[k];
    }
    p = q;
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial ring operations") {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  MPoly p = (x + y).pow(2);
  CHECK(p == x * x + Scalar(2) * (x * y) + y * y);
  CHECK(p.degree_in(0) == 2);
  CHECK((p - p).is_zero());
  MPoly at = p.substitute(1, MPoly::constant(2, Scalar(-1)));
  CHECK(at == x * x - Scalar(2) * x + MPoly::constant(2, Scalar(1)));
  CHECK(p.coefficient(0, 1) == Scalar(2) * y);
  CHECK(p.to_string({"x", "y"}).find("x") != std::string::npos);
}

TEST_CASE("divide by a power of a variable") {
  MPoly t = MPoly::variable(1, 0);
  MPoly p = t.pow(3) + Scalar(2) * t.pow(2);
  auto q = p.divide_by_power(0, 2);
  REQUIRE(q);
  CHECK(*q == t + MPoly::constant(1, Scalar(2)));
  CHECK_FALSE(p.divide_by_power(0, 3));
}

TEST_CASE("gcd of polynomials with a planted common factor") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  for (int k = 0; k < 30; ++k) {
    Scalar c = Scalar::rational(num(rng), den(rng));
    Scalar a = Scalar::rational(num(rng), den(rng)), b = Scalar::rational(num(rng), den(rng));
    if (a == c || b == c || a == b) continue;
    Poly p = from_roots({c, a}), q = from_roots({c, b}, Scalar(3));
    Poly g = upoly::gcd(p, q);
    REQUIRE(upoly::degree(g) == 1);
    CHECK(upoly::eval(g, c).is_zero());
    CHECK(upoly::remainder(p, g).empty());
  }
}

TEST_CASE("rational roots with multiplicities") {
  Poly p = from_roots({Scalar::rational(-1, 3), Scalar::rational(2, 3), Scalar::rational(2, 3)});
  auto roots = upoly::rational_roots(p);
  REQUIRE(roots);
  std::sort(roots->begin(), roots->end());
  REQUIRE(roots->size() == 2);
  CHECK((*roots)[0] == mpq_class(-1, 3));
  CHECK((*roots)[1] == mpq_class(2, 3));
  CHECK(upoly::multiplicity(p, Scalar::rational(2, 3)) == 2);
  CHECK(upoly::multiplicity(p, Scalar::rational(-1, 3)) == 1);
  CHECK(upoly::multiplicity(p, Scalar(5)) == 0);
}

TEST_CASE("numeric roots reproduce planted roots") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 3);
  for (int k = 0; k < 20; ++k) {
    std::vector<Scalar> rs;
    for (int j = 0; j < 4; ++j) rs.push_back(Scalar::rational(num(rng), den(rng)) + Scalar(j) * Scalar::imaginary_unit());
    auto got = upoly::numeric_roots(from_roots(rs));
    REQUIRE(got.size() == 4);
    for (const auto& r : rs) {
      double best = 1e300;
      for (Complex z : got) best = std::min(best, std::abs(z - r.to_complex()));
      CHECK(best < 1e-8);
    }
  }
}

TEST_CASE("derivative and quotient") {
  Poly p = from_roots({Scalar(1), Scalar(2), Scalar(3)});
  Poly d = upoly::derivative(p);
  CHECK(upoly::degree(d) == 2);
  CHECK(upoly::eval(d, Scalar(2)) == Scalar(-1));
  Poly q = upoly::quotient(p, from_roots({Scalar(2)}));
  CHECK(q == from_roots({Scalar(1), Scalar(3)}));
}
