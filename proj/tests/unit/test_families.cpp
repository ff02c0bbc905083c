#include <doctest.h>

#include <random>

#include "valshare/error.hpp"
#include "valshare/families.hpp"

using namespace valshare;

namespace {

// F = Y^3 - X Y^2 + g (X^3 + c2 X^2 Z + c1 X Z^2 + c0 Z^3) and its partials, written out by hand
struct Hand {
  Scalar g, c2, c1, c0;
  Scalar F(const Scalar& x, const Scalar& y, const Scalar& z) const {
    return y * y * y - x * y * y + g * (x * x * x + c2 * x * x * z + c1 * x * z * z + c0 * z * z * z);
  }
  Scalar Fx(const Scalar& x, const Scalar& y, const Scalar& z) const {
    return Scalar(0) - y * y + g * (Scalar(3) * x * x + Scalar(2) * c2 * x * z + c1 * z * z);
  }
  Scalar Fy(const Scalar& x, const Scalar& y, const Scalar&) const { return Scalar(3) * y * y - Scalar(2) * x * y; }
  Scalar Fz(const Scalar& x, const Scalar&, const Scalar& z) const {
    return g * (c2 * x * x + Scalar(2) * c1 * x * z + Scalar(3) * c0 * z * z);
  }
  bool singular(const ProjectivePoint& p) const {
    return F(p.x, p.y, p.z).is_zero() && Fx(p.x, p.y, p.z).is_zero() && Fy(p.x, p.y, p.z).is_zero() &&
           Fz(p.x, p.y, p.z).is_zero();
  }
};

}  // namespace

TEST_CASE("coefficient matching for delta = 1") {
  DerivedConstants d = derive_family_constants(1);
  CHECK(d.alpha == Scalar::rational(1, 3));
  CHECK(d.gamma == Scalar::rational(4, 27));
  CHECK(d.b2 == Scalar::rational(4, 27));
  CHECK(d.b1.is_zero());
  CHECK(d.b0.is_zero());
  CHECK(d.c2.is_zero());
  CHECK(d.c1.is_zero());
  CHECK(d.residuals.empty());
  CHECK_FALSE(d.steps.empty());
}

TEST_CASE("derived constants annihilate every coefficient equation") {
  for (Scalar delta : {Scalar(1), Scalar(8), Scalar::rational(-1, 2)}) {
    DerivedConstants d = derive_family_constants(delta);
    CHECK(d.b2 == Scalar::rational(4, 27) * delta);
    std::vector<Scalar> vals = {d.alpha, d.gamma, d.b2, d.b1, d.b0, d.c2, d.c1};
    for (const auto& [k, poly] : curve_substitution_coefficients(delta)) {
      MPoly p = poly;
      for (std::size_t v = 0; v < vals.size(); ++v) p = p.substitute(v, MPoly::constant(p.nvars(), vals[v]));
      CAPTURE(k);
      CHECK(p.is_zero());
    }
  }
  CHECK_THROWS_AS(derive_family_constants(0), Error);
}

TEST_CASE("family constructors") {
  ExpSum f = thm2prime_family(1, 1);
  REQUIRE(f.size() == 2);
  CHECK(f.terms()[0].freq == Scalar::rational(-1, 3));
  CHECK(f.terms()[1].freq == Scalar::rational(2, 3));
  CHECK(f.terms()[1].coeff == Scalar::rational(4, 27));
  CHECK_THROWS_AS(thm2prime_family(1, 0), Error);
  auto [g, gp] = example2(1);
  CHECK(approx_equal(differentiate(g), gp, 0.0));
  FamilyParams p{FamilyId::ThmC, {{"b", Scalar(1)}, {"A", Scalar(2)}}};
  CHECK(approx_equal(build_family(p), thmC_family(1, 2), 0.0));
  CHECK(parse_family("example3") == FamilyId::Example3);
  CHECK_THROWS_AS(build_family(FamilyParams{FamilyId::Thm2Prime, {{"delta", Scalar(1)}}}), Error);
}

TEST_CASE("the derived cubic is singular only at infinity") {
  CubicCurve c{Scalar::rational(4, 27), 0, 0, -1};
  CurveClass cc = classify_cubic(c);
  CHECK(cc.kind == CurveKind::SingularGenus0);
  CHECK(cc.exact);
  REQUIRE(cc.singular_points.size() == 1);
  Hand h{c.gamma, c.c2, c.c1, c.c0};
  CHECK(h.singular(cc.singular_points[0]));
  CHECK(cc.singular_points[0].z.is_zero());
  auto slice = infinity_slice(c);
  REQUIRE(slice.size() == 2);
  for (const auto& s : slice) {
    REQUIRE(s.exact);
    CHECK(s.multiplicity == (*s.exact == Scalar::rational(2, 3) ? 2 : 1));
  }
}

TEST_CASE("a reducible cubic reports its line") {
  CubicCurve c{Scalar(-4), Scalar(2), Scalar::rational(5, 4), Scalar::rational(1, 4)};
  CurveClass cc = classify_cubic(c);
  CHECK(cc.kind == CurveKind::Reducible);
  REQUIRE(cc.factor);
  auto [u, v] = *cc.factor;
  Hand h{c.gamma, c.c2, c.c1, c.c0};
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> n(-7, 7);
  for (int k = 0; k < 20; ++k) {
    Scalar x(n(rng)), z(n(rng));
    CHECK(h.F(x, u * x + v * z, z).is_zero());
  }
}

TEST_CASE("smooth and singular examples") {
  CHECK(classify_cubic({Scalar(1), 0, 0, -1}).kind == CurveKind::SmoothGenus1);
  CurveClass s = classify_cubic({Scalar(1), Scalar(-1), 0, 0});
  CHECK(s.kind == CurveKind::SingularGenus0);
  CHECK_THROWS_AS(classify_cubic({Scalar(0), 0, 0, -1}), Error);
}

TEST_CASE("reported singular points are singular on random curves") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> n(-4, 4), d(1, 3);
  for (int k = 0; k < 80; ++k) {
    CubicCurve c{Scalar::rational(n(rng), d(rng)), Scalar::rational(n(rng), d(rng)), Scalar::rational(n(rng), 1),
                 Scalar::rational(n(rng), 1)};
    if (c.gamma.is_zero()) continue;
    CurveClass cc = classify_cubic(c);
    Hand h{c.gamma, c.c2, c.c1, c.c0};
    for (const auto& p : cc.singular_points) CHECK(h.singular(p));
    if (cc.kind == CurveKind::SmoothGenus1) CHECK(cc.singular_points.empty());
    auto g = cubic_gradient(c, ProjectivePoint{Scalar(1), Scalar(2), Scalar(3)});
    CHECK(g[0] == h.F(1, 2, 3));
    CHECK(g[3] == h.Fz(1, 2, 3));
  }
}

TEST_CASE("gamma = 4/27 with c2 = 0 always has the point at infinity") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> n(-6, 6), d(1, 5);
  for (int k = 0; k < 40; ++k) {
    CubicCurve c{Scalar::rational(4, 27), 0, Scalar::rational(n(rng), d(rng)), Scalar::rational(n(rng), d(rng))};
    CurveClass cc = classify_cubic(c);
    CHECK(cc.kind != CurveKind::SmoothGenus1);
    bool at_inf = false;
    for (const auto& p : cc.singular_points)
      at_inf |= p.z.is_zero() && p.x == Scalar(1) && p.y == Scalar::rational(2, 3);
    CHECK(at_inf);
  }
}

TEST_CASE("float coefficients take the numeric path") {
  CurveClass cc = classify_cubic({Scalar::from_double(0.5), Scalar::from_double(0.25), 0, Scalar::from_double(-1.0)});
  CHECK_FALSE(cc.exact);
}

TEST_CASE("probe preconditions and a small grid") {
  Region r{-3, 3, -3, 3};
  CHECK_THROWS_AS(question_probe(1.0, 1.0, default_probe_grid(), r), Error);
  CHECK_THROWS_AS(question_probe(0.0, 1.0, default_probe_grid(), r), Error);
  CHECK_THROWS_AS(question_probe(1.0, -1.0, default_probe_grid(), r), Error);
  ProbeGrid g;
  g.functions = {ExpSum::exponential(1, 1), ExpSum::exponential(1, 2)};
  ProbeResult res = question_probe(1.0, 2.0, g, r);
  CHECK(std::string(ProbeResult::kTag) == "EXPERIMENTAL");
  // e^z equals its derivative, so it is skipped; e^{2z} fails at 1
  CHECK(res.skipped.size() == 1);
  CHECK(res.tested == 1);
  CHECK(res.candidates.empty());
}
