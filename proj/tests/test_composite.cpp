#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "schain/composite.hpp"
#include "schain/error.hpp"
#include "support/fixtures.hpp"

using namespace schain;
using test::tssn_from_matrix;

namespace {

Matrix constant_matrix(std::size_t n, double v) { return Matrix(n, n, v); }

CompositeModel toy_model(double alpha, double gamma) {
  // one path with s(0,1) = 2/3, one attribute identical everywhere
  Matrix s = constant_matrix(2, 2.0 / 3.0);
  s(0, 0) = s(1, 1) = 1.0;
  return CompositeModel::assemble({tssn_from_matrix(std::move(s))},
                                  {constant_matrix(2, 1.0)}, Matrix{}, alpha, gamma);
}

}  // namespace

TEST_CASE("attribute components: min-max scaled absolute difference") {
  Matrix attrs(3, 2, 0.0);
  attrs(0, 0) = 0.0;
  attrs(1, 0) = 5.0;
  attrs(2, 0) = 10.0;
  // second column constant
  attrs(0, 1) = attrs(1, 1) = attrs(2, 1) = 4.2;
  const auto components = attribute_components(attrs);
  REQUIRE(components.size() == 2);
  CHECK(components[0](0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(components[0](0, 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(components[0](0, 0) == 1.0);
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) {
      CHECK(components[1](u, v) == 1.0);  // zero range -> all ones
      CHECK(components[0](u, v) == components[0](v, u));
    }
}

TEST_CASE("constraint matrix encodes the pairs") {
  ConstraintSet cs;
  cs.must_link.push_back({1, 2});
  cs.cannot_link.push_back({1, 3});
  const Matrix w = constraint_matrix(cs, 4);
  CHECK(w(1, 2) == 1.0);
  CHECK(w(2, 1) == 1.0);
  CHECK(w(1, 3) == -1.0);
  CHECK(w(3, 1) == -1.0);
  CHECK(w(0, 0) == 0.0);
  CHECK(w(0, 2) == 0.0);

  const Matrix empty = constraint_matrix(ConstraintSet{}, 3);
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) CHECK(empty(u, v) == 0.0);
}

TEST_CASE("degenerate mixtures reduce to their only component") {
  Matrix s(2, 2, 0.25);
  s(0, 0) = s(1, 1) = 1.0;
  const Matrix copy = s;
  const auto model =
      CompositeModel::assemble({tssn_from_matrix(std::move(s))}, {}, Matrix{}, 0.0, 0.0);
  const std::vector<double> lambda{1.0};
  const auto ev = model.evaluate(lambda, {});
  for (std::size_t u = 0; u < 2; ++u)
    for (std::size_t v = 0; v < 2; ++v) CHECK(ev.S(u, v) == doctest::Approx(copy(u, v)));

  Matrix a1(2, 2, 0.5), a2(2, 2, 0.9);
  const auto attr_model =
      CompositeModel::assemble({}, {std::move(a1), std::move(a2)}, Matrix{}, 1.0, 0.0);
  const std::vector<double> omega{0.5, 0.5};
  const auto ev2 = attr_model.evaluate({}, omega);
  CHECK(ev2.S(0, 1) == doctest::Approx(0.7));
}

TEST_CASE("the half-and-half toy mixture evaluates to 5/6") {
  const auto model = toy_model(0.5, 0.0);
  const std::vector<double> lambda{1.0}, omega{1.0};
  const auto ev = model.evaluate(lambda, omega);
  CHECK(ev.S(0, 1) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  // diagonal mixes two ones
  CHECK(ev.S(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  // degrees are row sums plus the tiny shift
  CHECK(ev.D[0] == doctest::Approx(1.0 + 5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("evaluate rejects infeasible weights") {
  const auto model = toy_model(0.5, 0.0);
  CHECK_THROWS_AS(model.evaluate(std::vector<double>{0.9}, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(model.evaluate(std::vector<double>{-1.0}, std::vector<double>{2.0}), Error);
  CHECK_THROWS_AS(model.evaluate(std::vector<double>{1.0}, std::vector<double>{}), Error);
}

TEST_CASE("assemble validates inputs") {
  CHECK_THROWS_AS(CompositeModel::assemble({}, {}, Matrix{}, 0.5, 0.0), Error);
  CHECK_THROWS_AS(
      CompositeModel::assemble({tssn_from_matrix(Matrix(2, 2, 0.0))}, {}, Matrix{}, 1.5, 0.0),
      Error);
  CHECK_THROWS_AS(CompositeModel::assemble({tssn_from_matrix(Matrix(2, 2, 0.0))},
                                           {Matrix(3, 3, 0.0)}, Matrix{}, 0.5, 0.0),
                  Error);
}

TEST_CASE("entry forms are exactly linear in both weight blocks") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix s1(3, 3, 0.0), s2(3, 3, 0.0), a1(3, 3, 0.0);
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = u; v < 3; ++v) {
      s1(u, v) = s1(v, u) = unit(rng);
      s2(u, v) = s2(v, u) = unit(rng);
      a1(u, v) = a1(v, u) = unit(rng);
    }
  const auto model = CompositeModel::assemble(
      {tssn_from_matrix(std::move(s1)), tssn_from_matrix(std::move(s2))}, {std::move(a1)},
      Matrix{}, 0.35, 0.0);

  auto entry = [&](std::size_t u, std::size_t v, const std::vector<double>& l,
                   const std::vector<double>& o) {
    return model.entry_form(u, v).evaluate(l, o);
  };
  const std::vector<double> l1{0.2, 0.8}, l2{0.7, 0.3}, o{1.0};
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    std::vector<double> mix{t * l1[0] + (1 - t) * l2[0], t * l1[1] + (1 - t) * l2[1]};
    for (std::size_t u = 0; u < 3; ++u)
      for (std::size_t v = 0; v < 3; ++v) {
        const double lhs = entry(u, v, mix, o);
        const double rhs = t * entry(u, v, l1, o) + (1 - t) * entry(u, v, l2, o);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }
  }

  // evaluate() agrees with the per-entry forms
  const auto ev = model.evaluate(l1, o);
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t v = 0; v < 3; ++v)
      CHECK(ev.S(u, v) == doctest::Approx(entry(u, v, l1, o)).epsilon(1e-12));
    CHECK(ev.D[u] == doctest::Approx(model.degree_form(u).evaluate(l1, o)).epsilon(1e-12));
  }
}

TEST_CASE("bounds: feasible weights keep S in [0,1] and W o S consistent") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix s(4, 4, 0.0), a(4, 4, 0.0);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = u; v < 4; ++v) {
      s(u, v) = s(v, u) = unit(rng);
      a(u, v) = a(v, u) = unit(rng);
    }
  ConstraintSet cs;
  cs.must_link.push_back({0, 1});
  cs.cannot_link.push_back({2, 3});
  const auto model = CompositeModel::assemble({tssn_from_matrix(std::move(s))}, {std::move(a)},
                                              constraint_matrix(cs, 4), 0.5, 0.0);
  const std::vector<double> lambda{1.0}, omega{1.0};
  const auto ev = model.evaluate(lambda, omega);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = 0; v < 4; ++v) {
      CHECK(ev.S(u, v) >= 0.0);
      CHECK(ev.S(u, v) <= 1.0 + 1e-12);
      const double combined = ev.S(u, v) + ev.WS(u, v);
      CHECK(combined >= -1.0 - 1e-12);
      CHECK(combined <= 2.0 + 1e-12);
    }
  CHECK(ev.S(0, 1) + ev.WS(0, 1) == doctest::Approx(2.0 * ev.S(0, 1)));
  CHECK(ev.S(2, 3) + ev.WS(2, 3) == doctest::Approx(0.0));
}

TEST_CASE("changing one path weight shifts S by exactly the path matrix") {
  Matrix s1(2, 2, 0.4), s2(2, 2, 0.9);
  const Matrix s2_copy = s2;
  const auto model = CompositeModel::assemble(
      {tssn_from_matrix(std::move(s1)), tssn_from_matrix(std::move(s2))}, {}, Matrix{}, 0.25,
      0.0);
  const std::vector<double> w1{0.6, 0.4}, w2{0.1, 0.9};
  const auto e1 = model.evaluate(w1, {});
  const auto e2 = model.evaluate(w2, {});
  // S differs by (1-alpha) * dLambda_2 * s2 + (1-alpha) * dLambda_1 * s1;
  // isolate path 2 via the difference of differences
  const double dl2 = w2[1] - w1[1];
  for (std::size_t u = 0; u < 2; ++u)
    for (std::size_t v = 0; v < 2; ++v) {
      const double diff = e2.S(u, v) - e1.S(u, v);
      const double expected = 0.75 * (dl2 * s2_copy(u, v) + (w2[0] - w1[0]) * 0.4);
      CHECK(diff == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("an all-isolated object keeps a positive floored degree") {
  Matrix s(2, 2, 0.0);  // nothing similar to anything
  const auto model =
      CompositeModel::assemble({tssn_from_matrix(std::move(s))}, {}, Matrix{}, 0.0, 0.0);
  const auto ev = model.evaluate(std::vector<double>{1.0}, {});
  CHECK(ev.D[0] == CompositeModel::kDegreeShift);
  CHECK(ev.D[1] == CompositeModel::kDegreeShift);
}
