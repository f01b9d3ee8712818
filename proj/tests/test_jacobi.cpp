#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jfl/jacobi.hpp"
#include "jfl/partitions.hpp"
#include "oracles.hpp"

using namespace jfl::jacobi;

namespace {

JacobiMatrix hermite_section(int m) {
  std::vector<double> a(static_cast<std::size_t>(m), 0.0);
  std::vector<double> b;
  for (int k = 0; k + 1 < m; ++k) b.push_back(std::sqrt(k + 1.0));
  return JacobiMatrix(a, b);
}

JacobiMatrix charlier1_section(int m) {
  std::vector<double> a;
  std::vector<double> b;
  for (int k = 0; k < m; ++k) a.push_back(k + 1.0);
  for (int k = 0; k + 1 < m; ++k) b.push_back(std::sqrt(k + 1.0));
  return JacobiMatrix(a, b);
}

std::vector<double> atomic_moments(const std::vector<double>& nodes, const std::vector<double>& weights,
                                   int n_max) {
  std::vector<double> m(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 0; n <= n_max; ++n)
    for (std::size_t i = 0; i < nodes.size(); ++i)
      m[static_cast<std::size_t>(n)] += weights[i] * std::pow(nodes[i], n);
  return m;
}

}  // namespace

TEST_CASE("single-entry section is a one-point measure") {
  JacobiMatrix j({0.0}, {});
  auto moments = spectral_moments(j, 0);
  CHECK(moments == std::vector<double>{1.0});
  auto measure = discretize_measure(j);
  REQUIRE(measure.nodes.size() == 1);
  CHECK(measure.nodes[0] == doctest::Approx(0.0));
  CHECK(measure.weights[0] == doctest::Approx(1.0));
  // delta_0: every higher moment of the discretized measure vanishes
  auto m = atomic_moments(measure.nodes, measure.weights, 5);
  for (int n = 1; n <= 5; ++n) CHECK(m[static_cast<std::size_t>(n)] == doctest::Approx(0.0));

  JacobiMatrix jc({2.5}, {});
  auto mc = discretize_measure(jc);
  CHECK(mc.nodes[0] == doctest::Approx(2.5));
  CHECK(mc.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("Hermite section reproduces Gaussian moments") {
  auto j = hermite_section(4);
  auto moments = spectral_moments(j, 6);
  for (int n = 0; n <= 6; ++n)
    CHECK(moments[static_cast<std::size_t>(n)] == doctest::Approx(oracles::gaussian_moment(n)).epsilon(1e-13));
  CHECK(moments[4] == doctest::Approx(3.0));

  // same values from the classical pair-partition sum
  using namespace jfl::partitions;
  auto pair_only = [](std::span<const int> block) { return block.size() == 2 ? 1.0 : 0.0; };
  for (int n = 1; n <= 6; ++n)
    CHECK(moments[static_cast<std::size_t>(n)] ==
          doctest::Approx(moments_from_cumulants(n, pair_only, Mode::classical)).epsilon(1e-13));
}

TEST_CASE("Charlier section reproduces Poisson moments") {
  auto j = charlier1_section(4);
  auto moments = spectral_moments(j, 4);
  CHECK(moments[1] == doctest::Approx(1.0));
  CHECK(moments[2] == doctest::Approx(2.0));

  // Poisson(1) raw moments from the all-partitions sum with unit cumulants
  using namespace jfl::partitions;
  auto unit = [](std::span<const int>) { return 1.0; };
  for (int n = 1; n <= 4; ++n)
    CHECK(moments[static_cast<std::size_t>(n)] ==
          doctest::Approx(moments_from_cumulants(n, unit, Mode::classical)).epsilon(1e-13));
}

TEST_CASE("moment window is enforced with the required size in the message") {
  auto j = hermite_section(3);
  CHECK_NOTHROW(spectral_moments(j, 4));
  CHECK_THROWS_WITH_AS(spectral_moments(j, 5), doctest::Contains("size >= 4"), jfl::BoundsError);
}

TEST_CASE("coefficients from Gaussian moments match the Gram-Schmidt oracle") {
  std::vector<double> moments;
  for (int n = 0; n <= 8; ++n) moments.push_back(oracles::gaussian_moment(n));
  auto j = recurrence_coefficients_from_moments(moments);
  REQUIRE(j.size() == 4);
  auto oracle = oracles::gram_schmidt_recurrence(moments, 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(j.diag()[static_cast<std::size_t>(i)] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(j.diag()[static_cast<std::size_t>(i)] ==
          doctest::Approx(oracle.diag[static_cast<std::size_t>(i)]).epsilon(1e-10));
  }
  for (int i = 0; i < 3; ++i) {
    CHECK(j.offdiag()[static_cast<std::size_t>(i)] == doctest::Approx(std::sqrt(i + 1.0)).epsilon(1e-12));
    CHECK(j.offdiag()[static_cast<std::size_t>(i)] ==
          doctest::Approx(oracle.offdiag[static_cast<std::size_t>(i)]).epsilon(1e-10));
  }
}

TEST_CASE("one-point measure moments give a single diagonal entry") {
  const double c = -1.75;
  std::vector<double> moments{1.0, c, c * c};
  auto j = recurrence_coefficients_from_moments(moments);
  REQUIRE(j.size() == 1);
  CHECK(j.diag()[0] == doctest::Approx(c));
}

TEST_CASE("finitely supported measures raise a degeneracy error with the failing order") {
  const double c = 2.0;
  std::vector<double> moments{1.0, c, c * c, c * c * c, c * c * c * c};
  CHECK_THROWS_WITH_AS(recurrence_coefficients_from_moments(moments), doctest::Contains("order 1"),
                       jfl::DegeneracyError);
}

TEST_CASE("moments-coefficients round trip on random atomic measures") {
  std::mt19937 gen(40911);
  std::uniform_real_distribution<double> loc(-2.0, 2.0);
  std::uniform_real_distribution<double> mass(0.1, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> nodes;
    std::vector<double> weights;
    double total = 0.0;
    for (int i = 0; i < 6; ++i) {
      nodes.push_back(loc(gen) + 5.0 * i);  // spread out, guaranteed distinct
      weights.push_back(mass(gen));
      total += weights.back();
    }
    for (auto& w : weights) w /= total;
    const int m = 3;
    auto moments = atomic_moments(nodes, weights, 2 * m);
    auto j = recurrence_coefficients_from_moments(moments);
    auto back = spectral_moments(j, 2 * (m - 1));
    for (int n = 0; n <= 2 * (m - 1); ++n) {
      CHECK(back[static_cast<std::size_t>(n)] ==
            doctest::Approx(moments[static_cast<std::size_t>(n)]).epsilon(1e-9));
    }
  }
}

TEST_CASE("polynomial values follow the Hermite recurrence") {
  auto j = hermite_section(4);
  for (double x : {-1.3, 0.0, 0.4, 2.0}) {
    CHECK(polynomial_value(j, 0, x) == 1.0);
    CHECK(polynomial_value(j, 1, x) == doctest::Approx(x));
    CHECK(polynomial_value(j, 2, x) == doctest::Approx((x * x - 1.0) / std::sqrt(2.0)));
  }
  CHECK_THROWS_AS(polynomial_value(j, 4, 0.0), jfl::BoundsError);
}

TEST_CASE("two-point Hermite rule is +-1 with equal weights") {
  auto measure = discretize_measure(hermite_section(2));
  REQUIRE(measure.nodes.size() == 2);
  CHECK(measure.nodes[0] == doctest::Approx(-1.0));
  CHECK(measure.nodes[1] == doctest::Approx(1.0));
  CHECK(measure.weights[0] == doctest::Approx(0.5));
  CHECK(measure.weights[1] == doctest::Approx(0.5));
  auto m = atomic_moments(measure.nodes, measure.weights, 3);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(0.0));
  CHECK(m[2] == doctest::Approx(1.0));
  CHECK(m[3] == doctest::Approx(0.0));
}

TEST_CASE("discretized measure is a probability measure reproducing moments") {
  std::mt19937 gen(5150);
  std::uniform_real_distribution<double> da(-0.5, 0.5);
  std::uniform_real_distribution<double> db(0.3, 1.5);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 5;
    std::vector<double> a;
    std::vector<double> b;
    for (int i = 0; i < m; ++i) a.push_back(da(gen));
    for (int i = 0; i + 1 < m; ++i) b.push_back(db(gen));
    JacobiMatrix j(a, b);
    auto measure = discretize_measure(j);
    double total = 0.0;
    for (double w : measure.weights) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    auto direct = atomic_moments(measure.nodes, measure.weights, 2 * m - 1);
    auto via_section = spectral_moments(j, 2 * (m - 1));
    for (int n = 0; n <= 2 * (m - 1); ++n)
      CHECK(direct[static_cast<std::size_t>(n)] ==
            doctest::Approx(via_section[static_cast<std::size_t>(n)]).epsilon(1e-9));

    // orthonormality of p_j against the discretized measure
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q <= p; ++q) {
        double s = 0.0;
        for (std::size_t i = 0; i < measure.nodes.size(); ++i)
          s += measure.weights[i] * polynomial_value(j, p, measure.nodes[i]) *
               polynomial_value(j, q, measure.nodes[i]);
        CHECK(s == doctest::Approx(p == q ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("moments are stable across larger sections inside the window") {
  std::mt19937 gen(777);
  std::uniform_real_distribution<double> da(-0.5, 0.5);
  std::uniform_real_distribution<double> db(0.3, 1.5);
  std::vector<double> a;
  std::vector<double> b;
  for (int i = 0; i < 6; ++i) a.push_back(da(gen));
  for (int i = 0; i < 5; ++i) b.push_back(db(gen));
  for (int m = 2; m <= 5; ++m) {
    JacobiMatrix small(std::vector<double>(a.begin(), a.begin() + m),
                       std::vector<double>(b.begin(), b.begin() + m - 1));
    JacobiMatrix big(std::vector<double>(a.begin(), a.begin() + m + 1),
                     std::vector<double>(b.begin(), b.begin() + m));
    auto ms = spectral_moments(small, 2 * (m - 1));
    auto mb = spectral_moments(big, 2 * (m - 1));
    for (std::size_t n = 0; n < ms.size(); ++n) CHECK(ms[n] == doctest::Approx(mb[n]).epsilon(1e-12));
  }
}

TEST_CASE("sign gauge of the off-diagonal leaves moments invariant") {
  // flipping b_k amounts to conjugating by a diagonal sign matrix fixing e_0
  auto j = hermite_section(4);
  const int m = j.size();
  std::vector<double> signs{1.0, -1.0, 1.0, -1.0};
  std::vector<double> v(static_cast<std::size_t>(m), 0.0);
  std::vector<double> next(static_cast<std::size_t>(m), 0.0);
  v[0] = 1.0;
  auto reference = spectral_moments(j, 6);
  std::vector<double> flipped{1.0};
  for (int n = 1; n <= 6; ++n) {
    for (int i = 0; i < m; ++i) {
      double s = j.diag()[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      if (i > 0) s += signs[static_cast<std::size_t>(i) - 1] * j.offdiag()[static_cast<std::size_t>(i) - 1] * v[static_cast<std::size_t>(i) - 1];
      if (i + 1 < m) s += signs[static_cast<std::size_t>(i)] * j.offdiag()[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i) + 1];
      next[static_cast<std::size_t>(i)] = s;
    }
    std::swap(v, next);
    flipped.push_back(v[0]);
  }
  for (int n = 0; n <= 6; ++n)
    CHECK(flipped[static_cast<std::size_t>(n)] == doctest::Approx(reference[static_cast<std::size_t>(n)]).epsilon(1e-12));
}

TEST_CASE("Legendre section integrates monomials on [-1,1]") {
  auto rule = discretize_measure(legendre_section(6));
  for (int k = 0; k <= 10; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double exact = k % 2 == 0 ? 1.0 / (k + 1.0) : 0.0;  // against dt/2
    CHECK(s == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("construction rejects nonpositive off-diagonals") {
  CHECK_THROWS_AS(JacobiMatrix({0.0, 0.0}, {0.0}), jfl::ConfigError);
  CHECK_THROWS_AS(JacobiMatrix({0.0, 0.0}, {-1.0}), jfl::ConfigError);
  CHECK_THROWS_AS(JacobiMatrix({0.0}, {1.0}), jfl::ConfigError);
}
