#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jfl/fields.hpp"
#include "jfl/partitions.hpp"
#include "oracles.hpp"

using namespace jfl::fields;
using jfl::measures::GridDomain;
using jfl::measures::KolmogorovMeasure;
using jfl::measures::TestFunction;

namespace {

GridDomain three_cells() { return GridDomain({{0, 1.0}, {1, 0.5}, {2, 2.0}}); }

KolmogorovMeasure delta(double s, double mass = 1.0) { return KolmogorovMeasure({{s, mass}}); }

TestFunction random_phi(std::mt19937& gen, int cells, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  TestFunction phi;
  for (int c = 0; c < cells; ++c) phi.values.push_back(dist(gen));
  return phi;
}

double weighted_power_sum(const GridDomain& domain, const TestFunction& phi, int n) {
  double s = 0.0;
  for (int c = 0; c < domain.cell_count(); ++c) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= phi.values[static_cast<std::size_t>(c)];
    s += domain.cells()[static_cast<std::size_t>(c)].volume * p;
  }
  return s;
}

}  // namespace

TEST_CASE("base spaces per kind") {
  GridDomain unit3({{0, 1.0}, {1, 1.0}, {2, 1.0}});
  auto g = base_space_for({FieldKind::gaussian, unit3});
  CHECK(g.weights() == std::vector<double>{1.0, 1.0, 1.0});

  GridDomain two({{0, 1.0}, {1, 2.0}});
  auto l = base_space_for({FieldKind::levy, two, 6, delta(1.0)});
  CHECK(l.weights() == std::vector<double>{1.0, 2.0});

  GridDomain unit({{0, 1.0}});
  auto l2 = base_space_for({FieldKind::levy, unit, 6, KolmogorovMeasure({{1.0, 0.5}, {2.0, 0.25}})});
  CHECK(l2.weights() == std::vector<double>{0.5, 0.25});
}

TEST_CASE("spec validation") {
  GridDomain unit({{0, 1.0}});
  CHECK_THROWS_AS(FieldAlgebra({FieldKind::levy, unit, 6}), jfl::ConfigError);
  CHECK_THROWS_AS(FieldAlgebra({FieldKind::poisson, unit, 6, std::nullopt, 0.0}), jfl::ConfigError);
  CHECK_THROWS_AS(FieldAlgebra({FieldKind::levy, unit, 6, delta(0.0), 1.0, false}), jfl::ConfigError);

  GridDomain with_kernel({{0, 1.0}}, std::vector<KolmogorovMeasure>{delta(1.0)});
  CHECK_THROWS_AS(FieldAlgebra({FieldKind::free_levy, with_kernel, 6, delta(1.0)}), jfl::ConfigError);
  CHECK_NOTHROW(FieldAlgebra({FieldKind::levy, with_kernel, 6}));
}

TEST_CASE("second moments against the cumulant formula") {
  std::mt19937 gen(1);
  auto domain = three_cells();
  auto d0 = delta(0.0);
  for (int trial = 0; trial < 5; ++trial) {
    auto phi = random_phi(gen, 3);
    FieldAlgebra gaussian({FieldKind::gaussian, domain, 4});
    std::vector<TestFunction> pair{phi, phi};
    CHECK(gaussian.joint_moment(pair) ==
          doctest::Approx(jfl::measures::levy_cumulant(2, phi, domain, &d0)).epsilon(1e-12));
  }
}

TEST_CASE("Poisson first moment is the intensity integral") {
  auto domain = three_cells();
  TestFunction phi{{0.5, -1.0, 0.25}};
  for (double lambda : {1.0, 2.0}) {
    FieldAlgebra poisson({FieldKind::poisson, domain, 4, std::nullopt, lambda});
    std::vector<TestFunction> single{phi};
    const double integral = 1.0 * 0.5 + 0.5 * -1.0 + 2.0 * 0.25;
    CHECK(poisson.joint_moment(single) == doctest::Approx(lambda * integral).epsilon(1e-13));
    CHECK(poisson.predicted_moment(single) == doctest::Approx(lambda * integral).epsilon(1e-13));
  }
}

TEST_CASE("free Gaussian fourth moment counts non-crossing pairings") {
  auto domain = three_cells();
  std::mt19937 gen(2);
  auto phi = random_phi(gen, 3);
  FieldAlgebra field({FieldKind::free_levy, domain, 4, delta(0.0)});
  std::vector<TestFunction> four(4, phi);
  const double var = weighted_power_sum(domain, phi, 2);
  CHECK(field.joint_moment(four) == doctest::Approx(2.0 * var * var).epsilon(1e-12));
  CHECK(field.predicted_moment(four) == doctest::Approx(2.0 * var * var).epsilon(1e-12));
}

TEST_CASE("free Poisson moment equals the NC(4) partition sum") {
  GridDomain unit({{0, 1.0}});
  TestFunction half{{0.5}};
  FieldAlgebra field({FieldKind::free_levy, unit, 4, delta(1.0)});
  std::vector<TestFunction> four(4, half);

  // independent partition sum: every free cumulant of order k is 0.5^k here
  using namespace jfl::partitions;
  auto cumulant = [](std::span<const int> block) {
    return block.size() >= 2 ? std::pow(0.5, static_cast<double>(block.size())) : 0.0;
  };
  const double expected = moments_from_cumulants(4, cumulant, Mode::free);
  CHECK(field.joint_moment(four) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(field.predicted_moment(four) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mixed joint moments and the empty product") {
  auto domain = three_cells();
  std::mt19937 gen(3);
  auto phi = random_phi(gen, 3);
  auto psi = random_phi(gen, 3);
  FieldAlgebra gaussian({FieldKind::gaussian, domain, 4});
  std::vector<TestFunction> pair{phi, psi};
  double inner = 0.0;
  for (int c = 0; c < 3; ++c)
    inner += domain.cells()[static_cast<std::size_t>(c)].volume *
             phi.values[static_cast<std::size_t>(c)] * psi.values[static_cast<std::size_t>(c)];
  CHECK(gaussian.joint_moment(pair) == doctest::Approx(inner).epsilon(1e-12));
  CHECK(gaussian.joint_moment({}) == 1.0);
  CHECK(gaussian.predicted_moment({}) == 1.0);

  std::vector<TestFunction> toolong(5, phi);
  CHECK_THROWS_AS(gaussian.joint_moment(toolong), jfl::BoundsError);
  CHECK_THROWS_AS(gaussian.predicted_moment(toolong), jfl::BoundsError);
}

TEST_CASE("centered third moment equals the third cumulant") {
  auto domain = three_cells();
  std::mt19937 gen(4);
  auto phi = random_phi(gen, 3);
  auto d1 = delta(1.0);
  FieldAlgebra field({FieldKind::levy, domain, 4, d1});
  std::vector<TestFunction> triple(3, phi);
  CHECK(field.joint_moment(triple) ==
        doctest::Approx(weighted_power_sum(domain, phi, 3)).epsilon(1e-12));
}

TEST_CASE("operator and partition moments agree for every kind") {
  auto domain = three_cells();
  std::mt19937 gen(5);
  auto two_atoms = KolmogorovMeasure({{1.0, 0.5}, {2.0, 0.25}});
  std::vector<FieldSpec> specs;
  specs.push_back({FieldKind::gaussian, domain, 5});
  specs.push_back({FieldKind::poisson, domain, 5, std::nullopt, 2.0});
  specs.push_back({FieldKind::levy, domain, 5, two_atoms, 1.0, true});
  specs.push_back({FieldKind::levy, domain, 5, two_atoms, 1.0, false});
  specs.push_back({FieldKind::free_levy, domain, 5, two_atoms});
  for (const auto& spec : specs) {
    FieldAlgebra field(spec);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<TestFunction> phis;
      const int n = 1 + static_cast<int>(gen() % 5);
      for (int i = 0; i < n; ++i) phis.push_back(random_phi(gen, 3));
      CHECK(std::abs(field.joint_moment(phis) - field.predicted_moment(phis)) <= 1e-9);
    }
  }
}

TEST_CASE("kernel mode moments agree with the partition prediction") {
  GridDomain kernel_domain({{0, 1.0}, {1, 0.5}},
                           std::vector<KolmogorovMeasure>{delta(1.0), KolmogorovMeasure({{1.0, 0.5}, {2.0, 0.25}})});
  FieldAlgebra field({FieldKind::levy, kernel_domain, 5});
  std::mt19937 gen(6);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<TestFunction> phis;
    const int n = 2 + static_cast<int>(gen() % 4);
    for (int i = 0; i < n; ++i) phis.push_back(random_phi(gen, 2));
    CHECK(std::abs(field.joint_moment(phis) - field.predicted_moment(phis)) <= 1e-9);
  }
}

TEST_CASE("levy with delta_0 reproduces the Gaussian moments") {
  auto domain = three_cells();
  std::mt19937 gen(11);
  FieldAlgebra gaussian({FieldKind::gaussian, domain, 6});
  FieldAlgebra levy({FieldKind::levy, domain, 6, delta(0.0)});
  for (int trial = 0; trial < 3; ++trial) {
    auto phi = random_phi(gen, 3);
    for (int n = 1; n <= 6; ++n) {
      std::vector<TestFunction> phis(static_cast<std::size_t>(n), phi);
      CHECK(levy.joint_moment(phis) ==
            doctest::Approx(gaussian.joint_moment(phis)).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("Gaussian moments match the normal law") {
  auto domain = three_cells();
  std::mt19937 gen(7);
  auto phi = random_phi(gen, 3);
  const double var = weighted_power_sum(domain, phi, 2);
  FieldAlgebra field({FieldKind::gaussian, domain, 6});
  for (int n = 1; n <= 6; ++n) {
    std::vector<TestFunction> phis(static_cast<std::size_t>(n), phi);
    const double expected = oracles::gaussian_moment(n) * std::pow(var, n / 2.0);
    CHECK(field.joint_moment(phis) == doctest::Approx(expected).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("classical fields commute, free fields refuse the check") {
  auto domain = three_cells();
  auto two_atoms = KolmogorovMeasure({{1.0, 0.5}, {2.0, 0.25}});
  std::mt19937 gen(8);
  auto phi = random_phi(gen, 3);
  auto psi = random_phi(gen, 3);

  FieldAlgebra gaussian({FieldKind::gaussian, domain, 4});
  CHECK(gaussian.commutator_residual(phi, psi) <= 1e-12);

  FieldAlgebra poisson({FieldKind::poisson, domain, 4, std::nullopt, 1.5});
  CHECK(poisson.commutator_residual(phi, psi) <= 1e-12);
  CHECK(poisson.commutator_residual(phi, phi) == 0.0);

  FieldAlgebra levy({FieldKind::levy, domain, 4, two_atoms, 1.0, false});
  CHECK(levy.commutator_residual(phi, psi) <= 1e-12);

  FieldAlgebra free_field({FieldKind::free_levy, domain, 4, two_atoms});
  CHECK_THROWS_AS(free_field.commutator_residual(phi, psi), jfl::ConfigError);

  // free fields genuinely fail to commute
  auto a = free_field.field(phi);
  auto b = free_field.field(psi);
  CHECK(jfl::fock::max_column_norm(a * b - b * a, 2) > 1e-6);
}

TEST_CASE("free expectation is tracial on short words") {
  auto domain = three_cells();
  FieldAlgebra field({FieldKind::free_levy, domain, 4, delta(1.0)});
  std::mt19937 gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    const int la = 1 + static_cast<int>(gen() % 2);
    const int lb = 1 + static_cast<int>(gen() % 2);
    std::vector<TestFunction> a;
    std::vector<TestFunction> b;
    for (int i = 0; i < la; ++i) a.push_back(random_phi(gen, 3));
    for (int i = 0; i < lb; ++i) b.push_back(random_phi(gen, 3));
    std::vector<TestFunction> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    std::vector<TestFunction> ba = b;
    ba.insert(ba.end(), a.begin(), a.end());
    CHECK(std::abs(field.joint_moment(ab) - field.joint_moment(ba)) <= 1e-9);
  }
}

TEST_CASE("compensation shifts the first moment by the sigma integral") {
  auto domain = three_cells();
  auto two_atoms = KolmogorovMeasure({{1.0, 0.5}, {2.0, 0.25}});
  std::mt19937 gen(10);
  auto phi = random_phi(gen, 3);
  FieldAlgebra comp({FieldKind::levy, domain, 4, two_atoms, 1.0, true});
  FieldAlgebra uncomp({FieldKind::levy, domain, 4, two_atoms, 1.0, false});
  std::vector<TestFunction> single{phi};
  const double integral = weighted_power_sum(domain, phi, 1);
  const double inv = 0.5 / 1.0 + 0.25 / 2.0;
  CHECK(std::abs(uncomp.joint_moment(single) - comp.joint_moment(single) - integral * inv) <= 1e-12);
}

TEST_CASE("disjoint supports are freely independent") {
  GridDomain cells({{0, 1.0}, {1, 1.0}});
  TestFunction f{{1.0, 0.0}};
  TestFunction g{{0.0, 1.0}};
  FieldAlgebra field({FieldKind::free_levy, cells, 6, delta(1.0)});

  // centered free variables: tau(abab) = 0 (the only size-2 monochromatic
  // pairing of positions {1,3},{2,4} is crossing), while tau(aabb)
  // factorizes as tau(a^2) tau(b^2)
  std::vector<TestFunction> abab{f, g, f, g};
  std::vector<TestFunction> aabb{f, f, g, g};
  std::vector<TestFunction> aa{f, f};
  std::vector<TestFunction> bb{g, g};
  CHECK(std::abs(field.joint_moment(abab)) <= 1e-12);
  CHECK(field.joint_moment(aabb) ==
        doctest::Approx(field.joint_moment(aa) * field.joint_moment(bb)).epsilon(1e-12));
}
