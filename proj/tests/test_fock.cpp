#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "jfl/fock.hpp"

using namespace jfl::fock;

namespace {

std::vector<double> random_vec(std::mt19937& gen, int d, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(d));
  for (auto& x : v) x = dist(gen);
  return v;
}

Eigen::VectorXd apply_to_vacuum(const FockOperator& op) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(op.matrix().rows());
  v(0) = 1.0;
  return op.matrix() * v;
}

}  // namespace

TEST_CASE("creation from the vacuum is the degree-one state") {
  SymFockSpace space(BaseSpace({1.0, 2.0}), 3);
  std::vector<double> phi{0.5, -0.25};
  auto v = apply_to_vacuum(create_sym(space, phi));
  CHECK(v(space.index_of({1, 0})) == doctest::Approx(0.5));
  CHECK(v(space.index_of({0, 1})) == doctest::Approx(-0.25));
  CHECK(v(0) == 0.0);
}

TEST_CASE("double creation carries the 2! Fock norm") {
  SymFockSpace space(BaseSpace({1.0}), 3);
  auto aplus = create_sym(space, std::vector<double>{1.0});
  Eigen::VectorXd v = aplus.matrix() * apply_to_vacuum(aplus);
  const int idx = space.index_of({2});
  CHECK(v(idx) == doctest::Approx(1.0));
  // <e1 x e1, e1 x e1>_F = 2! under the n!-weighted inner product
  CHECK(space.info()->gram[static_cast<std::size_t>(idx)] == doctest::Approx(2.0));
  double norm_sq = 0.0;
  for (int i = 0; i < v.size(); ++i) norm_sq += v(i) * v(i) * space.info()->gram[static_cast<std::size_t>(i)];
  CHECK(norm_sq == doctest::Approx(2.0));
}

TEST_CASE("creation out of the top degree is projected to zero") {
  SymFockSpace space(BaseSpace({1.0, 1.0}), 2);
  auto aplus = create_sym(space, std::vector<double>{1.0, 1.0});
  for (int col = 0; col < space.dim(); ++col) {
    if (space.info()->degree[static_cast<std::size_t>(col)] < 2) continue;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim());
    e(col) = 1.0;
    CHECK((aplus.matrix() * e).norm() == 0.0);
  }
}

TEST_CASE("annihilation matches the displayed action") {
  SymFockSpace space(BaseSpace({1.5, 2.0}), 4);
  auto aminus = annihilate_sym(space, std::vector<double>{1.0, 0.0});

  // kills the vacuum
  CHECK(apply_to_vacuum(aminus).norm() == 0.0);

  // a^-(e1) e1^3 = 3 <e1,e1> e1^2
  Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim());
  e(space.index_of({3, 0})) = 1.0;
  Eigen::VectorXd out = aminus.matrix() * e;
  CHECK(out(space.index_of({2, 0})) == doctest::Approx(3.0 * 1.5));

  // orthogonal directions annihilate to zero
  Eigen::VectorXd e2 = Eigen::VectorXd::Zero(space.dim());
  e2(space.index_of({0, 1})) = 1.0;
  CHECK((aminus.matrix() * e2).norm() == 0.0);
}

TEST_CASE("neutral operator is diagonal with occupation sums") {
  SymFockSpace space(BaseSpace({1.0, 1.0, 1.0}), 3);
  auto number = neutral_sym(space, std::vector<double>{1.0, 1.0, 1.0});
  CHECK(apply_to_vacuum(number).norm() == 0.0);
  for (int i = 0; i < space.dim(); ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim());
    e(i) = 1.0;
      Eigen::VectorXd out = number.matrix() * e;
    CHECK(out(i) == doctest::Approx(space.info()->degree[static_cast<std::size_t>(i)]));
  }

  auto partial = neutral_sym(space, std::vector<double>{0.75, 0.0, 0.0});
  Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim());
  e(space.index_of({2, 0, 0})) = 1.0;
  CHECK((partial.matrix() * e)(space.index_of({2, 0, 0})) == doctest::Approx(1.5));
}

TEST_CASE("free operators act by letters") {
  FullFockSpace space(BaseSpace({1.5, 0.5}), 3);

  auto aminus = annihilate_free(space, std::vector<double>{1.0, 0.0});
  CHECK(apply_to_vacuum(aminus).norm() == 0.0);

  // index of the word (e1, e2): length-2 block, numeral 0*2+1
  auto word_index = [&](const std::vector<int>& word) {
    long long start = 0;
    long long layer = 1;
    for (std::size_t k = 0; k < word.size(); ++k) {
      start += layer;
      layer *= space.base().dim();
    }
    long long within = 0;
    for (int letter : word) within = within * space.base().dim() + letter;
    return static_cast<int>(start + within);
  };
  CHECK(space.word_of(word_index({0, 1})) == std::vector<int>{0, 1});

  Eigen::VectorXd e = Eigen::VectorXd::Zero(space.dim());
  e(word_index({0, 1})) = 1.0;
  Eigen::VectorXd out = aminus.matrix() * e;
  CHECK(out(word_index({1})) == doctest::Approx(1.5));  // (e1,e1) = w1

  auto aplus = create_free(space, std::vector<double>{0.0, 2.0});
  Eigen::VectorXd created = aplus.matrix() * e;
  CHECK(created(word_index({1, 0, 1})) == doctest::Approx(2.0));

  auto neutral = neutral_free(space, std::vector<double>{0.25, -1.0});
  CHECK(apply_to_vacuum(neutral).norm() == 0.0);
  Eigen::VectorXd scaled = neutral.matrix() * e;
  CHECK(scaled(word_index({0, 1})) == doctest::Approx(0.25));
}

TEST_CASE("vacuum expectations") {
  SymFockSpace space(BaseSpace({1.0, 0.5}), 3);
  std::vector<double> phi{0.5, 1.0};
  auto aplus = create_sym(space, phi);
  auto aminus = annihilate_sym(space, phi);

  CHECK(vacuum_expectation(std::span<const FockOperator>{}) == 1.0);
  std::vector<FockOperator> pair{aminus, aplus};
  CHECK(vacuum_expectation(std::span<const FockOperator>(pair)) ==
        doctest::Approx(space.base().inner(phi, phi)));
  std::vector<FockOperator> single{aplus};
  CHECK(vacuum_expectation(std::span<const FockOperator>(single)) == 0.0);

  std::vector<FockOperator> toolong(4, aplus);
  CHECK_THROWS_AS(vacuum_expectation(std::span<const FockOperator>(toolong)), jfl::BoundsError);

  SymFockSpace other(BaseSpace({1.0, 0.5}), 3);
  std::vector<FockOperator> mixed{create_sym(other, phi), aplus};
  CHECK_THROWS_AS(vacuum_expectation(std::span<const FockOperator>(mixed)), jfl::ConfigError);
}

TEST_CASE("adjointness pins the normalization on both spaces") {
  std::mt19937 gen(321);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 2 + static_cast<int>(gen() % 4);
    auto weights = random_vec(gen, d, 0.5, 2.0);
    auto phi = random_vec(gen, d);

    SymFockSpace sym(BaseSpace(weights), 4);
    CHECK(adjointness_residual(create_sym(sym, phi), annihilate_sym(sym, phi)) <= 1e-12);

    FullFockSpace full(BaseSpace(weights), 4);
    CHECK(adjointness_residual(create_free(full, phi), annihilate_free(full, phi)) <= 1e-12);

    // neutral operators are symmetric under the Fock inner product
    auto g = random_vec(gen, d);
    CHECK(symmetry_residual(neutral_sym(sym, g)) <= 1e-12);
    CHECK(symmetry_residual(neutral_free(full, g)) <= 1e-12);
  }
}

TEST_CASE("canonical commutation relation on the symmetric space") {
  std::mt19937 gen(654);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 2 + static_cast<int>(gen() % 3);
    const int n = 4;
    auto weights = random_vec(gen, d, 0.5, 2.0);
    SymFockSpace space(BaseSpace(weights), n);
    auto phi = random_vec(gen, d);
    auto psi = random_vec(gen, d);
    auto commutator = annihilate_sym(space, phi) * create_sym(space, psi) -
                      create_sym(space, psi) * annihilate_sym(space, phi) -
                      space.base().inner(phi, psi) * identity(space.info());
    CHECK(max_column_norm(commutator, n - 1) <= 1e-12);
  }
}

TEST_CASE("free relation on the full space") {
  std::mt19937 gen(987);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 2 + static_cast<int>(gen() % 3);
    const int n = 4;
    auto weights = random_vec(gen, d, 0.5, 2.0);
    FullFockSpace space(BaseSpace(weights), n);
    auto phi = random_vec(gen, d);
    auto psi = random_vec(gen, d);
    auto rel = annihilate_free(space, phi) * create_free(space, psi) -
               space.base().inner(phi, psi) * identity(space.info());
    CHECK(max_column_norm(rel, n - 1) <= 1e-12);
  }
}

TEST_CASE("vacuum expectations are exactly truncation independent") {
  std::mt19937 gen(135);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2;
    const int length = 4;
    auto weights = random_vec(gen, d, 0.5, 2.0);
    SymFockSpace small(BaseSpace(weights), length);
    SymFockSpace big(BaseSpace(weights), length + 1);
    FullFockSpace fsmall(BaseSpace(weights), length);
    FullFockSpace fbig(BaseSpace(weights), length + 1);

    std::vector<FockOperator> ops_small;
    std::vector<FockOperator> ops_big;
    std::vector<FockOperator> fops_small;
    std::vector<FockOperator> fops_big;
    for (int i = 0; i < length; ++i) {
      auto v = random_vec(gen, d);
      switch (gen() % 3) {
        case 0:
          ops_small.push_back(create_sym(small, v));
          ops_big.push_back(create_sym(big, v));
          fops_small.push_back(create_free(fsmall, v));
          fops_big.push_back(create_free(fbig, v));
          break;
        case 1:
          ops_small.push_back(annihilate_sym(small, v));
          ops_big.push_back(annihilate_sym(big, v));
          fops_small.push_back(annihilate_free(fsmall, v));
          fops_big.push_back(annihilate_free(fbig, v));
          break;
        default:
          ops_small.push_back(neutral_sym(small, v));
          ops_big.push_back(neutral_sym(big, v));
          fops_small.push_back(neutral_free(fsmall, v));
          fops_big.push_back(neutral_free(fbig, v));
      }
    }
    CHECK(vacuum_expectation(std::span<const FockOperator>(ops_small)) ==
          vacuum_expectation(std::span<const FockOperator>(ops_big)));
    CHECK(vacuum_expectation(std::span<const FockOperator>(fops_small)) ==
          vacuum_expectation(std::span<const FockOperator>(fops_big)));
  }
}

TEST_CASE("basis sizes and word decoding") {
  SymFockSpace sym(BaseSpace({1.0, 1.0, 1.0}), 4);
  // sum_{m<=4} C(m+2,2) = 1+3+6+10+15
  CHECK(sym.dim() == 35);

  FullFockSpace full(BaseSpace({1.0, 1.0, 1.0}), 3);
  CHECK(full.dim() == 1 + 3 + 9 + 27);
  for (int idx = 0; idx < full.dim(); ++idx) {
    auto word = full.word_of(idx);
    CHECK(static_cast<int>(word.size()) == full.info()->degree[static_cast<std::size_t>(idx)]);
  }

  CHECK_THROWS_AS(BaseSpace({1.0, -1.0}), jfl::ConfigError);
  CHECK_THROWS_AS(SymFockSpace(BaseSpace({1.0}), 0), jfl::ConfigError);
  CHECK_THROWS_AS(create_sym(sym, std::vector<double>{1.0}), jfl::ConfigError);
}
