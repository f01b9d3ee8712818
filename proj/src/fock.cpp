#include "jfl/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace jfl::fock {

namespace {

constexpr long long kMaxBasisStates = 2'000'000;

void require_same_space(const FockOperator& a, const FockOperator& b) {
  if (a.space() != b.space()) throw ConfigError("operators live on different Fock spaces");
}

void require_phi_dim(const BaseSpace& base, std::span<const double> phi) {
  if (static_cast<int>(phi.size()) != base.dim()) {
    throw ConfigError("vector of dimension " + std::to_string(phi.size()) +
                      " does not match base space of dimension " + std::to_string(base.dim()));
  }
}

}  // namespace

BaseSpace::BaseSpace(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ConfigError("base space needs positive dimension");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("base space weights must be strictly positive");
  }
}

double BaseSpace::inner(std::span<const double> u, std::span<const double> v) const {
  require_phi_dim(*this, u);
  require_phi_dim(*this, v);
  double s = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) s += u[k] * v[k] * weights_[k];
  return s;
}

FockOperator::FockOperator(std::shared_ptr<const SpaceInfo> space, Eigen::SparseMatrix<double> matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(space_->gram.size());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ConfigError("operator matrix does not match the basis size");
  }
}

FockOperator FockOperator::operator+(const FockOperator& other) const {
  require_same_space(*this, other);
  return FockOperator(space_, matrix_ + other.matrix_);
}

FockOperator FockOperator::operator-(const FockOperator& other) const {
  require_same_space(*this, other);
  return FockOperator(space_, matrix_ - other.matrix_);
}

FockOperator FockOperator::operator*(const FockOperator& other) const {
  require_same_space(*this, other);
  return FockOperator(space_, Eigen::SparseMatrix<double>(matrix_ * other.matrix_));
}

FockOperator operator*(double scale, const FockOperator& op) {
  return FockOperator(op.space_, Eigen::SparseMatrix<double>(scale * op.matrix_));
}

SymFockSpace::SymFockSpace(BaseSpace base, int truncation) : base_(std::move(base)), truncation_(truncation) {
  if (truncation_ < 1) throw ConfigError("truncation must be at least 1");
  const int d = base_.dim();

  // count = sum_{m<=N} C(m+d-1, d-1)
  long long count = 0;
  {
    long long layer = 1;  // C(m+d-1, d-1) built multiplicatively
    for (int m = 0; m <= truncation_; ++m) {
      count += layer;
      layer = layer * (m + d) / (m + 1);
      if (count > kMaxBasisStates) throw BoundsError("symmetric Fock basis would exceed " + std::to_string(kMaxBasisStates) + " states");
    }
  }

  occupations_.reserve(static_cast<std::size_t>(count));
  std::vector<int> occ(static_cast<std::size_t>(d), 0);
  for (int m = 0; m <= truncation_; ++m) {
    // compositions of m into d parts in lexicographic order
    auto emit = [&](auto&& self, int slot, int remaining) -> void {
      if (slot == d - 1) {
        occ[static_cast<std::size_t>(slot)] = remaining;
        occupations_.push_back(occ);
        return;
      }
      for (int take = 0; take <= remaining; ++take) {
        occ[static_cast<std::size_t>(slot)] = take;
        self(self, slot + 1, remaining - take);
      }
    };
    emit(emit, 0, m);
  }

  auto info = std::make_shared<SpaceInfo>();
  info->kind = SpaceInfo::Kind::symmetric;
  info->base_dim = d;
  info->truncation = truncation_;
  info->gram.reserve(occupations_.size());
  info->degree.reserve(occupations_.size());
  // gram(n) = prod_k n_k! w_k^{n_k}
  for (const auto& o : occupations_) {
    double g = 1.0;
    int deg = 0;
    for (int k = 0; k < d; ++k) {
      const double w = base_.weights()[static_cast<std::size_t>(k)];
      for (int j = 1; j <= o[static_cast<std::size_t>(k)]; ++j) g *= j * w;
      deg += o[static_cast<std::size_t>(k)];
    }
    info->gram.push_back(g);
    info->degree.push_back(deg);
  }
  info_ = std::move(info);
}

int SymFockSpace::index_of(const std::vector<int>& occupation) const {
  // binary search inside the degree block; occupations are degree-major and
  // lexicographic within each degree
  int deg = 0;
  for (int v : occupation) deg += v;
  auto cmp = [deg](const std::vector<int>& a, int adeg, const std::vector<int>& b, int bdeg) {
    if (adeg != bdeg) return adeg < bdeg;
    return a < b;
  };
  int lo = 0;
  int hi = dim() - 1;
  while (lo <= hi) {
    const int mid = (lo + hi) / 2;
    const auto& cand = occupations_[static_cast<std::size_t>(mid)];
    const int cdeg = info_->degree[static_cast<std::size_t>(mid)];
    if (cand == occupation) return mid;
    if (cmp(cand, cdeg, occupation, deg)) lo = mid + 1; else hi = mid - 1;
  }
  throw ConfigError("occupation vector outside the truncated basis");
}

FullFockSpace::FullFockSpace(BaseSpace base, int truncation) : base_(std::move(base)), truncation_(truncation) {
  if (truncation_ < 1) throw ConfigError("truncation must be at least 1");
  const int d = base_.dim();
  offsets_.push_back(0);
  long long total = 0;
  long long layer = 1;
  for (int m = 0; m <= truncation_; ++m) {
    total += layer;
    if (total > kMaxBasisStates) throw BoundsError("full Fock basis would exceed " + std::to_string(kMaxBasisStates) + " states");
    offsets_.push_back(total);
    layer *= d;
  }
  dim_ = static_cast<int>(total);

  auto info = std::make_shared<SpaceInfo>();
  info->kind = SpaceInfo::Kind::full;
  info->base_dim = d;
  info->truncation = truncation_;
  info->gram.resize(static_cast<std::size_t>(dim_));
  info->degree.resize(static_cast<std::size_t>(dim_));
  for (int idx = 0; idx < dim_; ++idx) {
    const auto word = word_of(idx);
    double g = 1.0;
    for (int letter : word) g *= base_.weights()[static_cast<std::size_t>(letter)];
    info->gram[static_cast<std::size_t>(idx)] = g;
    info->degree[static_cast<std::size_t>(idx)] = static_cast<int>(word.size());
  }
  info_ = std::move(info);
}

std::vector<int> FullFockSpace::word_of(int index) const {
  int m = 0;
  while (offsets_[static_cast<std::size_t>(m) + 1] <= index) ++m;
  long long within = index - offsets_[static_cast<std::size_t>(m)];
  std::vector<int> word(static_cast<std::size_t>(m));
  for (int k = m - 1; k >= 0; --k) {
    word[static_cast<std::size_t>(k)] = static_cast<int>(within % base_.dim());
    within /= base_.dim();
  }
  return word;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

FockOperator build(const std::shared_ptr<const SpaceInfo>& info, const Triplets& triplets) {
  const auto n = static_cast<Eigen::Index>(info->gram.size());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return FockOperator(info, std::move(m));
}

}  // namespace

FockOperator create_sym(const SymFockSpace& space, std::span<const double> phi) {
  require_phi_dim(space.base(), phi);
  Triplets t;
  std::vector<int> target;
  for (int src = 0; src < space.dim(); ++src) {
    if (space.info()->degree[static_cast<std::size_t>(src)] >= space.truncation()) continue;
    const auto& occ = space.occupations()[static_cast<std::size_t>(src)];
    for (int j = 0; j < space.base().dim(); ++j) {
      if (phi[static_cast<std::size_t>(j)] == 0.0) continue;
      target = occ;
      ++target[static_cast<std::size_t>(j)];
      t.emplace_back(space.index_of(target), src, phi[static_cast<std::size_t>(j)]);
    }
  }
  return build(space.info(), t);
}

FockOperator annihilate_sym(const SymFockSpace& space, std::span<const double> phi) {
  require_phi_dim(space.base(), phi);
  Triplets t;
  std::vector<int> target;
  for (int src = 0; src < space.dim(); ++src) {
    const auto& occ = space.occupations()[static_cast<std::size_t>(src)];
    for (int j = 0; j < space.base().dim(); ++j) {
      const int n = occ[static_cast<std::size_t>(j)];
      if (n == 0 || phi[static_cast<std::size_t>(j)] == 0.0) continue;
      target = occ;
      --target[static_cast<std::size_t>(j)];
      const double w = space.base().weights()[static_cast<std::size_t>(j)];
      t.emplace_back(space.index_of(target), src, phi[static_cast<std::size_t>(j)] * n * w);
    }
  }
  return build(space.info(), t);
}

FockOperator neutral_sym(const SymFockSpace& space, std::span<const double> g) {
  require_phi_dim(space.base(), g);
  Triplets t;
  for (int src = 0; src < space.dim(); ++src) {
    const auto& occ = space.occupations()[static_cast<std::size_t>(src)];
    double eig = 0.0;
    for (int j = 0; j < space.base().dim(); ++j) eig += occ[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)];
    if (eig != 0.0) t.emplace_back(src, src, eig);
  }
  return build(space.info(), t);
}

FockOperator create_free(const FullFockSpace& space, std::span<const double> phi) {
  require_phi_dim(space.base(), phi);
  const int d = space.base().dim();
  Triplets t;
  // prepending letter j to a length-m word: indices inside a length block are
  // base-d numerals with the first letter most significant
  for (int m = 0; m < space.truncation(); ++m) {
    long long block = 1;  // d^m
    long long src_start = 0;
    {
      long long layer = 1;
      for (int k = 0; k < m; ++k) {
        src_start += layer;
        layer *= d;
      }
      block = layer;
    }
    const long long dst_start = src_start + block;
    for (long long within = 0; within < block; ++within) {
      for (int j = 0; j < d; ++j) {
        if (phi[static_cast<std::size_t>(j)] == 0.0) continue;
        t.emplace_back(static_cast<int>(dst_start + j * block + within),
                       static_cast<int>(src_start + within), phi[static_cast<std::size_t>(j)]);
      }
    }
  }
  return build(space.info(), t);
}

FockOperator annihilate_free(const FullFockSpace& space, std::span<const double> phi) {
  require_phi_dim(space.base(), phi);
  const int d = space.base().dim();
  Triplets t;
  for (int m = 1; m <= space.truncation(); ++m) {
    long long block = 1;
    for (int k = 0; k + 1 < m; ++k) block *= d;  // d^(m-1)
    long long rest_start = 0;
    {
      long long layer = 1;
      for (int k = 0; k + 1 < m; ++k) {
        rest_start += layer;
        layer *= d;
      }
    }
    const long long src_start = rest_start + block;
    for (int j = 0; j < d; ++j) {
      if (phi[static_cast<std::size_t>(j)] == 0.0) continue;
      const double w = space.base().weights()[static_cast<std::size_t>(j)];
      for (long long within = 0; within < block; ++within) {
        t.emplace_back(static_cast<int>(rest_start + within),
                       static_cast<int>(src_start + j * block + within),
                       phi[static_cast<std::size_t>(j)] * w);
      }
    }
  }
  return build(space.info(), t);
}

FockOperator neutral_free(const FullFockSpace& space, std::span<const double> g) {
  require_phi_dim(space.base(), g);
  const int d = space.base().dim();
  Triplets t;
  for (int m = 1; m <= space.truncation(); ++m) {
    long long block = 1;
    for (int k = 0; k + 1 < m; ++k) block *= d;
    long long start = 0;
    {
      long long layer = 1;
      for (int k = 0; k < m; ++k) {
        start += layer;
        layer *= d;
      }
    }
    for (int j = 0; j < d; ++j) {
      if (g[static_cast<std::size_t>(j)] == 0.0) continue;
      for (long long within = 0; within < block; ++within) {
        const int idx = static_cast<int>(start + j * block + within);
        t.emplace_back(idx, idx, g[static_cast<std::size_t>(j)]);
      }
    }
  }
  return build(space.info(), t);
}

FockOperator identity(const std::shared_ptr<const SpaceInfo>& space) {
  const auto n = static_cast<Eigen::Index>(space->gram.size());
  Eigen::SparseMatrix<double> m(n, n);
  m.setIdentity();
  return FockOperator(space, std::move(m));
}

double vacuum_expectation(std::span<const FockOperator* const> ops) {
  if (ops.empty()) return 1.0;
  const auto& space = ops.front()->space();
  for (const auto* op : ops) {
    if (op->space() != space) throw ConfigError("operators live on different Fock spaces");
  }
  const int length = static_cast<int>(ops.size());
  if (length > space->truncation) {
    throw BoundsError("product of length " + std::to_string(length) +
                      " exceeds truncation " + std::to_string(space->truncation) +
                      "; the projected top degree would contaminate the result");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space->gram.size()));
  v(0) = 1.0;
  for (int i = length - 1; i >= 0; --i) v = ops[static_cast<std::size_t>(i)]->matrix() * v;
  return v(0);  // <v, Omega>_F with gram(Omega) = 1
}

double vacuum_expectation(std::span<const FockOperator> ops) {
  std::vector<const FockOperator*> ptrs;
  ptrs.reserve(ops.size());
  for (const auto& op : ops) ptrs.push_back(&op);
  return vacuum_expectation(std::span<const FockOperator* const>(ptrs.data(), ptrs.size()));
}

double adjointness_residual(const FockOperator& a, const FockOperator& b) {
  require_same_space(a, b);
  const auto& gram = a.space()->gram;
  Eigen::SparseMatrix<double> lhs = a.matrix().transpose();
  Eigen::SparseMatrix<double> rhs = b.matrix();
  // scale rows of rhs and columns of lhs by the Gram diagonal
  Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(gram.data(), static_cast<Eigen::Index>(gram.size()));
  Eigen::SparseMatrix<double> diff = lhs * g.asDiagonal() - Eigen::SparseMatrix<double>(g.asDiagonal() * rhs);
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

double symmetry_residual(const FockOperator& op) { return adjointness_residual(op, op); }

double max_column_norm(const FockOperator& op, int max_degree) {
  const auto& info = *op.space();
  double worst = 0.0;
  for (int col = 0; col < static_cast<int>(info.gram.size()); ++col) {
    if (info.degree[static_cast<std::size_t>(col)] > max_degree) continue;
    double sq = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.matrix(), col); it; ++it) {
      sq += it.value() * it.value() * info.gram[static_cast<std::size_t>(it.row())];
    }
    worst = std::max(worst, std::sqrt(sq / info.gram[static_cast<std::size_t>(col)]));
  }
  return worst;
}

}  // namespace jfl::fock
