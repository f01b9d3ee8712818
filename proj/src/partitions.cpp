#include "jfl/partitions.hpp"

#include <algorithm>
#include <string>

namespace jfl::partitions {

namespace {

void check_order(int n, Mode mode) {
  const int cap = mode == Mode::classical ? kMaxSetPartitionOrder : kMaxNoncrossingOrder;
  if (n < 1 || n > cap) {
    throw BoundsError("partition order " + std::to_string(n) + " out of range [1, " +
                      std::to_string(cap) + "]" +
                      (mode == Mode::classical ? " for set partitions" : " for non-crossing partitions"));
  }
}

// Appending elem (the largest element so far) to blocks[target] creates a
// crossing iff some other block straddles an element of the target block:
// b_1 < b_3 < b_2 < elem with b_1,b_2 in the other block, b_3 in the target.
bool creates_crossing(const std::vector<std::vector<int>>& blocks, std::size_t target) {
  const auto& t = blocks[target];
  if (t.empty()) return false;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (j == target) continue;
    const auto& other = blocks[j];
    if (other.size() < 2) continue;
    auto it = std::upper_bound(t.begin(), t.end(), other.front());
    if (it != t.end() && *it < other.back()) return true;
  }
  return false;
}

void enumerate_rec(int n, int next, bool noncrossing, std::vector<std::vector<int>>& blocks,
                   const PartitionVisitor& visit) {
  if (next > n) {
    visit(blocks);
    return;
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (noncrossing && creates_crossing(blocks, b)) continue;
    blocks[b].push_back(next);
    enumerate_rec(n, next + 1, noncrossing, blocks, visit);
    blocks[b].pop_back();
  }
  blocks.push_back({next});
  enumerate_rec(n, next + 1, noncrossing, blocks, visit);
  blocks.pop_back();
}

}  // namespace

SetPartition::SetPartition(int ground_size, std::vector<std::vector<int>> raw_blocks)
    : n(ground_size), blocks(std::move(raw_blocks)) {
  if (n < 1) throw ConfigError("partition ground set must be nonempty");
  for (auto& block : blocks) {
    if (block.empty()) throw ConfigError("partition contains an empty block");
    std::sort(block.begin(), block.end());
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  int covered = 0;
  for (const auto& block : blocks) {
    for (int e : block) {
      if (e < 1 || e > n) throw ConfigError("partition element " + std::to_string(e) + " outside {1,...," + std::to_string(n) + "}");
      if (seen[static_cast<std::size_t>(e)]) throw ConfigError("partition element " + std::to_string(e) + " appears twice");
      seen[static_cast<std::size_t>(e)] = 1;
      ++covered;
    }
  }
  if (covered != n) throw ConfigError("partition blocks do not cover the ground set");
}

bool is_noncrossing(const SetPartition& p) {
  // Two blocks cross iff their merged label sequence alternates at least
  // three times (contains ABAB or BABA as a subsequence).
  for (std::size_t i = 0; i + 1 < p.blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < p.blocks.size(); ++j) {
      const auto& a = p.blocks[i];
      const auto& b = p.blocks[j];
      std::size_t ia = 0;
      std::size_t ib = 0;
      int alternations = 0;
      int last = -1;  // 0 = from a, 1 = from b
      while (ia < a.size() || ib < b.size()) {
        int take;
        if (ia == a.size()) {
          take = 1;
        } else if (ib == b.size()) {
          take = 0;
        } else {
          take = a[ia] < b[ib] ? 0 : 1;
        }
        if (take == 0) ++ia; else ++ib;
        if (last >= 0 && take != last) ++alternations;
        last = take;
      }
      if (alternations >= 3) return false;
    }
  }
  return true;
}

void for_each_partition(int n, Mode mode, const PartitionVisitor& visit) {
  check_order(n, mode);
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  enumerate_rec(n, 1, mode == Mode::free, blocks, visit);
}

std::vector<SetPartition> enumerate_set_partitions(int n) {
  std::vector<SetPartition> out;
  for_each_partition(n, Mode::classical, [&](const auto& blocks) {
    SetPartition p;
    p.n = n;
    p.blocks = blocks;
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<SetPartition> enumerate_noncrossing(int n) {
  std::vector<SetPartition> out;
  for_each_partition(n, Mode::free, [&](const auto& blocks) {
    SetPartition p;
    p.n = n;
    p.blocks = blocks;
    out.push_back(std::move(p));
  });
  return out;
}

double moments_from_cumulants(int n, const CumulantFn& cumulant, Mode mode) {
  double sum = 0.0;
  for_each_partition(n, mode, [&](const std::vector<std::vector<int>>& blocks) {
    double prod = 1.0;
    for (const auto& block : blocks) {
      prod *= cumulant(std::span<const int>(block.data(), block.size()));
      if (prod == 0.0) break;
    }
    sum += prod;
  });
  return sum;
}

std::vector<double> cumulants_from_moments(std::span<const double> moments, Mode mode) {
  const int n = static_cast<int>(moments.size());
  check_order(n, mode);
  std::vector<double> c(moments.size(), 0.0);
  for (int k = 1; k <= n; ++k) {
    // Every partition of {1,...,k} other than the single-block one uses only
    // cumulants of order < k, so the order-k term can be solved for directly.
    const auto lower_orders = [&](std::span<const int> block) {
      return block.size() == static_cast<std::size_t>(k) ? 0.0 : c[block.size() - 1];
    };
    c[static_cast<std::size_t>(k) - 1] =
        moments[static_cast<std::size_t>(k) - 1] - moments_from_cumulants(k, lower_orders, mode);
  }
  return c;
}

}  // namespace jfl::partitions
