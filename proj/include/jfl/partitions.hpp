#ifndef JFL_PARTITIONS_HPP
#define JFL_PARTITIONS_HPP

#include <functional>
#include <span>
#include <vector>

#include "jfl/errors.hpp"

namespace jfl::partitions {

// Partition of {1,...,n} in canonical form: blocks sorted by their minimum
// element, elements within a block ascending.
struct SetPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  SetPartition() = default;
  // Canonicalizes and validates (disjoint nonempty blocks covering {1,...,n}).
  SetPartition(int ground_size, std::vector<std::vector<int>> raw_blocks);
};

enum class Mode { classical, free };

// Enumeration caps. All set partitions grow like Bell numbers, non-crossing
// ones like Catalan numbers; these keep worst-case enumeration around a
// second on a desktop.
inline constexpr int kMaxSetPartitionOrder = 12;
inline constexpr int kMaxNoncrossingOrder = 14;

bool is_noncrossing(const SetPartition& p);

// All partitions of {1,...,n} in restricted-growth-string order.
std::vector<SetPartition> enumerate_set_partitions(int n);

// The non-crossing partitions of {1,...,n}, same order as the full
// enumeration filtered by is_noncrossing.
std::vector<SetPartition> enumerate_noncrossing(int n);

// Streams partitions (all of them in classical mode, non-crossing in free
// mode) in restricted-growth-string order. The blocks buffer handed to the
// visitor is reused between calls; copy it if it must outlive the call.
using PartitionVisitor = std::function<void(const std::vector<std::vector<int>>&)>;
void for_each_partition(int n, Mode mode, const PartitionVisitor& visit);

// Multilinear block cumulant: receives the sorted 1-based elements of one
// block B = {b_1 < ... < b_k} and evaluates C^(k) at positions (b_1,...,b_k).
using CumulantFn = std::function<double(std::span<const int>)>;

// Partition sum  sum_pi prod_{B in pi} C(B)  over all partitions (classical)
// or the non-crossing ones (free).
double moments_from_cumulants(int n, const CumulantFn& cumulant, Mode mode);

// Inverts the diagonal partition sum: returns (c_1,...,c_n) such that feeding
// block-size-only cumulants c back into moments_from_cumulants reproduces
// moments[k-1] for every k. moments[k-1] holds the k-th raw moment.
std::vector<double> cumulants_from_moments(std::span<const double> moments, Mode mode);

}  // namespace jfl::partitions

#endif  // JFL_PARTITIONS_HPP
