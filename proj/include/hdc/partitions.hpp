#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hdc/random.hpp"

namespace hdc {

/// An integer partition in canonical non-increasing order, e.g. {3, 2, 1}.
struct Partition {
  std::vector<int> parts;

  int total() const;
  /// Dash-joined form used in CSV output ("3-2-1"); empty for no parts.
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

inline constexpr int kMaxPartitionN = 64;

/// Visits every partition of n in reverse-lexicographic order, starting
/// with {n} and ending with {1, ..., 1}. Throws InvalidArgument unless
/// 1 <= n <= 64.
void for_each_partition(int n, const std::function<void(const Partition&)>& visit);

std::vector<Partition> partitions(int n);

/// Number of partitions of n (Euler's pentagonal recurrence).
std::uint64_t partition_count(int n);

/// At most `max_count` partitions of n, chosen uniformly without replacement
/// and returned in enumeration order together with their enumeration
/// indices. All partitions are returned when p(n) <= max_count.
struct IndexedPartition {
  std::size_t index;
  Partition partition;
};
std::vector<IndexedPartition> sample_partitions(int n, std::uint64_t max_count, RandomStream rng);

}  // namespace hdc
