#include "hdc/partitions.hpp"

#include <numeric>
#include <string>

#include "hdc/error.hpp"

namespace hdc {

int Partition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(parts[i]);
  }
  return out;
}

namespace {

void require_range(int n) {
  if (n < 1 || n > kMaxPartitionN)
    throw InvalidArgument("partitions: n must be in [1, " + std::to_string(kMaxPartitionN) +
                          "], got " + std::to_string(n));
}

}  // namespace

void for_each_partition(int n, const std::function<void(const Partition&)>& visit) {
  require_range(n);
  Partition p{{n}};
  for (;;) {
    visit(p);
    // Strip trailing ones, decrement the last part > 1 and refill the
    // remainder greedily with parts no larger than it.
    int remainder = 0;
    while (!p.parts.empty() && p.parts.back() == 1) {
      remainder += 1;
      p.parts.pop_back();
    }
    if (p.parts.empty()) return;
    const int head = --p.parts.back();
    remainder += 1;
    while (remainder > 0) {
      const int part = remainder < head ? remainder : head;
      p.parts.push_back(part);
      remainder -= part;
    }
  }
}

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
  return out;
}

std::uint64_t partition_count(int n) {
  require_range(n);
  std::vector<std::int64_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::int64_t acc = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const std::int64_t sign = (k % 2) ? 1 : -1;
      acc += sign * p[static_cast<std::size_t>(m - g1)];
      if (g2 <= m) acc += sign * p[static_cast<std::size_t>(m - g2)];
    }
    p[static_cast<std::size_t>(m)] = acc;
  }
  return static_cast<std::uint64_t>(p[static_cast<std::size_t>(n)]);
}

std::vector<IndexedPartition> sample_partitions(int n, std::uint64_t max_count, RandomStream rng) {
  const std::uint64_t total = partition_count(n);
  std::vector<IndexedPartition> out;
  if (max_count == 0) return out;
  const bool take_all = total <= max_count;
  std::uint64_t needed = take_all ? total : max_count;
  std::uint64_t index = 0;
  // Selection sampling: keeps enumeration order, each subset equally likely.
  for_each_partition(n, [&](const Partition& p) {
    const std::uint64_t left = total - index;
    if (needed > 0 && (take_all || rng.below(left) < needed)) {
      out.push_back({static_cast<std::size_t>(index), p});
      --needed;
    }
    ++index;
  });
  return out;
}

}  // namespace hdc
