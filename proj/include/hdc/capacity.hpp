#pragma once

// Monte-Carlo capacity experiments: how many items a single vector holds
// under plain superposition, and how many labeled positions per class it
// holds when positions are encoded with convolutive powers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/partitions.hpp"
#include "hdc/spatial.hpp"
#include "hdc/stats.hpp"

namespace hdc {

enum class Experiment { superposition, spatial };

std::string_view to_string(Experiment e);

struct SuperpositionConfig {
  std::vector<int> dims{256, 512, 1024};
  std::vector<int> n_values;
  int vocab_repeats = 3;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Raised when a spatial sweep asks for full partition enumeration of an n
/// above the enumeration limit without a sampling cap.
class PartitionCapExceeded : public InvalidArgument {
 public:
  explicit PartitionCapExceeded(int n, int limit);
  int n;
  int limit;
};

struct SpatialConfig {
  std::vector<int> dims{256, 512, 1024};
  std::vector<int> n_values;
  int trials = 3;
  GridSpec grid{};
  double membership_eps = 0.4;
  double coord_min = -4;
  double coord_max = 4;
  std::uint64_t seed = 0;
  // Sample at most this many partitions per n; required once any n exceeds
  // full_enumeration_limit.
  std::optional<std::uint64_t> max_partitions;
  int full_enumeration_limit = 15;
  // Scale each class query to unit norm before comparing against the grid.
  bool normalize_query = true;
  // Literal reading of the scene sum: every object of a class sits at the
  // class's single sampled position.
  bool duplicate_positions = false;

  void validate() const;
};

/// One experiment observation. Spatial records hold one class query; their
/// similarities are absolute values over the whole grid.
struct CapacityRecord {
  Experiment experiment = Experiment::superposition;
  int dim = 0;
  int n_total = 0;
  Partition partition;             // empty for superposition runs
  std::size_t partition_index = 0; // position in partition enumeration order
  int class_size = 0;              // spatial runs only
  std::size_t class_index = 0;
  int trial = 0;
  std::vector<double> member_sims;
  std::vector<double> nonmember_sims;
  // Superposition runs also keep the raw dot products behind the cosines.
  std::vector<double> member_raw;
  std::vector<double> nonmember_raw;
  // Number of class queries pooled into this record (group_by_class_size).
  std::size_t pooled_queries = 1;
};

std::vector<CapacityRecord> run_superposition(const SuperpositionConfig& config,
                                              unsigned workers = 1);

/// The partitions a spatial sweep visits for total n, with enumeration
/// indices. Throws PartitionCapExceeded per SpatialConfig::max_partitions.
std::vector<IndexedPartition> spatial_partitions(const SpatialConfig& config, int n);

std::vector<CapacityRecord> run_spatial(const SpatialConfig& config, unsigned workers = 1);

/// Pools every class query with the same (dim, class size) into one record,
/// concatenating samples in input order. Output sorted by (dim, class size).
std::vector<CapacityRecord> group_by_class_size(std::span<const CapacityRecord> records);

enum class GroupKey { n_total, class_size };

struct SummaryRow {
  std::string experiment;
  int dim = 0;
  int group_key = 0;
  std::string role;  // "member" or "nonmember"
  BoxStats stats;
};

/// Box statistics per (dim, key, role), sorted by those fields. Throws
/// InvalidArgument on empty input.
std::vector<SummaryRow> summarize(std::span<const CapacityRecord> records, GroupKey key,
                                  std::string_view experiment_label);

/// Strict total order used for output: experiment, dim, n, partition,
/// trial, class.
bool record_order(const CapacityRecord& a, const CapacityRecord& b);

}  // namespace hdc
