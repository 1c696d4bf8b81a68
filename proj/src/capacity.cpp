#include "hdc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>
#include <utility>

#include "hdc/algebra.hpp"
#include "hdc/parallel.hpp"

namespace hdc {

std::string_view to_string(Experiment e) {
  return e == Experiment::superposition ? "superposition" : "spatial";
}

namespace {

void require_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw InvalidArgument("at least one dimension is required");
  for (int d : dims)
    if (d < 16) throw InvalidArgument("dimension must be >= 16, got " + std::to_string(d));
}

void require_n_values(const std::vector<int>& ns) {
  if (ns.empty()) throw InvalidArgument("at least one n value is required");
  for (int n : ns)
    if (n < 1) throw InvalidArgument("n must be >= 1, got " + std::to_string(n));
}

std::uint64_t u64(int v) { return static_cast<std::uint64_t>(v); }

}  // namespace

void SuperpositionConfig::validate() const {
  require_dims(dims);
  require_n_values(n_values);
  if (vocab_repeats < 1) throw InvalidArgument("repeats must be >= 1");
}

PartitionCapExceeded::PartitionCapExceeded(int n_, int limit_)
    : InvalidArgument("n = " + std::to_string(n_) + " exceeds the full-enumeration limit " +
                      std::to_string(limit_) + "; set a partition sampling cap"),
      n(n_),
      limit(limit_) {}

void SpatialConfig::validate() const {
  require_dims(dims);
  require_n_values(n_values);
  for (int n : n_values)
    if (n > kMaxPartitionN)
      throw InvalidArgument("n must be <= " + std::to_string(kMaxPartitionN));
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  grid.validate();
  if (!(membership_eps > 0) || !std::isfinite(membership_eps))
    throw InvalidArgument("membership eps must be > 0");
  if (!(coord_min < coord_max) || !std::isfinite(coord_min) || !std::isfinite(coord_max))
    throw InvalidArgument("coordinate range is empty");
  if (coord_min - membership_eps < grid.x_min || coord_max + membership_eps > grid.x_max ||
      coord_min - membership_eps < grid.y_min || coord_max + membership_eps > grid.y_max)
    throw InvalidArgument("coordinate range widened by eps must lie inside the grid window");
  if (max_partitions && *max_partitions == 0)
    throw InvalidArgument("max partitions must be >= 1");
}

std::vector<CapacityRecord> run_superposition(const SuperpositionConfig& config,
                                              unsigned workers) {
  config.validate();
  struct Task {
    int dim, n, repeat;
  };
  std::vector<Task> tasks;
  for (int dim : config.dims)
    for (int n : config.n_values)
      for (int r = 0; r < config.vocab_repeats; ++r) tasks.push_back({dim, n, r});

  const RandomStream root(config.seed);
  std::vector<CapacityRecord> out(tasks.size());
  parallel_for(tasks.size(), workers, [&](std::size_t i) {
    const Task& t = tasks[i];
    RandomStream rng = root.derive(
        {static_cast<std::uint64_t>(Purpose::superposition), u64(t.dim), u64(t.n), u64(t.repeat)});
    RandomStream vocab_rng = rng.child(Purpose::vocabulary);
    std::vector<HrrVector> vocab;
    vocab.reserve(2 * static_cast<std::size_t>(t.n));
    for (int k = 0; k < 2 * t.n; ++k) vocab.push_back(random_unit(t.dim, vocab_rng));
    const HrrVector s = superpose(std::span(vocab).first(static_cast<std::size_t>(t.n)));
    const double s_norm = s.norm();

    CapacityRecord rec;
    rec.experiment = Experiment::superposition;
    rec.dim = t.dim;
    rec.n_total = t.n;
    rec.trial = t.repeat;
    for (int k = 0; k < 2 * t.n; ++k) {
      const HrrVector& v = vocab[static_cast<std::size_t>(k)];
      const double raw = similarity(s, v);
      const double cos = s_norm == 0 ? 0.0 : raw / (s_norm * v.norm());
      if (k < t.n) {
        rec.member_sims.push_back(cos);
        rec.member_raw.push_back(raw);
      } else {
        rec.nonmember_sims.push_back(cos);
        rec.nonmember_raw.push_back(raw);
      }
    }
    out[i] = std::move(rec);
  });
  return out;
}

std::vector<IndexedPartition> spatial_partitions(const SpatialConfig& config, int n) {
  if (!config.max_partitions) {
    if (n > config.full_enumeration_limit)
      throw PartitionCapExceeded(n, config.full_enumeration_limit);
    std::vector<IndexedPartition> all;
    std::size_t index = 0;
    for_each_partition(n, [&](const Partition& p) { all.push_back({index++, p}); });
    return all;
  }
  const RandomStream rng =
      RandomStream(config.seed).derive({static_cast<std::uint64_t>(Purpose::sampling), u64(n)});
  return sample_partitions(n, *config.max_partitions, rng);
}

namespace {

struct SpatialTask {
  int dim;
  int n;
  const IndexedPartition* partition;
  int trial;
};

std::vector<CapacityRecord> run_spatial_trial(const SpatialConfig& config, const SpatialTask& t) {
  const auto& parts = t.partition->partition.parts;
  const RandomStream rng = RandomStream(config.seed).derive(
      {static_cast<std::uint64_t>(Purpose::spatial), u64(t.dim), u64(t.n),
       static_cast<std::uint64_t>(t.partition->index), u64(t.trial)});

  const SpatialAxes axes = SpatialAxes::random(t.dim, rng);
  LabeledScene scene;
  RandomStream label_rng = rng.child(Purpose::labels);
  for (std::size_t c = 0; c < parts.size(); ++c) scene.vocabulary.push_back(random_unit(t.dim, label_rng));

  RandomStream pos_rng = rng.child(Purpose::positions);
  for (std::size_t c = 0; c < parts.size(); ++c) {
    double x = 0, y = 0;
    for (int l = 0; l < parts[c]; ++l) {
      if (l == 0 || !config.duplicate_positions) {
        x = pos_rng.uniform(config.coord_min, config.coord_max);
        y = pos_rng.uniform(config.coord_min, config.coord_max);
      }
      scene.objects.push_back({c, x, y});
    }
  }

  const HrrVector s = encode_scene(axes, scene);
  const GridBasis basis(axes, config.grid);
  const GridSpec& g = config.grid;
  const double eps = config.membership_eps;

  std::vector<CapacityRecord> out;
  out.reserve(parts.size());
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const SimilarityHeatmap hm = basis.evaluate(
        query_class(s, scene.vocabulary[c]), {.normalize = config.normalize_query, .absolute = true});
    CapacityRecord rec;
    rec.experiment = Experiment::spatial;
    rec.dim = t.dim;
    rec.n_total = t.n;
    rec.partition = t.partition->partition;
    rec.partition_index = t.partition->index;
    rec.class_size = parts[c];
    rec.class_index = c;
    rec.trial = t.trial;
    for (std::size_t b = 0; b < g.ny; ++b) {
      const double gy = g.y_at(b);
      for (std::size_t a = 0; a < g.nx; ++a) {
        const double gx = g.x_at(a);
        const bool member = std::any_of(scene.objects.begin(), scene.objects.end(),
                                        [&](const LabeledObject& o) {
                                          return o.class_id == c && std::abs(o.x - gx) < eps &&
                                                 std::abs(o.y - gy) < eps;
                                        });
        const double v = hm.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        (member ? rec.member_sims : rec.nonmember_sims).push_back(v);
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::vector<CapacityRecord> run_spatial(const SpatialConfig& config, unsigned workers) {
  config.validate();
  std::map<int, std::vector<IndexedPartition>> by_n;
  for (int n : config.n_values)
    if (!by_n.contains(n)) by_n.emplace(n, spatial_partitions(config, n));

  std::vector<SpatialTask> tasks;
  for (int dim : config.dims)
    for (int n : config.n_values)
      for (const auto& p : by_n.at(n))
        for (int trial = 0; trial < config.trials; ++trial) tasks.push_back({dim, n, &p, trial});

  std::vector<std::vector<CapacityRecord>> slots(tasks.size());
  parallel_for(tasks.size(), workers,
               [&](std::size_t i) { slots[i] = run_spatial_trial(config, tasks[i]); });

  std::vector<CapacityRecord> out;
  for (auto& slot : slots)
    for (auto& rec : slot) out.push_back(std::move(rec));
  return out;
}

std::vector<CapacityRecord> group_by_class_size(std::span<const CapacityRecord> records) {
  std::map<std::pair<int, int>, CapacityRecord> groups;
  for (const auto& r : records) {
    auto [it, inserted] = groups.try_emplace({r.dim, r.class_size});
    CapacityRecord& g = it->second;
    if (inserted) {
      g.experiment = r.experiment;
      g.dim = r.dim;
      g.class_size = r.class_size;
      g.pooled_queries = 0;
    }
    g.pooled_queries += r.pooled_queries;
    g.member_sims.insert(g.member_sims.end(), r.member_sims.begin(), r.member_sims.end());
    g.nonmember_sims.insert(g.nonmember_sims.end(), r.nonmember_sims.begin(),
                            r.nonmember_sims.end());
  }
  std::vector<CapacityRecord> out;
  out.reserve(groups.size());
  for (auto& [key, rec] : groups) out.push_back(std::move(rec));
  return out;
}

std::vector<SummaryRow> summarize(std::span<const CapacityRecord> records, GroupKey key,
                                  std::string_view experiment_label) {
  if (records.empty()) throw InvalidArgument("summarize: no records");
  std::map<std::tuple<int, int, int>, std::vector<double>> pools;
  for (const auto& r : records) {
    const int k = key == GroupKey::n_total ? r.n_total : r.class_size;
    auto& m = pools[{r.dim, k, 0}];
    m.insert(m.end(), r.member_sims.begin(), r.member_sims.end());
    auto& nm = pools[{r.dim, k, 1}];
    nm.insert(nm.end(), r.nonmember_sims.begin(), r.nonmember_sims.end());
  }
  std::vector<SummaryRow> rows;
  for (auto& [k, samples] : pools) {
    if (samples.empty()) continue;
    const auto& [dim, group, role] = k;
    rows.push_back({std::string(experiment_label), dim, group, role == 0 ? "member" : "nonmember",
                    box_stats(std::move(samples))});
  }
  return rows;
}

bool record_order(const CapacityRecord& a, const CapacityRecord& b) {
  return std::tie(a.experiment, a.dim, a.n_total, a.partition_index, a.trial, a.class_index) <
         std::tie(b.experiment, b.dim, b.n_total, b.partition_index, b.trial, b.class_index);
}

}  // namespace hdc
