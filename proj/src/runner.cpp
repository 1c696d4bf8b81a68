#include "hdc/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <deque>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "hdc/algebra.hpp"
#include "hdc/capacity.hpp"
#include "hdc/csv.hpp"
#include "hdc/oracle.hpp"
#include "hdc/parallel.hpp"
#include "hdc/spatial.hpp"

namespace hdc {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

class UsageError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw UsageError("invalid integer '" + std::string(s) + "' in " + std::string(what));
  return v;
}

double parse_double(std::string_view s, std::string_view what) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw UsageError("invalid number '" + std::string(s) + "' for " + std::string(what));
  return v;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

// ---------------------------------------------------------------------------
// Option resolution: explicit flag, then --config JSON, then built-in default.

class Settings {
 public:
  explicit Settings(CLI::App& app) : app_(app) {
    app_.add_option("--config", config_path_, "JSON config file; explicit flags override it");
  }

  void option(const std::string& name, std::string fallback, const std::string& help) {
    Entry& e = entries_.emplace_back();
    e.name = name;
    e.fallback = std::move(fallback);
    e.opt = app_.add_option("--" + name, e.value, help)->default_str(e.fallback);
  }

  void flag(const std::string& name, const std::string& help) {
    Entry& e = entries_.emplace_back();
    e.name = name;
    e.fallback = "false";
    e.is_flag = true;
    e.opt = app_.add_flag("--" + name, e.flag_value, help)->default_str("false");
  }

  void resolve() {
    json config = json::object();
    if (!config_path_.empty()) {
      std::ifstream in(config_path_);
      if (!in) throw UsageError("cannot open config file " + config_path_);
      try {
        config = json::parse(in);
      } catch (const json::exception& ex) {
        throw UsageError("config file " + config_path_ + ": " + ex.what());
      }
      if (!config.is_object()) throw UsageError("config file must hold a JSON object");
    }
    std::set<std::string> known;
    for (const auto& e : entries_) known.insert(e.name);
    for (const auto& [key, _] : config.items())
      if (!known.contains(key)) throw UsageError("unknown config key '" + key + "'");

    for (const auto& e : entries_) {
      std::string v = e.fallback;
      if (e.opt->count() > 0) {
        v = e.is_flag ? (e.flag_value ? "true" : "false") : e.value;
      } else if (config.contains(e.name)) {
        v = json_to_setting(config.at(e.name));
      }
      resolved_[e.name] = v;
    }
  }

  const std::string& str(const std::string& name) const { return resolved_.at(name); }
  int integer(const std::string& name) const { return parse_int(str(name), "--" + name); }
  double number(const std::string& name) const { return parse_double(str(name), "--" + name); }
  std::uint64_t u64(const std::string& name) const {
    const std::string& s = str(name);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw UsageError("invalid unsigned integer '" + s + "' for --" + name);
    return v;
  }
  bool boolean(const std::string& name) const {
    const std::string& s = str(name);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw UsageError("invalid boolean '" + s + "' for --" + name);
  }
  std::vector<int> int_list(const std::string& name) const {
    try {
      return parse_int_list(str(name));
    } catch (const InvalidArgument& ex) {
      throw UsageError("--" + name + ": " + ex.what());
    }
  }
  std::vector<double> numbers(const std::string& name, std::size_t count) const {
    const auto parts = split_commas(str(name));
    if (parts.size() != count)
      throw UsageError("--" + name + " expects " + std::to_string(count) + " comma-separated values");
    std::vector<double> out;
    for (auto p : parts) out.push_back(parse_double(p, "--" + name));
    return out;
  }

  json to_json() const {
    json j = json::object();
    for (const auto& e : entries_) {
      if (e.is_flag)
        j[e.name] = boolean(e.name);
      else
        j[e.name] = str(e.name);
    }
    return j;
  }

 private:
  struct Entry {
    std::string name;
    std::string fallback;
    std::string value;
    bool flag_value = false;
    bool is_flag = false;
    CLI::Option* opt = nullptr;
  };

  static std::string json_to_setting(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_array()) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += json_to_setting(v[i]);
      }
      return out;
    }
    throw UsageError("unsupported config value " + v.dump());
  }

  CLI::App& app_;
  std::string config_path_;
  std::deque<Entry> entries_;
  std::map<std::string, std::string> resolved_;
};

std::string default_seed() {
  if (const char* env = std::getenv("HDC_SEED"); env && *env) return env;
  return "0";
}

void add_common(Settings& s, const std::string& out_default) {
  s.option("seed", default_seed(), "master seed (falls back to $HDC_SEED)");
  s.option("workers", std::to_string(default_workers()), "worker threads");
  s.option("out", out_default, "output directory");
}

unsigned workers_of(const Settings& s) {
  const int w = s.integer("workers");
  if (w < 1) throw UsageError("--workers must be >= 1");
  return static_cast<unsigned>(w);
}

GridSpec grid_of(const Settings& s) {
  const auto v = s.numbers("grid", 6);
  GridSpec g;
  g.x_min = v[0];
  g.x_max = v[1];
  g.y_min = v[2];
  g.y_max = v[3];
  if (v[4] < 2 || v[5] < 2 || v[4] != std::floor(v[4]) || v[5] != std::floor(v[5]))
    throw UsageError("--grid sample counts must be integers >= 2");
  g.nx = static_cast<std::size_t>(v[4]);
  g.ny = static_cast<std::size_t>(v[5]);
  try {
    g.validate();
  } catch (const InvalidArgument& ex) {
    throw UsageError(std::string("--grid: ") + ex.what());
  }
  return g;
}

// ---------------------------------------------------------------------------
// Output files and manifest.

struct OutputFile {
  std::string name;
  std::string sha256;
  std::uintmax_t bytes;
};

class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir_ / name;
    {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + path.string());
      body(out);
      out.flush();
      if (!out) throw std::runtime_error("write failed for " + path.string());
    }
    files_.push_back({name, sha256_file(path), fs::file_size(path)});
  }

  void manifest(const std::string& command, const json& config, std::uint64_t seed,
                const json& metadata) {
    json m;
    m["tool"] = "hdc";
    m["version"] = std::string(kToolVersion);
    m["command"] = command;
    m["config"] = config;
    m["seed"] = seed;
    m["timestamp"] = timestamp();
    m["metadata"] = metadata;
    m["outputs"] = json::array();
    for (const auto& f : files_)
      m["outputs"].push_back({{"file", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    std::ofstream out(dir_ / "manifest.json", std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest in " + dir_.string());
    out << m.dump(2) << '\n';
    if (!out) throw std::runtime_error("manifest write failed in " + dir_.string());
  }

 private:
  static std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
  }

  fs::path dir_;
  std::vector<OutputFile> files_;
};

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_superposition(const Settings& s, std::ostream& out) {
  SuperpositionConfig cfg;
  cfg.dims = s.int_list("dims");
  cfg.n_values = s.int_list("n");
  cfg.vocab_repeats = s.integer("repeats");
  cfg.seed = s.u64("seed");
  cfg.validate();

  const auto records = run_superposition(cfg, workers_of(s));
  const auto summary = summarize(records, GroupKey::n_total, "superposition");

  OutputDir dir(s.str("out"));
  dir.write("records.csv", [&](std::ostream& os) { write_records_csv(os, records); });
  dir.write("records_raw.csv", [&](std::ostream& os) { write_records_csv(os, records, true); });
  dir.write("summary.csv", [&](std::ostream& os) { write_summary_csv(os, summary); });
  dir.manifest("superposition", s.to_json(), cfg.seed,
               {{"similarity", "cosine"},
                {"raw_similarity_file", "records_raw.csv"},
                {"box_pooling", "samples pooled across vocabularies per (dim, n)"}});
  out << "superposition: " << records.size() << " records written to " << s.str("out") << '\n';
  return 0;
}

int cmd_spatial(const Settings& s, std::ostream& out) {
  SpatialConfig cfg;
  cfg.dims = s.int_list("dims");
  cfg.n_values = s.int_list("n");
  cfg.trials = s.integer("trials");
  cfg.membership_eps = s.number("eps");
  const auto range = s.numbers("coord-range", 2);
  cfg.coord_min = range[0];
  cfg.coord_max = range[1];
  cfg.grid = grid_of(s);
  cfg.seed = s.u64("seed");
  if (const auto cap = s.u64("max-partitions"); cap > 0) cfg.max_partitions = cap;
  cfg.normalize_query = !s.boolean("no-normalize");
  cfg.duplicate_positions = s.boolean("duplicate-positions");
  try {
    cfg.validate();
  } catch (const InvalidArgument& ex) {
    throw UsageError(ex.what());
  }

  std::vector<CapacityRecord> records;
  try {
    records = run_spatial(cfg, workers_of(s));
  } catch (const PartitionCapExceeded& ex) {
    throw UsageError("n = " + std::to_string(ex.n) + " exceeds " + std::to_string(ex.limit) +
                     " and full partition enumeration is disabled beyond that; pass "
                     "--max-partitions N to sample at most N partitions per n");
  }
  const auto by_n = summarize(records, GroupKey::n_total, "spatial");
  const auto grouped = group_by_class_size(records);
  const auto by_k = summarize(grouped, GroupKey::class_size, "spatial-class-size");

  OutputDir dir(s.str("out"));
  dir.write("records.csv", [&](std::ostream& os) { write_records_csv(os, records); });
  dir.write("summary_by_n.csv", [&](std::ostream& os) { write_summary_csv(os, by_n); });
  dir.write("summary_by_class_size.csv", [&](std::ostream& os) { write_summary_csv(os, by_k); });
  dir.manifest("spatial", s.to_json(), cfg.seed,
               {{"similarity", cfg.normalize_query ? "absolute cosine" : "absolute dot"},
                {"query_normalized", cfg.normalize_query},
                {"membership", "per-axis box |x - gx| < eps and |y - gy| < eps"},
                {"duplicate_positions", cfg.duplicate_positions}});
  out << "spatial: " << records.size() << " class queries written to " << s.str("out") << '\n';
  return 0;
}

int cmd_heatmap(const Settings& s, std::ostream& out) {
  const std::string scene_path = s.str("scene");
  if (scene_path.empty()) throw UsageError("--scene is required");
  const int dim = s.integer("dim");
  if (dim < 2) throw UsageError("--dim must be >= 2");
  const GridSpec grid = grid_of(s);
  const std::uint64_t seed = s.u64("seed");
  const HeatmapOptions opts{.normalize = !s.boolean("no-normalize"),
                            .absolute = !s.boolean("signed")};

  std::ifstream in(scene_path);
  if (!in) throw UsageError("cannot open scene file " + scene_path);
  LabeledScene scene;
  try {
    scene.objects = read_scene_csv(in);
  } catch (const ParseError& ex) {
    throw UsageError(scene_path + ": " + ex.what());
  }

  std::size_t classes = 0;
  for (const auto& o : scene.objects) classes = std::max(classes, o.class_id + 1);
  const RandomStream root(seed);
  RandomStream vocab_rng = root.child(Purpose::vocabulary);
  for (std::size_t c = 0; c < classes; ++c) scene.vocabulary.push_back(random_unit(dim, vocab_rng));
  const SpatialAxes axes = SpatialAxes::random(dim, root);
  const HrrVector encoded = encode_scene(axes, scene);
  const GridBasis basis(axes, grid);

  std::set<std::size_t> present;
  for (const auto& o : scene.objects) present.insert(o.class_id);

  OutputDir dir(s.str("out"));
  SimilarityHeatmap joint;
  bool first = true;
  for (std::size_t c : present) {
    const SimilarityHeatmap hm = basis.evaluate(query_class(encoded, scene.vocabulary[c]), opts);
    dir.write("heatmap_class_" + std::to_string(c) + ".csv",
              [&](std::ostream& os) { write_heatmap_csv(os, hm); });
    if (first) {
      joint = hm;
      first = false;
    } else {
      joint.values = joint.values.cwiseMax(hm.values);
    }
  }
  dir.write("heatmap_joint.csv", [&](std::ostream& os) { write_heatmap_csv(os, joint); });
  dir.manifest("heatmap", s.to_json(), seed,
               {{"query_normalized", opts.normalize},
                {"values", opts.absolute ? "absolute" : "signed"},
                {"joint", "cellwise maximum over class heatmaps"}});
  out << "heatmap: " << present.size() << " class heatmaps written to " << s.str("out") << '\n';
  return 0;
}

int cmd_selftest(const Settings& s, std::ostream& out) {
  RandomStream root(s.u64("seed"));
  int failures = 0;
  auto report = [&](const std::string& name, bool ok, double worst) {
    out << (ok ? "PASS " : "FAIL ") << name << " (worst " << format_double(worst) << ")\n";
    if (!ok) ++failures;
  };

  double worst = 0;
  for (int dim : {4, 8, 64, 256}) {
    RandomStream rng = root.derive({1, static_cast<std::uint64_t>(dim)});
    for (int i = 0; i < 100; ++i) {
      const HrrVector v = random_unit(dim, rng);
      const HrrVector w = random_unit(dim, rng);
      worst = std::max(worst, (bind(v, w) - oracle::circular_convolution(v, w)).cwiseAbs().maxCoeff());
    }
  }
  report("bind matches direct circular convolution", worst < 1e-10, worst);

  constexpr int dim = 512;
  RandomStream rng = root.child(2);
  double w_one = 0, w_zero = 0, w_add = 0, w_inv = 0, w_norm = 0;
  for (int i = 0; i < 100; ++i) {
    const HrrVector v = random_unit(dim, rng);
    const HrrVector u = random_unitary(dim, rng);
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(-3.0, 3.0);
    w_one = std::max(w_one, (power(v, 1.0) - v).cwiseAbs().maxCoeff());
    w_zero = std::max(w_zero, (power(v, 0.0) - identity(dim)).cwiseAbs().maxCoeff());
    w_add = std::max(w_add, (bind(power(u, a), power(u, b)) - oracle::unitary_power_from_phases(u, a + b))
                                .cwiseAbs()
                                .maxCoeff());
    w_inv = std::max(w_inv, std::abs(similarity(bind(bind(v, u), involution(u)), v) - 1.0));
    w_norm = std::max(w_norm, std::abs(bind(v, u).norm() - v.norm()));
  }
  report("power(v, 1) = v", w_one < 1e-10, w_one);
  report("power(v, 0) = identity", w_zero < 1e-10, w_zero);
  report("exponent additivity for unitary vectors", w_add < 1e-8, w_add);
  report("exact unbinding with unitary vectors", w_inv < 1e-9, w_inv);
  report("unitary binding preserves norm", w_norm < 1e-9, w_norm);

  double mismatches = 0;
  for (int n = 1; n <= 30; ++n)
    if (partitions(n).size() != partition_count(n)) mismatches += 1;
  report("partition enumeration count matches p(n)", mismatches == 0, mismatches);

  out << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

std::vector<int> parse_int_list(std::string_view spec) {
  std::vector<int> out;
  if (spec.empty()) throw InvalidArgument("empty integer list");
  for (std::string_view item : split_commas(spec)) {
    if (item.empty()) throw InvalidArgument("empty item in integer list");
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse_int(item, "integer list"));
      continue;
    }
    std::string_view hi_part = item.substr(dots + 2);
    int step = 1;
    if (const std::size_t colon = hi_part.find(':'); colon != std::string_view::npos) {
      step = parse_int(hi_part.substr(colon + 1), "range step");
      hi_part = hi_part.substr(0, colon);
    }
    const int lo = parse_int(item.substr(0, dots), "range start");
    const int hi = parse_int(hi_part, "range end");
    if (step < 1) throw InvalidArgument("range step must be >= 1");
    if (lo > hi) throw InvalidArgument("range start exceeds end in '" + std::string(item) + "'");
    for (long long v = lo; v <= hi; v += step) out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 init failed");
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holographic reduced representation capacity experiments", "hdc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  auto* sup = app.add_subcommand("superposition", "superposition capacity sweep");
  Settings sup_s(*sup);
  sup_s.option("dims", "256,512,1024", "vector dimensions");
  sup_s.option("n", "1,5..200:5", "numbers of superposed vectors");
  sup_s.option("repeats", "3", "random vocabularies per (dim, n)");
  add_common(sup_s, "results/superposition");

  auto* spa = app.add_subcommand("spatial", "spatial capacity sweep over integer partitions");
  Settings spa_s(*spa);
  spa_s.option("dims", "256,512,1024", "vector dimensions");
  spa_s.option("n", "1..12", "total numbers of encoded objects");
  spa_s.option("trials", "3", "trials per (dim, n, partition)");
  spa_s.option("eps", "0.4", "membership half-width in scene units");
  spa_s.option("coord-range", "-4,4", "lo,hi range of sampled coordinates");
  spa_s.option("grid", "-5,5,-5,5,41,41", "x_min,x_max,y_min,y_max,nx,ny");
  spa_s.option("max-partitions", "0", "sample at most N partitions per n (0: enumerate all, n <= 15)");
  spa_s.flag("no-normalize", "compare the raw (unnormalized) class query against the grid");
  spa_s.flag("duplicate-positions", "place every object of a class at one shared position");
  add_common(spa_s, "results/spatial");

  auto* hm = app.add_subcommand("heatmap", "per-class similarity heatmaps for a scene file");
  Settings hm_s(*hm);
  hm_s.option("scene", "", "scene CSV with header class_id,x,y");
  hm_s.option("dim", "512", "vector dimension");
  hm_s.option("grid", "-5,5,-5,5,41,41", "x_min,x_max,y_min,y_max,nx,ny");
  hm_s.flag("no-normalize", "report raw dot products instead of cosine readings");
  hm_s.flag("signed", "keep the sign of similarities");
  add_common(hm_s, "results/heatmap");

  auto* self = app.add_subcommand("selftest", "oracle-equivalence checks of the vector algebra");
  Settings self_s(*self);
  self_s.option("seed", default_seed(), "master seed (falls back to $HDC_SEED)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (sup->parsed()) {
      sup_s.resolve();
      return cmd_superposition(sup_s, out);
    }
    if (spa->parsed()) {
      spa_s.resolve();
      return cmd_spatial(spa_s, out);
    }
    if (hm->parsed()) {
      hm_s.resolve();
      return cmd_heatmap(hm_s, out);
    }
    self_s.resolve();
    return cmd_selftest(self_s, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hdc
