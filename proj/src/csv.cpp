#include "hdc/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string_view>

namespace hdc {

ParseError::ParseError(std::size_t line_, const std::string& what)
    : Error("line " + std::to_string(line_) + ": " + what), line(line_) {}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line, std::string_view name) {
  field = trim(field);
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ParseError(line, "invalid " + std::string(name) + " '" + std::string(field) + "'");
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(value)) throw ParseError(line, std::string(name) + " is not finite");
  return value;
}

}  // namespace

void write_heatmap_csv(std::ostream& out, const SimilarityHeatmap& hm) {
  const GridSpec& g = hm.grid;
  out << format_double(g.x_min) << ',' << format_double(g.x_max) << ',' << format_double(g.y_min)
      << ',' << format_double(g.y_max) << ',' << g.nx << ',' << g.ny << ','
      << (hm.normalized ? 1 : 0) << '\n';
  for (Eigen::Index b = 0; b < hm.values.cols(); ++b) {
    for (Eigen::Index a = 0; a < hm.values.rows(); ++a) {
      if (a) out << ',';
      out << format_double(hm.values(a, b));
    }
    out << '\n';
  }
}

SimilarityHeatmap read_heatmap_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(lineno, "missing grid row");
  const auto head = split(trim(line));
  if (head.size() != 7) throw ParseError(lineno, "grid row needs 7 fields");
  SimilarityHeatmap hm;
  hm.grid.x_min = parse_field<double>(head[0], lineno, "x_min");
  hm.grid.x_max = parse_field<double>(head[1], lineno, "x_max");
  hm.grid.y_min = parse_field<double>(head[2], lineno, "y_min");
  hm.grid.y_max = parse_field<double>(head[3], lineno, "y_max");
  hm.grid.nx = parse_field<std::size_t>(head[4], lineno, "nx");
  hm.grid.ny = parse_field<std::size_t>(head[5], lineno, "ny");
  hm.normalized = parse_field<int>(head[6], lineno, "normalized") != 0;
  try {
    hm.grid.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(lineno, e.what());
  }
  hm.values.resize(static_cast<Eigen::Index>(hm.grid.nx), static_cast<Eigen::Index>(hm.grid.ny));
  bool any_negative = false;
  for (std::size_t b = 0; b < hm.grid.ny; ++b) {
    ++lineno;
    if (!std::getline(in, line)) throw ParseError(lineno, "missing heatmap row");
    const auto fields = split(trim(line));
    if (fields.size() != hm.grid.nx)
      throw ParseError(lineno, "expected " + std::to_string(hm.grid.nx) + " values");
    for (std::size_t a = 0; a < hm.grid.nx; ++a) {
      const double v = parse_field<double>(fields[a], lineno, "value");
      any_negative = any_negative || v < 0;
      hm.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
    }
  }
  hm.absolute = !any_negative;
  return hm;
}

std::vector<LabeledObject> read_scene_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool seen_header = false;
  std::vector<LabeledObject> objects;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    const auto fields = split(row);
    if (!seen_header) {
      if (fields.size() != 3 || trim(fields[0]) != "class_id" || trim(fields[1]) != "x" ||
          trim(fields[2]) != "y")
        throw ParseError(lineno, "expected header 'class_id,x,y'");
      seen_header = true;
      continue;
    }
    if (fields.size() != 3) throw ParseError(lineno, "expected 3 fields");
    objects.push_back({parse_field<std::size_t>(fields[0], lineno, "class_id"),
                       parse_field<double>(fields[1], lineno, "x"),
                       parse_field<double>(fields[2], lineno, "y")});
  }
  if (!seen_header) throw ParseError(std::max<std::size_t>(lineno, 1), "empty scene file");
  if (objects.empty()) throw ParseError(lineno, "scene has no objects");
  return objects;
}

void write_scene_csv(std::ostream& out, std::span<const LabeledObject> objects) {
  out << "class_id,x,y\n";
  for (const auto& o : objects)
    out << o.class_id << ',' << format_double(o.x) << ',' << format_double(o.y) << '\n';
}

void write_records_csv(std::ostream& out, std::span<const CapacityRecord> records, bool raw) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return record_order(records[a], records[b]);
  });
  out << "experiment,dim,n_total,partition,class_size,trial,role,similarity\n";
  std::string prefix;
  for (std::size_t i : order) {
    const CapacityRecord& r = records[i];
    const bool spatial = r.experiment == Experiment::spatial;
    prefix.clear();
    prefix += to_string(r.experiment);
    prefix += ',' + std::to_string(r.dim) + ',' + std::to_string(r.n_total) + ',';
    prefix += r.partition.to_string();
    prefix += ',';
    if (spatial) prefix += std::to_string(r.class_size);
    prefix += ',' + std::to_string(r.trial) + ',';
    const auto& members = raw ? r.member_raw : r.member_sims;
    const auto& others = raw ? r.nonmember_raw : r.nonmember_sims;
    for (double v : members) out << prefix << "member," << format_double(v) << '\n';
    for (double v : others) out << prefix << "nonmember," << format_double(v) << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "experiment,dim,group_key,role,count,q1,median,q3,lo_whisker,hi_whisker\n";
  for (const auto& r : rows) {
    const BoxStats& s = r.stats;
    out << r.experiment << ',' << r.dim << ',' << r.group_key << ',' << r.role << ',' << s.count
        << ',' << format_double(s.q1) << ',' << format_double(s.median) << ','
        << format_double(s.q3) << ',' << format_double(s.lo_whisker) << ','
        << format_double(s.hi_whisker) << '\n';
  }
}

}  // namespace hdc
