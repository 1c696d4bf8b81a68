#include "hdc/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace hdc {

SpatialAxes::SpatialAxes(HrrVector x_axis, HrrVector y_axis)
    : x_(std::move(x_axis)), y_(std::move(y_axis)) {
  if (x_.size() != y_.size()) throw InvalidArgument("spatial axes differ in dimension");
  detail::require_dim(x_.size());
  if (!is_unitary(x_) || !is_unitary(y_)) throw InvalidArgument("spatial axes must be unitary");
}

SpatialAxes SpatialAxes::random(Eigen::Index dim, const RandomStream& rng, EdgeBins edges) {
  RandomStream xs = rng.child(Purpose::x_axis);
  RandomStream ys = rng.child(Purpose::y_axis);
  HrrVector x = random_unitary(dim, xs, edges);
  HrrVector y = random_unitary(dim, ys, edges);
  return SpatialAxes(std::move(x), std::move(y));
}

bool vocabulary_quasi_orthogonal(std::span<const HrrVector> vocabulary) {
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    const double strong = thresholds(vocabulary[i].size()).strong;
    for (std::size_t j = i + 1; j < vocabulary.size(); ++j)
      if (std::abs(similarity(vocabulary[i], vocabulary[j])) >= strong) return false;
  }
  return true;
}

void GridSpec::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
        std::isfinite(y_max)))
    throw InvalidArgument("grid bounds must be finite");
  if (!(x_min < x_max) || !(y_min < y_max)) throw InvalidArgument("grid window is empty");
  if (nx < 2 || ny < 2) throw InvalidArgument("grid needs at least 2 samples per axis");
}

double GridSpec::x_at(std::size_t a) const {
  if (a + 1 == nx) return x_max;
  return x_min + (x_max - x_min) * static_cast<double>(a) / static_cast<double>(nx - 1);
}

double GridSpec::y_at(std::size_t b) const {
  if (b + 1 == ny) return y_max;
  return y_min + (y_max - y_min) * static_cast<double>(b) / static_cast<double>(ny - 1);
}

HrrVector encode_point(const SpatialAxes& axes, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y))
    throw InvalidArgument("encode_point: coordinates must be finite");
  return bind(power(axes.x_axis(), x), power(axes.y_axis(), y));
}

HrrVector encode_point_set(const SpatialAxes& axes, std::span<const Point2> points) {
  if (points.empty()) throw InvalidArgument("encode_point_set: no points");
  HrrVector sum = HrrVector::Zero(axes.dim());
  for (const auto& p : points) sum += encode_point(axes, p.x, p.y);
  return sum;
}

HrrVector encode_scene(const SpatialAxes& axes, const LabeledScene& scene) {
  HrrVector sum = HrrVector::Zero(axes.dim());
  for (const auto& obj : scene.objects) {
    if (obj.class_id >= scene.vocabulary.size())
      throw InvalidArgument("encode_scene: class_id " + std::to_string(obj.class_id) +
                            " outside vocabulary of size " +
                            std::to_string(scene.vocabulary.size()));
    sum += bind(scene.vocabulary[obj.class_id], encode_point(axes, obj.x, obj.y));
  }
  return sum;
}

HrrVector query_class(const HrrVector& scene_vec, const HrrVector& label) {
  return bind(scene_vec, involution(label));
}

GridBasis::GridBasis(const SpatialAxes& axes, const GridSpec& grid)
    : grid_(grid), dim_(axes.dim()) {
  grid_.validate();
  x_conj_.resize(static_cast<Eigen::Index>(grid_.nx), dim_);
  y_conj_.resize(static_cast<Eigen::Index>(grid_.ny), dim_);
  for (std::size_t a = 0; a < grid_.nx; ++a)
    x_conj_.row(static_cast<Eigen::Index>(a)) =
        dft(power(axes.x_axis(), grid_.x_at(a))).conjugate().transpose();
  for (std::size_t b = 0; b < grid_.ny; ++b)
    y_conj_.row(static_cast<Eigen::Index>(b)) =
        dft(power(axes.y_axis(), grid_.y_at(b))).conjugate().transpose();
}

SimilarityHeatmap GridBasis::evaluate(const HrrVector& query, HeatmapOptions opts) const {
  if (query.size() != dim_)
    throw DimensionMismatch("heatmap: query dimension " + std::to_string(query.size()) +
                            " does not match axes dimension " + std::to_string(dim_));
  SimilarityHeatmap hm{grid_, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid_.nx),
                                                    static_cast<Eigen::Index>(grid_.ny)),
                       opts.normalize, opts.absolute};
  double scale = 1.0 / static_cast<double>(dim_);
  if (opts.normalize) {
    const double n = query.norm();
    if (n == 0) return hm;
    scale /= n;
  }
  // <q, P_ab> = (1/D) sum_j Q_j conj(X_a,j) conj(Y_b,j) for real q and P_ab.
  const Spectrum<double> q = dft(query);
  const Eigen::MatrixXcd weighted = x_conj_.array().rowwise() * q.transpose().array();
  hm.values = (weighted * y_conj_.transpose()).real() * scale;
  if (opts.absolute) hm.values = hm.values.cwiseAbs();
  return hm;
}

SimilarityHeatmap heatmap(const HrrVector& query, const SpatialAxes& axes, const GridSpec& grid,
                          HeatmapOptions opts) {
  return GridBasis(axes, grid).evaluate(query, opts);
}

std::vector<Peak> decode_peaks(const SimilarityHeatmap& hm, double threshold) {
  if (!(threshold >= 0)) throw InvalidArgument("decode_peaks: threshold must be >= 0");
  const auto nx = hm.values.rows();
  const auto ny = hm.values.cols();
  // Scanning rows of fixed y in ascending order makes the stable sort break
  // ties in row-major order.
  std::vector<Peak> peaks;
  for (Eigen::Index b = 0; b < ny; ++b) {
    for (Eigen::Index a = 0; a < nx; ++a) {
      const double v = hm.values(a, b);
      if (v < threshold) continue;
      const bool is_max = (a == 0 || v > hm.values(a - 1, b)) &&
                          (a + 1 == nx || v > hm.values(a + 1, b)) &&
                          (b == 0 || v > hm.values(a, b - 1)) &&
                          (b + 1 == ny || v > hm.values(a, b + 1));
      if (is_max)
        peaks.push_back({hm.grid.x_at(static_cast<std::size_t>(a)),
                         hm.grid.y_at(static_cast<std::size_t>(b)), v});
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& l, const Peak& r) { return l.value > r.value; });
  return peaks;
}

}  // namespace hdc
