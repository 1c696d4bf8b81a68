#pragma once

// Encoding of 2-D positions and labeled scenes with convolutive powers of two
// unitary axis vectors, plus similarity heatmaps over coordinate grids.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hdc/algebra.hpp"
#include "hdc/random.hpp"

namespace hdc {

struct Point2 {
  double x = 0;
  double y = 0;
};

/// Pair of unitary basis vectors defining the encoding frame.
class SpatialAxes {
 public:
  /// Throws InvalidArgument unless both axes are unitary and of equal length.
  SpatialAxes(HrrVector x_axis, HrrVector y_axis);

  /// Fresh axes drawn from independent child streams of `rng`.
  static SpatialAxes random(Eigen::Index dim, const RandomStream& rng,
                            EdgeBins edges = EdgeBins::positive);

  const HrrVector& x_axis() const noexcept { return x_; }
  const HrrVector& y_axis() const noexcept { return y_; }
  Eigen::Index dim() const noexcept { return x_.size(); }

 private:
  HrrVector x_;
  HrrVector y_;
};

struct LabeledObject {
  std::size_t class_id = 0;
  double x = 0;
  double y = 0;
};

struct LabeledScene {
  std::vector<LabeledObject> objects;
  std::vector<HrrVector> vocabulary;  // unit-norm class label vectors
};

/// True when every pair of vocabulary vectors has |similarity| below the
/// strong threshold for their dimension.
bool vocabulary_quasi_orthogonal(std::span<const HrrVector> vocabulary);

/// Evenly spaced sample grid, endpoints included.
struct GridSpec {
  double x_min = -5;
  double x_max = 5;
  double y_min = -5;
  double y_max = 5;
  std::size_t nx = 41;
  std::size_t ny = 41;

  /// Throws InvalidArgument on an empty window or fewer than 2 samples per axis.
  void validate() const;
  double x_at(std::size_t a) const;
  double y_at(std::size_t b) const;
  std::size_t cells() const { return nx * ny; }
};

struct HeatmapOptions {
  bool normalize = false;  // scale the query to unit norm (cosine reading)
  bool absolute = true;    // report |similarity|
};

/// values(a, b) is the similarity at (x_at(a), y_at(b)).
struct SimilarityHeatmap {
  GridSpec grid;
  Eigen::MatrixXd values;
  bool normalized = false;
  bool absolute = true;
};

struct Peak {
  double x;
  double y;
  double value;
};

HrrVector encode_point(const SpatialAxes& axes, double x, double y);

/// Sum of encode_point over `points`; throws InvalidArgument when empty.
HrrVector encode_point_set(const SpatialAxes& axes, std::span<const Point2> points);

/// Sum over objects of bind(vocabulary[class_id], encode_point(x, y)).
/// An empty object list yields the zero vector.
HrrVector encode_scene(const SpatialAxes& axes, const LabeledScene& scene);

/// Unbinds a class label: bind(scene_vec, involution(label)).
HrrVector query_class(const HrrVector& scene_vec, const HrrVector& label);

/// Precomputed spectra of every grid comparison vector X^x * Y^y, so a
/// heatmap costs one forward FFT plus a small complex matrix product.
class GridBasis {
 public:
  GridBasis(const SpatialAxes& axes, const GridSpec& grid);

  SimilarityHeatmap evaluate(const HrrVector& query, HeatmapOptions opts = {}) const;

  const GridSpec& grid() const noexcept { return grid_; }
  Eigen::Index dim() const noexcept { return dim_; }

 private:
  GridSpec grid_;
  Eigen::Index dim_;
  Eigen::MatrixXcd x_conj_;  // nx x D, conjugated spectra of X^x
  Eigen::MatrixXcd y_conj_;  // ny x D, conjugated spectra of Y^y
};

SimilarityHeatmap heatmap(const HrrVector& query, const SpatialAxes& axes, const GridSpec& grid,
                          HeatmapOptions opts = {});

/// Strict 4-neighbour local maxima with value >= threshold, highest first;
/// ties keep row-major order (rows are fixed y).
std::vector<Peak> decode_peaks(const SimilarityHeatmap& hm, double threshold);

}  // namespace hdc
