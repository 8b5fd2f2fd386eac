#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gngshape/boundary.hpp"
#include "gngshape/graph.hpp"

namespace gngshape {

/// Largest disk radius used by each feature block.
struct ScaleConfig {
  int perimeter = 10;
  int boundary = 10;
  int hull = 10;
  int center = 10;
  /// Cutoff on the mean difference between neighboring scales, used when
  /// scale counts are selected automatically.
  double threshold = 0.5;

  int total() const { return perimeter + boundary + hull + center; }
  void validate() const;
  std::string describe() const;
  friend bool operator==(const ScaleConfig&, const ScaleConfig&) = default;
};

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// m x n feature matrix, stored column-major so each boundary position's
/// feature vector is contiguous.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, ScaleConfig layout);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const ScaleConfig& layout() const { return layout_; }

  double& at(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double at(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }
  std::span<const double> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }
  std::span<const double> data() const { return data_; }

  /// Ids of the boundary walk the columns were computed for.
  std::vector<VertexId> boundary_ids;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  ScaleConfig layout_;
  std::vector<double> data_;
};

/// Hop distances from every source; -1 marks unreachable vertices.
/// Throws UnknownVertex when source is not a valid index.
std::vector<int> bfs_distances(const Graph& g, std::size_t source);

/// Hop-distance rows for each distinct vertex of a boundary walk.
class DiskIndex {
 public:
  DiskIndex(const Graph& g, const BoundaryCycle& cycle);

  /// Distances from the vertex at walk position i.
  std::span<const int> from_position(std::size_t i) const;
  std::span<const int> from_vertex(std::size_t graph_index) const;

 private:
  std::span<const int> lookup(std::size_t graph_index) const;

  const BoundaryCycle* cycle_;
  std::unordered_map<std::size_t, std::vector<int>> rows_;
};

/// Vertex nearest (Euclidean) to the centroid of all positions.
std::size_t center_vertex(const Graph& g);

// Each profile returns a (scales x n) block: row j-1 holds radius j, column
// i holds walk position i. Positions sharing a vertex get identical columns.

/// Ring sizes |{v : d(v, u_i) = j}|.
Matrix perimeter_profile(const Graph& g, const BoundaryCycle& cycle, const DiskIndex& disks, int scales);
/// Distinct boundary vertices within hop distance j.
Matrix boundary_in_disk_profile(const Graph& g, const BoundaryCycle& cycle, const DiskIndex& disks, int scales);
/// Disk vertices lying inside or on the hull of the disk's boundary vertices.
Matrix convex_hull_area_profile(const Graph& g, const BoundaryCycle& cycle, const DiskIndex& disks, int scales);
/// Hop distance to center_vertex(g), divided by j.
Matrix distance_to_center_profile(const Graph& g, const BoundaryCycle& cycle, int scales);

/// Stacks P, B, CH and C blocks (in that order) without normalization.
FeatureMatrix build_feature_matrix(const Graph& g, const BoundaryCycle& cycle, const ScaleConfig& scales);

struct ScaleSample {
  const Graph* graph;
  const BoundaryCycle* cycle;
};

/// Returns the feature row (one value per walk position) at a given radius.
using ScaleFeature = std::function<std::vector<double>(const ScaleSample&, int scale)>;

struct ScaleSelection {
  int scale = 1;
  /// false when the cap was reached without the criterion being met.
  bool converged = true;
};

/// Smallest m whose mean absolute difference to scale m+1, pooled over every
/// walk position of every sample, falls below threshold; capped at max_scale.
ScaleSelection select_scales(const ScaleFeature& feature, std::span<const ScaleSample> samples,
                             double threshold, int max_scale = 20);

enum class FeatureKind { Perimeter, BoundaryInDisk, ConvexHullArea, DistanceToCenter };

ScaleFeature profile_feature(FeatureKind kind);

/// Runs select_scales for all four blocks. Any non-converged block is
/// reported through `warnings` (one entry per block name).
ScaleConfig select_scale_config(std::span<const ScaleSample> samples, double threshold, int max_scale,
                                std::vector<std::string>* warnings = nullptr);

}  // namespace gngshape
