#include "gngshape/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gngshape/error.hpp"
#include "gngshape/geometry.hpp"

namespace gngshape {

void ScaleConfig::validate() const {
  if (perimeter < 1 || boundary < 1 || hull < 1 || center < 1)
    fail(ErrorCode::InvalidArgument, "every scale count must be >= 1");
  if (!(threshold > 0.0)) fail(ErrorCode::InvalidArgument, "scale threshold must be > 0");
}

std::string ScaleConfig::describe() const {
  std::ostringstream out;
  out << "P=" << perimeter << " B=" << boundary << " CH=" << hull << " C=" << center
      << " threshold=" << threshold;
  return out.str();
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, ScaleConfig layout)
    : rows_(rows), cols_(cols), layout_(layout), data_(rows * cols, 0.0) {}

std::vector<int> bfs_distances(const Graph& g, std::size_t source) {
  if (source >= g.size()) fail(ErrorCode::UnknownVertex, "BFS source index out of range");
  std::vector<int> dist(g.size(), -1);
  std::vector<std::size_t> queue{source};
  queue.reserve(g.size());
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    for (const auto& n : g.neighbors(v))
      if (dist[n.index] < 0) {
        dist[n.index] = dist[v] + 1;
        queue.push_back(n.index);
      }
  }
  return dist;
}

DiskIndex::DiskIndex(const Graph& g, const BoundaryCycle& cycle) : cycle_(&cycle) {
  for (std::size_t v : cycle.walk)
    if (!rows_.contains(v)) rows_.emplace(v, bfs_distances(g, v));
}

std::span<const int> DiskIndex::lookup(std::size_t graph_index) const {
  auto it = rows_.find(graph_index);
  if (it == rows_.end()) fail(ErrorCode::UnknownVertex, "vertex is not on the indexed boundary");
  return it->second;
}

std::span<const int> DiskIndex::from_position(std::size_t i) const { return lookup(cycle_->walk.at(i)); }
std::span<const int> DiskIndex::from_vertex(std::size_t graph_index) const { return lookup(graph_index); }

std::size_t center_vertex(const Graph& g) {
  if (g.empty()) fail(ErrorCode::EmptyGraph, "center of an empty graph");
  // Compares |n*p - sum| rather than |p - sum/n|: same ordering, and exact
  // for integer coordinates, so equidistant vertices tie reliably.
  Point2 sum;
  for (const auto& v : g.vertices()) sum = sum + v.position;
  const double n = static_cast<double>(g.size());
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double d = squared_norm(n * g.position(i) - sum);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

namespace {

// Single-radius rows. Columns for repeated walk vertices are computed once.
template <typename ColumnFn>
std::vector<double> per_position(const BoundaryCycle& cycle, ColumnFn&& value_for_vertex) {
  std::vector<double> row(cycle.size());
  std::unordered_map<std::size_t, double> seen;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const std::size_t v = cycle.walk[i];
    auto it = seen.find(v);
    if (it == seen.end()) it = seen.emplace(v, value_for_vertex(v)).first;
    row[i] = it->second;
  }
  return row;
}

std::vector<double> perimeter_row(const Graph&, const BoundaryCycle& cycle, const DiskIndex& disks, int j) {
  return per_position(cycle, [&](std::size_t v) {
    const auto d = disks.from_vertex(v);
    return static_cast<double>(std::count(d.begin(), d.end(), j));
  });
}

std::vector<double> boundary_row(const Graph&, const BoundaryCycle& cycle, const DiskIndex& disks, int j) {
  const auto on_boundary = cycle.distinct();
  return per_position(cycle, [&](std::size_t v) {
    const auto d = disks.from_vertex(v);
    return static_cast<double>(std::count_if(on_boundary.begin(), on_boundary.end(), [&](std::size_t b) {
      return d[b] >= 0 && d[b] <= j;
    }));
  });
}

std::vector<double> hull_row(const Graph& g, const BoundaryCycle& cycle, const DiskIndex& disks, int j) {
  const auto on_boundary = cycle.distinct();
  std::vector<Point2> anchors;
  return per_position(cycle, [&](std::size_t v) {
    const auto d = disks.from_vertex(v);
    anchors.clear();
    for (std::size_t b : on_boundary)
      if (d[b] >= 0 && d[b] <= j) anchors.push_back(g.position(b));
    const auto hull = convex_hull(anchors);
    std::size_t count = 0;
    for (std::size_t w = 0; w < g.size(); ++w)
      if (d[w] >= 0 && d[w] <= j && inside_convex_hull(hull, g.position(w))) ++count;
    return static_cast<double>(count);
  });
}

std::vector<double> center_row(const BoundaryCycle& cycle, std::span<const int> from_center, int j) {
  std::vector<double> row(cycle.size());
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int d = from_center[cycle.walk[i]];
    if (d < 0) fail(ErrorCode::NotConnected, "boundary vertex unreachable from the center");
    row[i] = static_cast<double>(d) / static_cast<double>(j);
  }
  return row;
}

using RowFn = std::vector<double> (*)(const Graph&, const BoundaryCycle&, const DiskIndex&, int);

Matrix stack_rows(const Graph& g, const BoundaryCycle& cycle, const DiskIndex& disks, int scales, RowFn fn) {
  if (scales < 1) fail(ErrorCode::InvalidArgument, "scale count must be >= 1");
  Matrix block(static_cast<std::size_t>(scales), cycle.size());
  for (int j = 1; j <= scales; ++j) {
    const auto row = fn(g, cycle, disks, j);
    for (std::size_t i = 0; i < row.size(); ++i) block(static_cast<std::size_t>(j - 1), i) = row[i];
  }
  return block;
}

}  // namespace

Matrix perimeter_profile(const Graph& g, const BoundaryCycle& cycle, const DiskIndex& disks, int scales) {
  return stack_rows(g, cycle, disks, scales, perimeter_row);
}

Matrix boundary_in_disk_profile(const Graph& g, const BoundaryCycle& cycle, const DiskIndex& disks, int scales) {
  return stack_rows(g, cycle, disks, scales, boundary_row);
}

Matrix convex_hull_area_profile(const Graph& g, const BoundaryCycle& cycle, const DiskIndex& disks, int scales) {
  return stack_rows(g, cycle, disks, scales, hull_row);
}

Matrix distance_to_center_profile(const Graph& g, const BoundaryCycle& cycle, int scales) {
  if (scales < 1) fail(ErrorCode::InvalidArgument, "scale count must be >= 1");
  const auto from_center = bfs_distances(g, center_vertex(g));
  Matrix block(static_cast<std::size_t>(scales), cycle.size());
  for (int j = 1; j <= scales; ++j) {
    const auto row = center_row(cycle, from_center, j);
    for (std::size_t i = 0; i < row.size(); ++i) block(static_cast<std::size_t>(j - 1), i) = row[i];
  }
  return block;
}

FeatureMatrix build_feature_matrix(const Graph& g, const BoundaryCycle& cycle, const ScaleConfig& scales) {
  scales.validate();
  if (cycle.size() == 0) fail(ErrorCode::DegenerateGraph, "empty boundary walk");
  const DiskIndex disks(g, cycle);
  const Matrix blocks[] = {
      perimeter_profile(g, cycle, disks, scales.perimeter),
      boundary_in_disk_profile(g, cycle, disks, scales.boundary),
      convex_hull_area_profile(g, cycle, disks, scales.hull),
      distance_to_center_profile(g, cycle, scales.center),
  };
  FeatureMatrix f(static_cast<std::size_t>(scales.total()), cycle.size(), scales);
  std::size_t offset = 0;
  for (const Matrix& block : blocks) {
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c) f.at(offset + r, c) = block(r, c);
    offset += block.rows();
  }
  f.boundary_ids = cycle.ids(g);
  return f;
}

ScaleSelection select_scales(const ScaleFeature& feature, std::span<const ScaleSample> samples,
                             double threshold, int max_scale) {
  if (samples.empty()) fail(ErrorCode::InvalidArgument, "scale selection needs a nonempty sample");
  if (!(threshold > 0.0)) fail(ErrorCode::InvalidArgument, "scale threshold must be > 0");
  if (max_scale < 1) fail(ErrorCode::InvalidArgument, "scale cap must be >= 1");

  std::vector<std::vector<double>> previous;
  for (const auto& s : samples) previous.push_back(feature(s, 1));
  for (int m = 1; m <= max_scale; ++m) {
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      auto next = feature(samples[k], m + 1);
      if (next.size() != previous[k].size())
        fail(ErrorCode::DimensionMismatch, "feature rows change length across scales");
      for (std::size_t i = 0; i < next.size(); ++i) total += std::abs(next[i] - previous[k][i]);
      count += next.size();
      previous[k] = std::move(next);
    }
    const double mean = count == 0 ? 0.0 : total / static_cast<double>(count);
    if (mean < threshold) return {m, true};
  }
  return {max_scale, false};
}

ScaleFeature profile_feature(FeatureKind kind) {
  return [kind](const ScaleSample& s, int scale) -> std::vector<double> {
    const Graph& g = *s.graph;
    const BoundaryCycle& c = *s.cycle;
    switch (kind) {
      case FeatureKind::Perimeter: return perimeter_row(g, c, DiskIndex(g, c), scale);
      case FeatureKind::BoundaryInDisk: return boundary_row(g, c, DiskIndex(g, c), scale);
      case FeatureKind::ConvexHullArea: return hull_row(g, c, DiskIndex(g, c), scale);
      case FeatureKind::DistanceToCenter:
        return center_row(c, bfs_distances(g, center_vertex(g)), scale);
    }
    return {};
  };
}

ScaleConfig select_scale_config(std::span<const ScaleSample> samples, double threshold, int max_scale,
                                std::vector<std::string>* warnings) {
  ScaleConfig config;
  config.threshold = threshold;
  struct Slot {
    FeatureKind kind;
    int* target;
    const char* name;
  };
  const Slot slots[] = {{FeatureKind::Perimeter, &config.perimeter, "P"},
                        {FeatureKind::BoundaryInDisk, &config.boundary, "B"},
                        {FeatureKind::ConvexHullArea, &config.hull, "CH"},
                        {FeatureKind::DistanceToCenter, &config.center, "C"}};
  for (const Slot& slot : slots) {
    const auto sel = select_scales(profile_feature(slot.kind), samples, threshold, max_scale);
    *slot.target = sel.scale;
    if (!sel.converged && warnings)
      warnings->push_back(std::string(slot.name) + " scale selection hit the cap of " +
                          std::to_string(max_scale));
  }
  return config;
}

}  // namespace gngshape
