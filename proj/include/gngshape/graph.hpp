#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gngshape/image.hpp"

namespace gngshape {

using VertexId = std::int32_t;

struct GraphVertex {
  VertexId id = 0;
  Point2 position;
  /// Accumulated squared distance; only meaningful during training.
  double error = 0.0;
};

struct VertexRecord {
  VertexId id = 0;
  Point2 position;
};

/// Undirected embedded graph with per-edge ages.
///
/// Vertices are kept sorted by id; code refers to them by dense index
/// (position in that order), which makes "smallest id" and "smallest index"
/// the same tie-break. Adjacency lists are symmetric and sorted by index.
class Graph {
 public:
  struct Neighbor {
    std::size_t index;
    int age;
  };

  Graph() = default;

  /// Builds a graph from serialized records. Throws InvalidArgument on
  /// duplicate ids, self-loops or repeated edges, UnknownVertex on dangling
  /// edge endpoints.
  static Graph from_records(std::vector<VertexRecord> vertices,
                            const std::vector<std::pair<VertexId, VertexId>>& edges);

  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  std::size_t edge_count() const;

  const GraphVertex& vertex(std::size_t i) const { return vertices_[i]; }
  std::span<const GraphVertex> vertices() const { return vertices_; }
  VertexId id(std::size_t i) const { return vertices_[i].id; }
  Point2 position(std::size_t i) const { return vertices_[i].position; }
  std::span<const Neighbor> neighbors(std::size_t i) const { return adjacency_[i]; }
  std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }

  std::optional<std::size_t> find(VertexId id) const;
  bool has_edge(std::size_t a, std::size_t b) const;
  std::optional<int> edge_age(std::size_t a, std::size_t b) const;

  /// Index pairs (a < b), lexicographically sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  /// Appends a vertex with the next free id (greater than every id so far).
  std::size_t add_vertex(Point2 position, double error = 0.0);
  /// Adds the edge at the given age, or resets the age if it already exists.
  void connect(std::size_t a, std::size_t b, int age = 0);
  void disconnect(std::size_t a, std::size_t b);
  /// Removes the vertex and its incident edges; later indices shift down.
  void remove_vertex(std::size_t i);

  void set_position(std::size_t i, Point2 p) { vertices_[i].position = p; }
  void set_error(std::size_t i, double e) { vertices_[i].error = e; }
  void increment_ages(std::size_t i);

  /// Subgraph induced by the given indices (any order); ids are preserved.
  Graph induced(std::span<const std::size_t> keep) const;

  /// Connected components as sorted index lists, ordered by smallest index.
  std::vector<std::vector<std::size_t>> components() const;
  bool connected() const { return components().size() == 1; }

  /// Structural equality on ids, positions and edges (ages/errors ignored).
  bool same_structure(const Graph& other) const;

 private:
  std::vector<Neighbor>::iterator find_neighbor(std::size_t a, std::size_t b);

  std::vector<GraphVertex> vertices_;
  std::vector<std::vector<Neighbor>> adjacency_;
  VertexId next_id_ = 0;
};

}  // namespace gngshape
