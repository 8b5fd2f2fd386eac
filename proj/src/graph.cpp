#include "gngshape/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gngshape/error.hpp"

namespace gngshape {

Graph Graph::from_records(std::vector<VertexRecord> vertices,
                          const std::vector<std::pair<VertexId, VertexId>>& edges) {
  std::sort(vertices.begin(), vertices.end(),
            [](const VertexRecord& a, const VertexRecord& b) { return a.id < b.id; });
  Graph g;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i > 0 && vertices[i].id == vertices[i - 1].id)
      fail(ErrorCode::InvalidArgument, "duplicate vertex id " + std::to_string(vertices[i].id));
    g.vertices_.push_back({vertices[i].id, vertices[i].position, 0.0});
    g.adjacency_.emplace_back();
  }
  if (!vertices.empty()) g.next_id_ = vertices.back().id + 1;
  for (auto [ia, ib] : edges) {
    auto a = g.find(ia);
    auto b = g.find(ib);
    if (!a || !b)
      fail(ErrorCode::UnknownVertex,
           "edge references unknown vertex " + std::to_string(a ? ib : ia));
    if (*a == *b) fail(ErrorCode::InvalidArgument, "self-loop on vertex " + std::to_string(ia));
    if (g.has_edge(*a, *b))
      fail(ErrorCode::InvalidArgument,
           "repeated edge " + std::to_string(ia) + "-" + std::to_string(ib));
    g.connect(*a, *b);
  }
  return g;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return twice / 2;
}

std::optional<std::size_t> Graph::find(VertexId id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const GraphVertex& v, VertexId key) { return v.id < key; });
  if (it == vertices_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<Graph::Neighbor>::iterator Graph::find_neighbor(std::size_t a, std::size_t b) {
  auto& adj = adjacency_[a];
  return std::find_if(adj.begin(), adj.end(), [b](const Neighbor& n) { return n.index == b; });
}

bool Graph::has_edge(std::size_t a, std::size_t b) const { return edge_age(a, b).has_value(); }

std::optional<int> Graph::edge_age(std::size_t a, std::size_t b) const {
  for (const auto& n : adjacency_[a])
    if (n.index == b) return n.age;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < adjacency_.size(); ++a)
    for (const auto& n : adjacency_[a])
      if (a < n.index) out.emplace_back(a, n.index);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Graph::add_vertex(Point2 position, double error) {
  vertices_.push_back({next_id_++, position, error});
  adjacency_.emplace_back();
  return vertices_.size() - 1;
}

void Graph::connect(std::size_t a, std::size_t b, int age) {
  if (a == b) fail(ErrorCode::InvalidArgument, "self-loop");
  if (auto it = find_neighbor(a, b); it != adjacency_[a].end()) {
    it->age = age;
    find_neighbor(b, a)->age = age;
    return;
  }
  auto insert_sorted = [](std::vector<Neighbor>& adj, Neighbor n) {
    auto pos = std::lower_bound(adj.begin(), adj.end(), n.index,
                                [](const Neighbor& x, std::size_t key) { return x.index < key; });
    adj.insert(pos, n);
  };
  insert_sorted(adjacency_[a], {b, age});
  insert_sorted(adjacency_[b], {a, age});
}

void Graph::disconnect(std::size_t a, std::size_t b) {
  if (auto it = find_neighbor(a, b); it != adjacency_[a].end()) adjacency_[a].erase(it);
  if (auto it = find_neighbor(b, a); it != adjacency_[b].end()) adjacency_[b].erase(it);
}

void Graph::remove_vertex(std::size_t i) {
  for (const auto& n : adjacency_[i]) {
    auto& adj = adjacency_[n.index];
    adj.erase(std::find_if(adj.begin(), adj.end(),
                           [i](const Neighbor& x) { return x.index == i; }));
  }
  vertices_.erase(vertices_.begin() + static_cast<std::ptrdiff_t>(i));
  adjacency_.erase(adjacency_.begin() + static_cast<std::ptrdiff_t>(i));
  for (auto& adj : adjacency_)
    for (auto& n : adj)
      if (n.index > i) --n.index;
}

void Graph::increment_ages(std::size_t i) {
  for (auto& n : adjacency_[i]) {
    ++n.age;
    find_neighbor(n.index, i)->age = n.age;
  }
}

Graph Graph::induced(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::size_t> remap(vertices_.size(), SIZE_MAX);
  Graph g;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    remap[sorted[k]] = k;
    g.vertices_.push_back(vertices_[sorted[k]]);
    g.adjacency_.emplace_back();
  }
  g.next_id_ = next_id_;
  for (std::size_t k = 0; k < sorted.size(); ++k)
    for (const auto& n : adjacency_[sorted[k]])
      if (remap[n.index] != SIZE_MAX) g.adjacency_[k].push_back({remap[n.index], n.age});
  return g;
}

std::vector<std::vector<std::size_t>> Graph::components() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(vertices_.size(), false);
  for (std::size_t s = 0; s < vertices_.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (const auto& n : adjacency_[comp[head]])
        if (!seen[n.index]) {
          seen[n.index] = true;
          comp.push_back(n.index);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool Graph::same_structure(const Graph& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (vertices_[i].id != other.vertices_[i].id ||
        !(vertices_[i].position == other.vertices_[i].position))
      return false;
  return edges() == other.edges();
}

}  // namespace gngshape
