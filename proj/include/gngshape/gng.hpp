#pragma once

#include <cstdint>
#include <string>

#include "gngshape/graph.hpp"
#include "gngshape/image.hpp"

namespace gngshape {

/// Growing Neural Gas hyper-parameters. Defaults are the standard set
/// (350 neurons, lambda 50, max age 50, split 0.5, decay 0.995,
/// winner rate 0.05, neighbor rate 0.005).
struct GngParams {
  int neuron_budget = 350;
  int insertion_period = 50;
  int max_edge_age = 50;
  double error_split = 0.5;
  double error_decay = 0.995;
  double winner_rate = 0.05;
  double neighbor_rate = 0.005;
  std::uint64_t seed = 1;

  /// Throws InvalidArgument when any range constraint is violated.
  void validate() const;
  /// Stable textual form, used in report metadata and cache keys.
  std::string describe() const;
};

/// Incremental GNG state. Each call to present() runs one signal through
/// nearest-pair search, edge aging, error accumulation, adaptation, edge
/// refresh and pruning, node insertion at block boundaries and error decay.
class GngTrainer {
 public:
  GngTrainer(const GngParams& params, Point2 first, Point2 second);

  void present(Point2 signal);

  const Graph& graph() const { return graph_; }
  std::uint64_t signals() const { return signals_; }
  /// True once a full insertion period has completed at the neuron budget.
  bool finished() const { return finished_; }

 private:
  void insert_node();

  GngParams params_;
  Graph graph_;
  std::uint64_t signals_ = 0;
  bool finished_ = false;
};

/// Trains on uniformly sampled foreground pixel centers, seeded by
/// params.seed. The two initial neurons are drawn uniformly inside the
/// foreground bounding box. Throws InsufficientForeground below 2 pixels.
Graph train(const BinaryImage& img, const GngParams& params);

/// Removes edges whose midpoint sits in a mostly-background 3x3 block.
Graph prune_background_edges(Graph g, const BinaryImage& img);

/// Induced subgraph on the component with the most vertices; ties go to the
/// component holding the smallest id. Throws EmptyGraph on an empty input.
Graph largest_component(const Graph& g);

/// train -> prune_background_edges -> largest_component.
Graph build_shape_graph(const BinaryImage& img, const GngParams& params);

}  // namespace gngshape
