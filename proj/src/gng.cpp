#include "gngshape/gng.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

#include "gngshape/error.hpp"

namespace gngshape {

void GngParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorCode::InvalidArgument, what);
  };
  require(neuron_budget >= 2, "neuron budget must be >= 2");
  require(insertion_period >= 1, "insertion period must be >= 1");
  require(max_edge_age >= 1, "max edge age must be >= 1");
  require(error_split > 0.0 && error_split < 1.0, "error split factor must lie in (0,1)");
  require(error_decay > 0.0 && error_decay < 1.0, "error decay must lie in (0,1)");
  require(neighbor_rate > 0.0 && neighbor_rate <= winner_rate && winner_rate < 1.0,
          "learning rates must satisfy 0 < eps_n <= eps_b < 1");
}

std::string GngParams::describe() const {
  std::ostringstream out;
  out.precision(17);
  out << "neurons=" << neuron_budget << " lambda=" << insertion_period
      << " max_age=" << max_edge_age << " alpha=" << error_split << " decay=" << error_decay
      << " eps_b=" << winner_rate << " eps_n=" << neighbor_rate << " seed=" << seed;
  return out.str();
}

GngTrainer::GngTrainer(const GngParams& params, Point2 first, Point2 second) : params_(params) {
  params_.validate();
  graph_.add_vertex(first);
  graph_.add_vertex(second);
}

void GngTrainer::present(Point2 x) {
  if (finished_) return;
  ++signals_;

  // Nearest and second nearest; ties resolve to the smaller id.
  std::size_t s1 = 0, s2 = 0;
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = d1;
  for (std::size_t i = 0; i < graph_.size(); ++i) {
    const double d = squared_norm(graph_.position(i) - x);
    if (d < d1) {
      s2 = s1;
      d2 = d1;
      s1 = i;
      d1 = d;
    } else if (d < d2) {
      s2 = i;
      d2 = d;
    }
  }

  graph_.increment_ages(s1);
  graph_.set_error(s1, graph_.vertex(s1).error + d1);

  const Point2 w1 = graph_.position(s1);
  graph_.set_position(s1, w1 + params_.winner_rate * (x - w1));
  for (const auto& n : graph_.neighbors(s1)) {
    const Point2 wn = graph_.position(n.index);
    graph_.set_position(n.index, wn + params_.neighbor_rate * (x - wn));
  }

  graph_.connect(s1, s2, 0);

  // Only edges at s1 aged, so only they can have expired.
  std::vector<std::size_t> expired;
  for (const auto& n : graph_.neighbors(s1))
    if (n.age > params_.max_edge_age) expired.push_back(n.index);
  for (std::size_t v : expired) graph_.disconnect(s1, v);
  for (auto it = expired.rbegin(); it != expired.rend(); ++it)
    if (graph_.degree(*it) == 0) graph_.remove_vertex(*it);

  if (signals_ % static_cast<std::uint64_t>(params_.insertion_period) == 0) {
    if (graph_.size() < static_cast<std::size_t>(params_.neuron_budget))
      insert_node();
    else
      finished_ = true;
  }

  for (std::size_t i = 0; i < graph_.size(); ++i)
    graph_.set_error(i, graph_.vertex(i).error * params_.error_decay);
}

void GngTrainer::insert_node() {
  std::size_t q = 0;
  for (std::size_t i = 1; i < graph_.size(); ++i)
    if (graph_.vertex(i).error > graph_.vertex(q).error) q = i;
  const auto nbrs = graph_.neighbors(q);
  if (nbrs.empty()) fail(ErrorCode::InvariantViolation, "max-error node has no neighbor");
  std::size_t f = nbrs.front().index;
  for (const auto& n : nbrs)
    if (graph_.vertex(n.index).error > graph_.vertex(f).error) f = n.index;

  const Point2 mid = 0.5 * (graph_.position(q) + graph_.position(f));
  const double eq = graph_.vertex(q).error * params_.error_split;
  const double ef = graph_.vertex(f).error * params_.error_split;
  graph_.set_error(q, eq);
  graph_.set_error(f, ef);
  const std::size_t r = graph_.add_vertex(mid, eq);
  graph_.disconnect(q, f);
  graph_.connect(q, r, 0);
  graph_.connect(r, f, 0);
}

Graph train(const BinaryImage& img, const GngParams& params) {
  params.validate();
  if (img.foreground_count() < 2)
    fail(ErrorCode::InsufficientForeground, "GNG training needs at least 2 foreground pixels");

  int min_x = img.width(), min_y = img.height(), max_x = -1, max_y = -1;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img.at(x, y)) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
      }

  Rng rng(params.seed);
  auto in_box = [&] {
    const double x = min_x + rng.uniform() * (max_x + 1 - min_x);
    const double y = min_y + rng.uniform() * (max_y + 1 - min_y);
    return Point2{x, y};
  };
  const Point2 a = in_box();
  const Point2 b = in_box();

  const ForegroundSampler sample(img);
  GngTrainer trainer(params, a, b);
  // Generous cap; a healthy run needs about neuron_budget * insertion_period.
  const std::uint64_t cap = 1000ULL * static_cast<std::uint64_t>(params.neuron_budget) *
                            static_cast<std::uint64_t>(params.insertion_period);
  while (!trainer.finished()) {
    if (trainer.signals() >= cap)
      fail(ErrorCode::InvariantViolation, "GNG training did not reach the neuron budget");
    trainer.present(sample(rng));
  }
  return trainer.graph();
}

Graph prune_background_edges(Graph g, const BinaryImage& img) {
  for (auto [a, b] : g.edges()) {
    const Point2 mid = 0.5 * (g.position(a) + g.position(b));
    if (background_majority(img, mid)) g.disconnect(a, b);
  }
  return g;
}

Graph largest_component(const Graph& g) {
  if (g.empty()) fail(ErrorCode::EmptyGraph, "graph has no vertex");
  const auto comps = g.components();
  // components() is ordered by smallest index, i.e. smallest id, so a strict
  // comparison keeps the earliest component on ties.
  std::size_t best = 0;
  for (std::size_t c = 1; c < comps.size(); ++c)
    if (comps[c].size() > comps[best].size()) best = c;
  if (comps.size() == 1) return g;
  return g.induced(comps[best]);
}

Graph build_shape_graph(const BinaryImage& img, const GngParams& params) {
  return largest_component(prune_background_edges(train(img, params), img));
}

}  // namespace gngshape
