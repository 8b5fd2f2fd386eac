#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gngshape/dataset.hpp"
#include "gngshape/features.hpp"
#include "gngshape/gng.hpp"

namespace gngshape {

struct RetrievalConfig {
  GngParams gng;
  ScaleConfig scales;
  /// Fixed gap cost; empty selects the per-pair default.
  std::optional<double> gap_cost;
  /// Ranks to score; 0 means the largest class size.
  std::size_t max_rank = 0;
  unsigned jobs = 1;
  /// Feature cache keyed by mask content, GNG parameters and scales.
  std::optional<std::filesystem::path> cache_dir;
};

struct RetrievalReport {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  Matrix dissimilarity;
  /// Entry k-1 counts queries whose k-th ranked item shares their class.
  std::vector<std::size_t> per_rank_counts;
  std::map<std::string, std::string> metadata;
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Callers write
/// into preallocated slots, so results do not depend on scheduling.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Feature matrices for each shape (model_shape per image), optionally cached.
std::vector<FeatureMatrix> compute_features(std::span<const LabeledShape> shapes, const RetrievalConfig& config);

/// Symmetric matrix of cyclic dissimilarities, one evaluation per unordered
/// pair, zero diagonal. Throws DimensionMismatch on inconsistent row counts.
Matrix pairwise_dissimilarity(std::span<const FeatureMatrix> features, std::optional<double> gap_cost,
                              unsigned jobs = 1);

/// Per-rank bull's-eye counts. Each query ranks every item, itself included,
/// by ascending dissimilarity with ties broken by item index.
/// Throws RankOutOfRange when max_rank is 0 or exceeds the item count.
std::vector<std::size_t> bulls_eye_counts(const Matrix& dissimilarity, std::span<const std::string> labels,
                                          std::size_t max_rank);

RetrievalReport run_retrieval(std::span<const LabeledShape> shapes, const RetrievalConfig& config);

/// Rebuilds the full report once per sigma on perturbed copies of every image.
/// Each image's noise stream is seeded from (gng seed, item id, sigma), so
/// sigma = 0 reproduces the clean report exactly.
std::vector<RetrievalReport> run_noise_experiment(std::span<const LabeledShape> shapes,
                                                  std::span<const double> sigmas,
                                                  const RetrievalConfig& config);

/// Noise draws used for one item at one sigma.
Rng noise_stream(std::uint64_t seed, const std::string& item_id, double sigma);

/// Default sigmas for the noise experiment.
inline const std::vector<double> kDefaultNoiseSigmas = {0.2, 0.4, 0.6, 0.8, 1.0};

}  // namespace gngshape
