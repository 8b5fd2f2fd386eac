#include "gngshape/retrieval.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "gngshape/error.hpp"
#include "gngshape/matching.hpp"
#include "gngshape/pipeline.hpp"
#include "gngshape/serialize.hpp"

namespace gngshape {

namespace fs = std::filesystem;

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(jobs, 1u), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  pool.clear();
  if (error) std::rethrow_exception(error);
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t cache_key(const BinaryImage& img, const RetrievalConfig& config) {
  std::string dims = std::to_string(img.width()) + "x" + std::to_string(img.height());
  std::uint64_t h = fnv1a(dims);
  const auto mask = img.mask();
  h = fnv1a(std::string_view(reinterpret_cast<const char*>(mask.data()), mask.size()), h);
  return fnv1a(config.gng.describe() + "|" + config.scales.describe(), h);
}

std::optional<FeatureMatrix> read_cached(const fs::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    return features_from_json(nlohmann::json::parse(in));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void write_cached(const fs::path& file, const FeatureMatrix& f) {
  std::error_code ec;
  fs::create_directories(file.parent_path(), ec);
  const fs::path tmp = file.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << features_to_json(f).dump();
  }
  fs::rename(tmp, file, ec);
}

std::map<std::string, std::string> describe_config(const RetrievalConfig& config, std::size_t max_rank) {
  std::map<std::string, std::string> meta;
  meta["gng"] = config.gng.describe();
  meta["seed"] = std::to_string(config.gng.seed);
  meta["scales"] = config.scales.describe();
  if (config.gap_cost) {
    std::ostringstream gap;
    gap.precision(17);
    gap << *config.gap_cost;
    meta["gap_cost"] = gap.str();
  } else {
    meta["gap_cost"] = "0.3*median(cross-column distance) per pair";
  }
  meta["max_rank"] = std::to_string(max_rank);
  meta["rank_convention"] = "query included in its own ranking";
  return meta;
}

std::size_t resolve_max_rank(std::span<const LabeledShape> shapes, std::size_t requested) {
  if (requested != 0) return requested;
  std::map<std::string, std::size_t> sizes;
  for (const auto& s : shapes) ++sizes[s.label];
  std::size_t largest = 0;
  for (const auto& [label, n] : sizes) largest = std::max(largest, n);
  return largest;
}

}  // namespace

std::vector<FeatureMatrix> compute_features(std::span<const LabeledShape> shapes, const RetrievalConfig& config) {
  config.gng.validate();
  config.scales.validate();
  std::vector<FeatureMatrix> out(shapes.size());
  parallel_for(shapes.size(), config.jobs, [&](std::size_t i) {
    std::optional<fs::path> file;
    if (config.cache_dir) {
      file = *config.cache_dir / (hex64(cache_key(shapes[i].image, config)) + ".json");
      if (auto hit = read_cached(*file)) {
        out[i] = std::move(*hit);
        return;
      }
    }
    try {
      out[i] = model_shape(shapes[i].image, config.gng, config.scales).features;
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " [item " + shapes[i].id + "]");
    }
    if (file) write_cached(*file, out[i]);
  });
  return out;
}

Matrix pairwise_dissimilarity(std::span<const FeatureMatrix> features, std::optional<double> gap_cost,
                              unsigned jobs) {
  const std::size_t n = features.size();
  for (std::size_t i = 1; i < n; ++i)
    if (features[i].rows() != features[0].rows())
      fail(ErrorCode::DimensionMismatch, "items use different scale configurations");
  Matrix d(n, n, 0.0);
  parallel_for(n, jobs, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double cost = cyclic_dissimilarity(features[i], features[j], gap_cost).cost;
      d(i, j) = cost;
      d(j, i) = cost;
    }
  });
  return d;
}

std::vector<std::size_t> bulls_eye_counts(const Matrix& dissimilarity, std::span<const std::string> labels,
                                          std::size_t max_rank) {
  const std::size_t n = dissimilarity.rows();
  if (dissimilarity.cols() != n || labels.size() != n)
    fail(ErrorCode::DimensionMismatch, "dissimilarity matrix and labels disagree in size");
  if (max_rank == 0 || max_rank > n)
    fail(ErrorCode::RankOutOfRange, "max rank " + std::to_string(max_rank) + " outside 1.." + std::to_string(n));
  std::vector<std::size_t> counts(max_rank, 0);
  std::vector<std::size_t> order(n);
  for (std::size_t q = 0; q < n; ++q) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return dissimilarity(q, a) < dissimilarity(q, b);
    });
    for (std::size_t k = 0; k < max_rank; ++k)
      if (labels[order[k]] == labels[q]) ++counts[k];
  }
  return counts;
}

RetrievalReport run_retrieval(std::span<const LabeledShape> shapes, const RetrievalConfig& config) {
  if (shapes.empty()) fail(ErrorCode::NoImages, "retrieval needs at least one item");
  const std::size_t max_rank = resolve_max_rank(shapes, config.max_rank);
  RetrievalReport report;
  for (const auto& s : shapes) {
    report.ids.push_back(s.id);
    report.labels.push_back(s.label);
  }
  const auto features = compute_features(shapes, config);
  report.dissimilarity = pairwise_dissimilarity(features, config.gap_cost, config.jobs);
  report.per_rank_counts = bulls_eye_counts(report.dissimilarity, report.labels, max_rank);
  report.metadata = describe_config(config, max_rank);
  report.metadata["items"] = std::to_string(shapes.size());
  return report;
}

Rng noise_stream(std::uint64_t seed, const std::string& item_id, double sigma) {
  return Rng(mix_seed(mix_seed(seed, fnv1a(item_id)), std::bit_cast<std::uint64_t>(sigma)));
}

std::vector<RetrievalReport> run_noise_experiment(std::span<const LabeledShape> shapes,
                                                  std::span<const double> sigmas,
                                                  const RetrievalConfig& config) {
  std::vector<RetrievalReport> reports;
  for (double sigma : sigmas) {
    if (!(sigma >= 0.0)) fail(ErrorCode::InvalidArgument, "noise sigmas must be >= 0");
    std::vector<LabeledShape> noisy(shapes.begin(), shapes.end());
    for (auto& s : noisy) {
      Rng rng = noise_stream(config.gng.seed, s.id, sigma);
      s.image = perturb_gaussian(s.image, sigma, rng);
    }
    RetrievalReport report = run_retrieval(noisy, config);
    std::ostringstream sig;
    sig << sigma;
    report.metadata["noise_sigma"] = sig.str();
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace gngshape
