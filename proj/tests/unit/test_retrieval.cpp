#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "gngshape/dataset.hpp"
#include "gngshape/error.hpp"
#include "gngshape/pipeline.hpp"
#include "gngshape/retrieval.hpp"
#include "gngshape/serialize.hpp"
#include "oracles.hpp"
#include "shapes.hpp"

using namespace gngshape;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("gngshape_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write_pgm(const fs::path& p, const BinaryImage& img) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << encode_pgm(img);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvariantViolation;
}

RetrievalConfig small_config() {
  RetrievalConfig c;
  c.gng.neuron_budget = 60;
  c.scales = {4, 4, 4, 4, 0.5};
  return c;
}

}  // namespace

TEST_CASE("bull's-eye worked example") {
  const double d[6][6] = {{0, 3, 1, 4, 2, 6}, {3, 0, 5, 2, 2, 1}, {1, 5, 0, 3, 4, 2},
                          {4, 2, 3, 0, 1, 5}, {2, 2, 4, 1, 0, 3}, {6, 1, 2, 5, 3, 0}};
  Matrix m(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = d[i][j];
  std::vector<std::string> labels = {"a", "b", "a", "b", "a", "b"};
  CHECK(bulls_eye_counts(m, labels, 6) == std::vector<std::size_t>{6, 4, 4, 0, 2, 2});
  CHECK(code_of([&] { bulls_eye_counts(m, labels, 0); }) == ErrorCode::RankOutOfRange);
  CHECK(code_of([&] { bulls_eye_counts(m, labels, 7); }) == ErrorCode::RankOutOfRange);
}

TEST_CASE("ties are broken by item index") {
  Matrix m(3, 3, 1.0);
  for (int i = 0; i < 3; ++i) m(i, i) = 0;
  std::vector<std::string> labels = {"a", "b", "a"};
  // Orders: 0,1,2 / 1,0,2 / 2,0,1.
  CHECK(bulls_eye_counts(m, labels, 3) == std::vector<std::size_t>{3, 1, 1});
}

TEST_CASE("dataset from class directories") {
  TempDir dir("ds_dirs");
  auto img = testing::solid_rect(8, 8, 2, 2, 6, 6);
  write_pgm(dir.path / "b" / "x.pgm", img);
  write_pgm(dir.path / "a" / "y.pgm", img);
  write_pgm(dir.path / "a" / "z.pgm", img);
  std::ofstream(dir.path / "a" / "notes.txt") << "ignored";
  auto ds = load_dataset(dir.path);
  CHECK(ds.ids() == std::vector<std::string>{"a/y.pgm", "a/z.pgm", "b/x.pgm"});
  CHECK(ds.labels() == std::vector<std::string>{"a", "a", "b"});
  CHECK(ds.class_sizes().at("a") == 2);
  auto shapes = load_shapes(ds, {});
  CHECK(shapes.size() == 3);
  CHECK(shapes[0].image == img);
}

TEST_CASE("dataset from manifest") {
  TempDir dir("ds_manifest");
  auto img = testing::solid_rect(8, 8, 2, 2, 6, 6);
  write_pgm(dir.path / "one.pgm", img);
  write_pgm(dir.path / "sub" / "two.pgm", img);
  std::ofstream(dir.path / kManifestName) << "# path,label\none.pgm,cat\n\nsub/two.pgm,dog\n";
  auto ds = load_dataset(dir.path);
  CHECK(ds.labels() == std::vector<std::string>{"cat", "dog"});
  std::ofstream(dir.path / kManifestName) << "one.pgm,cat\none.pgm,dog\n";
  CHECK(code_of([&] { load_dataset(dir.path); }) == ErrorCode::UnlabeledItem);
}

TEST_CASE("dataset errors") {
  CHECK(code_of([] { load_dataset("/nonexistent/gngshape"); }) == ErrorCode::MissingRoot);
  TempDir dir("ds_errors");
  CHECK(code_of([&] { load_dataset(dir.path); }) == ErrorCode::NoImages);
  write_pgm(dir.path / "loose.pgm", testing::solid_rect(8, 8, 2, 2, 6, 6));
  CHECK(code_of([&] { load_dataset(dir.path); }) == ErrorCode::UnlabeledItem);
}

TEST_CASE("serialization round trips") {
  Rng rng(2);
  auto img = testing::make_shape(testing::ShapeClass::Star, rng, 96);
  GngParams p;
  p.neuron_budget = 80;
  auto model = model_shape(img, p, ScaleConfig{3, 3, 3, 3, 0.5});
  auto g = graph_from_json(graph_to_json(model.graph));
  CHECK(g.same_structure(model.graph));
  CHECK(boundary_from_json(g, boundary_to_json(g, model.boundary)).walk == model.boundary.walk);
  CHECK(features_from_json(features_to_json(model.features)) == model.features);
  auto csv = features_to_csv(model.features);
  CHECK(csv.rfind("#", 0) == 0);
  auto poly = boundary_polyline_csv(g, model.boundary);
  CHECK(std::count(poly.begin(), poly.end(), '\n') == static_cast<long>(model.boundary.size()) + 2);
}

TEST_CASE("retrieval is independent of thread count and cache") {
  auto shapes = testing::synthetic_dataset(3, 2, 64);
  auto cfg = small_config();
  auto r1 = run_retrieval(shapes, cfg);
  CHECK(r1.per_rank_counts.size() == 2);
  CHECK(r1.dissimilarity.rows() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(r1.dissimilarity(i, i) == 0.0);
    for (std::size_t j = 0; j < 8; ++j) CHECK(r1.dissimilarity(i, j) == r1.dissimilarity(j, i));
  }
  CHECK(r1.per_rank_counts[0] == 8);

  TempDir cache("cache");
  cfg.jobs = 3;
  cfg.cache_dir = cache.path;
  auto r2 = run_retrieval(shapes, cfg);
  CHECK(fs::directory_iterator(cache.path) != fs::directory_iterator());
  auto r3 = run_retrieval(shapes, cfg);
  CHECK(report_to_json(r1)["dissimilarity"] == report_to_json(r2)["dissimilarity"]);
  CHECK(report_to_json(r2) == report_to_json(r3));
  CHECK(r1.per_rank_counts == r3.per_rank_counts);
}

TEST_CASE("zero noise reproduces the clean report") {
  auto shapes = testing::synthetic_dataset(4, 2, 64);
  auto cfg = small_config();
  auto clean = run_retrieval(shapes, cfg);
  std::vector<double> sigmas = {0.0, 1.0};
  auto noisy = run_noise_experiment(shapes, sigmas, cfg);
  REQUIRE(noisy.size() == 2);
  CHECK(noisy[0].dissimilarity == clean.dissimilarity);
  CHECK(noisy[0].per_rank_counts == clean.per_rank_counts);
  CHECK_FALSE(noisy[1].dissimilarity == clean.dissimilarity);
  auto table = noise_table_csv(noisy, sigmas);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
}

TEST_CASE("noise streams depend on seed, item and sigma") {
  auto a = noise_stream(1, "x", 0.5).next_u64();
  CHECK(a == noise_stream(1, "x", 0.5).next_u64());
  CHECK(a != noise_stream(2, "x", 0.5).next_u64());
  CHECK(a != noise_stream(1, "y", 0.5).next_u64());
  CHECK(a != noise_stream(1, "x", 0.6).next_u64());
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST_CASE("perfectly separated classes score every rank") {
  const std::size_t n = 22;
  Matrix m(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i < 11 ? "x" : "y");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i < 11) == (j < 11) ? 0.0 : 1.0;
  }
  CHECK(bulls_eye_counts(m, labels, 11) == std::vector<std::size_t>(11, n));
}

TEST_CASE("pairwise matrix: duplicates, threading and growth") {
  Rng rng(6);
  std::vector<FeatureMatrix> fs;
  for (int k = 0; k < 10; ++k) {
    std::vector<std::vector<double>> cols(5 + rng.below(10), std::vector<double>(4));
    for (auto& c : cols)
      for (auto& v : c) v = rng.below(6);
    fs.push_back(testing::matrix_from_columns(cols));
  }
  fs.push_back(fs[3]);
  auto serial = pairwise_dissimilarity(fs, std::nullopt, 1);
  auto parallel = pairwise_dissimilarity(fs, std::nullopt, 4);
  CHECK(serial == parallel);
  CHECK(serial(3, 10) == 0.0);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j) CHECK(serial(i, j) == serial(j, i));
  auto shorter = pairwise_dissimilarity(std::span<const FeatureMatrix>(fs).first(6), std::nullopt, 1);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(shorter(i, j) == serial(i, j));
  fs.push_back(FeatureMatrix(3, 4, ScaleConfig{}));
  CHECK_THROWS_AS(pairwise_dissimilarity(fs, 1.0, 1), Error);
}
