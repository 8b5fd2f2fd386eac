// gngshape command-line interface.
//
// Exit codes: 0 success, 2 input or validation error, 3 internal invariant
// violation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gngshape/dataset.hpp"
#include "gngshape/error.hpp"
#include "gngshape/gng.hpp"
#include "gngshape/matching.hpp"
#include "gngshape/pipeline.hpp"
#include "gngshape/retrieval.hpp"
#include "gngshape/serialize.hpp"

namespace {

using namespace gngshape;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct CommonOptions {
  LoadOptions load;
  double noise_sigma = 0.0;
  GngParams gng;
  ScaleConfig scales;
};

void add_image_flags(CLI::App& app, CommonOptions& o) {
  app.add_option("--threshold", o.load.threshold, "Gray level separating object from background")
      ->check(CLI::Range(0, 255));
  app.add_flag("--invert", o.load.invert, "Treat dark pixels as the object");
  app.add_option("--noise-sigma", o.noise_sigma, "Gaussian pixel displacement applied before modelling")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.gng.seed, "Seed for GNG training and noise");
}

void add_gng_flags(CLI::App& app, CommonOptions& o) {
  app.add_option("--neurons", o.gng.neuron_budget, "Neuron budget N");
  app.add_option("--lambda", o.gng.insertion_period, "Signals between insertions");
  app.add_option("--max-age", o.gng.max_edge_age, "Maximum edge age");
  app.add_option("--alpha", o.gng.error_split, "Error split factor at insertion");
  app.add_option("--decay", o.gng.error_decay, "Per-signal error decay");
  app.add_option("--eps-b", o.gng.winner_rate, "Winner learning rate");
  app.add_option("--eps-n", o.gng.neighbor_rate, "Neighbor learning rate");
}

void add_scale_flags(CLI::App& app, CommonOptions& o) {
  app.add_option("--scale-p", o.scales.perimeter, "Radii for the perimeter block");
  app.add_option("--scale-b", o.scales.boundary, "Radii for the boundary-in-disk block");
  app.add_option("--scale-ch", o.scales.hull, "Radii for the convex hull-area block");
  app.add_option("--scale-c", o.scales.center, "Radii for the distance-to-center block");
  app.add_option("--scale-threshold", o.scales.threshold, "Cutoff for automatic scale selection");
}

void add_all_flags(CLI::App& app, CommonOptions& o) {
  add_image_flags(app, o);
  add_gng_flags(app, o);
  add_scale_flags(app, o);
}

bool is_json(const fs::path& p) { return p.extension() == ".json"; }

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) fail(ErrorCode::Io, "cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptFile, p.string() + ": " + e.what());
  }
}

BinaryImage read_image(const fs::path& p, const CommonOptions& o) {
  BinaryImage img = load_image_file(p, o.load);
  if (o.noise_sigma > 0.0) {
    Rng rng = noise_stream(o.gng.seed, p.filename().string(), o.noise_sigma);
    img = perturb_gaussian(img, o.noise_sigma, rng);
  }
  return img;
}

/// Graph from an image (trained and corrected) or from a graph JSON file.
Graph read_graph(const fs::path& p, const CommonOptions& o) {
  if (is_json(p)) return graph_from_json(read_json(p));
  return build_shape_graph(read_image(p, o), o.gng);
}

/// Features from an image, a graph JSON or a feature JSON file.
FeatureMatrix read_features(const fs::path& p, const CommonOptions& o) {
  if (is_json(p)) {
    json j = read_json(p);
    if (j.contains("columns")) return features_from_json(j);
    Graph g = graph_from_json(j);
    return build_feature_matrix(g, extract_outer_boundary(g), o.scales);
  }
  return model_shape(read_image(p, o), o.gng, o.scales).features;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::vector<double> parse_sigmas(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !(v >= 0.0)) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "bad sigma value '" + item + "'");
    }
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "no sigma values given");
  return out;
}

ScaleConfig auto_scales(std::span<const LabeledShape> shapes, const CommonOptions& o, int cap,
                        unsigned jobs) {
  std::vector<Graph> graphs(shapes.size());
  std::vector<BoundaryCycle> cycles(shapes.size());
  parallel_for(shapes.size(), jobs, [&](std::size_t i) {
    graphs[i] = build_shape_graph(shapes[i].image, o.gng);
    cycles[i] = extract_outer_boundary(graphs[i]);
  });
  std::vector<ScaleSample> samples;
  for (std::size_t i = 0; i < shapes.size(); ++i) samples.push_back({&graphs[i], &cycles[i]});
  std::vector<std::string> warnings;
  ScaleConfig chosen = select_scale_config(samples, o.scales.threshold, cap, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "selected scales: " << chosen.describe() << "\n";
  return chosen;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-based shape recognition with Growing Neural Gas models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML file whose keys mirror the flag names");

  CommonOptions opts;
  std::string input, second, output, format = "json", series = "features", report_path, csv_path, sigma_text;
  std::string cache_dir;
  std::optional<double> gap_cost;
  std::size_t max_rank = 0;
  unsigned jobs = 1;
  bool auto_select = false;
  int scale_cap = 20;

  auto* build = app.add_subcommand("build", "Train and correct the GNG graph of an image; prints graph JSON");
  build->add_option("image", input, "Input image")->required();
  build->add_option("-o,--output", output, "Output path (default stdout)");
  add_image_flags(*build, opts);
  add_gng_flags(*build, opts);

  auto* boundary = app.add_subcommand("boundary", "Outer boundary walk as a JSON list of vertex ids");
  boundary->add_option("input", input, "Image or graph JSON")->required();
  boundary->add_option("-o,--output", output, "Output path (default stdout)");
  add_image_flags(*boundary, opts);
  add_gng_flags(*boundary, opts);

  auto* features = app.add_subcommand("features", "Boundary feature matrix as JSON or CSV");
  features->add_option("input", input, "Image or graph JSON")->required();
  features->add_option("-o,--output", output, "Output path (default stdout)");
  features->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_all_flags(*features, opts);

  auto* match = app.add_subcommand("match", "Cyclic DP matching of two shapes; prints cost and id pairs");
  match->add_option("a", input, "Image, graph JSON or feature JSON")->required();
  match->add_option("b", second, "Image, graph JSON or feature JSON")->required();
  match->add_option("--gap-cost", gap_cost, "Penalty per unmatched boundary vertex")->check(CLI::NonNegativeNumber);
  match->add_option("-o,--output", output, "Output path (default stdout)");
  add_all_flags(*match, opts);

  auto add_dataset_flags = [&](CLI::App* cmd) {
    cmd->add_option("dataset", input, "Dataset root (class subdirectories or manifest.csv)")->required();
    cmd->add_option("--max-rank", max_rank, "Ranks to score (default: largest class size)");
    cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--gap-cost", gap_cost, "Fixed gap cost (default: per-pair median rule)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--cache-dir", cache_dir, "Directory for cached feature matrices");
    cmd->add_flag("--auto-scales", auto_select, "Select scale counts from the dataset before scoring");
    cmd->add_option("--scale-cap", scale_cap, "Upper bound for automatic scale selection");
    add_all_flags(*cmd, opts);
  };

  auto* retrieve = app.add_subcommand("retrieve", "Bull's-eye retrieval over a dataset");
  add_dataset_flags(retrieve);
  retrieve->add_option("--report", report_path, "Write the full JSON report here");
  retrieve->add_option("--csv", csv_path, "Write the rank table CSV here (default stdout)");

  auto* noise = app.add_subcommand("noise", "Retrieval under Gaussian pixel noise at several sigmas");
  add_dataset_flags(noise);
  noise->add_option("--sigmas", sigma_text, "Comma-separated sigmas")->default_val("0.2,0.4,0.6,0.8,1");
  noise->add_option("--report", report_path, "Write all JSON reports here");
  noise->add_option("--csv", csv_path, "Write the sigma x rank table here (default stdout)");

  auto* plot = app.add_subcommand("plot", "CSV series for plotting boundaries or averaged features");
  plot->add_option("input", input, "Image or graph JSON")->required();
  plot->add_option("--series", series, "boundary or features")->check(CLI::IsMember({"boundary", "features"}));
  plot->add_option("-o,--output", output, "Output path (default stdout)");
  add_all_flags(*plot, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    opts.gng.validate();
    if (build->parsed()) {
      write_output(graph_to_json(read_graph(input, opts)).dump(), output);
    } else if (boundary->parsed()) {
      const Graph g = read_graph(input, opts);
      write_output(boundary_to_json(g, extract_outer_boundary(g)).dump(), output);
    } else if (features->parsed()) {
      const FeatureMatrix f = read_features(input, opts);
      write_output(format == "csv" ? features_to_csv(f) : features_to_json(f).dump(), output);
    } else if (match->parsed()) {
      const FeatureMatrix a = read_features(input, opts);
      const FeatureMatrix b = read_features(second, opts);
      const double gap = gap_cost ? *gap_cost : default_gap_cost(a, b);
      const Dissimilarity d = cyclic_dissimilarity(a, b, gap);
      write_output(dissimilarity_to_json(d, a, b, gap).dump(2), output);
    } else if (plot->parsed()) {
      const Graph g = read_graph(input, opts);
      const BoundaryCycle c = extract_outer_boundary(g);
      write_output(series == "boundary" ? boundary_polyline_csv(g, c)
                                        : feature_series_csv(g, c, build_feature_matrix(g, c, opts.scales)),
                   output);
    } else if (retrieve->parsed() || noise->parsed()) {
      const Dataset ds = load_dataset(input);
      auto shapes = load_shapes(ds, opts.load);
      if (opts.noise_sigma > 0.0 && retrieve->parsed())
        for (auto& s : shapes) {
          Rng rng = noise_stream(opts.gng.seed, s.id, opts.noise_sigma);
          s.image = perturb_gaussian(s.image, opts.noise_sigma, rng);
        }
      RetrievalConfig config;
      config.gng = opts.gng;
      config.scales = auto_select ? auto_scales(shapes, opts, scale_cap, jobs) : opts.scales;
      config.gap_cost = gap_cost;
      config.max_rank = max_rank;
      config.jobs = jobs;
      if (!cache_dir.empty()) config.cache_dir = cache_dir;

      if (retrieve->parsed()) {
        RetrievalReport report = run_retrieval(shapes, config);
        report.metadata["dataset"] = ds.root.string();
        report.metadata["threshold"] = std::to_string(opts.load.threshold);
        report.metadata["invert"] = opts.load.invert ? "true" : "false";
        if (opts.noise_sigma > 0.0) report.metadata["noise_sigma"] = std::to_string(opts.noise_sigma);
        if (!report_path.empty()) write_output(report_to_json(report).dump(), report_path);
        write_output(report_to_csv(report), csv_path);
      } else {
        const auto sigmas = parse_sigmas(sigma_text);
        auto reports = run_noise_experiment(shapes, sigmas, config);
        if (!report_path.empty()) {
          json all = json::array();
          for (auto& r : reports) {
            r.metadata["dataset"] = ds.root.string();
            all.push_back(report_to_json(r));
          }
          write_output(all.dump(), report_path);
        }
        write_output(noise_table_csv(reports, sigmas), csv_path);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvariantViolation ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
