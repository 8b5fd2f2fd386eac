#include "gngshape/serialize.hpp"

#include <sstream>

#include "gngshape/error.hpp"

namespace gngshape {

namespace {

std::string ordinal(std::size_t k) {
  const std::size_t mod100 = k % 100;
  const char* suffix = "th";
  if (mod100 < 11 || mod100 > 13) {
    switch (k % 10) {
      case 1: suffix = "st"; break;
      case 2: suffix = "nd"; break;
      case 3: suffix = "rd"; break;
      default: break;
    }
  }
  return std::to_string(k) + suffix;
}

std::ostringstream precise_stream() {
  std::ostringstream out;
  out.precision(17);
  return out;
}

}  // namespace

json graph_to_json(const Graph& g) {
  json vertices = json::array();
  for (const auto& v : g.vertices()) vertices.push_back({{"id", v.id}, {"x", v.position.x}, {"y", v.position.y}});
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({g.id(a), g.id(b)});
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const json& j) {
  try {
    std::vector<VertexRecord> vertices;
    for (const auto& v : j.at("vertices"))
      vertices.push_back({v.at("id").get<VertexId>(), {v.at("x").get<double>(), v.at("y").get<double>()}});
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) fail(ErrorCode::CorruptFile, "edge entries must be id pairs");
      edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
    return Graph::from_records(std::move(vertices), edges);
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptFile, std::string("graph JSON: ") + e.what());
  }
}

json boundary_to_json(const Graph& g, const BoundaryCycle& cycle) { return cycle.ids(g); }

BoundaryCycle boundary_from_json(const Graph& g, const json& j) {
  BoundaryCycle cycle;
  try {
    for (const auto& id : j) {
      auto idx = g.find(id.get<VertexId>());
      if (!idx) fail(ErrorCode::UnknownVertex, "boundary id " + id.dump() + " not in graph");
      cycle.walk.push_back(*idx);
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptFile, std::string("boundary JSON: ") + e.what());
  }
  return cycle;
}

json features_to_json(const FeatureMatrix& f) {
  const auto& l = f.layout();
  json columns = json::array();
  for (std::size_t c = 0; c < f.cols(); ++c) {
    const auto col = f.column(c);
    columns.push_back(std::vector<double>(col.begin(), col.end()));
  }
  return {{"rows", f.rows()},
          {"cols", f.cols()},
          {"blocks", {{"P", l.perimeter}, {"B", l.boundary}, {"CH", l.hull}, {"C", l.center}}},
          {"threshold", l.threshold},
          {"boundary", f.boundary_ids},
          {"columns", std::move(columns)}};
}

FeatureMatrix features_from_json(const json& j) {
  try {
    ScaleConfig layout;
    const auto& blocks = j.at("blocks");
    layout.perimeter = blocks.at("P").get<int>();
    layout.boundary = blocks.at("B").get<int>();
    layout.hull = blocks.at("CH").get<int>();
    layout.center = blocks.at("C").get<int>();
    layout.threshold = j.value("threshold", layout.threshold);
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    if (rows != static_cast<std::size_t>(layout.total()))
      fail(ErrorCode::CorruptFile, "row count does not match block layout");
    FeatureMatrix f(rows, cols, layout);
    const auto& columns = j.at("columns");
    if (columns.size() != cols) fail(ErrorCode::CorruptFile, "column count mismatch");
    for (std::size_t c = 0; c < cols; ++c) {
      if (columns[c].size() != rows) fail(ErrorCode::CorruptFile, "column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) f.at(r, c) = columns[c][r].get<double>();
    }
    f.boundary_ids = j.at("boundary").get<std::vector<VertexId>>();
    return f;
  } catch (const json::exception& e) {
    fail(ErrorCode::CorruptFile, std::string("feature JSON: ") + e.what());
  }
}

std::string features_to_csv(const FeatureMatrix& f) {
  auto out = precise_stream();
  const auto& l = f.layout();
  out << "# blocks P=" << l.perimeter << " B=" << l.boundary << " CH=" << l.hull << " C=" << l.center << "\n";
  out << "# rows 1-" << l.perimeter << ": P; " << l.perimeter + 1 << "-" << l.perimeter + l.boundary
      << ": B; " << l.perimeter + l.boundary + 1 << "-" << l.perimeter + l.boundary + l.hull << ": CH; "
      << l.perimeter + l.boundary + l.hull + 1 << "-" << l.total() << ": C\n";
  out << "# boundary ids";
  for (VertexId id : f.boundary_ids) out << ' ' << id;
  out << "\n";
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < f.cols(); ++c) out << (c ? "," : "") << f.at(r, c);
    out << "\n";
  }
  return out.str();
}

json dissimilarity_to_json(const Dissimilarity& d, const FeatureMatrix& a, const FeatureMatrix& b,
                           double gap_cost) {
  json pairs = json::array();
  for (auto [i, k] : d.pairs()) {
    const bool have_ids = i < a.boundary_ids.size() && k < b.boundary_ids.size();
    pairs.push_back({{"a_position", i},
                     {"b_position", k},
                     {"a_id", have_ids ? json(a.boundary_ids[i]) : json()},
                     {"b_id", have_ids ? json(b.boundary_ids[k]) : json()}});
  }
  return {{"cost", d.cost},
          {"gap_cost", gap_cost},
          {"shift", d.best.shift},
          {"shifted_sequence", (d.best.shift_applies_to_first != d.swapped) ? "a" : "b"},
          {"a_length", a.cols()},
          {"b_length", b.cols()},
          {"pairs", std::move(pairs)}};
}

json report_to_json(const RetrievalReport& report) {
  json matrix = json::array();
  for (std::size_t r = 0; r < report.dissimilarity.rows(); ++r) {
    const auto row = report.dissimilarity.row(r);
    matrix.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"ids", report.ids},
          {"labels", report.labels},
          {"per_rank_counts", report.per_rank_counts},
          {"dissimilarity", std::move(matrix)},
          {"metadata", report.metadata}};
}

std::string report_to_csv(const RetrievalReport& report, const std::string& row_name) {
  std::ostringstream out;
  out << "method";
  for (std::size_t k = 1; k <= report.per_rank_counts.size(); ++k) out << ',' << ordinal(k);
  out << "\n" << row_name;
  for (std::size_t c : report.per_rank_counts) out << ',' << c;
  out << "\n";
  return out.str();
}

std::string noise_table_csv(std::span<const RetrievalReport> reports, std::span<const double> sigmas) {
  if (reports.size() != sigmas.size()) fail(ErrorCode::InvalidArgument, "one report per sigma expected");
  std::ostringstream out;
  out << "sigma";
  const std::size_t ranks = reports.empty() ? 0 : reports.front().per_rank_counts.size();
  for (std::size_t k = 1; k <= ranks; ++k) out << ',' << ordinal(k);
  out << "\n";
  for (std::size_t s = 0; s < reports.size(); ++s) {
    out << sigmas[s];
    for (std::size_t c : reports[s].per_rank_counts) out << ',' << c;
    out << "\n";
  }
  return out.str();
}

std::string boundary_polyline_csv(const Graph& g, const BoundaryCycle& cycle) {
  auto out = precise_stream();
  out << "index,id,x,y\n";
  for (std::size_t i = 0; i <= cycle.size() && cycle.size() > 0; ++i) {
    const std::size_t v = cycle.walk[i % cycle.size()];
    out << i << ',' << g.id(v) << ',' << g.position(v).x << ',' << g.position(v).y << "\n";
  }
  return out.str();
}

std::string feature_series_csv(const Graph& g, const BoundaryCycle& cycle, const FeatureMatrix& f) {
  if (f.cols() != cycle.size()) fail(ErrorCode::DimensionMismatch, "features do not belong to this boundary");
  const auto& l = f.layout();
  const int sizes[] = {l.perimeter, l.boundary, l.hull, l.center};
  auto out = precise_stream();
  out << "index,id,x,y,P,B,CH,C\n";
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const std::size_t v = cycle.walk[i];
    out << i << ',' << g.id(v) << ',' << g.position(v).x << ',' << g.position(v).y;
    std::size_t row = 0;
    for (int size : sizes) {
      double sum = 0.0;
      for (int k = 0; k < size; ++k) sum += f.at(row++, i);
      out << ',' << sum / size;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace gngshape
