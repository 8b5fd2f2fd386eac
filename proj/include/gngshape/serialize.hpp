#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gngshape/boundary.hpp"
#include "gngshape/features.hpp"
#include "gngshape/graph.hpp"
#include "gngshape/matching.hpp"
#include "gngshape/retrieval.hpp"

namespace gngshape {

using nlohmann::json;

/// {"vertices":[{"id","x","y"}], "edges":[[id,id]]}; ages and errors are
/// not serialized.
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j);

/// Plain list of vertex ids.
json boundary_to_json(const Graph& g, const BoundaryCycle& cycle);
BoundaryCycle boundary_from_json(const Graph& g, const json& j);

json features_to_json(const FeatureMatrix& f);
FeatureMatrix features_from_json(const json& j);
/// m rows x n columns; '#' header lines give the block layout and ids.
std::string features_to_csv(const FeatureMatrix& f);

/// Cost plus matched boundary vertex id pairs.
json dissimilarity_to_json(const Dissimilarity& d, const FeatureMatrix& a, const FeatureMatrix& b,
                           double gap_cost);

json report_to_json(const RetrievalReport& report);
/// Bull's-eye table: header of ordinal ranks, then one row of counts.
std::string report_to_csv(const RetrievalReport& report, const std::string& row_name = "gngshape");
/// One row per noise level, like the clean table.
std::string noise_table_csv(std::span<const RetrievalReport> reports, std::span<const double> sigmas);

/// "index,id,x,y" polyline of the boundary walk, closed back to its start.
std::string boundary_polyline_csv(const Graph& g, const BoundaryCycle& cycle);
/// Per walk position, each feature block averaged over its scales.
std::string feature_series_csv(const Graph& g, const BoundaryCycle& cycle, const FeatureMatrix& f);

}  // namespace gngshape
