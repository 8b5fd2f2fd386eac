#include "gngshape/pipeline.hpp"

namespace gngshape {

ShapeModel model_shape(const BinaryImage& img, const GngParams& params, const ScaleConfig& scales) {
  ShapeModel model;
  model.graph = build_shape_graph(img, params);
  model.boundary = extract_outer_boundary(model.graph);
  model.features = build_feature_matrix(model.graph, model.boundary, scales);
  return model;
}

}  // namespace gngshape
