#pragma once

#include "gngshape/boundary.hpp"
#include "gngshape/features.hpp"
#include "gngshape/gng.hpp"
#include "gngshape/graph.hpp"
#include "gngshape/image.hpp"

namespace gngshape {

/// Everything derived from one binary image.
struct ShapeModel {
  Graph graph;
  BoundaryCycle boundary;
  FeatureMatrix features;
};

/// Corrected GNG graph, its outer boundary and the feature matrix.
ShapeModel model_shape(const BinaryImage& img, const GngParams& params, const ScaleConfig& scales);

}  // namespace gngshape
