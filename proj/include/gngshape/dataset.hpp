#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gngshape/image.hpp"

namespace gngshape {

struct DatasetItem {
  /// Path relative to the dataset root, with '/' separators.
  std::string id;
  std::string label;
  std::filesystem::path path;
};

struct Dataset {
  std::filesystem::path root;
  std::vector<DatasetItem> items;

  std::map<std::string, std::size_t> class_sizes() const;
  std::vector<std::string> labels() const;
  std::vector<std::string> ids() const;
};

/// File name of the optional manifest at the dataset root. Each non-empty,
/// non-'#' line reads `relative/path,label`.
inline constexpr const char* kManifestName = "manifest.csv";

/// Loads a manifest when present, otherwise one class per immediate
/// subdirectory holding .pgm/.png files. Items are sorted by id.
/// Throws MissingRoot, UnlabeledItem (also for duplicate manifest paths)
/// and NoImages.
Dataset load_dataset(const std::filesystem::path& root);

/// An image in memory together with its identity and class.
struct LabeledShape {
  std::string id;
  std::string label;
  BinaryImage image;
};

std::vector<LabeledShape> load_shapes(const Dataset& dataset, const LoadOptions& options);

}  // namespace gngshape
