#include "gngshape/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>

#include "gngshape/error.hpp"

namespace gngshape {

namespace fs = std::filesystem;

std::map<std::string, std::size_t> Dataset::class_sizes() const {
  std::map<std::string, std::size_t> out;
  for (const auto& item : items) ++out[item.label];
  return out;
}

std::vector<std::string> Dataset::labels() const {
  std::vector<std::string> out;
  for (const auto& item : items) out.push_back(item.label);
  return out;
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  for (const auto& item : items) out.push_back(item.id);
  return out;
}

namespace {

bool is_image_file(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".png";
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<DatasetItem> read_manifest(const fs::path& root, const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) fail(ErrorCode::Io, "cannot read " + manifest.string());
  std::vector<DatasetItem> items;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.rfind(',');
    const std::string where = manifest.filename().string() + ":" + std::to_string(line_no);
    if (comma == std::string::npos) fail(ErrorCode::UnlabeledItem, where + " has no label column");
    std::string rel = trim(line.substr(0, comma));
    std::string label = trim(line.substr(comma + 1));
    if (rel.empty()) fail(ErrorCode::UnlabeledItem, where + " has an empty path");
    if (label.empty()) fail(ErrorCode::UnlabeledItem, where + " (" + rel + ") has an empty label");
    const std::string id = fs::path(rel).lexically_normal().generic_string();
    if (!seen.insert(id).second) fail(ErrorCode::UnlabeledItem, "duplicate manifest path " + id);
    items.push_back({id, label, root / fs::path(rel)});
  }
  return items;
}

std::vector<DatasetItem> scan_directories(const fs::path& root) {
  std::vector<DatasetItem> items;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory()) {
      const std::string label = entry.path().filename().string();
      for (const auto& file : fs::directory_iterator(entry.path()))
        if (file.is_regular_file() && is_image_file(file.path()))
          items.push_back({fs::relative(file.path(), root).generic_string(), label, file.path()});
    } else if (entry.is_regular_file() && is_image_file(entry.path())) {
      fail(ErrorCode::UnlabeledItem,
           entry.path().filename().string() + " sits at the root without a class directory");
    }
  }
  return items;
}

}  // namespace

Dataset load_dataset(const fs::path& root) {
  if (!fs::is_directory(root)) fail(ErrorCode::MissingRoot, root.string() + " is not a directory");
  Dataset ds;
  ds.root = root;
  const fs::path manifest = root / kManifestName;
  ds.items = fs::exists(manifest) ? read_manifest(root, manifest) : scan_directories(root);
  if (ds.items.empty()) fail(ErrorCode::NoImages, "no images under " + root.string());
  std::sort(ds.items.begin(), ds.items.end(),
            [](const DatasetItem& a, const DatasetItem& b) { return a.id < b.id; });
  return ds;
}

std::vector<LabeledShape> load_shapes(const Dataset& dataset, const LoadOptions& options) {
  std::vector<LabeledShape> out;
  out.reserve(dataset.items.size());
  for (const auto& item : dataset.items)
    out.push_back({item.id, item.label, load_image_file(item.path, options)});
  return out;
}

}  // namespace gngshape
