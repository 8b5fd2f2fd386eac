#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gngshape/rng.hpp"

namespace gngshape {

/// Continuous image coordinate. Pixel (i, j) covers [i, i+1) x [j, j+1);
/// y grows downward.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double squared_norm(Point2 a) { return a.x * a.x + a.y * a.y; }

/// Foreground mask of a single shape.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height);
  BinaryImage(int width, int height, std::vector<std::uint8_t> mask);

  int width() const { return width_; }
  int height() const { return height_; }

  bool at(int x, int y) const { return mask_[index(x, y)] != 0; }
  void set(int x, int y, bool value) { mask_[index(x, y)] = value ? 1 : 0; }

  /// Out-of-image coordinates read as background.
  bool foreground_or_false(int x, int y) const;

  std::span<const std::uint8_t> mask() const { return mask_; }
  std::size_t foreground_count() const;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> mask_;
};

struct LoadOptions {
  int threshold = 128;
  /// false: foreground is gray >= threshold (white object on black).
  /// true: foreground is gray < threshold.
  bool invert = false;
};

/// Decodes P2/P5 graymaps (and 8-bit grayscale PNG when built with libpng),
/// then thresholds. Throws UnsupportedFormat, CorruptFile or EmptyForeground.
BinaryImage load_image(std::span<const std::uint8_t> bytes, const LoadOptions& options = {});
BinaryImage load_image_file(const std::filesystem::path& path, const LoadOptions& options = {});

/// Binary P5 encoding with foreground = 255, background = 0.
std::string encode_pgm(const BinaryImage& img);

bool png_supported();

/// Uniform draws over foreground pixel centers. Pixels are indexed in
/// row-major order so a given stream always maps to the same pixels.
class ForegroundSampler {
 public:
  explicit ForegroundSampler(const BinaryImage& img);

  Point2 operator()(Rng& rng) const;
  std::size_t size() const { return pixels_.size(); }

 private:
  std::vector<Point2> pixels_;
};

/// One-off draw; prefer ForegroundSampler for repeated sampling.
Point2 sample_foreground(const BinaryImage& img, Rng& rng);

/// Moves every foreground pixel by independently rounded N(0, sigma^2)
/// offsets in x then y, clamping to the canvas and merging collisions.
BinaryImage perturb_gaussian(const BinaryImage& img, double sigma, Rng& rng);

/// True iff at least 5 of the 9 pixels in the 3x3 block around the pixel
/// containing p are background. Pixels off the canvas count as background.
bool background_majority(const BinaryImage& img, Point2 p);

}  // namespace gngshape
