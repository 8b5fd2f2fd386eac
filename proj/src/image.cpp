#include "gngshape/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "gngshape/error.hpp"

#ifdef GNGSHAPE_HAVE_PNG
#include <png.h>
#endif

namespace gngshape {

BinaryImage::BinaryImage(int width, int height)
    : BinaryImage(width, height,
                  std::vector<std::uint8_t>(static_cast<std::size_t>(std::max(width, 0)) *
                                            static_cast<std::size_t>(std::max(height, 0)))) {}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> mask)
    : width_(width), height_(height), mask_(std::move(mask)) {
  if (width <= 0 || height <= 0)
    fail(ErrorCode::InvalidArgument, "image dimensions must be positive");
  if (mask_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    fail(ErrorCode::InvalidArgument, "mask length does not match width x height");
  for (auto& v : mask_) v = v ? 1 : 0;
}

bool BinaryImage::foreground_or_false(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return false;
  return at(x, y);
}

std::size_t BinaryImage::foreground_count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

namespace {

struct Graymap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> gray;  // rescaled to 0..255
};

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then parses an unsigned decimal.
  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
      fail(ErrorCode::CorruptFile, "malformed graymap header");
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) fail(ErrorCode::CorruptFile, "graymap number out of range");
      ++pos_;
    }
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

std::uint8_t rescale(long value, long maxval) {
  if (value > maxval) fail(ErrorCode::CorruptFile, "gray value exceeds maxval");
  if (maxval == 255) return static_cast<std::uint8_t>(value);
  return static_cast<std::uint8_t>((value * 255 + maxval / 2) / maxval);
}

Graymap decode_pgm(std::span<const std::uint8_t> bytes) {
  const bool ascii = bytes[1] == '2';
  HeaderReader reader(bytes);
  Graymap out;
  const long w = reader.next_int();
  const long h = reader.next_int();
  const long maxval = reader.next_int();
  if (w <= 0 || h <= 0) fail(ErrorCode::CorruptFile, "graymap has zero dimension");
  if (maxval <= 0) fail(ErrorCode::CorruptFile, "graymap maxval must be positive");
  if (maxval > 255) fail(ErrorCode::UnsupportedFormat, "16-bit graymaps are not supported");
  out.width = static_cast<int>(w);
  out.height = static_cast<int>(h);
  const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  out.gray.resize(count);

  if (ascii) {
    for (std::size_t i = 0; i < count; ++i) out.gray[i] = rescale(reader.next_int(), maxval);
    return out;
  }
  // Exactly one whitespace byte separates maxval from the raster.
  if (reader.pos() >= bytes.size() || !std::isspace(bytes[reader.pos()]))
    fail(ErrorCode::CorruptFile, "missing separator before binary raster");
  reader.advance(1);
  if (bytes.size() - reader.pos() < count)
    fail(ErrorCode::CorruptFile, "binary raster shorter than header dimensions");
  for (std::size_t i = 0; i < count; ++i) out.gray[i] = rescale(bytes[reader.pos() + i], maxval);
  return out;
}

bool is_png(std::span<const std::uint8_t> bytes) {
  static constexpr std::uint8_t kMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  return bytes.size() >= 8 && std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin());
}

#ifdef GNGSHAPE_HAVE_PNG
Graymap decode_png(std::span<const std::uint8_t> bytes) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
    fail(ErrorCode::CorruptFile, std::string("png header: ") + image.message);
  if (image.format & PNG_FORMAT_FLAG_COLOR) {
    png_image_free(&image);
    fail(ErrorCode::UnsupportedFormat, "color PNG inputs are not accepted");
  }
  image.format = PNG_FORMAT_GRAY;
  Graymap out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.gray.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.gray.data(), 0, nullptr)) {
    std::string message = image.message;
    png_image_free(&image);
    fail(ErrorCode::CorruptFile, "png payload: " + message);
  }
  return out;
}
#endif

Graymap decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5'))
    return decode_pgm(bytes);
  if (is_png(bytes)) {
#ifdef GNGSHAPE_HAVE_PNG
    return decode_png(bytes);
#else
    fail(ErrorCode::UnsupportedFormat, "built without PNG support");
#endif
  }
  fail(ErrorCode::UnsupportedFormat, "unrecognized magic bytes");
}

}  // namespace

bool png_supported() {
#ifdef GNGSHAPE_HAVE_PNG
  return true;
#else
  return false;
#endif
}

BinaryImage load_image(std::span<const std::uint8_t> bytes, const LoadOptions& options) {
  if (options.threshold < 0 || options.threshold > 255)
    fail(ErrorCode::InvalidArgument, "threshold must lie in 0..255");
  Graymap g = decode(bytes);
  std::vector<std::uint8_t> mask(g.gray.size());
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.gray.size(); ++i) {
    const bool bright = g.gray[i] >= options.threshold;
    mask[i] = (bright != options.invert) ? 1 : 0;
    count += mask[i];
  }
  if (count == 0) fail(ErrorCode::EmptyForeground, "no foreground pixel after thresholding");
  return BinaryImage(g.width, g.height, std::move(mask));
}

BinaryImage load_image_file(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return load_image(bytes, options);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " (" + path.string() + ")");
  }
}

std::string encode_pgm(const BinaryImage& img) {
  std::ostringstream out;
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  std::string raster(img.mask().size(), '\0');
  for (std::size_t i = 0; i < raster.size(); ++i)
    raster[i] = img.mask()[i] ? static_cast<char>(255) : '\0';
  out << raster;
  return out.str();
}

ForegroundSampler::ForegroundSampler(const BinaryImage& img) {
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      if (img.at(x, y)) pixels_.push_back({x + 0.5, y + 0.5});
  if (pixels_.empty()) fail(ErrorCode::EmptyForeground, "cannot sample an empty mask");
}

Point2 ForegroundSampler::operator()(Rng& rng) const { return pixels_[rng.below(pixels_.size())]; }

Point2 sample_foreground(const BinaryImage& img, Rng& rng) { return ForegroundSampler(img)(rng); }

BinaryImage perturb_gaussian(const BinaryImage& img, double sigma, Rng& rng) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    fail(ErrorCode::InvalidArgument, "noise sigma must be a finite value >= 0");
  if (sigma == 0.0) return img;
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (!img.at(x, y)) continue;
      const double gx = sigma * rng.normal();
      const double gy = sigma * rng.normal();
      const long nx = std::clamp<long>(x + std::lround(gx), 0, img.width() - 1);
      const long ny = std::clamp<long>(y + std::lround(gy), 0, img.height() - 1);
      out.set(static_cast<int>(nx), static_cast<int>(ny), true);
    }
  }
  return out;
}

bool background_majority(const BinaryImage& img, Point2 p) {
  const int cx = static_cast<int>(std::floor(p.x));
  const int cy = static_cast<int>(std::floor(p.y));
  int background = 0;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx)
      if (!img.foreground_or_false(cx + dx, cy + dy)) ++background;
  return background >= 5;
}

}  // namespace gngshape
