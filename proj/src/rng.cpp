#include "gngshape/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gngshape/error.hpp"

namespace gngshape {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::InvalidArgument, "Rng::below with zero bound");
  // Rejection keeps the draw unbiased for bounds that do not divide 2^64.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::EmptyForeground: return "EmptyForeground";
    case ErrorCode::InsufficientForeground: return "InsufficientForeground";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::DegenerateGraph: return "DegenerateGraph";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingRoot: return "MissingRoot";
    case ErrorCode::UnlabeledItem: return "UnlabeledItem";
    case ErrorCode::NoImages: return "NoImages";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace gngshape
