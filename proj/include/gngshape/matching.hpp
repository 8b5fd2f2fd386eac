#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gngshape/features.hpp"

namespace gngshape {

/// Order-preserving partial correspondence from a first sequence (length
/// n) onto a second (length m).
struct Matching {
  /// pi[i] == 0: position i of the first sequence is unmapped; otherwise
  /// pi[i] is the 1-based position in the second sequence. Positions refer
  /// to the linear order after the cyclic shift below has been applied.
  std::vector<std::size_t> pi;
  double cost = 0.0;
  /// Cyclic offset: linear position t of the rotated sequence is original
  /// column (t + shift) mod length.
  std::size_t shift = 0;
  /// Which sequence the shift rotates.
  bool shift_applies_to_first = false;
  std::size_t second_length = 0;

  std::size_t matched_pairs() const;
  /// Matched (first column, second column) pairs in original indexing.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
};

/// Minimum-cost order-preserving matching of two linear sequences. Cost is
/// the sum of Euclidean column distances over matched pairs plus gap_cost
/// for every unmatched column on either side. Among equal-cost solutions
/// the one with more matched pairs wins, then the lexicographically
/// smallest pi. Throws DimensionMismatch when row counts differ.
Matching dp_match(const FeatureMatrix& a, const FeatureMatrix& b, double gap_cost);

/// 0.3 x median of all cross-column Euclidean distances between a and b.
double default_gap_cost(const FeatureMatrix& a, const FeatureMatrix& b);

struct Dissimilarity {
  double cost = 0.0;
  Matching best;
  /// True when the winning orientation treats b as the first sequence.
  bool swapped = false;

  /// Matched (a column, b column) pairs regardless of orientation.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
};

/// Tries every cyclic rotation of the shorter sequence (the second on
/// equal lengths) and keeps the cheapest, smallest shift first on ties. The
/// result is the lower of the (a, b) and (b, a) orientations, so it is
/// symmetric. A missing gap_cost selects default_gap_cost(a, b).
Dissimilarity cyclic_dissimilarity(const FeatureMatrix& a, const FeatureMatrix& b,
                                   std::optional<double> gap_cost = std::nullopt);

}  // namespace gngshape
