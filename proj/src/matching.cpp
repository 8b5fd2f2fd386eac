#include "gngshape/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gngshape/error.hpp"

namespace gngshape {

std::size_t Matching::matched_pairs() const {
  return static_cast<std::size_t>(std::count_if(pi.begin(), pi.end(), [](std::size_t p) { return p != 0; }));
}

std::vector<std::pair<std::size_t, std::size_t>> Matching::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = pi.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (pi[i] == 0) continue;
    std::size_t first = i, second = pi[i] - 1;
    if (shift_applies_to_first)
      first = (first + shift) % n;
    else
      second = (second + shift) % second_length;
    out.emplace_back(first, second);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Dissimilarity::pairs() const {
  auto out = best.pairs();
  if (swapped)
    for (auto& p : out) std::swap(p.first, p.second);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_rows(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.rows() != b.rows())
    fail(ErrorCode::DimensionMismatch, "feature matrices have " + std::to_string(a.rows()) + " and " +
                                           std::to_string(b.rows()) + " rows");
}

// Cross-column Euclidean distances, row-major over (a column, b column).
Matrix column_distances(const FeatureMatrix& a, const FeatureMatrix& b) {
  Matrix d(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    const auto ca = a.column(i);
    for (std::size_t j = 0; j < b.cols(); ++j) {
      const auto cb = b.column(j);
      double s = 0.0;
      for (std::size_t r = 0; r < ca.size(); ++r) {
        const double diff = ca[r] - cb[r];
        s += diff * diff;
      }
      d(i, j) = std::sqrt(s);
    }
  }
  return d;
}

// View of the distance table with either side rotated and optionally
// transposed, so every orientation/shift reuses one table.
struct CostView {
  const Matrix* table;
  bool transposed;
  bool rotate_first;
  std::size_t shift;

  std::size_t n() const { return transposed ? table->cols() : table->rows(); }
  std::size_t m() const { return transposed ? table->rows() : table->cols(); }
  double operator()(std::size_t i, std::size_t j) const {
    if (rotate_first)
      i = (i + shift) % n();
    else
      j = (j + shift) % m();
    return transposed ? (*table)(j, i) : (*table)(i, j);
  }
};

// Suffix DP: best[i][j] is the optimal cost of matching first[i..] with
// second[j..]. Both the cost-only pass and the traced pass evaluate the same
// expressions in the same order, so their costs agree bit for bit.
double suffix_cost(const CostView& c, double gap, std::vector<double>& row, std::vector<double>& next) {
  const std::size_t n = c.n(), m = c.m();
  next.assign(m + 1, 0.0);
  for (std::size_t j = m; j-- > 0;) next[j] = gap + next[j + 1];
  row.assign(m + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    row[m] = gap + next[m];
    for (std::size_t j = m; j-- > 0;) {
      const double match = c(i, j) + next[j + 1];
      const double skip_first = gap + next[j];
      const double skip_second = gap + row[j + 1];
      row[j] = std::min(match, std::min(skip_first, skip_second));
    }
    std::swap(row, next);
  }
  return next[0];
}

struct Cell {
  double cost;
  std::size_t matches;
};

bool better(const Cell& a, const Cell& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.matches > b.matches;
}

bool same(const Cell& a, const Cell& b) { return a.cost == b.cost && a.matches == b.matches; }

Matching traced_match(const CostView& c, double gap) {
  const std::size_t n = c.n(), m = c.m();
  std::vector<Cell> t((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Cell& { return t[i * (m + 1) + j]; };
  at(n, m) = {0.0, 0};
  for (std::size_t j = m; j-- > 0;) at(n, j) = {gap + at(n, j + 1).cost, 0};
  for (std::size_t i = n; i-- > 0;) {
    at(i, m) = {gap + at(i + 1, m).cost, 0};
    for (std::size_t j = m; j-- > 0;) {
      const Cell match{c(i, j) + at(i + 1, j + 1).cost, at(i + 1, j + 1).matches + 1};
      const Cell skip_first{gap + at(i + 1, j).cost, at(i + 1, j).matches};
      const Cell skip_second{gap + at(i, j + 1).cost, at(i, j + 1).matches};
      Cell best = match;
      if (better(skip_first, best)) best = skip_first;
      if (better(skip_second, best)) best = skip_second;
      at(i, j) = best;
    }
  }

  // Walk forward choosing, among optimal moves, the one giving the smallest
  // pi value at the current first-sequence position: unmapped (0) before a
  // match at j, before deferring to a later j.
  Matching out;
  out.pi.assign(n, 0);
  out.cost = at(0, 0).cost;
  out.second_length = m;
  std::size_t i = 0, j = 0;
  while (i < n) {
    const Cell here = at(i, j);
    if (j == m) {
      ++i;
      continue;
    }
    const Cell skip_first{gap + at(i + 1, j).cost, at(i + 1, j).matches};
    const Cell match{c(i, j) + at(i + 1, j + 1).cost, at(i + 1, j + 1).matches + 1};
    if (same(skip_first, here)) {
      ++i;
    } else if (same(match, here)) {
      out.pi[i] = j + 1;
      ++i;
      ++j;
    } else {
      ++j;
    }
  }
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double gap_from_table(const Matrix& table) {
  return 0.3 * median(std::vector<double>(table.data().begin(), table.data().end()));
}

struct Orientation {
  double cost;
  Matching matching;
};

Orientation best_rotation(const Matrix& table, bool transposed, double gap) {
  CostView view{&table, transposed, false, 0};
  const std::size_t n = view.n(), m = view.m();
  view.rotate_first = n < m;
  const std::size_t shifts = view.rotate_first ? n : m;
  std::vector<double> row, next;
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t best_shift = 0;
  for (std::size_t s = 0; s < shifts; ++s) {
    view.shift = s;
    const double cost = suffix_cost(view, gap, row, next);
    if (cost < best_cost) {
      best_cost = cost;
      best_shift = s;
    }
  }
  view.shift = best_shift;
  Matching matching = traced_match(view, gap);
  matching.shift = best_shift;
  matching.shift_applies_to_first = view.rotate_first;
  return {best_cost, std::move(matching)};
}

}  // namespace

Matching dp_match(const FeatureMatrix& a, const FeatureMatrix& b, double gap_cost) {
  check_rows(a, b);
  if (!(gap_cost >= 0.0)) fail(ErrorCode::InvalidArgument, "gap cost must be >= 0");
  const Matrix table = column_distances(a, b);
  return traced_match(CostView{&table, false, false, 0}, gap_cost);
}

double default_gap_cost(const FeatureMatrix& a, const FeatureMatrix& b) {
  check_rows(a, b);
  return gap_from_table(column_distances(a, b));
}

Dissimilarity cyclic_dissimilarity(const FeatureMatrix& a, const FeatureMatrix& b,
                                   std::optional<double> gap_cost) {
  check_rows(a, b);
  if (a.cols() == 0 || b.cols() == 0) fail(ErrorCode::InvalidArgument, "empty feature sequence");
  const Matrix table = column_distances(a, b);
  const double gap = gap_cost ? *gap_cost : gap_from_table(table);
  if (!(gap >= 0.0)) fail(ErrorCode::InvalidArgument, "gap cost must be >= 0");

  Orientation forward = best_rotation(table, false, gap);
  Orientation backward = best_rotation(table, true, gap);
  Dissimilarity out;
  if (backward.cost < forward.cost) {
    out.cost = backward.cost;
    out.best = std::move(backward.matching);
    out.swapped = true;
  } else {
    out.cost = forward.cost;
    out.best = std::move(forward.matching);
  }
  return out;
}

}  // namespace gngshape
