#pragma once

// Exact linear algebra over the rationals for edge-count vectors.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace txbasis {

using Rational = boost::multiprecision::cpp_rational;
using CountVector = std::vector<std::int64_t>;

/// Incrementally maintained row space in reduced echelon form.
class RowSpace {
 public:
  explicit RowSpace(size_t dim) : dim_(dim) {}

  size_t dim() const { return dim_; }
  size_t rank() const { return rows_.size(); }

  /// Adds v; returns false (and leaves the space unchanged) when v is
  /// already in the span.
  bool add(const CountVector& v) {
    auto r = reduce(v);
    size_t p = 0;
    while (p < dim_ && r[p] == 0) ++p;
    if (p == dim_) return false;
    Rational lead = r[p];
    for (auto& x : r) x /= lead;
    for (size_t i = 0; i < rows_.size(); ++i) {
      Rational f = rows_[i][p];
      if (f != 0)
        for (size_t j = 0; j < dim_; ++j) rows_[i][j] -= f * r[j];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    return true;
  }

  bool contains(const CountVector& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }

 private:
  size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<size_t> pivots_;

  std::vector<Rational> reduce(const CountVector& v) const {
    if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
    std::vector<Rational> r(v.begin(), v.end());
    for (size_t i = 0; i < rows_.size(); ++i) {
      Rational f = r[pivots_[i]];
      if (f == 0) continue;
      for (size_t j = 0; j < dim_; ++j) r[j] -= f * rows_[i][j];
    }
    return r;
  }
};

/// Rank over Q; all vectors must share one dimension.
inline size_t vector_rank(const std::vector<CountVector>& vs) {
  if (vs.empty()) return 0;
  RowSpace space(vs.front().size());
  for (const auto& v : vs) space.add(v);
  return space.rank();
}

/// True iff v is a rational combination of the rows of `basis`.
inline bool span_contains(const std::vector<CountVector>& basis, const CountVector& v) {
  RowSpace space(v.size());
  for (const auto& b : basis) space.add(b);
  return space.contains(v);
}

}  // namespace txbasis
