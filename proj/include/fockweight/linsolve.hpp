#pragma once

// Exact sparse Gaussian elimination over the rationals.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "fockweight/rational.hpp"
#include "fockweight/sparse_operator.hpp"

namespace fockweight {

using SparseRow = std::map<std::size_t, Rational>;

/// Incremental row reduction. Rows are reduced against the current pivots
/// on insertion; `finish()` back-substitutes to reduced echelon form with
/// each pivot at the smallest column of its row.
class RowReducer {
 public:
  explicit RowReducer(std::size_t columns) : columns_(columns) {}

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Returns true when the row raised the rank.
  bool insert(SparseRow row);
  /// True when `row` lies in the span of the inserted rows.
  bool in_span(SparseRow row) const;

  /// Reduced echelon form; rows ordered by pivot column.
  void finish();
  const std::map<std::size_t, SparseRow>& rows() const { return pivots_; }

  /// Basis of {x : row . x = 0 for all rows}, one vector per free column in
  /// ascending order, with x[free] = 1. Calls finish().
  std::vector<SparseRow> nullspace();

 private:
  void reduce(SparseRow& row) const;

  std::size_t columns_;
  std::map<std::size_t, SparseRow> pivots_;  // pivot column -> row, leading coefficient 1
  bool reduced_ = true;
};

/// Rank of a family of sparse vectors.
std::size_t rank_of(const std::vector<SparseRow>& vectors, std::size_t columns);

/// Flattens an operator to a vector indexed col * D + row, keeping only rows
/// whose index is below `row_limit` (all rows when omitted).
SparseRow flatten(const RationalOperator& op, std::optional<std::size_t> row_limit = std::nullopt);
/// Inverse of flatten on a basis.
RationalOperator unflatten(const SparseRow& v, std::shared_ptr<const FockBasis> basis);

/// Exact inverse, or nullopt when singular.
std::optional<RationalOperator> inverse(const RationalOperator& op);

}  // namespace fockweight
