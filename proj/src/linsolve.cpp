#include "fockweight/linsolve.hpp"

#include <stdexcept>

namespace fockweight {

namespace {

void axpy(SparseRow& row, const Rational& coef, const SparseRow& other) {
  for (const auto& [c, v] : other) {
    auto [it, inserted] = row.emplace(c, Rational(0));
    it->second -= coef * v;
    if (sgn(it->second) == 0) row.erase(it);
  }
}

void normalize(SparseRow& row) {
  Rational lead = row.begin()->second;
  for (auto& [c, v] : row) v /= lead;
}

}  // namespace

void RowReducer::reduce(SparseRow& row) const {
  // Walk columns upward; each pivot row only touches columns >= its pivot.
  auto it = row.begin();
  while (it != row.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    Rational coef = it->second;
    axpy(row, coef, p->second);
    it = row.upper_bound(col);
  }
}

bool RowReducer::insert(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= columns_) throw std::out_of_range("row entry beyond the column count");
    if (sgn(it->second) == 0)
      it = row.erase(it);
    else
      ++it;
  }
  reduce(row);
  if (row.empty()) return false;
  normalize(row);
  pivots_.emplace(row.begin()->first, std::move(row));
  reduced_ = false;
  return true;
}

bool RowReducer::in_span(SparseRow row) const {
  reduce(row);
  return row.empty();
}

void RowReducer::finish() {
  if (reduced_) return;
  // Descending pivot order: every row above has already been cleared of
  // the pivots to its right.
  for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
    SparseRow& row = it->second;
    auto e = row.upper_bound(it->first);
    while (e != row.end()) {
      auto p = pivots_.find(e->first);
      if (p == pivots_.end()) {
        ++e;
        continue;
      }
      const std::size_t col = e->first;
      Rational coef = e->second;
      axpy(row, coef, p->second);
      e = row.upper_bound(col);
    }
  }
  reduced_ = true;
}

std::vector<SparseRow> RowReducer::nullspace() {
  finish();
  // For each free column f: x_f = 1 and x_p = -row_p[f].
  std::map<std::size_t, SparseRow> by_free;
  for (std::size_t c = 0; c < columns_; ++c)
    if (!pivots_.count(c)) by_free[c].emplace(c, Rational(1));
  for (const auto& [p, row] : pivots_)
    for (const auto& [c, v] : row)
      if (c != p) by_free.at(c).emplace(p, -v);
  std::vector<SparseRow> out;
  out.reserve(by_free.size());
  for (auto& [f, vec] : by_free) out.push_back(std::move(vec));
  return out;
}

std::size_t rank_of(const std::vector<SparseRow>& vectors, std::size_t columns) {
  RowReducer r(columns);
  for (const auto& v : vectors) r.insert(v);
  return r.rank();
}

SparseRow flatten(const RationalOperator& op, std::optional<std::size_t> row_limit) {
  SparseRow v;
  const std::size_t d = op.dimension();
  op.for_each([&](std::size_t r, std::size_t c, const Rational& x) {
    if (!row_limit || r < *row_limit) v.emplace(c * d + r, x);
  });
  return v;
}

RationalOperator unflatten(const SparseRow& v, std::shared_ptr<const FockBasis> basis) {
  RationalOperator op(basis);
  const std::size_t d = op.dimension();
  for (const auto& [k, x] : v) op.set(k % d, k / d, x);
  return op;
}

std::optional<RationalOperator> inverse(const RationalOperator& op) {
  // Row reduce [A | I] (rows of A), columns 0..d-1 for A and d..2d-1 for I.
  const std::size_t d = op.dimension();
  if (d == 0) return op;
  std::vector<SparseRow> rows(d);
  op.for_each([&](std::size_t r, std::size_t c, const Rational& x) { rows[r].emplace(c, x); });
  RowReducer red(2 * d);
  for (std::size_t r = 0; r < d; ++r) {
    rows[r].emplace(d + r, Rational(1));
    red.insert(std::move(rows[r]));
  }
  red.finish();
  // Invertible iff every pivot lands in the A block.
  if (red.rank() != d || red.rows().rbegin()->first >= d) return std::nullopt;
  RationalOperator inv(op.basis());
  for (const auto& [p, row] : red.rows())
    for (const auto& [c, x] : row)
      if (c >= d) inv.set(p, c - d, x);
  return inv;
}

}  // namespace fockweight
