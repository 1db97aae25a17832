#pragma once

// Truncated Fock space H_N = span{xi_v : |v| <= N} and sparse matrices on it.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "fockweight/graph.hpp"
#include "fockweight/rational.hpp"

namespace fockweight {

/// Basis {xi_v : |v| <= N} in canonical path order. Because the order sorts
/// by length first, the basis of H_M (M <= N) is a prefix of this one.
class FockBasis {
 public:
  FockBasis(Graph g, std::size_t horizon);
  static std::shared_ptr<const FockBasis> make(Graph g, std::size_t horizon) {
    return std::make_shared<const FockBasis>(std::move(g), horizon);
  }

  const Graph& graph() const { return graph_; }
  const PathTable& table() const { return table_; }
  std::size_t horizon() const { return table_.horizon(); }
  std::size_t dimension() const { return table_.size(); }
  std::size_t grade(std::size_t index) const { return table_[index].length(); }
  const Path& path(std::size_t index) const { return table_[index]; }
  std::optional<std::size_t> index_of(const Path& p) const { return table_.index_of(p); }
  /// Dimension of H_m for m <= horizon.
  std::size_t dimension_up_to(std::size_t m) const { return table_.count_up_to(m); }

  /// FNV-1a over the graph, horizon and path labels, as 16 hex digits.
  const std::string& hash() const { return hash_; }

 private:
  Graph graph_;
  PathTable table_;
  std::string hash_;
};

template <class Scalar>
struct ScalarMode;
template <>
struct ScalarMode<Rational> {
  static constexpr const char* name = "rational";
};
template <>
struct ScalarMode<Gaussian> {
  static constexpr const char* name = "gaussian";
};
template <>
struct ScalarMode<double> {
  static constexpr const char* name = "float";
};
template <>
struct ScalarMode<std::complex<double>> {
  static constexpr const char* name = "complex-float";
};

/// Column-major sparse matrix on a FockBasis. The scalar type fixes the
/// mode; converting between modes takes an explicit call.
template <class Scalar>
class SparseOperator {
 public:
  using Column = std::map<std::size_t, Scalar>;

  explicit SparseOperator(std::shared_ptr<const FockBasis> basis)
      : basis_(std::move(basis)), cols_(basis_->dimension()) {}

  static SparseOperator identity(std::shared_ptr<const FockBasis> basis) {
    SparseOperator op(std::move(basis));
    for (std::size_t i = 0; i < op.dimension(); ++i) op.set(i, i, Scalar(1));
    return op;
  }

  const std::shared_ptr<const FockBasis>& basis() const { return basis_; }
  std::size_t dimension() const { return cols_.size(); }
  static constexpr const char* mode() { return ScalarMode<Scalar>::name; }

  Scalar at(std::size_t row, std::size_t col) const {
    const auto& c = cols_.at(col);
    auto it = c.find(row);
    return it == c.end() ? Scalar(0) : it->second;
  }
  void set(std::size_t row, std::size_t col, Scalar value) {
    check_index(row);
    auto& c = cols_.at(col);
    if (is_zero(value))
      c.erase(row);
    else
      c[row] = std::move(value);
  }
  void add(std::size_t row, std::size_t col, const Scalar& value) {
    if (is_zero(value)) return;
    check_index(row);
    auto& c = cols_.at(col);
    auto [it, inserted] = c.emplace(row, value);
    if (!inserted) {
      it->second += value;
      if (is_zero(it->second)) c.erase(it);
    }
  }
  const Column& column(std::size_t col) const { return cols_.at(col); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }
  bool is_zero_operator() const { return nonzeros() == 0; }

  /// Calls fn(row, col, value) for every stored entry, column by column.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t c = 0; c < cols_.size(); ++c)
      for (const auto& [r, v] : cols_[c]) fn(r, c, v);
  }

  SparseOperator adjoint() const {
    SparseOperator out(basis_);
    for_each([&](std::size_t r, std::size_t c, const Scalar& v) { out.set(c, r, conj(v)); });
    return out;
  }

  /// P_M X P_M as an operator on H_M; `smaller` must be a prefix basis.
  SparseOperator compressed(std::shared_ptr<const FockBasis> smaller) const {
    if (smaller->dimension() > dimension() || smaller->graph() != basis_->graph())
      throw std::invalid_argument("compression target is not a prefix basis");
    SparseOperator out(smaller);
    const std::size_t d = smaller->dimension();
    for (std::size_t c = 0; c < d; ++c)
      for (const auto& [r, v] : cols_[c])
        if (r < d) out.set(r, c, v);
    return out;
  }

  SparseOperator& operator+=(const SparseOperator& o) {
    check_same(o);
    o.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { add(r, c, v); });
    return *this;
  }
  SparseOperator& operator-=(const SparseOperator& o) {
    check_same(o);
    o.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { add(r, c, -v); });
    return *this;
  }
  SparseOperator& operator*=(const Scalar& s) {
    if (is_zero(s)) {
      for (auto& c : cols_) c.clear();
      return *this;
    }
    for (auto& c : cols_)
      for (auto& [r, v] : c) v *= s;
    return *this;
  }

  friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
  friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
  friend SparseOperator operator*(SparseOperator a, const Scalar& s) { return a *= s; }
  friend SparseOperator operator*(const Scalar& s, SparseOperator a) { return a *= s; }

  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    a.check_same(b);
    SparseOperator out(a.basis_);
    for (std::size_t c = 0; c < b.dimension(); ++c)
      for (const auto& [k, bv] : b.cols_[c])
        for (const auto& [r, av] : a.cols_[k]) out.add(r, c, av * bv);
    return out;
  }

  friend bool operator==(const SparseOperator& a, const SparseOperator& b) {
    return a.basis_->hash() == b.basis_->hash() && a.cols_ == b.cols_;
  }

  /// Applies the operator to a coordinate vector.
  std::vector<Scalar> apply(const std::vector<Scalar>& x) const {
    std::vector<Scalar> y(dimension(), Scalar(0));
    for (std::size_t c = 0; c < dimension(); ++c) {
      if (is_zero(x[c])) continue;
      for (const auto& [r, v] : cols_[c]) y[r] += v * x[c];
    }
    return y;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= cols_.size()) throw std::out_of_range("operator index outside the basis");
  }
  void check_same(const SparseOperator& o) const {
    if (basis_ != o.basis_ && basis_->hash() != o.basis_->hash())
      throw std::invalid_argument("operators live on different bases");
  }

  std::shared_ptr<const FockBasis> basis_;
  std::vector<Column> cols_;
};

using RationalOperator = SparseOperator<Rational>;
using GaussianOperator = SparseOperator<Gaussian>;
using FloatOperator = SparseOperator<double>;
using ComplexFloatOperator = SparseOperator<std::complex<double>>;

// Explicit mode conversions.
FloatOperator to_float(const RationalOperator& op);
GaussianOperator to_gaussian(const RationalOperator& op);
ComplexFloatOperator to_complex_float(const FloatOperator& op);

// Sparse-triplet text format:
//   # fockweight sparse operator
//   basis <hash> horizon <N> dimension <D> mode <rational|gaussian|float>
//   <row> <col> <value>
// one line per non-zero entry in column-major order. Rational values are
// p/q; Gaussian values are two rationals `re im`; floats use %.17g.
void write_triplets(std::ostream& out, const RationalOperator& op);
void write_triplets(std::ostream& out, const GaussianOperator& op);
void write_triplets(std::ostream& out, const FloatOperator& op);

/// Reads the rational form back onto `basis`. Throws std::runtime_error on a
/// malformed stream, a basis hash mismatch, or a mode other than rational.
RationalOperator read_rational_triplets(std::istream& in, std::shared_ptr<const FockBasis> basis);

}  // namespace fockweight
