#ifndef FCONJ_LINALG_HPP
#define FCONJ_LINALG_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "fconj/errors.hpp"
#include "fconj/rational.hpp"

namespace fconj {

// Field policies. Elimination code below is written once against this
// interface and instantiated for exact rationals and for Z/p.

struct RationalField {
  using Element = Rational;

  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  Element from_int(std::int64_t v) const { return Rational(v); }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const { return Rational(1) / a; }
};

// Z/p for a prime p < 2^31.
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const {
    const std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  bool is_zero(Element a) const { return a == 0; }
  Element add(Element a, Element b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element mul(Element a, Element b) const { return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

template <class Field>
using FieldMatrix = Eigen::Matrix<typename Field::Element, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <class Field>
using FieldRowVector = Eigen::Matrix<typename Field::Element, 1, Eigen::Dynamic>;

// Reduced row echelon form. Pivots are chosen as the leftmost available
// column, so for a fixed column order the pivot set is the lexicographically
// smallest one and the reduced rows are unique.
template <class Field>
struct EchelonForm {
  FieldMatrix<Field> rows;        // rank x cols, pivot entries equal to one
  std::vector<Eigen::Index> pivots;  // pivot column of each row, ascending

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

template <class Field>
EchelonForm<Field> reduced_row_echelon(FieldMatrix<Field> m, const Field& field) {
  using Eigen::Index;
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index found = -1;
    for (Index i = r; i < rows; ++i) {
      if (!field.is_zero(m(i, c))) {
        found = i;
        break;
      }
    }
    if (found < 0) continue;
    if (found != r) m.row(found).swap(m.row(r));
    const auto scale = field.inv(m(r, c));
    for (Index k = c; k < cols; ++k) m(r, k) = field.mul(m(r, k), scale);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || field.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (Index k = c; k < cols; ++k) {
        if (!field.is_zero(m(r, k))) m(i, k) = field.sub(m(i, k), field.mul(factor, m(r, k)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  EchelonForm<Field> out;
  out.rows = m.topRows(r);
  out.pivots = std::move(pivots);
  return out;
}

template <class Field>
Eigen::Index matrix_rank(FieldMatrix<Field> m, const Field& field) {
  return reduced_row_echelon(std::move(m), field).rank();
}

// Converts an integer matrix to field elements.
template <class Field, class Derived>
FieldMatrix<Field> to_field(const Eigen::MatrixBase<Derived>& m, const Field& field) {
  FieldMatrix<Field> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = field.from_int(static_cast<std::int64_t>(m(i, j)));
  }
  return out;
}

// Streaming rank computation: rows arrive one at a time in sparse form and
// are reduced against a basis kept in reduced row echelon form. Memory is
// bounded by max_rank x cols regardless of how many rows are streamed.
template <class Field>
class IncrementalRowBasis {
 public:
  using Element = typename Field::Element;
  using SparseEntry = std::pair<Eigen::Index, Element>;

  IncrementalRowBasis(Eigen::Index cols, Field field)
      : field_(std::move(field)), cols_(cols), pivot_row_(static_cast<std::size_t>(cols), -1) {}

  Eigen::Index cols() const { return cols_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivot_cols_.size()); }
  std::uint64_t rows_seen() const { return rows_seen_; }

  // Returns true if the row was independent of the basis (rank grew).
  bool add(std::span<const SparseEntry> row) {
    ++rows_seen_;
    scratch_.assign(static_cast<std::size_t>(cols_), field_.zero());
    for (const auto& [c, v] : row) scratch_[static_cast<std::size_t>(c)] = field_.add(scratch_[static_cast<std::size_t>(c)], v);

    // Basis rows vanish on each other's pivots, so one pass over the
    // original support clears every pivot column.
    for (const auto& entry : row) {
      const auto c = static_cast<std::size_t>(entry.first);
      const auto r = pivot_row_[c];
      if (r < 0 || field_.is_zero(scratch_[c])) continue;
      axpy(scratch_.data(), field_.neg(scratch_[c]), row_ptr(r));
    }

    Eigen::Index lead = -1;
    for (Eigen::Index c = 0; c < cols_; ++c) {
      if (!field_.is_zero(scratch_[static_cast<std::size_t>(c)])) {
        lead = c;
        break;
      }
    }
    if (lead < 0) return false;

    const auto scale = field_.inv(scratch_[static_cast<std::size_t>(lead)]);
    for (auto& x : scratch_) x = field_.mul(x, scale);

    const Eigen::Index r = rank();
    if (r == basis_.rows()) basis_.conservativeResize(std::max<Eigen::Index>(16, 2 * r), cols_);
    std::copy(scratch_.begin(), scratch_.end(), row_ptr(r));
    for (Eigen::Index i = 0; i < r; ++i) {
      Element* other = row_ptr(i);
      const Element f = other[lead];
      if (!field_.is_zero(f)) axpy(other, field_.neg(f), row_ptr(r));
    }
    pivot_row_[static_cast<std::size_t>(lead)] = r;
    pivot_cols_.push_back(lead);
    return true;
  }

  const std::vector<Eigen::Index>& pivot_columns() const { return pivot_cols_; }

 private:
  Element* row_ptr(Eigen::Index r) { return basis_.data() + r * cols_; }

  // dst += factor * src
  void axpy(Element* dst, Element factor, const Element* src) const {
    for (Eigen::Index k = 0; k < cols_; ++k) {
      if (!field_.is_zero(src[k])) dst[k] = field_.add(dst[k], field_.mul(factor, src[k]));
    }
  }

  Field field_;
  Eigen::Index cols_;
  FieldMatrix<Field> basis_;
  std::vector<Eigen::Index> pivot_row_;
  std::vector<Eigen::Index> pivot_cols_;
  std::vector<Element> scratch_;
  std::uint64_t rows_seen_ = 0;
};

}  // namespace fconj

#endif  // FCONJ_LINALG_HPP
