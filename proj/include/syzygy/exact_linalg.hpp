#pragma once

// Exact linear algebra over a prime field GF(p).
//
// Everything in this header is value-semantic and immutable once built, so
// matrices can be shared between threads freely.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace syzygy {

using Element = std::uint32_t;

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// Arithmetic context for GF(p), p an odd prime below 2^31.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t modulus = kDefaultPrime);

  std::uint32_t modulus() const noexcept { return p_; }

  Element add(Element a, Element b) const noexcept {
    const Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Element pow(Element a, std::uint64_t exponent) const noexcept;
  /// Multiplicative inverse; throws std::domain_error on zero.
  Element inv(Element a) const;
  Element from_int(std::int64_t v) const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

using DenseVector = std::vector<Element>;
/// Sorted by index, no zero values.
using SparseVector = std::vector<std::pair<std::uint32_t, Element>>;

SparseVector to_sparse(const DenseVector& v);
DenseVector to_dense(const SparseVector& v, std::size_t dim);

struct Entry {
  std::uint32_t row;
  std::uint32_t col;
  Element value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Sparse matrix over GF(p) in coordinate form.
///
/// Invariants: entries sorted by (row, col), no duplicate positions, every
/// value nonzero and reduced, every index in bounds.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols, PrimeField field);

  /// Validates the invariants; throws std::invalid_argument on duplicates,
  /// zero values, unreduced values or out-of-bounds indices.
  static SparseMatrix from_entries(std::size_t rows, std::size_t cols, PrimeField field,
                                   std::vector<Entry> entries);
  static SparseMatrix identity(std::size_t n, PrimeField field);
  /// Dense input with signed integers reduced mod p.
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows,
                                 PrimeField field);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  Element at(std::size_t row, std::size_t col) const;
  std::vector<SparseVector> row_vectors() const;
  std::vector<SparseVector> column_vectors() const;
  SparseMatrix transposed() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<Entry> entries_;
};

/// Accumulates entries in any order; duplicates are summed and zeros dropped.
class TripletBuilder {
 public:
  TripletBuilder(std::size_t rows, std::size_t cols, PrimeField field);

  void add(std::size_t row, std::size_t col, Element value);
  void reserve(std::size_t n) { pending_.reserve(n); }
  SparseMatrix build() &&;

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<Entry> pending_;
};

struct EliminationOptions {
  /// Dense elimination is used when the shorter side is at most this long and
  /// the matrix has at most dense_cell_limit cells.
  std::size_t dense_threshold = 512;
  std::size_t dense_cell_limit = std::size_t{1} << 22;
};

/// Rank over GF(p). Deterministic: pivot choice depends only on the matrix.
std::size_t rank(const SparseMatrix& m, const EliminationOptions& options = {});

/// Rank of the span of a family of sparse vectors of a common dimension.
std::size_t rank_of_vectors(std::vector<SparseVector> vectors, std::size_t dim,
                            const PrimeField& field);

/// Basis of the right null space; every vector has length cols().
std::vector<DenseVector> kernel_basis(const SparseMatrix& m);

/// Exact product; throws std::invalid_argument on dimension or field mismatch.
SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b);

/// m·v for a dense column vector v.
DenseVector apply(const SparseMatrix& m, const DenseVector& v);

/// Incrementally built row-echelon basis of a subspace of GF(p)^dim.
class EchelonBasis {
 public:
  EchelonBasis(PrimeField field, std::size_t dim);

  /// Returns true when v was independent of the current span.
  bool insert(const DenseVector& v);
  bool contains(const DenseVector& v) const;
  /// Residue of v after reduction against the basis (zero iff v is in the span).
  DenseVector reduce(DenseVector v) const;

  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t dim() const noexcept { return dim_; }

 private:
  PrimeField field_;
  std::size_t dim_;
  std::vector<DenseVector> rows_;          // leading entry 1 at pivot_of_row_
  std::vector<std::size_t> pivot_of_row_;
  std::vector<std::ptrdiff_t> row_of_pivot_;  // -1 when column is not a pivot
};

/// Presentation of a quotient A/B of subspaces B ⊆ A ⊆ GF(p)^ambient.
///
/// The basis of A/B is a subset of the given generators of A; coordinates()
/// expresses an element of A in that basis modulo B.
class QuotientSpace {
 public:
  QuotientSpace(PrimeField field, std::size_t ambient_dim,
                const std::vector<DenseVector>& numerator_generators,
                const std::vector<DenseVector>& denominator_generators);

  std::size_t dim() const noexcept { return representatives_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  std::size_t denominator_dim() const noexcept { return denominator_rank_; }
  const std::vector<DenseVector>& representatives() const noexcept { return representatives_; }

  /// Coordinates of w modulo B; throws std::invalid_argument if w is not in A.
  DenseVector coordinates(const DenseVector& w) const;

 private:
  PrimeField field_;
  std::size_t ambient_dim_;
  std::size_t denominator_rank_ = 0;
  std::vector<DenseVector> representatives_;
  // Echelon rows of B + A together with their expression in representatives.
  std::vector<DenseVector> rows_;
  std::vector<DenseVector> tags_;
  std::vector<std::ptrdiff_t> row_of_pivot_;
};

}  // namespace syzygy
