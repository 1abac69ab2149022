#pragma once

// The complex Λ^{p+1}V → V ⊗ Λ^pV → W ⊗ Λ^{p−1}V and its middle cohomology
// K_{p,1}, for a finite-dimensional V, a target W and a symmetric
// multiplication V × V → W.
//
// Wedge bases are p-subsets of {0, …, n−1} in colex order. The row of
// e_i ⊗ e_I in V ⊗ Λ^pV is i·C(n, p) + colex(I); likewise w·C(n, p−1) + colex(J)
// for W ⊗ Λ^{p−1}V.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "syzygy/exact_linalg.hpp"

namespace syzygy {

/// C(n, k) for n ≤ 64 from a precomputed table; 0 when k > n.
std::uint64_t binomial(unsigned n, unsigned k);

/// Colex rank of a strictly increasing tuple: Σ C(a_i, i+1).
std::size_t colex_rank(const std::uint32_t* tuple, unsigned size);

/// Inverse of colex_rank for subsets of {0, …, n−1} of the given size.
void colex_unrank(std::size_t rank, unsigned size, std::uint32_t* out);

/// Calls visit(rank, tuple) for every size-subset of {0, …, n−1} in colex order.
void for_each_subset(unsigned n, unsigned size,
                     const std::function<void(std::size_t, const std::vector<std::uint32_t>&)>& visit);

/// Structure constants of a symmetric multiplication V × V → W.
class MultiplicationTable {
 public:
  /// products[i·dimV + j] is the coordinate vector of v_i·v_j in W. Throws
  /// std::invalid_argument when a vector has the wrong length or the table is
  /// not symmetric.
  MultiplicationTable(PrimeField field, std::size_t dim_v, std::size_t dim_w,
                      std::vector<SparseVector> products);

  /// Builds the table from a product callback evaluated on i ≤ j.
  static MultiplicationTable from_function(
      PrimeField field, std::size_t dim_v, std::size_t dim_w,
      const std::function<SparseVector(std::size_t, std::size_t)>& product);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t dim_v() const noexcept { return dim_v_; }
  std::size_t dim_w() const noexcept { return dim_w_; }
  const SparseVector& product(std::size_t i, std::size_t j) const { return products_[i * dim_v_ + j]; }

  /// The table in the basis v'_i = v_{perm[i]}.
  MultiplicationTable permuted(const std::vector<std::size_t>& perm) const;

 private:
  PrimeField field_;
  std::size_t dim_v_;
  std::size_t dim_w_;
  std::vector<SparseVector> products_;
};

/// Λ^{p+1}V → V ⊗ Λ^pV. p + 1 > dimV gives a matrix with no columns.
/// Throws std::invalid_argument for p < 0.
SparseMatrix build_d1(int p, std::size_t dim_v, const PrimeField& field);

/// V ⊗ Λ^pV → W ⊗ Λ^{p−1}V. Throws std::invalid_argument unless 1 ≤ p ≤ dimV.
SparseMatrix build_d2(int p, const MultiplicationTable& mult);

/// True iff rank(d1) = C(dimV, p+1).
bool d1_injective(int p, std::size_t dim_v, const PrimeField& field);

/// Checks d2∘d1 = 0 by applying d2 to every column of d1 without materializing
/// either matrix.
bool complex_closes(int p, const MultiplicationTable& mult);

struct KoszulTerm {
  int p = 0;
  std::size_t dim = 0;          // dim K_{p,1}
  std::size_t rank_d1 = 0;
  std::size_t nullity_d2 = 0;
  std::size_t reduction_steps = 0;
  bool closes = true;           // d2∘d1 = 0 on the complex that was ranked

  friend bool operator==(const KoszulTerm&, const KoszulTerm&) = default;
};

struct KoszulReport {
  int p_min = 1;
  int p_max = 0;
  std::vector<KoszulTerm> terms;
  std::vector<std::pair<std::string, long long>> params;
  std::uint32_t prime = kDefaultPrime;
  std::uint64_t seed = 0;

  const KoszulTerm* find(int p) const;
};

/// dim K_{p,1} = nullity(d2) − rank(d1). 0 for p > dimV. Throws for p < 1.
KoszulTerm k_p1_term(const MultiplicationTable& mult, int p);
std::size_t k_p1_dim(const MultiplicationTable& mult, int p);

/// Terms for p_min ≤ p ≤ p_max; empty when p_min > p_max.
/// Throws std::invalid_argument unless 1 ≤ p_min and p_max ≤ dimV − 1.
KoszulReport betti_row_q1(const MultiplicationTable& mult, int p_min, int p_max);

/// Degree-d forms on a line: V = span(x^i y^{d−i}), W = degree 2d.
MultiplicationTable toy_p1_space(int d, const PrimeField& field = PrimeField());

// --- Graded modules and reduction by regular linear forms -----------------
//
// A truncated module is given in degrees 1..3 as subquotients A_d / B_d of
// ambient spaces, with V = A_1 / B_1 acting by an ambient multiplication. If a
// linear form x ∈ V is injective on degrees 1 → 2 and 2 → 3, then K_{p,1} of
// the module over V equals K_{p,1} of the quotient by x over V/x at the same
// p. This is the Koszul complex split along the x-coordinate: it is the cone of
// multiplication by x on the complex over V/x, and the cone is quasi-isomorphic
// to the cokernel when x is injective in the degrees the middle term touches.

using AmbientProduct = std::function<DenseVector(const DenseVector&, const DenseVector&)>;

struct GradedPiece {
  std::size_t ambient_dim = 0;
  std::vector<DenseVector> numerator;    // spans A_d
  std::vector<DenseVector> denominator;  // spans B_d ⊆ A_d
};

struct TruncatedModule {
  PrimeField field;
  std::array<GradedPiece, 3> piece;  // degrees 1, 2, 3
  AmbientProduct multiply_11;        // ambient_1 × ambient_1 → ambient_2
  AmbientProduct multiply_12;        // ambient_1 × ambient_2 → ambient_3
};

struct ReductionOptions {
  std::size_t max_steps = 3;
  /// Steps are taken until dim V'·C(dim V', p) is at most this for every p in
  /// the requested range.
  std::size_t middle_limit = 500;
  std::size_t attempts_per_step = 4;
  std::uint64_t seed = 0;
};

struct ReducedModule {
  MultiplicationTable table;  // V' × V' → W'
  std::size_t original_dim_v = 0;
  std::size_t original_dim_w = 0;
  std::size_t steps = 0;
  std::size_t rejected_forms = 0;
};

/// The table of V × V → W for V = A_1/B_1 and W = A_2/B_2, with V's basis the
/// representatives chosen among the generators of A_1.
MultiplicationTable module_table(const TruncatedModule& module);

/// Checks A_1·A_1 ⊆ A_2, A_1·B_1 ⊆ B_2, A_1·A_2 ⊆ A_3 and A_1·B_2 ⊆ B_3.
bool is_module(const TruncatedModule& module);

/// Quotients by random linear forms that pass both injectivity checks, stopping
/// as soon as the middle terms for p_min ≤ p ≤ p_max are small enough.
ReducedModule reduce_module(const TruncatedModule& module, int p_min, int p_max,
                            const ReductionOptions& options);

/// K_{p,1} rows of a module through reduce_module. Terms carry the dimension of
/// the original complex: rank_d1 is C(dim V, p+1) and nullity_d2 = dim + rank_d1,
/// both exact because d1 is injective and K_{p,1} is reduction-invariant.
KoszulReport module_betti_row(const TruncatedModule& module, int p_min, int p_max,
                              const ReductionOptions& options);

}  // namespace syzygy
