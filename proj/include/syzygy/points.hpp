#pragma once

// Point sets Γ on Σ_e and the linear conditions they impose on sections.
//
// Every sampled point lives in the affine chart u = 1, s = 1 with affine
// coordinates (v, t). A condition of multiplicity m at a point asks all Hasse
// derivatives ∂_v^a ∂_t^b with a + b < m of the dehomogenized section to vanish,
// which is m(m+1)/2 rows: one row for m = 1, three rows (value, ∂_v, ∂_t) for
// m = 2.

#include <cstdint>
#include <vector>

#include "syzygy/exact_linalg.hpp"
#include "syzygy/hirzebruch.hpp"

namespace syzygy {

struct PointSet {
  std::vector<SurfacePoint> points;
  std::uint64_t seed = 0;
  std::uint32_t prime = kDefaultPrime;

  std::size_t size() const noexcept { return points.size(); }
};

/// Pull-back of base minus Σ multiplicities[i]·E_i on the blowup at Γ.
struct BlownUpClass {
  DivisorClass base;
  std::vector<int> multiplicities;

  static BlownUpClass uniform(DivisorClass base, std::size_t count, int multiplicity) {
    return {base, std::vector<int>(count, multiplicity)};
  }
};

/// A subspace of H^0(Σ_e, ambient) given by coordinate vectors in
/// monomial_basis(ambient). The vectors are linearly independent.
struct SectionSpace {
  DivisorClass ambient;
  std::vector<DenseVector> basis;

  std::size_t dim() const noexcept { return basis.size(); }
};

/// γ distinct points with (v, t) drawn from a generator seeded by seed.
/// Throws std::invalid_argument when γ exceeds the number of chart points.
PointSet random_points(const HirzebruchSurface& surface, std::size_t gamma, const PrimeField& field,
                       std::uint64_t seed);

/// Condition rows for sections of D. Points are processed in order, and within
/// a point derivatives are ordered by total order then by ∂_v-order descending.
SparseMatrix conditions_matrix(const HirzebruchSurface& surface, DivisorClass D, const PointSet& gamma,
                               const std::vector<int>& multiplicities, const PrimeField& field);

std::size_t condition_count(const std::vector<int>& multiplicities);

/// Kernel of the condition matrix of B at Γ.
SectionSpace vanishing_subspace(const HirzebruchSurface& surface, const BlownUpClass& B,
                                const PointSet& gamma, const PrimeField& field);

/// True iff the condition matrix has full row rank.
bool imposes_independent(const HirzebruchSurface& surface, const BlownUpClass& B, const PointSet& gamma,
                         const PrimeField& field);

/// Hasse derivative ∂_v^a ∂_t^b of the dehomogenized section at (v0, t0).
Element chart_derivative(const MonomialSpace& space, const DenseVector& section, int a, int b,
                         const SurfacePoint& point, const PrimeField& field);

}  // namespace syzygy
