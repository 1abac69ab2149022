#pragma once

// Nodal curves X ≡ kC0 + mf on Σ_e with nodes at Γ, and curve-level section
// spaces realized as subquotients of surface section spaces.
//
// For the normalization X̃ the adjoint class H = (k−2)C0 + (m−e−2)f minus Γ
// restricts to K_X̃, so H^0(K_X̃) is the space of sections of H through Γ and
// H^0(2K_X̃) is sections of 2H double at Γ modulo f_X · H^0(2H − X). Nothing is
// computed on X̃ itself.

#include <cstdint>
#include <optional>

#include "syzygy/hirzebruch.hpp"
#include "syzygy/koszul.hpp"
#include "syzygy/points.hpp"

namespace syzygy {

struct NodalCurve {
  HirzebruchSurface surface{0};
  DivisorClass divisor;  // (k, m)
  DenseVector coeffs;    // in monomial_basis(surface, divisor)
  PointSet nodes;
  std::size_t solution_dim = 0;  // dim of the equations singular at Γ
};

/// Degrees 1..3 of the section ring of σ*L − E_Γ: A_1 = H^0(L − Γ),
/// A_2 = H^0(2L − 2Γ) and A_3 = H^0(3L). Degree 3 only has to contain the
/// products, so the full space is used.
TruncatedModule blowup_section_module(const HirzebruchSurface& surface, DivisorClass L, const PointSet& gamma,
                                      const PrimeField& field);

/// g = (k−1)(2m − 2 − k·e)/2 − γ.
long long nodal_genus(int e, int k, int m, long long gamma);

/// True iff k ≥ 4, m ≥ max((k−1)e + 2, k + 2e) and 0 ≤ γ ≤ m − e − 2 − (k−2)(e−1).
bool nodal_hypotheses_hold(int e, int k, int m, long long gamma);

/// A random equation with double points at Γ whose nodes are ordinary.
/// Throws std::invalid_argument when the hypotheses fail and GenericityError
/// when the solution space has the wrong dimension or 8 resamples all give a
/// degenerate node.
NodalCurve random_nodal_curve(const HirzebruchSurface& surface, int k, int m, const PointSet& gamma,
                              const PrimeField& field, std::uint64_t seed);

/// True iff the equation is singular at every node and each 2×2 chart Hessian
/// is nondegenerate.
bool node_check(const NodalCurve& curve, const PrimeField& field);

struct CanonicalModel {
  long long genus = 0;
  int ruling_degree = 0;           // k
  SectionSpace V;                  // ≅ H^0(K_X̃)
  SectionSpace W_numerator;        // sections of 2H double at Γ
  std::vector<DenseVector> W_denominator;  // f_X · H^0(2H − X)
  std::size_t dim_w = 0;           // 3g − 3
  TruncatedModule module;          // canonical ring in degrees 1..3
  MultiplicationTable mult{PrimeField(), 0, 0, {}};  // V × V → W
};

/// Throws GenericityError when dim V ≠ g or dim W ≠ 3g − 3.
CanonicalModel canonical_model(const NodalCurve& curve, const PrimeField& field);

struct CurveRow {
  KoszulReport report;
  int threshold = 0;  // vanishing is claimed for p ≥ threshold
  bool vanishing_holds = false;
  std::optional<std::size_t> below_threshold;  // K_{threshold−1,1} when computed
};

/// K_{p,1}(X̃, K_X̃) for max(1, g−k) ≤ p ≤ g−2; vanishing is claimed for
/// p ≥ g − k + 1. The value at g − k is informational only.
CurveRow canonical_betti_q1(const CanonicalModel& model, const ReductionOptions& options);

/// Full row 1 ≤ p ≤ g−1 of the canonical model.
KoszulReport canonical_full_row(const CanonicalModel& model, const ReductionOptions& options);

/// Curve Y = V(f_Y) for a random f_Y among the sections of L = αC0+βf through Γ,
/// with V_Y = H^0(L − Γ)/⟨f_Y⟩ and W_Y = H^0(2L − 2Γ)/(f_Y · H^0(L − Γ)).
struct RestrictedCurve {
  DenseVector f_y;
  std::size_t h0 = 0;     // dim V_Y
  std::size_t dim_w = 0;  // dim W_Y
  long long degree = 0;   // L² − γ
  long long genus = 0;    // smooth_genus(L)
  TruncatedModule module;
};

RestrictedCurve restrict_to_curve(const HirzebruchSurface& surface, int alpha, int beta, const PointSet& gamma,
                                  const PrimeField& field, std::uint64_t seed);

/// K_{p,1}(Y, L|Y − Γ) for max(1, h0 − α − 1) ≤ p ≤ h0 − 1 with vanishing
/// claimed for p ≥ h0 − α. Throws GenericityError when dim W_Y differs from
/// 2·deg − g + 1.
CurveRow smooth_restriction_koszul(const HirzebruchSurface& surface, int alpha, int beta, const PointSet& gamma,
                                   const PrimeField& field, std::uint64_t seed, const ReductionOptions& options);

/// True iff h^0(Y, L|Y − Γ) = deg − g + 1.
bool nonspeciality_check(const HirzebruchSurface& surface, int alpha, int beta, const PointSet& gamma,
                         const PrimeField& field, std::uint64_t seed);
bool nonspeciality_check(int e, int alpha, int beta, std::size_t gamma, const PrimeField& field,
                         std::uint64_t seed);

}  // namespace syzygy
