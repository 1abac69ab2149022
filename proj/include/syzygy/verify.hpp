#pragma once

// Theorem-level harnesses: check hypotheses, build the objects, compute the
// Koszul rows and turn them into a verdict.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "syzygy/exact_linalg.hpp"
#include "syzygy/koszul.hpp"

namespace syzygy {

enum class Verdict {
  verified,
  violated,             // a claimed vanishing was not observed
  genericity_failure,   // the random sample was special; retry with another seed
  hypothesis_failure,   // parameters outside the theorem; nothing computed
  error,                // structural check failed or an unexpected exception
};

std::string to_string(Verdict verdict);
/// Throws std::invalid_argument for an unknown name.
Verdict verdict_from_string(const std::string& name);

struct VerificationReport {
  std::string theorem;  // "thm2", "cor4" or "compare"
  std::vector<std::pair<std::string, long long>> params;
  std::uint32_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  long long h0 = 0;  // dim V
  int threshold = 0;  // vanishing claimed for p ≥ threshold
  std::map<int, std::size_t> betti_q1;       // p in the claimed range
  std::map<int, std::size_t> informational;  // outside the claimed range, not part of the verdict
  std::map<int, std::size_t> curve_q1;       // restricted curve row (compare only)
  std::vector<std::pair<std::string, bool>> hypotheses;
  bool independence = false;
  bool d1_injective = false;
  bool d2_d1_zero = false;
  std::vector<std::pair<std::string, long long>> dims;
  Verdict verdict = Verdict::error;
  std::string message;
  long long elapsed_ms = 0;

  bool hypotheses_hold() const;
  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct VerifyOptions {
  /// Also compute K_{p,1} just below the claimed range. Reported as
  /// informational and never used in the verdict.
  bool sharpness = false;
  ReductionOptions reduction;  // its seed is replaced by one derived from the run seed
};

bool theorem2_hypotheses_hold(int e, int alpha, int beta, long long gamma);

/// K_{p,1}(Σ_Γ, H_Γ) = 0 for h^0(H_Γ) − α − 1 ≤ p ≤ h^0(H_Γ) − 2, where H_Γ is
/// αC0 + βf minus γ random simple points.
VerificationReport verify_theorem2(int e, int alpha, int beta, long long gamma, const PrimeField& field,
                                   std::uint64_t seed, const VerifyOptions& options = {});

/// K_{p,1}(X̃, K_X̃) = 0 for p ≥ g − k + 1 on the normalization of a random
/// curve in |kC0 + mf| with γ nodes. The value at g − k is informational.
VerificationReport verify_corollary4(int e, int k, int m, long long gamma, const PrimeField& field,
                                     std::uint64_t seed, const VerifyOptions& options = {});

/// The row of H_Γ for p_min ≤ p ≤ p_max, by default from one below the
/// claimed range to h^0(H_Γ) − 1. Values below the threshold go to
/// informational. Parameters outside the theorem are computed anyway and get
/// verdict hypothesis_failure. Throws std::invalid_argument when the range is
/// outside [1, h^0(H_Γ) − 1] or e < 0, α < 1, β < 0, γ < 0.
VerificationReport surface_betti_row(int e, int alpha, int beta, long long gamma, const PrimeField& field,
                                     std::uint64_t seed, std::optional<int> p_min = {}, std::optional<int> p_max = {},
                                     const VerifyOptions& options = {});

/// The canonical row of the normalization for p_min ≤ p ≤ p_max, by default
/// from g − k to g − 1. Needs the nodal-curve hypotheses; throws
/// std::invalid_argument otherwise or when the range is outside [1, g − 1].
VerificationReport canonical_betti_row(int e, int k, int m, long long gamma, const PrimeField& field,
                                       std::uint64_t seed, std::optional<int> p_min = {},
                                       std::optional<int> p_max = {}, const VerifyOptions& options = {});

struct Plan {
  int m = 0;
  long long gamma = 0;
};

/// Smallest m ≥ k+2 with (k−1)(m−1−k/2) ≥ g and γ the excess, for nodal
/// curves on Σ_1. Empty when k < 4 or g < k(k−1)/2. Throws std::logic_error
/// if the output violates g = (k−1)(m−1−k/2) − γ, 0 ≤ γ ≤ m−3, or the
/// step bound γ ≤ k−2 (k−1 when m = k+2).
std::optional<Plan> plan_theorem1(int k, long long g);

/// β ≥ max(αe, α+e).
bool remark3_inequality(int e, int alpha, int beta);

/// Surface row next to the row of a smooth curve Y ∈ |H_Γ|, on the surface's
/// claimed range. Verified iff both rows vanish from the threshold on and the
/// surface vanishes wherever the curve does.
VerificationReport compare_surface_curve(int e, int alpha, int beta, long long gamma, const PrimeField& field,
                                         std::uint64_t seed, const VerifyOptions& options = {});

struct GridItem {
  std::string theorem;  // "thm2" or "cor4"
  std::vector<long long> params;  // (e, α, β, γ) or (e, k, m, γ)
};

struct GridConfig {
  std::vector<GridItem> items;
  std::vector<std::uint64_t> seeds;
  std::vector<std::uint32_t> primes{kDefaultPrime};
  VerifyOptions options;
};

/// Reports in order prime-major, then item, then seed. Exceptions become
/// reports with verdict error.
std::vector<VerificationReport> run_grid(const GridConfig& config);

/// e ∈ {0,1,2}, α ∈ {2,3}, β over three values from max(αe, α+e) and every
/// admissible γ.
std::vector<GridItem> theorem2_acceptance_grid();

/// 2 if any report is violated, else 3 on any genericity failure, else 1 on
/// any hypothesis failure or error, else 0.
int aggregate_exit_code(const std::vector<VerificationReport>& reports);

}  // namespace syzygy
