#include "syzygy/curves.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>

#include "syzygy/random.hpp"

namespace syzygy {
namespace {

constexpr int kNodeResamples = 8;

std::vector<DenseVector> unit_vectors(std::size_t dim) {
  std::vector<DenseVector> out(dim, DenseVector(dim, 0));
  for (std::size_t k = 0; k < dim; ++k) out[k][k] = 1;
  return out;
}

// f · (every monomial of class D), as vectors in the space of class(f) + D.
std::vector<DenseVector> multiples(const MonomialSpace& f_space, const DenseVector& f, const HirzebruchSurface& s,
                                   DivisorClass D, const MonomialSpace& target, const PrimeField& field) {
  std::vector<DenseVector> out;
  if (D.a < 0 || h0(s, D) == 0) return out;
  const MonomialSpace space(s, D);
  for (const DenseVector& e : unit_vectors(space.dim())) {
    out.push_back(multiply_sections(f_space, f, space, e, target, field));
  }
  return out;
}

std::vector<DenseVector> multiples_of(const MonomialSpace& f_space, const DenseVector& f, const MonomialSpace& g_space,
                                      const std::vector<DenseVector>& gs, const MonomialSpace& target,
                                      const PrimeField& field) {
  std::vector<DenseVector> out;
  out.reserve(gs.size());
  for (const DenseVector& g : gs) out.push_back(multiply_sections(f_space, f, g_space, g, target, field));
  return out;
}

struct RingSpaces {
  std::shared_ptr<const MonomialSpace> one, two, three;
};

RingSpaces ring_spaces(const HirzebruchSurface& s, DivisorClass L) {
  return {std::make_shared<const MonomialSpace>(s, L), std::make_shared<const MonomialSpace>(s, 2 * L),
          std::make_shared<const MonomialSpace>(s, 3 * L)};
}

void attach_products(TruncatedModule& module, const RingSpaces& spaces, const PrimeField& field) {
  const auto one = spaces.one, two = spaces.two, three = spaces.three;
  module.multiply_11 = [one, two, field](const DenseVector& a, const DenseVector& b) {
    return multiply_sections(*one, a, *one, b, *two, field);
  };
  module.multiply_12 = [one, two, three, field](const DenseVector& a, const DenseVector& b) {
    return multiply_sections(*one, a, *two, b, *three, field);
  };
}

// Degrees 1..3 of the section ring of σ*L − E_Γ, with degree 3 taken in the
// full H^0(3L); only its containing the products matters.
TruncatedModule blowup_module(const HirzebruchSurface& s, DivisorClass L, const PointSet& gamma,
                              const PrimeField& field, const RingSpaces& spaces) {
  TruncatedModule module{field, {}, {}, {}};
  module.piece[0] = {spaces.one->dim(),
                     vanishing_subspace(s, BlownUpClass::uniform(L, gamma.size(), 1), gamma, field).basis, {}};
  module.piece[1] = {spaces.two->dim(),
                     vanishing_subspace(s, BlownUpClass::uniform(2 * L, gamma.size(), 2), gamma, field).basis, {}};
  module.piece[2] = {spaces.three->dim(), unit_vectors(spaces.three->dim()), {}};
  attach_products(module, spaces, field);
  return module;
}

DenseVector random_combination(const std::vector<DenseVector>& basis, std::size_t dim, Rng& rng,
                               const PrimeField& field) {
  DenseVector out(dim, 0);
  for (const DenseVector& b : basis) {
    const Element c = rng.element(field);
    for (std::size_t k = 0; k < dim; ++k) out[k] = field.add(out[k], field.mul(c, b[k]));
  }
  return out;
}

bool is_zero(const DenseVector& v) {
  return std::all_of(v.begin(), v.end(), [](Element x) { return x == 0; });
}

}  // namespace

TruncatedModule blowup_section_module(const HirzebruchSurface& surface, DivisorClass L, const PointSet& gamma,
                                      const PrimeField& field) {
  return blowup_module(surface, L, gamma, field, ring_spaces(surface, L));
}

long long nodal_genus(int e, int k, int m, long long gamma) {
  return static_cast<long long>(k - 1) * (2LL * m - 2 - static_cast<long long>(k) * e) / 2 - gamma;
}

bool nodal_hypotheses_hold(int e, int k, int m, long long gamma) {
  return e >= 0 && k >= 4 && m >= std::max((k - 1) * e + 2, k + 2 * e) && gamma >= 0 &&
         gamma <= static_cast<long long>(m) - e - 2 - static_cast<long long>(k - 2) * (e - 1);
}

NodalCurve random_nodal_curve(const HirzebruchSurface& surface, int k, int m, const PointSet& gamma,
                              const PrimeField& field, std::uint64_t seed) {
  if (!nodal_hypotheses_hold(surface.e(), k, m, static_cast<long long>(gamma.size()))) {
    throw std::invalid_argument("nodal curve hypotheses fail for (e, k, m, gamma)");
  }
  NodalCurve curve;
  curve.surface = surface;
  curve.divisor = {k, m};
  curve.nodes = gamma;
  const SectionSpace singular =
      vanishing_subspace(surface, BlownUpClass::uniform(curve.divisor, gamma.size(), 2), gamma, field);
  curve.solution_dim = singular.dim();
  const std::size_t expected = h0(surface, curve.divisor) - 3 * gamma.size();
  if (singular.dim() != expected) {
    throw GenericityError("double-point conditions are dependent: solution space has dim " +
                          std::to_string(singular.dim()) + ", expected " + std::to_string(expected));
  }
  if (singular.dim() == 0) throw GenericityError("no curve is singular at the chosen points");
  Rng rng(seed);
  const std::size_t dim = h0(surface, curve.divisor);
  for (int attempt = 0; attempt < kNodeResamples; ++attempt) {
    curve.coeffs = random_combination(singular.basis, dim, rng, field);
    if (!is_zero(curve.coeffs) && node_check(curve, field)) return curve;
  }
  throw GenericityError("every resampled curve had a degenerate node");
}

bool node_check(const NodalCurve& curve, const PrimeField& field) {
  const MonomialSpace space(curve.surface, curve.divisor);
  if (curve.coeffs.size() != space.dim()) return false;
  for (const SurfacePoint& pt : curve.nodes.points) {
    if (chart_derivative(space, curve.coeffs, 0, 0, pt, field) != 0 ||
        chart_derivative(space, curve.coeffs, 1, 0, pt, field) != 0 ||
        chart_derivative(space, curve.coeffs, 0, 1, pt, field) != 0) {
      return false;
    }
    // Hasse derivatives: f_vv = 2·h_vv, f_tt = 2·h_tt, f_vt = h_vt.
    const Element h_vv = chart_derivative(space, curve.coeffs, 2, 0, pt, field);
    const Element h_tt = chart_derivative(space, curve.coeffs, 0, 2, pt, field);
    const Element h_vt = chart_derivative(space, curve.coeffs, 1, 1, pt, field);
    const Element det = field.sub(field.mul(4, field.mul(h_vv, h_tt)), field.mul(h_vt, h_vt));
    if (det == 0) return false;
  }
  return true;
}

CanonicalModel canonical_model(const NodalCurve& curve, const PrimeField& field) {
  const HirzebruchSurface& s = curve.surface;
  const int e = s.e();
  const int k = curve.divisor.a;
  const int m = curve.divisor.b;
  const DivisorClass X = curve.divisor;
  const DivisorClass H{k - 2, m - e - 2};
  const RingSpaces spaces = ring_spaces(s, H);
  const MonomialSpace x_space(s, X);

  CanonicalModel model;
  model.ruling_degree = k;
  model.genus = nodal_genus(e, k, m, static_cast<long long>(curve.nodes.size()));
  model.module = blowup_module(s, H, curve.nodes, field, spaces);
  model.V = {H, model.module.piece[0].numerator};
  if (static_cast<long long>(model.V.dim()) != model.genus) {
    throw GenericityError("adjoint sections have dim " + std::to_string(model.V.dim()) + ", genus is " +
                          std::to_string(model.genus));
  }
  model.W_numerator = {2 * H, model.module.piece[1].numerator};
  model.W_denominator = multiples(x_space, curve.coeffs, s, 2 * H - X, *spaces.two, field);
  model.module.piece[1].denominator = model.W_denominator;
  model.module.piece[2].denominator = multiples(x_space, curve.coeffs, s, 3 * H - X, *spaces.three, field);

  const QuotientSpace W(field, spaces.two->dim(), model.W_numerator.basis, model.W_denominator);
  model.dim_w = W.dim();
  const long long expected_w = model.genus >= 2 ? 3 * model.genus - 3 : model.genus;
  if (static_cast<long long>(model.dim_w) != expected_w) {
    throw GenericityError("bicanonical quotient has dim " + std::to_string(model.dim_w) + ", expected " +
                          std::to_string(expected_w));
  }
  model.mult = module_table(model.module);
  return model;
}

CurveRow canonical_betti_q1(const CanonicalModel& model, const ReductionOptions& options) {
  CurveRow row;
  const int g = static_cast<int>(model.genus);
  const int k = model.ruling_degree;
  row.threshold = g - k + 1;
  const int p_lo = std::max(1, g - k);
  const int p_hi = g - 2;
  row.report = module_betti_row(model.module, p_lo, p_hi, options);
  row.vanishing_holds = true;
  for (const KoszulTerm& t : row.report.terms) {
    if (t.p >= row.threshold && t.dim != 0) row.vanishing_holds = false;
    if (t.p == row.threshold - 1) row.below_threshold = t.dim;
  }
  return row;
}

KoszulReport canonical_full_row(const CanonicalModel& model, const ReductionOptions& options) {
  return module_betti_row(model.module, 1, static_cast<int>(model.genus) - 1, options);
}

RestrictedCurve restrict_to_curve(const HirzebruchSurface& surface, int alpha, int beta, const PointSet& gamma,
                                  const PrimeField& field, std::uint64_t seed) {
  const DivisorClass L{alpha, beta};
  const RingSpaces spaces = ring_spaces(surface, L);
  RestrictedCurve curve;
  curve.module = blowup_module(surface, L, gamma, field, spaces);
  auto& [p1, p2, p3] = curve.module.piece;
  Rng rng(seed);
  curve.f_y = random_combination(p1.numerator, p1.ambient_dim, rng, field);
  if (is_zero(curve.f_y)) throw GenericityError("the random curve equation is zero");
  p1.denominator = {curve.f_y};
  p2.denominator = multiples_of(*spaces.one, curve.f_y, *spaces.one, p1.numerator, *spaces.two, field);
  p3.denominator = multiples_of(*spaces.one, curve.f_y, *spaces.two, p2.numerator, *spaces.three, field);
  curve.h0 = QuotientSpace(field, p1.ambient_dim, p1.numerator, p1.denominator).dim();
  curve.dim_w = QuotientSpace(field, p2.ambient_dim, p2.numerator, p2.denominator).dim();
  curve.degree = intersect(surface, L, L) - static_cast<long long>(gamma.size());
  curve.genus = smooth_genus(surface, L);
  return curve;
}

CurveRow smooth_restriction_koszul(const HirzebruchSurface& surface, int alpha, int beta, const PointSet& gamma,
                                   const PrimeField& field, std::uint64_t seed, const ReductionOptions& options) {
  const RestrictedCurve curve = restrict_to_curve(surface, alpha, beta, gamma, field, seed);
  const long long expected_w = 2 * curve.degree - curve.genus + 1;
  if (static_cast<long long>(curve.dim_w) != expected_w) {
    throw GenericityError("restricted quadrics have dim " + std::to_string(curve.dim_w) + ", expected " +
                          std::to_string(expected_w));
  }
  CurveRow row;
  const int h = static_cast<int>(curve.h0);
  row.threshold = h - alpha;
  const int p_lo = std::max(1, h - alpha - 1);
  row.report = module_betti_row(curve.module, p_lo, h - 1, options);
  row.vanishing_holds = true;
  for (const KoszulTerm& t : row.report.terms) {
    if (t.p >= row.threshold && t.dim != 0) row.vanishing_holds = false;
    if (t.p == row.threshold - 1) row.below_threshold = t.dim;
  }
  return row;
}

bool nonspeciality_check(const HirzebruchSurface& surface, int alpha, int beta, const PointSet& gamma,
                         const PrimeField& field, std::uint64_t seed) {
  const RestrictedCurve curve = restrict_to_curve(surface, alpha, beta, gamma, field, seed);
  return static_cast<long long>(curve.h0) == curve.degree - curve.genus + 1;
}

bool nonspeciality_check(int e, int alpha, int beta, std::size_t gamma, const PrimeField& field,
                         std::uint64_t seed) {
  const HirzebruchSurface surface(e);
  const PointSet points = random_points(surface, gamma, field, seed);
  return nonspeciality_check(surface, alpha, beta, points, field, derive_seed(seed, 1));
}

}  // namespace syzygy
