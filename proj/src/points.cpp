#include "syzygy/points.hpp"

#include <set>
#include <stdexcept>
#include <utility>

#include "syzygy/random.hpp"

namespace syzygy {
namespace {

// C(n, k) mod p for the small exponents that occur in monomials.
Element binomial_mod(int n, int k, const PrimeField& field) {
  if (k < 0 || k > n) return 0;
  Element num = 1;
  Element den = 1;
  for (int r = 0; r < k; ++r) {
    num = field.mul(num, field.from_int(n - r));
    den = field.mul(den, field.from_int(r + 1));
  }
  return field.mul(num, field.inv(den));
}

// ∂_v^a ∂_t^b of v^j t^d at (v0, t0), Hasse-normalized.
Element monomial_derivative(const CoxMonomial& m, int a, int b, Element v0, Element t0,
                            const PrimeField& field) {
  if (a > m.j || b > m.d) return 0;
  Element value = field.mul(binomial_mod(m.j, a, field), binomial_mod(m.d, b, field));
  value = field.mul(value, field.pow(v0, static_cast<std::uint64_t>(m.j - a)));
  return field.mul(value, field.pow(t0, static_cast<std::uint64_t>(m.d - b)));
}

void require_chart(const SurfacePoint& point) {
  if (point.u != 1 || point.s != 1) {
    throw std::invalid_argument("point is not normalized to the chart u = 1, s = 1");
  }
}

}  // namespace

PointSet random_points(const HirzebruchSurface& surface, std::size_t gamma, const PrimeField& field,
                       std::uint64_t seed) {
  (void)surface;  // every chart point lies on Σ_e; e only fixes the coordinate meaning
  const std::uint64_t p = field.modulus();
  if (gamma > p * p) throw std::invalid_argument("more points requested than the chart holds");
  PointSet out;
  out.seed = seed;
  out.prime = field.modulus();
  Rng rng(seed);
  std::set<std::pair<Element, Element>> seen;
  while (out.points.size() < gamma) {
    const Element v = rng.element(field);
    const Element t = rng.element(field);
    if (!seen.emplace(v, t).second) continue;
    out.points.push_back({1, v, 1, t});
  }
  return out;
}

std::size_t condition_count(const std::vector<int>& multiplicities) {
  std::size_t total = 0;
  for (int m : multiplicities) {
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    total += static_cast<std::size_t>(m) * static_cast<std::size_t>(m + 1) / 2;
  }
  return total;
}

SparseMatrix conditions_matrix(const HirzebruchSurface& surface, DivisorClass D, const PointSet& gamma,
                               const std::vector<int>& multiplicities, const PrimeField& field) {
  if (multiplicities.size() != gamma.size()) {
    throw std::invalid_argument("one multiplicity per point is required");
  }
  const MonomialSpace space(surface, D);
  TripletBuilder builder(condition_count(multiplicities), space.dim(), field);
  std::size_t row = 0;
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    const SurfacePoint& point = gamma.points[k];
    require_chart(point);
    for (int order = 0; order < multiplicities[k]; ++order) {
      for (int a = order; a >= 0; --a) {
        const int b = order - a;
        for (std::size_t col = 0; col < space.dim(); ++col) {
          const CoxMonomial& m = space.monomial(col);
          const Element value = order == 0 ? evaluate(m, point, field)
                                           : monomial_derivative(m, a, b, point.v, point.t, field);
          if (value != 0) builder.add(row, col, value);
        }
        ++row;
      }
    }
  }
  return std::move(builder).build();
}

SectionSpace vanishing_subspace(const HirzebruchSurface& surface, const BlownUpClass& B,
                                const PointSet& gamma, const PrimeField& field) {
  SectionSpace out;
  out.ambient = B.base;
  const SparseMatrix conditions = conditions_matrix(surface, B.base, gamma, B.multiplicities, field);
  out.basis = kernel_basis(conditions);
  return out;
}

bool imposes_independent(const HirzebruchSurface& surface, const BlownUpClass& B, const PointSet& gamma,
                         const PrimeField& field) {
  const SparseMatrix conditions = conditions_matrix(surface, B.base, gamma, B.multiplicities, field);
  return rank(conditions) == conditions.rows();
}

Element chart_derivative(const MonomialSpace& space, const DenseVector& section, int a, int b,
                         const SurfacePoint& point, const PrimeField& field) {
  require_chart(point);
  if (section.size() != space.dim()) throw std::invalid_argument("section length mismatch");
  Element total = 0;
  for (std::size_t col = 0; col < section.size(); ++col) {
    if (section[col] == 0) continue;
    const Element d = monomial_derivative(space.monomial(col), a, b, point.v, point.t, field);
    total = field.add(total, field.mul(section[col], d));
  }
  return total;
}

}  // namespace syzygy
