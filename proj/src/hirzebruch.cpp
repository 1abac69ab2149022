#include "syzygy/hirzebruch.hpp"

#include <stdexcept>
#include <string>

namespace syzygy {

HirzebruchSurface::HirzebruchSurface(int e) : e_(e) {
  if (e < 0) throw std::invalid_argument("Hirzebruch invariant e must be >= 0");
}

DivisorClass monomial_class(const HirzebruchSurface& surface, const CoxMonomial& m) {
  return {m.c + m.d, m.i + m.j + m.d * surface.e()};
}

std::size_t h0(const HirzebruchSurface& surface, DivisorClass D) {
  if (D.a < 0) return 0;
  std::size_t total = 0;
  for (int d = 0; d <= D.a; ++d) {
    const int width = D.b - d * surface.e() + 1;
    if (width > 0) total += static_cast<std::size_t>(width);
  }
  return total;
}

std::vector<CoxMonomial> monomial_basis(const HirzebruchSurface& surface, DivisorClass D) {
  std::vector<CoxMonomial> out;
  if (D.a < 0) return out;
  out.reserve(h0(surface, D));
  for (int d = 0; d <= D.a; ++d) {
    const int fiber_degree = D.b - d * surface.e();
    for (int i = fiber_degree; i >= 0; --i) out.push_back({i, fiber_degree - i, D.a - d, d});
  }
  return out;
}

CoxMonomial multiply(const CoxMonomial& m1, const CoxMonomial& m2) {
  return {m1.i + m2.i, m1.j + m2.j, m1.c + m2.c, m1.d + m2.d};
}

long long intersect(const HirzebruchSurface& surface, DivisorClass D1, DivisorClass D2) {
  const long long e = surface.e();
  return -static_cast<long long>(D1.a) * D2.a * e + static_cast<long long>(D1.a) * D2.b +
         static_cast<long long>(D2.a) * D1.b;
}

long long smooth_genus(const HirzebruchSurface& surface, DivisorClass D) {
  if (D.a < 1) throw std::invalid_argument("smooth_genus needs a >= 1, got a = " + std::to_string(D.a));
  const DivisorClass canonical{-2, -(surface.e() + 2)};
  const long long twice = intersect(surface, D, D) + intersect(surface, canonical, D);
  return twice / 2 + 1;
}

Element evaluate(const CoxMonomial& m, const SurfacePoint& point, const PrimeField& field) {
  if ((point.u == 0 && point.v == 0) || (point.s == 0 && point.t == 0)) {
    throw std::domain_error("point lies in the irrelevant locus of the Cox ring");
  }
  Element value = field.pow(point.u, static_cast<std::uint64_t>(m.i));
  value = field.mul(value, field.pow(point.v, static_cast<std::uint64_t>(m.j)));
  value = field.mul(value, field.pow(point.s, static_cast<std::uint64_t>(m.c)));
  return field.mul(value, field.pow(point.t, static_cast<std::uint64_t>(m.d)));
}

MonomialSpace::MonomialSpace(HirzebruchSurface surface, DivisorClass D)
    : surface_(surface), class_(D), basis_(monomial_basis(surface, D)) {
  if (D.a >= 0) {
    offset_.resize(static_cast<std::size_t>(D.a) + 2, 0);
    for (int d = 0; d <= D.a; ++d) {
      const int width = std::max(0, D.b - d * surface.e() + 1);
      offset_[static_cast<std::size_t>(d) + 1] = offset_[static_cast<std::size_t>(d)] +
                                                 static_cast<std::size_t>(width);
    }
  }
}

std::size_t MonomialSpace::index_of(const CoxMonomial& m) const {
  if (!(monomial_class(surface_, m) == class_) || m.i < 0 || m.j < 0 || m.c < 0 || m.d < 0) {
    throw std::invalid_argument("monomial does not belong to this class");
  }
  const int fiber_degree = class_.b - m.d * surface_.e();
  return offset_[static_cast<std::size_t>(m.d)] + static_cast<std::size_t>(fiber_degree - m.i);
}

DenseVector multiply_sections(const MonomialSpace& A, const DenseVector& f, const MonomialSpace& B,
                              const DenseVector& g, const MonomialSpace& AB,
                              const PrimeField& field) {
  if (f.size() != A.dim() || g.size() != B.dim()) {
    throw std::invalid_argument("multiply_sections: coefficient vector length");
  }
  if (!(A.divisor() + B.divisor() == AB.divisor())) {
    throw std::invalid_argument("multiply_sections: target class mismatch");
  }
  DenseVector out(AB.dim(), 0);
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (f[x] == 0) continue;
    for (std::size_t y = 0; y < g.size(); ++y) {
      if (g[y] == 0) continue;
      const std::size_t k = AB.index_of(multiply(A.monomial(x), B.monomial(y)));
      out[k] = field.add(out[k], field.mul(f[x], g[y]));
    }
  }
  return out;
}

}  // namespace syzygy
