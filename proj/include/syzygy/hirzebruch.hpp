#pragma once

// Numerical and monomial model of the Hirzebruch surface Σ_e.
//
// Cox coordinates (u, v, s, t): u and v have class f, s has class C0 and t has
// class C0 + e·f. The monomial u^i v^j s^c t^d has class
// (c + d)·C0 + (i + j + d·e)·f, so sections of aC0 + bf are spanned by the
// monomials with c + d = a and i + j + d·e = b.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "syzygy/exact_linalg.hpp"

namespace syzygy {

class HirzebruchSurface {
 public:
  explicit HirzebruchSurface(int e);
  int e() const noexcept { return e_; }

  friend bool operator==(const HirzebruchSurface&, const HirzebruchSurface&) = default;

 private:
  int e_;
};

/// Numerical class a·C0 + b·f.
struct DivisorClass {
  int a = 0;
  int b = 0;

  friend DivisorClass operator+(DivisorClass x, DivisorClass y) { return {x.a + y.a, x.b + y.b}; }
  friend DivisorClass operator-(DivisorClass x, DivisorClass y) { return {x.a - y.a, x.b - y.b}; }
  friend DivisorClass operator*(int k, DivisorClass x) { return {k * x.a, k * x.b}; }
  friend bool operator==(DivisorClass, DivisorClass) = default;
};

/// u^i v^j s^c t^d.
struct CoxMonomial {
  int i = 0;
  int j = 0;
  int c = 0;
  int d = 0;

  friend bool operator==(const CoxMonomial&, const CoxMonomial&) = default;
};

/// Homogeneous Cox coordinates of a point of Σ_e.
struct SurfacePoint {
  Element u = 1;
  Element v = 0;
  Element s = 1;
  Element t = 0;

  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

DivisorClass monomial_class(const HirzebruchSurface& surface, const CoxMonomial& m);

/// Σ_{d=0}^{a} max(0, b − d·e + 1) for a ≥ 0, else 0.
std::size_t h0(const HirzebruchSurface& surface, DivisorClass D);

/// All monomials of class D ordered by ascending d, then descending i.
std::vector<CoxMonomial> monomial_basis(const HirzebruchSurface& surface, DivisorClass D);

CoxMonomial multiply(const CoxMonomial& m1, const CoxMonomial& m2);

/// C0² = −e, C0·f = 1, f² = 0.
long long intersect(const HirzebruchSurface& surface, DivisorClass D1, DivisorClass D2);

/// Arithmetic genus of a smooth member of |D| by adjunction with
/// K = −2C0 − (e+2)f. Throws std::invalid_argument when a < 1.
long long smooth_genus(const HirzebruchSurface& surface, DivisorClass D);

/// Product of coordinate powers. Throws std::domain_error when (u,v) or (s,t)
/// is (0,0), since such a point does not lie on the surface.
Element evaluate(const CoxMonomial& m, const SurfacePoint& point, const PrimeField& field);

/// The monomial basis of one class with O(1) monomial → index lookup.
///
/// Sections of the class are dense coefficient vectors in this basis.
class MonomialSpace {
 public:
  MonomialSpace(HirzebruchSurface surface, DivisorClass D);

  const HirzebruchSurface& surface() const noexcept { return surface_; }
  DivisorClass divisor() const noexcept { return class_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<CoxMonomial>& basis() const noexcept { return basis_; }
  const CoxMonomial& monomial(std::size_t index) const { return basis_.at(index); }

  /// Index of m; throws std::invalid_argument when m has a different class.
  std::size_t index_of(const CoxMonomial& m) const;

 private:
  HirzebruchSurface surface_;
  DivisorClass class_;
  std::vector<CoxMonomial> basis_;
  std::vector<std::size_t> offset_;  // first index with given t-exponent d
};

/// Polynomial product of sections f ∈ H^0(A) and g ∈ H^0(B) in H^0(A + B).
DenseVector multiply_sections(const MonomialSpace& A, const DenseVector& f, const MonomialSpace& B,
                              const DenseVector& g, const MonomialSpace& AB,
                              const PrimeField& field);

}  // namespace syzygy
