#include <set>
#include <tuple>

#include "doctest.h"
#include "syzygy/hirzebruch.hpp"
#include "syzygy/random.hpp"

using namespace syzygy;

namespace {

// Counts exponent tuples of class D by scanning a box, independently of the
// closed-form sum and of the enumeration order.
std::size_t brute_force_count(int e, DivisorClass D) {
  if (D.a < 0) return 0;
  std::size_t count = 0;
  const int box = D.b + D.a * e + 2;
  for (int i = 0; i <= box; ++i)
    for (int j = 0; j <= box; ++j)
      for (int c = 0; c <= D.a; ++c)
        for (int d = 0; d <= D.a; ++d)
          if (c + d == D.a && i + j + d * e == D.b) ++count;
  return count;
}

}  // namespace

TEST_CASE("h0 fixed values") {
  CHECK(h0(HirzebruchSurface(0), {0, 0}) == 1);
  CHECK(h0(HirzebruchSurface(1), {2, 3}) == 9);
  CHECK(brute_force_count(1, {2, 3}) == 9);
  CHECK(h0(HirzebruchSurface(1), {4, 6}) == 25);
  CHECK(brute_force_count(1, {4, 6}) == 25);
  CHECK(h0(HirzebruchSurface(2), {-1, 5}) == 0);
}

TEST_CASE("monomial bases of small classes") {
  const auto b11 = monomial_basis(HirzebruchSurface(1), {1, 1});
  REQUIRE(b11.size() == 3);
  CHECK(b11[0] == CoxMonomial{1, 0, 1, 0});  // s·u
  CHECK(b11[1] == CoxMonomial{0, 1, 1, 0});  // s·v
  CHECK(b11[2] == CoxMonomial{0, 0, 0, 1});  // t

  const auto b02 = monomial_basis(HirzebruchSurface(0), {0, 2});
  REQUIRE(b02.size() == 3);
  CHECK(b02[0] == CoxMonomial{2, 0, 0, 0});
  CHECK(b02[1] == CoxMonomial{1, 1, 0, 0});
  CHECK(b02[2] == CoxMonomial{0, 2, 0, 0});

  const auto b00 = monomial_basis(HirzebruchSurface(3), {0, 0});
  REQUIRE(b00.size() == 1);
  CHECK(b00[0] == CoxMonomial{});
}

TEST_CASE("basis size matches h0 and brute force exhaustively") {
  for (int e = 0; e <= 3; ++e) {
    const HirzebruchSurface s(e);
    for (int a = 0; a <= 6; ++a) {
      for (int b = 0; b <= 12; ++b) {
        const auto basis = monomial_basis(s, {a, b});
        CHECK(basis.size() == h0(s, {a, b}));
        CHECK(basis.size() == brute_force_count(e, {a, b}));
        std::set<std::tuple<int, int, int, int>> distinct;
        for (const auto& m : basis) {
          CHECK(monomial_class(s, m) == DivisorClass{a, b});
          distinct.emplace(m.i, m.j, m.c, m.d);
        }
        CHECK(distinct.size() == basis.size());
        const MonomialSpace space(s, {a, b});
        for (std::size_t k = 0; k < basis.size(); ++k) CHECK(space.index_of(basis[k]) == k);
      }
    }
  }
}

TEST_CASE("multiplication of monomials") {
  const HirzebruchSurface s(1);
  const CoxMonomial su{1, 0, 1, 0}, sv{0, 1, 1, 0}, t{0, 0, 0, 1};
  CHECK(multiply(su, CoxMonomial{}) == su);
  CHECK(multiply(su, sv) == CoxMonomial{1, 1, 2, 0});
  CHECK(monomial_class(s, multiply(t, su)) == DivisorClass{2, 2});  // 2C0 + (1+e)f

  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int e = static_cast<int>(rng.below(4));
    const HirzebruchSurface surf(e);
    auto pick = [&] {
      return CoxMonomial{static_cast<int>(rng.below(5)), static_cast<int>(rng.below(5)),
                         static_cast<int>(rng.below(5)), static_cast<int>(rng.below(5))};
    };
    const CoxMonomial x = pick(), y = pick(), z = pick();
    CHECK(multiply(x, y) == multiply(y, x));
    CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
    CHECK(monomial_class(surf, multiply(x, y)) == monomial_class(surf, x) + monomial_class(surf, y));
  }
}

TEST_CASE("intersection numbers") {
  const HirzebruchSurface s1(1);
  CHECK(intersect(s1, {0, 1}, {0, 1}) == 0);
  CHECK(intersect(s1, {1, 0}, {1, 0}) == -1);
  CHECK(intersect(s1, {2, 3}, {2, 3}) == 8);
  CHECK(intersect(HirzebruchSurface(3), {1, 0}, {0, 1}) == 1);
}

TEST_CASE("genus by adjunction") {
  const HirzebruchSurface s1(1);
  for (int b = 0; b <= 6; ++b) CHECK(smooth_genus(s1, {1, b}) == 0);
  CHECK(smooth_genus(s1, {4, 6}) == 9);
  CHECK(smooth_genus(s1, {2, 3}) == 1);
  CHECK_THROWS_AS(smooth_genus(s1, {0, 4}), std::invalid_argument);

  // Closed form (a−1)(b−1) − e·a(a−1)/2, and (k−1)(2m−2−k·e)/2 at γ = 0.
  for (int e = 0; e <= 3; ++e) {
    const HirzebruchSurface s(e);
    for (int a = 1; a <= 8; ++a) {
      for (int b = 0; b <= 20; ++b) {
        const long long closed = static_cast<long long>(a - 1) * (b - 1) - static_cast<long long>(e) * a * (a - 1) / 2;
        CHECK(smooth_genus(s, {a, b}) == closed);
        CHECK(2 * smooth_genus(s, {a, b}) == static_cast<long long>(a - 1) * (2 * b - 2 - a * e));
      }
    }
  }
}

TEST_CASE("evaluation at points") {
  const PrimeField f;
  const SurfacePoint ones{1, 1, 1, 1};
  for (const auto& m : monomial_basis(HirzebruchSurface(1), {3, 4})) CHECK(evaluate(m, ones, f) == 1);
  const SurfacePoint chart{1, 1234, 1, 777};
  CHECK(evaluate({1, 0, 1, 0}, chart, f) == 1);
  CHECK(evaluate({0, 0, 0, 1}, chart, f) == 777);
  CHECK_THROWS_AS(evaluate({1, 0, 0, 0}, SurfacePoint{0, 0, 1, 1}, f), std::domain_error);
  CHECK_THROWS_AS(evaluate({1, 0, 0, 0}, SurfacePoint{1, 1, 0, 0}, f), std::domain_error);

  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const SurfacePoint pt{rng.nonzero_element(f), rng.element(f), rng.nonzero_element(f), rng.element(f)};
    const CoxMonomial x{static_cast<int>(rng.below(6)), static_cast<int>(rng.below(6)),
                        static_cast<int>(rng.below(6)), static_cast<int>(rng.below(6))};
    const CoxMonomial y{static_cast<int>(rng.below(6)), static_cast<int>(rng.below(6)),
                        static_cast<int>(rng.below(6)), static_cast<int>(rng.below(6))};
    CHECK(evaluate(multiply(x, y), pt, f) == f.mul(evaluate(x, pt, f), evaluate(y, pt, f)));
  }
}

TEST_CASE("section products agree with pointwise products") {
  const PrimeField f;
  const HirzebruchSurface s(1);
  const MonomialSpace A(s, {1, 2}), B(s, {2, 3}), AB(s, {3, 5});
  Rng rng(4);
  DenseVector x(A.dim()), y(B.dim());
  for (auto& c : x) c = rng.element(f);
  for (auto& c : y) c = rng.element(f);
  const DenseVector xy = multiply_sections(A, x, B, y, AB, f);
  auto eval = [&](const MonomialSpace& space, const DenseVector& sec, const SurfacePoint& pt) {
    Element total = 0;
    for (std::size_t k = 0; k < sec.size(); ++k) total = f.add(total, f.mul(sec[k], evaluate(space.monomial(k), pt, f)));
    return total;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const SurfacePoint pt{1, rng.element(f), 1, rng.element(f)};
    CHECK(eval(AB, xy, pt) == f.mul(eval(A, x, pt), eval(B, y, pt)));
  }
  CHECK_THROWS_AS(multiply_sections(A, x, B, y, A, f), std::invalid_argument);
}
