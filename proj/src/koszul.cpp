#include "syzygy/koszul.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

#include "syzygy/random.hpp"

namespace syzygy {
namespace {

constexpr unsigned kMaxBinomial = 64;

struct BinomialTable {
  std::uint64_t c[kMaxBinomial + 1][kMaxBinomial + 1] = {};
  BinomialTable() {
    for (unsigned n = 0; n <= kMaxBinomial; ++n) {
      c[n][0] = 1;
      for (unsigned k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
    }
  }
};

const BinomialTable& binomials() {
  static const BinomialTable table;
  return table;
}

// Rank of tuple with position skip removed.
std::size_t colex_rank_without(const std::uint32_t* tuple, unsigned size, unsigned skip) {
  const auto& c = binomials().c;
  std::size_t r = 0;
  for (unsigned k = 0; k < skip; ++k) r += c[tuple[k]][k + 1];
  for (unsigned k = skip + 1; k < size; ++k) r += c[tuple[k]][k];
  return r;
}

// Advances a colex-ordered subset of {0..n-1}; false after the last one.
bool next_subset(std::vector<std::uint32_t>& a, unsigned n) {
  const unsigned size = static_cast<unsigned>(a.size());
  for (unsigned i = 0; i < size; ++i) {
    const std::uint32_t cap = (i + 1 < size) ? a[i + 1] : n;
    if (a[i] + 1 < cap) {
      ++a[i];
      for (unsigned k = 0; k < i; ++k) a[k] = k;
      return true;
    }
  }
  return false;
}

Element signed_value(const PrimeField& field, Element value, bool negative) {
  return negative ? field.neg(value) : value;
}

void check_dim_v(std::size_t dim_v) {
  if (dim_v > kMaxBinomial) throw std::invalid_argument("dimV above 64 is not supported");
}

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  if (n > kMaxBinomial) throw std::invalid_argument("binomial: n above 64");
  return k > n ? 0 : binomials().c[n][k];
}

std::size_t colex_rank(const std::uint32_t* tuple, unsigned size) {
  const auto& c = binomials().c;
  std::size_t r = 0;
  for (unsigned k = 0; k < size; ++k) r += c[tuple[k]][k + 1];
  return r;
}

void colex_unrank(std::size_t rank, unsigned size, std::uint32_t* out) {
  const auto& c = binomials().c;
  for (unsigned k = size; k > 0; --k) {
    std::uint32_t a = k - 1;
    while (a + 1 <= kMaxBinomial && c[a + 1][k] <= rank) ++a;
    out[k - 1] = a;
    rank -= c[a][k];
  }
}

void for_each_subset(unsigned n, unsigned size,
                     const std::function<void(std::size_t, const std::vector<std::uint32_t>&)>& visit) {
  if (size > n) return;
  std::vector<std::uint32_t> a(size);
  for (unsigned k = 0; k < size; ++k) a[k] = k;
  std::size_t r = 0;
  do {
    visit(r++, a);
  } while (next_subset(a, n));
}

MultiplicationTable::MultiplicationTable(PrimeField field, std::size_t dim_v, std::size_t dim_w,
                                         std::vector<SparseVector> products)
    : field_(field), dim_v_(dim_v), dim_w_(dim_w), products_(std::move(products)) {
  check_dim_v(dim_v);
  if (products_.size() != dim_v * dim_v) throw std::invalid_argument("multiplication table size");
  for (const SparseVector& v : products_) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].first >= dim_w || v[k].second == 0 || v[k].second >= field.modulus() ||
          (k > 0 && v[k - 1].first >= v[k].first)) {
        throw std::invalid_argument("malformed product vector");
      }
    }
  }
  for (std::size_t i = 0; i < dim_v; ++i) {
    for (std::size_t j = i + 1; j < dim_v; ++j) {
      if (products_[i * dim_v + j] != products_[j * dim_v + i]) {
        throw std::invalid_argument("multiplication table is not symmetric");
      }
    }
  }
}

MultiplicationTable MultiplicationTable::from_function(
    PrimeField field, std::size_t dim_v, std::size_t dim_w,
    const std::function<SparseVector(std::size_t, std::size_t)>& product) {
  check_dim_v(dim_v);
  std::vector<SparseVector> products(dim_v * dim_v);
  for (std::size_t i = 0; i < dim_v; ++i) {
    for (std::size_t j = i; j < dim_v; ++j) {
      products[i * dim_v + j] = product(i, j);
      products[j * dim_v + i] = products[i * dim_v + j];
    }
  }
  return MultiplicationTable(field, dim_v, dim_w, std::move(products));
}

MultiplicationTable MultiplicationTable::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != dim_v_) throw std::invalid_argument("permutation length");
  std::vector<SparseVector> products(dim_v_ * dim_v_);
  for (std::size_t a = 0; a < dim_v_; ++a) {
    for (std::size_t b = 0; b < dim_v_; ++b) products[a * dim_v_ + b] = product(perm.at(a), perm.at(b));
  }
  return MultiplicationTable(field_, dim_v_, dim_w_, std::move(products));
}

SparseMatrix build_d1(int p, std::size_t dim_v, const PrimeField& field) {
  if (p < 0) throw std::invalid_argument("build_d1: p must be >= 0");
  check_dim_v(dim_v);
  const unsigned n = static_cast<unsigned>(dim_v);
  const unsigned up = static_cast<unsigned>(p);
  const std::size_t block = binomial(n, up);
  TripletBuilder builder(dim_v * block, binomial(n, up + 1), field);
  if (up + 1 > n) return std::move(builder).build();
  builder.reserve(binomial(n, up + 1) * (up + 1));
  for_each_subset(n, up + 1, [&](std::size_t col, const std::vector<std::uint32_t>& T) {
    for (unsigned j = 0; j <= up; ++j) {
      const std::size_t row = T[j] * block + colex_rank_without(T.data(), up + 1, j);
      builder.add(row, col, signed_value(field, 1, j % 2 == 1));
    }
  });
  return std::move(builder).build();
}

SparseMatrix build_d2(int p, const MultiplicationTable& mult) {
  const std::size_t n = mult.dim_v();
  if (p < 1 || static_cast<std::size_t>(p) > n) {
    throw std::invalid_argument("build_d2: need 1 <= p <= dimV, got p = " + std::to_string(p));
  }
  const PrimeField& field = mult.field();
  const unsigned un = static_cast<unsigned>(n);
  const unsigned up = static_cast<unsigned>(p);
  const std::size_t col_block = binomial(un, up);
  const std::size_t row_block = binomial(un, up - 1);
  TripletBuilder builder(mult.dim_w() * row_block, n * col_block, field);
  for_each_subset(un, up, [&](std::size_t rank_i, const std::vector<std::uint32_t>& I) {
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t col = v * col_block + rank_i;
      for (unsigned j = 0; j < up; ++j) {
        const std::size_t sub = colex_rank_without(I.data(), up, j);
        for (const auto& [w, c] : mult.product(v, I[j])) {
          builder.add(w * row_block + sub, col, signed_value(field, c, j % 2 == 1));
        }
      }
    }
  });
  return std::move(builder).build();
}

bool d1_injective(int p, std::size_t dim_v, const PrimeField& field) {
  const SparseMatrix d1 = build_d1(p, dim_v, field);
  return rank(d1) == d1.cols();
}

bool complex_closes(int p, const MultiplicationTable& mult) {
  if (p < 1) throw std::invalid_argument("complex_closes: p must be >= 1");
  const std::size_t n = mult.dim_v();
  const unsigned up = static_cast<unsigned>(p);
  if (up + 1 > n) return true;
  const PrimeField& field = mult.field();
  bool closes = true;
  // (subset rank, w) → accumulated coefficient, one column of d1 at a time.
  std::vector<std::tuple<std::size_t, std::uint32_t, Element>> acc;
  std::vector<std::uint32_t> I(up);
  for_each_subset(static_cast<unsigned>(n), up + 1, [&](std::size_t, const std::vector<std::uint32_t>& T) {
    if (!closes) return;
    acc.clear();
    for (unsigned j = 0; j <= up; ++j) {
      for (unsigned k = 0, m = 0; k <= up; ++k) {
        if (k != j) I[m++] = T[k];
      }
      for (unsigned k = 0; k < up; ++k) {
        const std::size_t sub = colex_rank_without(I.data(), up, k);
        const bool negative = (j + k) % 2 == 1;
        for (const auto& [w, c] : mult.product(T[j], I[k])) {
          acc.emplace_back(sub, w, signed_value(field, c, negative));
        }
      }
    }
    std::sort(acc.begin(), acc.end());
    for (std::size_t a = 0; a < acc.size();) {
      std::size_t b = a;
      Element sum = 0;
      while (b < acc.size() && std::get<0>(acc[b]) == std::get<0>(acc[a]) &&
             std::get<1>(acc[b]) == std::get<1>(acc[a])) {
        sum = field.add(sum, std::get<2>(acc[b]));
        ++b;
      }
      if (sum != 0) {
        closes = false;
        return;
      }
      a = b;
    }
  });
  return closes;
}

const KoszulTerm* KoszulReport::find(int p) const {
  for (const KoszulTerm& t : terms) {
    if (t.p == p) return &t;
  }
  return nullptr;
}

KoszulTerm k_p1_term(const MultiplicationTable& mult, int p) {
  if (p < 1) throw std::invalid_argument("K_{p,1} needs p >= 1");
  KoszulTerm term;
  term.p = p;
  const std::size_t n = mult.dim_v();
  if (static_cast<std::size_t>(p) > n) return term;
  const SparseMatrix d1 = build_d1(p, n, mult.field());
  const SparseMatrix d2 = build_d2(p, mult);
  term.rank_d1 = rank(d1);
  term.nullity_d2 = d2.cols() - rank(d2);
  if (term.nullity_d2 < term.rank_d1) throw std::logic_error("nullity(d2) < rank(d1): not a complex");
  term.dim = term.nullity_d2 - term.rank_d1;
  term.closes = complex_closes(p, mult);
  return term;
}

std::size_t k_p1_dim(const MultiplicationTable& mult, int p) { return k_p1_term(mult, p).dim; }

KoszulReport betti_row_q1(const MultiplicationTable& mult, int p_min, int p_max) {
  KoszulReport report;
  report.p_min = p_min;
  report.p_max = p_max;
  report.prime = mult.field().modulus();
  if (p_min > p_max) return report;
  if (p_min < 1 || static_cast<std::size_t>(p_max) + 1 > mult.dim_v()) {
    throw std::invalid_argument("betti_row_q1: need 1 <= p_min <= p_max <= dimV - 1");
  }
  for (int p = p_min; p <= p_max; ++p) report.terms.push_back(k_p1_term(mult, p));
  return report;
}

MultiplicationTable toy_p1_space(int d, const PrimeField& field) {
  if (d < 1) throw std::invalid_argument("toy_p1_space: d must be >= 1");
  const std::size_t dim_v = static_cast<std::size_t>(d) + 1;
  return MultiplicationTable::from_function(field, dim_v, 2 * static_cast<std::size_t>(d) + 1,
                                            [](std::size_t i, std::size_t j) {
                                              return SparseVector{{static_cast<std::uint32_t>(i + j), 1}};
                                            });
}

// --- module reduction ---

namespace {

std::vector<DenseVector> independent_subset(const PrimeField& field, std::size_t dim,
                                            const std::vector<DenseVector>& gens) {
  EchelonBasis basis(field, dim);
  std::vector<DenseVector> out;
  for (const DenseVector& g : gens) {
    if (basis.insert(g)) out.push_back(g);
  }
  return out;
}

bool spans_contain(const PrimeField& field, std::size_t dim, const std::vector<DenseVector>& span,
                   const std::vector<DenseVector>& vectors) {
  EchelonBasis basis(field, dim);
  for (const DenseVector& v : span) basis.insert(v);
  return std::all_of(vectors.begin(), vectors.end(), [&](const DenseVector& v) { return basis.contains(v); });
}

MultiplicationTable table_of(const TruncatedModule& module, const QuotientSpace& V, const QuotientSpace& W) {
  const auto& reps = V.representatives();
  return MultiplicationTable::from_function(module.field, V.dim(), W.dim(), [&](std::size_t i, std::size_t j) {
    return to_sparse(W.coordinates(module.multiply_11(reps[i], reps[j])));
  });
}

}  // namespace

MultiplicationTable module_table(const TruncatedModule& module) {
  const auto& [p1, p2, p3] = module.piece;
  (void)p3;
  const QuotientSpace V(module.field, p1.ambient_dim, p1.numerator, p1.denominator);
  const QuotientSpace W(module.field, p2.ambient_dim, p2.numerator, p2.denominator);
  return table_of(module, V, W);
}

bool is_module(const TruncatedModule& module) {
  const PrimeField& f = module.field;
  const auto& [p1, p2, p3] = module.piece;
  std::vector<DenseVector> products;
  for (const auto& a : p1.numerator) {
    for (const auto& b : p1.numerator) products.push_back(module.multiply_11(a, b));
  }
  if (!spans_contain(f, p2.ambient_dim, p2.numerator, products)) return false;
  products.clear();
  for (const auto& a : p1.numerator) {
    for (const auto& b : p1.denominator) products.push_back(module.multiply_11(a, b));
  }
  if (!spans_contain(f, p2.ambient_dim, p2.denominator, products)) return false;
  products.clear();
  for (const auto& a : p1.numerator) {
    for (const auto& b : p2.numerator) products.push_back(module.multiply_12(a, b));
  }
  if (!spans_contain(f, p3.ambient_dim, p3.numerator, products)) return false;
  products.clear();
  for (const auto& a : p1.numerator) {
    for (const auto& b : p2.denominator) products.push_back(module.multiply_12(a, b));
  }
  return spans_contain(f, p3.ambient_dim, p3.denominator, products);
}

ReducedModule reduce_module(const TruncatedModule& module, int p_min, int p_max,
                            const ReductionOptions& options) {
  const PrimeField& f = module.field;
  const auto& [p1, p2, p3] = module.piece;
  const QuotientSpace V(f, p1.ambient_dim, p1.numerator, p1.denominator);
  const std::vector<DenseVector>& reps = V.representatives();

  // Spanning sets of A_1 and A_2 that get multiplied by each new form.
  std::vector<DenseVector> a1_span = reps;
  a1_span.insert(a1_span.end(), p1.denominator.begin(), p1.denominator.end());
  const std::vector<DenseVector> a2_basis = independent_subset(f, p2.ambient_dim, p2.numerator);

  EchelonBasis b1(f, p1.ambient_dim);
  EchelonBasis b2(f, p2.ambient_dim);
  EchelonBasis b3(f, p3.ambient_dim);
  for (const auto& v : p1.denominator) b1.insert(v);
  for (const auto& v : p2.denominator) b2.insert(v);
  for (const auto& v : p3.denominator) b3.insert(v);
  const std::size_t base_b1 = b1.rank();

  std::vector<DenseVector> forms;
  std::vector<DenseVector> b2_extra;
  Rng rng(options.seed);
  std::size_t rejected = 0;

  auto middle = [&](std::size_t m) -> std::size_t {
    std::size_t largest = 0;
    for (int p = std::max(p_min, 0); p <= p_max && static_cast<std::size_t>(p) <= m; ++p) {
      largest = std::max<std::size_t>(largest, m * binomial(static_cast<unsigned>(m), static_cast<unsigned>(p)));
    }
    return largest;
  };

  std::size_t current = V.dim();
  while (forms.size() < options.max_steps && current > 0 && middle(current) > options.middle_limit) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < options.attempts_per_step && !accepted; ++attempt) {
      DenseVector x(p1.ambient_dim, 0);
      for (const auto& r : reps) {
        const Element c = rng.element(f);
        for (std::size_t k = 0; k < x.size(); ++k) x[k] = f.add(x[k], f.mul(c, r[k]));
      }
      if (b1.contains(x)) {
        ++rejected;
        continue;
      }
      // Degree 1 → 2: image of x on A_1/(B_1 + forms) must have full dimension.
      EchelonBasis next2 = b2;
      std::vector<DenseVector> xa1;
      xa1.reserve(a1_span.size());
      for (const auto& a : a1_span) {
        xa1.push_back(module.multiply_11(x, a));
        next2.insert(xa1.back());
      }
      const bool injective_1 = next2.rank() - b2.rank() == current;
      // Degree 2 → 3 on A_2/(B_2 + forms·A_1).
      bool injective_2 = false;
      EchelonBasis next3 = b3;
      if (injective_1) {
        const std::size_t dim_n2 = a2_basis.size() - b2.rank();
        for (const auto& a : a2_basis) next3.insert(module.multiply_12(x, a));
        injective_2 = next3.rank() - b3.rank() == dim_n2;
      }
      if (!injective_2) {
        ++rejected;
        continue;
      }
      b1.insert(x);
      b2 = std::move(next2);
      b3 = std::move(next3);
      forms.push_back(std::move(x));
      b2_extra.insert(b2_extra.end(), xa1.begin(), xa1.end());
      accepted = true;
    }
    if (!accepted) break;
    current = V.dim() - (b1.rank() - base_b1);
  }

  std::vector<DenseVector> den1 = p1.denominator;
  den1.insert(den1.end(), forms.begin(), forms.end());
  std::vector<DenseVector> den2 = p2.denominator;
  den2.insert(den2.end(), b2_extra.begin(), b2_extra.end());
  const QuotientSpace V_reduced(f, p1.ambient_dim, reps, den1);
  const QuotientSpace W_reduced(f, p2.ambient_dim, p2.numerator, den2);

  const QuotientSpace W(f, p2.ambient_dim, p2.numerator, p2.denominator);
  return ReducedModule{table_of(module, V_reduced, W_reduced), V.dim(), W.dim(), forms.size(), rejected};
}

KoszulReport module_betti_row(const TruncatedModule& module, int p_min, int p_max,
                              const ReductionOptions& options) {
  KoszulReport report;
  report.p_min = p_min;
  report.p_max = p_max;
  report.prime = module.field.modulus();
  report.seed = options.seed;
  if (p_min > p_max) return report;
  const ReducedModule reduced = reduce_module(module, p_min, p_max, options);
  const std::size_t n = reduced.original_dim_v;
  if (p_min < 1 || static_cast<std::size_t>(p_max) + 1 > n) {
    throw std::invalid_argument("module_betti_row: need 1 <= p_min <= p_max <= dimV - 1");
  }
  for (int p = p_min; p <= p_max; ++p) {
    KoszulTerm term = k_p1_term(reduced.table, p);
    term.rank_d1 = static_cast<std::size_t>(binomial(static_cast<unsigned>(n), static_cast<unsigned>(p) + 1));
    term.nullity_d2 = term.dim + term.rank_d1;
    term.reduction_steps = reduced.steps;
    report.terms.push_back(term);
  }
  return report;
}

}  // namespace syzygy
