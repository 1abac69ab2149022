#include "syzygy/exact_linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

namespace syzygy {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t modulus) : p_(modulus) {
  if (modulus < 3 || modulus >= (1u << 31) || !is_prime(modulus)) {
    throw std::invalid_argument("modulus must be an odd prime below 2^31, got " +
                                std::to_string(modulus));
  }
}

Element PrimeField::pow(Element a, std::uint64_t exponent) const noexcept {
  Element result = 1;
  Element base = a % p_;
  while (exponent > 0) {
    if (exponent & 1u) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1u;
  }
  return result;
}

Element PrimeField::inv(Element a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in GF(p)");
  return pow(a, p_ - 2);
}

Element PrimeField::from_int(std::int64_t v) const noexcept {
  const std::int64_t r = v % static_cast<std::int64_t>(p_);
  return static_cast<Element>(r < 0 ? r + p_ : r);
}

SparseVector to_sparse(const DenseVector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  }
  return out;
}

DenseVector to_dense(const SparseVector& v, std::size_t dim) {
  DenseVector out(dim, 0);
  for (const auto& [i, x] : v) out.at(i) = x;
  return out;
}

// ---------------------------------------------------------------------------
// SparseMatrix

namespace {

void check_index_range(std::size_t rows, std::size_t cols) {
  constexpr std::size_t kMax = std::numeric_limits<std::uint32_t>::max();
  if (rows > kMax || cols > kMax) throw std::invalid_argument("matrix dimension exceeds 2^32");
}

bool entry_less(const Entry& a, const Entry& b) {
  return std::tie(a.row, a.col) < std::tie(b.row, b.col);
}

}  // namespace

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field) {
  check_index_range(rows, cols);
}

SparseMatrix SparseMatrix::from_entries(std::size_t rows, std::size_t cols, PrimeField field,
                                        std::vector<Entry> entries) {
  SparseMatrix m(rows, cols, field);
  std::sort(entries.begin(), entries.end(), entry_less);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Entry& e = entries[k];
    if (e.row >= rows || e.col >= cols) throw std::invalid_argument("entry index out of bounds");
    if (e.value == 0) throw std::invalid_argument("explicit zero entry");
    if (e.value >= field.modulus()) throw std::invalid_argument("entry not reduced mod p");
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      throw std::invalid_argument("duplicate entry position");
    }
  }
  m.entries_ = std::move(entries);
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n, PrimeField field) {
  std::vector<Entry> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    entries.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 1});
  }
  return from_entries(n, n, field, std::move(entries));
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows,
                                      PrimeField field) {
  const std::size_t ncols = rows.empty() ? 0 : rows.front().size();
  TripletBuilder builder(rows.size(), ncols, field);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != ncols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < ncols; ++c) builder.add(r, c, field.from_int(rows[r][c]));
  }
  return std::move(builder).build();
}

Element SparseMatrix::at(std::size_t row, std::size_t col) const {
  if (row >= rows_ || col >= cols_) throw std::out_of_range("SparseMatrix::at");
  const Entry probe{static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), 0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, entry_less);
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0;
}

std::vector<SparseVector> SparseMatrix::row_vectors() const {
  std::vector<SparseVector> out(rows_);
  for (const Entry& e : entries_) out[e.row].emplace_back(e.col, e.value);
  return out;
}

std::vector<SparseVector> SparseMatrix::column_vectors() const {
  std::vector<SparseVector> out(cols_);
  for (const Entry& e : entries_) out[e.col].emplace_back(e.row, e.value);
  return out;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const Entry& e : entries_) t.push_back({e.col, e.row, e.value});
  return from_entries(cols_, rows_, field_, std::move(t));
}

TripletBuilder::TripletBuilder(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field) {
  check_index_range(rows, cols);
}

void TripletBuilder::add(std::size_t row, std::size_t col, Element value) {
  if (row >= rows_ || col >= cols_) throw std::invalid_argument("TripletBuilder index out of bounds");
  value %= field_.modulus();
  if (value == 0) return;
  pending_.push_back({static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), value});
}

SparseMatrix TripletBuilder::build() && {
  std::sort(pending_.begin(), pending_.end(), entry_less);
  std::vector<Entry> merged;
  merged.reserve(pending_.size());
  for (const Entry& e : pending_) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value = field_.add(merged.back().value, e.value);
    } else {
      if (!merged.empty() && merged.back().value == 0) merged.pop_back();
      merged.push_back(e);
    }
  }
  if (!merged.empty() && merged.back().value == 0) merged.pop_back();
  return SparseMatrix::from_entries(rows_, cols_, field_, std::move(merged));
}

// ---------------------------------------------------------------------------
// Rank

namespace {

std::size_t dense_rank(const SparseMatrix& m) {
  // Lines run along the longer side; echelon vectors have the shorter length.
  const bool by_rows = m.cols() <= m.rows();
  const std::size_t len = by_rows ? m.cols() : m.rows();
  std::vector<SparseVector> lines = by_rows ? m.row_vectors() : m.column_vectors();
  EchelonBasis basis(m.field(), len);
  for (const SparseVector& line : lines) {
    if (line.empty()) continue;
    basis.insert(to_dense(line, len));
    if (basis.rank() == len) break;
  }
  return basis.rank();
}

}  // namespace

std::size_t rank_of_vectors(std::vector<SparseVector> vectors, std::size_t dim,
                            const PrimeField& field) {
  // Left-looking sparse elimination. Vectors are processed shortest first;
  // each reduced vector takes as pivot the coordinate with the smallest
  // column count (Markowitz-style), ties broken by coordinate index.
  std::vector<std::uint32_t> column_count(dim, 0);
  for (const SparseVector& v : vectors) {
    for (const auto& [c, x] : v) ++column_count.at(c);
  }
  std::vector<std::size_t> order(vectors.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return vectors[a].size() < vectors[b].size();
  });

  std::vector<std::int64_t> pivot_order(dim, -1);
  std::vector<SparseVector> pivots;
  std::vector<Element> acc(dim, 0);
  std::vector<char> marked(dim, 0);
  std::vector<std::uint32_t> touched;
  using HeapItem = std::pair<std::int64_t, std::uint32_t>;

  for (std::size_t idx : order) {
    const SparseVector& v = vectors[idx];
    if (v.empty()) continue;
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    touched.clear();
    for (const auto& [c, x] : v) {
      acc[c] = x;
      marked[c] = 1;
      touched.push_back(c);
      if (pivot_order[c] >= 0) heap.emplace(pivot_order[c], c);
    }
    while (!heap.empty()) {
      const auto [o, c] = heap.top();
      heap.pop();
      const Element factor = acc[c];
      if (factor == 0) continue;
      for (const auto& [cc, pv] : pivots[static_cast<std::size_t>(o)]) {
        acc[cc] = field.sub(acc[cc], field.mul(factor, pv));
        if (!marked[cc]) {
          marked[cc] = 1;
          touched.push_back(cc);
        }
        if (cc != c && pivot_order[cc] >= 0 && acc[cc] != 0) heap.emplace(pivot_order[cc], cc);
      }
    }
    std::int64_t best = -1;
    for (std::uint32_t c : touched) {
      if (acc[c] == 0) continue;
      if (best < 0 || column_count[c] < column_count[static_cast<std::size_t>(best)] ||
          (column_count[c] == column_count[static_cast<std::size_t>(best)] && c < best)) {
        best = c;
      }
    }
    if (best >= 0) {
      const Element scale = field.inv(acc[static_cast<std::size_t>(best)]);
      std::sort(touched.begin(), touched.end());
      SparseVector row;
      for (std::uint32_t c : touched) {
        if (acc[c] != 0) row.emplace_back(c, field.mul(acc[c], scale));
      }
      pivot_order[static_cast<std::size_t>(best)] = static_cast<std::int64_t>(pivots.size());
      pivots.push_back(std::move(row));
    }
    for (std::uint32_t c : touched) {
      acc[c] = 0;
      marked[c] = 0;
    }
  }
  return pivots.size();
}

std::size_t rank(const SparseMatrix& m, const EliminationOptions& options) {
  if (m.nnz() == 0) return 0;
  const std::size_t short_side = std::min(m.rows(), m.cols());
  if (short_side <= options.dense_threshold && m.rows() * m.cols() <= options.dense_cell_limit) {
    return dense_rank(m);
  }
  if (m.cols() <= m.rows()) return rank_of_vectors(m.column_vectors(), m.rows(), m.field());
  return rank_of_vectors(m.row_vectors(), m.cols(), m.field());
}

// ---------------------------------------------------------------------------
// Kernel, products

std::vector<DenseVector> kernel_basis(const SparseMatrix& m) {
  const PrimeField& f = m.field();
  const std::size_t n = m.cols();
  // Reduced row echelon form, built row by row.
  std::vector<DenseVector> rref;
  std::vector<std::size_t> pivot_col;
  std::vector<std::ptrdiff_t> row_of_col(n, -1);
  for (const SparseVector& line : m.row_vectors()) {
    if (line.empty()) continue;
    DenseVector v = to_dense(line, n);
    for (std::size_t c = 0; c < n; ++c) {
      if (v[c] == 0 || row_of_col[c] < 0) continue;
      const Element factor = v[c];
      const DenseVector& r = rref[static_cast<std::size_t>(row_of_col[c])];
      for (std::size_t k = c; k < n; ++k) {
        if (r[k] != 0) v[k] = f.sub(v[k], f.mul(factor, r[k]));
      }
    }
    auto lead = std::find_if(v.begin(), v.end(), [](Element x) { return x != 0; });
    if (lead == v.end()) continue;
    const std::size_t pc = static_cast<std::size_t>(lead - v.begin());
    const Element s = f.inv(v[pc]);
    for (Element& x : v) x = f.mul(x, s);
    // Clear the new pivot column from older rows.
    for (DenseVector& r : rref) {
      const Element factor = r[pc];
      if (factor == 0) continue;
      for (std::size_t k = pc; k < n; ++k) {
        if (v[k] != 0) r[k] = f.sub(r[k], f.mul(factor, v[k]));
      }
    }
    row_of_col[pc] = static_cast<std::ptrdiff_t>(rref.size());
    pivot_col.push_back(pc);
    rref.push_back(std::move(v));
    if (rref.size() == n) break;
  }
  std::vector<DenseVector> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (row_of_col[free] >= 0) continue;
    DenseVector v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < rref.size(); ++r) v[pivot_col[r]] = f.neg(rref[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

SparseMatrix matmul(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul dimension mismatch: " + std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()));
  }
  if (!(a.field() == b.field())) throw std::invalid_argument("matmul field mismatch");
  const PrimeField& f = a.field();
  const std::vector<SparseVector> b_rows = b.row_vectors();
  std::vector<Element> acc(b.cols(), 0);
  std::vector<char> marked(b.cols(), 0);
  std::vector<std::uint32_t> touched;
  std::vector<Entry> out;
  const std::vector<SparseVector> a_rows = a.row_vectors();
  for (std::size_t r = 0; r < a_rows.size(); ++r) {
    touched.clear();
    for (const auto& [k, x] : a_rows[r]) {
      for (const auto& [c, y] : b_rows[k]) {
        acc[c] = f.add(acc[c], f.mul(x, y));
        if (!marked[c]) {
          marked[c] = 1;
          touched.push_back(c);
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t c : touched) {
      if (acc[c] != 0) out.push_back({static_cast<std::uint32_t>(r), c, acc[c]});
      acc[c] = 0;
      marked[c] = 0;
    }
  }
  return SparseMatrix::from_entries(a.rows(), b.cols(), f, std::move(out));
}

DenseVector apply(const SparseMatrix& m, const DenseVector& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("apply dimension mismatch");
  DenseVector out(m.rows(), 0);
  const PrimeField& f = m.field();
  for (const Entry& e : m.entries()) out[e.row] = f.add(out[e.row], f.mul(e.value, v[e.col]));
  return out;
}

// ---------------------------------------------------------------------------
// EchelonBasis

EchelonBasis::EchelonBasis(PrimeField field, std::size_t dim)
    : field_(field), dim_(dim), row_of_pivot_(dim, -1) {}

DenseVector EchelonBasis::reduce(DenseVector v) const {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: vector length mismatch");
  for (std::size_t c = 0; c < dim_; ++c) {
    if (v[c] == 0 || row_of_pivot_[c] < 0) continue;
    const Element factor = v[c];
    const DenseVector& r = rows_[static_cast<std::size_t>(row_of_pivot_[c])];
    for (std::size_t k = c; k < dim_; ++k) {
      if (r[k] != 0) v[k] = field_.sub(v[k], field_.mul(factor, r[k]));
    }
  }
  return v;
}

bool EchelonBasis::insert(const DenseVector& v) {
  DenseVector r = reduce(v);
  auto lead = std::find_if(r.begin(), r.end(), [](Element x) { return x != 0; });
  if (lead == r.end()) return false;
  const std::size_t pc = static_cast<std::size_t>(lead - r.begin());
  const Element s = field_.inv(r[pc]);
  for (Element& x : r) x = field_.mul(x, s);
  row_of_pivot_[pc] = static_cast<std::ptrdiff_t>(rows_.size());
  pivot_of_row_.push_back(pc);
  rows_.push_back(std::move(r));
  return true;
}

bool EchelonBasis::contains(const DenseVector& v) const {
  const DenseVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Element x) { return x == 0; });
}

// ---------------------------------------------------------------------------
// QuotientSpace

QuotientSpace::QuotientSpace(PrimeField field, std::size_t ambient_dim,
                             const std::vector<DenseVector>& numerator_generators,
                             const std::vector<DenseVector>& denominator_generators)
    : field_(field), ambient_dim_(ambient_dim) {
  const PrimeField& f = field_;
  std::vector<std::ptrdiff_t> row_of_pivot(ambient_dim, -1);

  // Reduces v in place; accumulates Σ λ_k tags_k into tag.
  auto reduce = [&](DenseVector& v, DenseVector& tag) {
    for (std::size_t c = 0; c < ambient_dim_; ++c) {
      if (v[c] == 0 || row_of_pivot[c] < 0) continue;
      const std::size_t k = static_cast<std::size_t>(row_of_pivot[c]);
      const Element factor = v[c];
      const DenseVector& r = rows_[k];
      for (std::size_t j = c; j < ambient_dim_; ++j) {
        if (r[j] != 0) v[j] = f.sub(v[j], f.mul(factor, r[j]));
      }
      const DenseVector& t = tags_[k];
      if (tag.size() < t.size()) tag.resize(t.size(), 0);
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (t[j] != 0) tag[j] = f.add(tag[j], f.mul(factor, t[j]));
      }
    }
  };
  auto push_row = [&](DenseVector v, DenseVector tag) -> bool {
    auto lead = std::find_if(v.begin(), v.end(), [](Element x) { return x != 0; });
    if (lead == v.end()) return false;
    const std::size_t pc = static_cast<std::size_t>(lead - v.begin());
    const Element s = f.inv(v[pc]);
    for (Element& x : v) x = f.mul(x, s);
    for (Element& x : tag) x = f.mul(x, s);
    row_of_pivot[pc] = static_cast<std::ptrdiff_t>(rows_.size());
    rows_.push_back(std::move(v));
    tags_.push_back(std::move(tag));
    return true;
  };

  for (const DenseVector& b : denominator_generators) {
    if (b.size() != ambient_dim) throw std::invalid_argument("QuotientSpace: generator length");
    DenseVector v = b;
    DenseVector tag;
    reduce(v, tag);
    // Denominator rows carry tags only through earlier denominator rows, all zero.
    if (push_row(std::move(v), DenseVector{})) ++denominator_rank_;
  }
  for (const DenseVector& a : numerator_generators) {
    if (a.size() != ambient_dim) throw std::invalid_argument("QuotientSpace: generator length");
    DenseVector v = a;
    DenseVector acc;
    reduce(v, acc);
    if (std::all_of(v.begin(), v.end(), [](Element x) { return x == 0; })) continue;
    const std::size_t r = representatives_.size();
    DenseVector tag(r + 1, 0);
    for (std::size_t j = 0; j < acc.size(); ++j) tag[j] = f.neg(acc[j]);
    tag[r] = 1;
    representatives_.push_back(a);
    push_row(std::move(v), std::move(tag));
  }
  for (DenseVector& t : tags_) t.resize(representatives_.size(), 0);
  row_of_pivot_ = std::move(row_of_pivot);
}

DenseVector QuotientSpace::coordinates(const DenseVector& w) const {
  if (w.size() != ambient_dim_) throw std::invalid_argument("QuotientSpace: vector length");
  const PrimeField& f = field_;
  DenseVector v = w;
  DenseVector coords(representatives_.size(), 0);
  // Scan columns left to right; each row is zero before its pivot.
  for (std::size_t c = 0; c < ambient_dim_; ++c) {
    if (v[c] == 0 || row_of_pivot_[c] < 0) continue;
    const std::size_t k = static_cast<std::size_t>(row_of_pivot_[c]);
    const Element factor = v[c];
    const DenseVector& r = rows_[k];
    for (std::size_t j = c; j < ambient_dim_; ++j) {
      if (r[j] != 0) v[j] = f.sub(v[j], f.mul(factor, r[j]));
    }
    const DenseVector& t = tags_[k];
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] != 0) coords[j] = f.add(coords[j], f.mul(factor, t[j]));
    }
  }
  if (!std::all_of(v.begin(), v.end(), [](Element x) { return x == 0; })) {
    throw std::invalid_argument("QuotientSpace: vector not in numerator subspace");
  }
  return coords;
}

}  // namespace syzygy
