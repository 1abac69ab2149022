#include "syzygy/verify.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <tuple>

#include "syzygy/curves.hpp"
#include "syzygy/hirzebruch.hpp"
#include "syzygy/points.hpp"
#include "syzygy/random.hpp"

namespace syzygy {
namespace {

// Seed streams for the independent random choices in one run.
constexpr std::uint64_t kPointStream = 0;
constexpr std::uint64_t kEquationStream = 1;
constexpr std::uint64_t kReductionStream = 2;
constexpr std::uint64_t kCurveStream = 3;

class Stopwatch {
 public:
  long long elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

VerificationReport start_report(std::string theorem, std::vector<std::pair<std::string, long long>> params,
                                const PrimeField& field, std::uint64_t seed) {
  VerificationReport r;
  r.theorem = std::move(theorem);
  r.params = std::move(params);
  r.prime = field.modulus();
  r.seed = seed;
  return r;
}

std::vector<std::pair<std::string, bool>> theorem2_hypotheses(int e, int alpha, int beta, long long gamma) {
  return {
      {"e >= 0", e >= 0},
      {"alpha >= 2", alpha >= 2},
      {"beta >= max(alpha*e, alpha+e)", beta >= std::max(alpha * e, alpha + e)},
      {"0 <= gamma <= beta-(e-1)*alpha",
       gamma >= 0 && gamma <= static_cast<long long>(beta) - static_cast<long long>(e - 1) * alpha},
  };
}

std::string failed_hypotheses(const VerificationReport& r) {
  std::string out = "hypotheses fail:";
  for (const auto& [name, ok] : r.hypotheses)
    if (!ok) out += " " + name + ";";
  out.pop_back();
  return out;
}

ReductionOptions reduction_for(const VerifyOptions& options, std::uint64_t seed) {
  ReductionOptions opt = options.reduction;
  opt.seed = derive_seed(seed, kReductionStream);
  return opt;
}

// d1 injectivity and d2∘d1 = 0 on the unreduced complex for every p in range.
void literal_checks(VerificationReport& r, const MultiplicationTable& table, int p_lo, int p_hi) {
  r.d1_injective = true;
  r.d2_d1_zero = true;
  for (int p = p_lo; p <= p_hi; ++p) {
    r.d1_injective = r.d1_injective && d1_injective(p, table.dim_v(), table.field());
    r.d2_d1_zero = r.d2_d1_zero && complex_closes(p, table);
  }
}

bool vanishes_from_threshold(const std::map<int, std::size_t>& row, int threshold) {
  return std::all_of(row.begin(), row.end(), [threshold](const auto& kv) { return kv.first < threshold || kv.second == 0; });
}

void set_verdict(VerificationReport& r, bool vanishing) {
  if (!r.d1_injective || !r.d2_d1_zero) {
    r.verdict = Verdict::error;
    r.message = "structural check failed on the literal complex";
  } else if (!vanishing) {
    r.verdict = Verdict::violated;
    r.message = "nonzero K_{p,1} at p >= " + std::to_string(r.threshold);
  } else {
    r.verdict = Verdict::verified;
  }
}

struct SurfaceRow {
  TruncatedModule module;
  std::size_t n = 0;
  int p_lo = 0;
  int p_hi = 0;
};

// Which p-range to use when the caller gives none: the claimed range, or one
// below it up to dim V − 1.
enum class RangeDefault { claimed, extended };

struct RowRange {
  std::optional<int> p_min;
  std::optional<int> p_max;
  RangeDefault fallback = RangeDefault::claimed;
};

std::pair<int, int> resolve_range(const RowRange& range, int threshold, int n) {
  const bool extended = range.fallback == RangeDefault::extended;
  const int lo = range.p_min.value_or(std::max(1, extended ? threshold - 1 : threshold));
  const int hi = range.p_max.value_or(extended ? n - 1 : n - 2);
  if ((range.p_min || range.p_max || extended) && (lo < 1 || hi > n - 1 || lo > hi)) {
    throw std::invalid_argument("p range [" + std::to_string(lo) + ", " + std::to_string(hi) + "] is not inside [1, " +
                                std::to_string(n - 1) + "]");
  }
  return {lo, hi};
}

void split_row(VerificationReport& r, const KoszulReport& report) {
  for (const KoszulTerm& t : report.terms) {
    if (t.p >= r.threshold) {
      r.betti_q1[t.p] = t.dim;
    } else {
      r.informational[t.p] = t.dim;
    }
  }
  if (!report.terms.empty()) {
    r.dims.push_back({"reduction_steps", static_cast<long long>(report.terms.front().reduction_steps)});
  }
}

// Shared part of the surface harnesses. Empty when the points are special,
// with the report already finished.
std::optional<SurfaceRow> surface_row(VerificationReport& r, const HirzebruchSurface& s, DivisorClass L, int alpha,
                                      const PointSet& pts, const PrimeField& field, const VerifyOptions& options,
                                      const RowRange& range = {}) {
  const std::size_t gamma = pts.size();
  r.independence = imposes_independent(s, BlownUpClass::uniform(L, gamma, 1), pts, field);
  if (!r.independence) {
    r.verdict = Verdict::genericity_failure;
    r.message = "the points impose dependent conditions on H^0(L); rerun with another seed";
    return std::nullopt;
  }
  SurfaceRow row{blowup_section_module(s, L, pts, field)};
  row.n = row.module.piece[0].numerator.size();
  const long long n = static_cast<long long>(row.n);
  r.h0 = n;
  r.threshold = static_cast<int>(n - alpha - 1);
  r.dims = {{"h0_L", static_cast<long long>(h0(s, L))},
            {"condition_rows", static_cast<long long>(condition_count(std::vector<int>(gamma, 1)))},
            {"h0_H", n},
            {"h0_2L", static_cast<long long>(h0(s, 2 * L))},
            {"h0_2H", static_cast<long long>(row.module.piece[1].numerator.size())}};
  if (n != static_cast<long long>(h0(s, L)) - static_cast<long long>(gamma)) {
    throw std::logic_error("vanishing subspace has the wrong dimension despite independent conditions");
  }
  std::tie(row.p_lo, row.p_hi) = resolve_range(range, r.threshold, static_cast<int>(n));

  const auto& a1 = row.module.piece[0].numerator;
  const MultiplicationTable ambient = MultiplicationTable::from_function(
      field, row.n, row.module.piece[1].ambient_dim,
      [&](std::size_t i, std::size_t j) { return to_sparse(row.module.multiply_11(a1[i], a1[j])); });
  literal_checks(r, ambient, row.p_lo, row.p_hi);

  const ReductionOptions opt = reduction_for(options, r.seed);
  split_row(r, module_betti_row(row.module, row.p_lo, row.p_hi, opt));
  if (options.sharpness && r.threshold - 1 >= 1 && !r.informational.count(r.threshold - 1)) {
    const int q = r.threshold - 1;
    for (const KoszulTerm& t : module_betti_row(row.module, q, q, opt).terms) r.informational[t.p] = t.dim;
  }
  return row;
}

std::vector<std::pair<std::string, bool>> corollary4_hypotheses(int e, int k, int m, long long gamma) {
  return {
      {"e >= 0", e >= 0},
      {"k >= 4", k >= 4},
      {"m >= max((k-1)*e+2, k+2*e)", m >= std::max((k - 1) * e + 2, k + 2 * e)},
      {"0 <= gamma <= m-e-2-(k-2)*(e-1)",
       gamma >= 0 && gamma <= static_cast<long long>(m) - e - 2 - static_cast<long long>(k - 2) * (e - 1)},
  };
}

// Nodal curve, canonical model and its row. Hypotheses must already hold.
void canonical_row(VerificationReport& r, int e, int k, int m, long long gamma, const PrimeField& field,
                   const VerifyOptions& options, const RowRange& range = {}) {
  const HirzebruchSurface s(e);
  const DivisorClass X{k, m};
  const PointSet pts = random_points(s, static_cast<std::size_t>(gamma), field, derive_seed(r.seed, kPointStream));
  r.independence = imposes_independent(s, BlownUpClass::uniform(X, pts.size(), 2), pts, field);
  if (!r.independence) {
    r.verdict = Verdict::genericity_failure;
    r.message = "double points impose dependent conditions on H^0(X); rerun with another seed";
    return;
  }
  const NodalCurve curve = random_nodal_curve(s, k, m, pts, field, derive_seed(r.seed, kEquationStream));
  const CanonicalModel model = canonical_model(curve, field);
  const long long g = model.genus;
  r.h0 = g;
  r.threshold = static_cast<int>(g) - k + 1;
  r.dims = {{"h0_X", static_cast<long long>(h0(s, X))},
            {"singular_equations", static_cast<long long>(curve.solution_dim)},
            {"genus", g},
            {"dim_V", static_cast<long long>(model.V.dim())},
            {"dim_W", static_cast<long long>(model.dim_w)}};

  const ReductionOptions opt = reduction_for(options, r.seed);
  int lo = 0, hi = 0;
  if (range.p_min || range.p_max || range.fallback == RangeDefault::extended) {
    std::tie(lo, hi) = resolve_range(range, r.threshold, static_cast<int>(g));
    split_row(r, module_betti_row(model.module, lo, hi, opt));
  } else {
    const CurveRow row = canonical_betti_q1(model, opt);
    split_row(r, row.report);
    lo = std::max(1, r.threshold);
    hi = static_cast<int>(g) - 2;
  }
  literal_checks(r, model.mult, lo, hi);
  set_verdict(r, vanishes_from_threshold(r.betti_q1, r.threshold));
}

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::verified: return "verified";
    case Verdict::violated: return "violated";
    case Verdict::genericity_failure: return "genericity-failure";
    case Verdict::hypothesis_failure: return "hypothesis-failure";
    case Verdict::error: return "error";
  }
  return "error";
}

Verdict verdict_from_string(const std::string& name) {
  for (Verdict v : {Verdict::verified, Verdict::violated, Verdict::genericity_failure, Verdict::hypothesis_failure,
                    Verdict::error}) {
    if (to_string(v) == name) return v;
  }
  throw std::invalid_argument("unknown verdict '" + name + "'");
}

bool VerificationReport::hypotheses_hold() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.second; });
}

bool theorem2_hypotheses_hold(int e, int alpha, int beta, long long gamma) {
  const auto hs = theorem2_hypotheses(e, alpha, beta, gamma);
  return std::all_of(hs.begin(), hs.end(), [](const auto& h) { return h.second; });
}

VerificationReport verify_theorem2(int e, int alpha, int beta, long long gamma, const PrimeField& field,
                                   std::uint64_t seed, const VerifyOptions& options) {
  const Stopwatch clock;
  VerificationReport r =
      start_report("thm2", {{"e", e}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}}, field, seed);
  r.hypotheses = theorem2_hypotheses(e, alpha, beta, gamma);
  if (!r.hypotheses_hold()) {
    r.verdict = Verdict::hypothesis_failure;
    r.message = failed_hypotheses(r);
    r.elapsed_ms = clock.elapsed_ms();
    return r;
  }
  try {
    const HirzebruchSurface s(e);
    const PointSet pts = random_points(s, static_cast<std::size_t>(gamma), field, derive_seed(seed, kPointStream));
    if (surface_row(r, s, {alpha, beta}, alpha, pts, field, options)) {
      set_verdict(r, vanishes_from_threshold(r.betti_q1, r.threshold));
    }
  } catch (const GenericityError& ex) {
    r.verdict = Verdict::genericity_failure;
    r.message = ex.what();
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

VerificationReport verify_corollary4(int e, int k, int m, long long gamma, const PrimeField& field,
                                     std::uint64_t seed, const VerifyOptions& options) {
  const Stopwatch clock;
  VerificationReport r = start_report("cor4", {{"e", e}, {"k", k}, {"m", m}, {"gamma", gamma}}, field, seed);
  r.hypotheses = corollary4_hypotheses(e, k, m, gamma);
  if (!r.hypotheses_hold()) {
    r.verdict = Verdict::hypothesis_failure;
    r.message = failed_hypotheses(r);
    r.elapsed_ms = clock.elapsed_ms();
    return r;
  }
  try {
    canonical_row(r, e, k, m, gamma, field, options);
  } catch (const GenericityError& ex) {
    r.verdict = Verdict::genericity_failure;
    r.message = ex.what();
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

VerificationReport surface_betti_row(int e, int alpha, int beta, long long gamma, const PrimeField& field,
                                     std::uint64_t seed, std::optional<int> p_min, std::optional<int> p_max,
                                     const VerifyOptions& options) {
  if (e < 0 || alpha < 1 || beta < 0 || gamma < 0) {
    throw std::invalid_argument("need e >= 0, alpha >= 1, beta >= 0 and gamma >= 0");
  }
  const Stopwatch clock;
  VerificationReport r =
      start_report("betti", {{"e", e}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}}, field, seed);
  r.hypotheses = theorem2_hypotheses(e, alpha, beta, gamma);
  try {
    const HirzebruchSurface s(e);
    const PointSet pts = random_points(s, static_cast<std::size_t>(gamma), field, derive_seed(seed, kPointStream));
    if (surface_row(r, s, {alpha, beta}, alpha, pts, field, options, {p_min, p_max, RangeDefault::extended})) {
      set_verdict(r, vanishes_from_threshold(r.betti_q1, r.threshold));
      if (!r.hypotheses_hold()) {
        r.verdict = Verdict::hypothesis_failure;
        r.message = failed_hypotheses(r) + "; row computed anyway";
      }
    }
  } catch (const GenericityError& ex) {
    r.verdict = Verdict::genericity_failure;
    r.message = ex.what();
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

VerificationReport canonical_betti_row(int e, int k, int m, long long gamma, const PrimeField& field,
                                       std::uint64_t seed, std::optional<int> p_min, std::optional<int> p_max,
                                       const VerifyOptions& options) {
  if (!nodal_hypotheses_hold(e, k, m, gamma)) {
    throw std::invalid_argument("need k >= 4, m >= max((k-1)*e+2, k+2*e) and 0 <= gamma <= m-e-2-(k-2)*(e-1)");
  }
  const Stopwatch clock;
  VerificationReport r =
      start_report("betti-canonical", {{"e", e}, {"k", k}, {"m", m}, {"gamma", gamma}}, field, seed);
  r.hypotheses = corollary4_hypotheses(e, k, m, gamma);
  try {
    canonical_row(r, e, k, m, gamma, field, options, {p_min, p_max, RangeDefault::extended});
  } catch (const GenericityError& ex) {
    r.verdict = Verdict::genericity_failure;
    r.message = ex.what();
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

std::optional<Plan> plan_theorem1(int k, long long g) {
  if (k < 4 || g < static_cast<long long>(k) * (k - 1) / 2) return std::nullopt;
  // (k−1)(m−1−k/2) written over the integers; one of k−1 and 2m−2−k is even.
  auto value = [k](long long m) { return static_cast<long long>(k - 1) * (2 * m - 2 - k) / 2; };
  long long m = k + 2;
  while (value(m) < g) ++m;
  const Plan plan{static_cast<int>(m), value(m) - g};
  const long long step_bound = m == k + 2 ? k - 1 : k - 2;
  if (value(plan.m) - plan.gamma != g || plan.m < k + 2 || plan.gamma < 0 || plan.gamma > plan.m - 3 ||
      plan.gamma > step_bound) {
    throw std::logic_error("planner produced an inadmissible (m, gamma)");
  }
  return plan;
}

bool remark3_inequality(int e, int alpha, int beta) { return beta >= std::max(alpha * e, alpha + e); }

VerificationReport compare_surface_curve(int e, int alpha, int beta, long long gamma, const PrimeField& field,
                                         std::uint64_t seed, const VerifyOptions& options) {
  const Stopwatch clock;
  VerificationReport r =
      start_report("compare", {{"e", e}, {"alpha", alpha}, {"beta", beta}, {"gamma", gamma}}, field, seed);
  r.hypotheses = theorem2_hypotheses(e, alpha, beta, gamma);
  if (!r.hypotheses_hold()) {
    r.verdict = Verdict::hypothesis_failure;
    r.message = failed_hypotheses(r);
    r.elapsed_ms = clock.elapsed_ms();
    return r;
  }
  try {
    const HirzebruchSurface s(e);
    const PointSet pts = random_points(s, static_cast<std::size_t>(gamma), field, derive_seed(seed, kPointStream));
    const auto surface = surface_row(r, s, {alpha, beta}, alpha, pts, field, options);
    if (surface) {
      const CurveRow curve = smooth_restriction_koszul(s, alpha, beta, pts, field, derive_seed(seed, kCurveStream),
                                                       reduction_for(options, seed));
      for (const KoszulTerm& t : curve.report.terms)
        if (t.p >= surface->p_lo && t.p <= surface->p_hi) r.curve_q1[t.p] = t.dim;
      bool transfer = true;
      for (const auto& [p, dim] : r.curve_q1) transfer = transfer && (dim != 0 || r.betti_q1.at(p) == 0);
      const bool vanishing = vanishes_from_threshold(r.betti_q1, r.threshold) &&
                             vanishes_from_threshold(r.curve_q1, curve.threshold);
      set_verdict(r, vanishing && transfer);
      if (r.verdict == Verdict::violated && vanishing) r.message = "surface row is nonzero where the curve row vanishes";
    }
  } catch (const GenericityError& ex) {
    r.verdict = Verdict::genericity_failure;
    r.message = ex.what();
  }
  r.elapsed_ms = clock.elapsed_ms();
  return r;
}

std::vector<VerificationReport> run_grid(const GridConfig& config) {
  std::vector<VerificationReport> reports;
  for (std::uint32_t prime : config.primes) {
    const PrimeField field(prime);
    for (const GridItem& item : config.items) {
      for (std::uint64_t seed : config.seeds) {
        try {
          if (item.params.size() != 4) throw std::invalid_argument("grid item needs 4 parameters");
          const auto& q = item.params;
          const int a = static_cast<int>(q[0]), b = static_cast<int>(q[1]), c = static_cast<int>(q[2]);
          if (item.theorem == "thm2") {
            reports.push_back(verify_theorem2(a, b, c, q[3], field, seed, config.options));
          } else if (item.theorem == "cor4") {
            reports.push_back(verify_corollary4(a, b, c, q[3], field, seed, config.options));
          } else {
            throw std::invalid_argument("unknown theorem '" + item.theorem + "'");
          }
        } catch (const std::exception& ex) {
          VerificationReport r;
          r.theorem = item.theorem;
          for (std::size_t i = 0; i < item.params.size(); ++i) r.params.push_back({"p" + std::to_string(i), item.params[i]});
          r.prime = prime;
          r.seed = seed;
          r.verdict = Verdict::error;
          r.message = ex.what();
          reports.push_back(std::move(r));
        }
      }
    }
  }
  return reports;
}

std::vector<GridItem> theorem2_acceptance_grid() {
  std::vector<GridItem> items;
  for (int e = 0; e <= 2; ++e) {
    for (int alpha = 2; alpha <= 3; ++alpha) {
      const int beta0 = std::max(alpha * e, alpha + e);
      for (int beta = beta0; beta <= beta0 + 2; ++beta) {
        for (int gamma = 0; gamma <= beta - (e - 1) * alpha; ++gamma) items.push_back({"thm2", {e, alpha, beta, gamma}});
      }
    }
  }
  return items;
}

int aggregate_exit_code(const std::vector<VerificationReport>& reports) {
  auto any = [&](auto pred) { return std::any_of(reports.begin(), reports.end(), pred); };
  if (any([](const auto& r) { return r.verdict == Verdict::violated; })) return 2;
  if (any([](const auto& r) { return r.verdict == Verdict::genericity_failure; })) return 3;
  if (any([](const auto& r) { return r.verdict != Verdict::verified; })) return 1;
  return 0;
}

}  // namespace syzygy
