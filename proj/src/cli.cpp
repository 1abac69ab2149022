#include "syzygy/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "syzygy/curves.hpp"
#include "syzygy/random.hpp"
#include "syzygy/report_io.hpp"
#include "syzygy/verify.hpp"

namespace syzygy {
namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::optional<std::uint32_t> prime;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::string output;
  bool reproducible = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--prime", o.prime, "Field characteristic (default: $SYZYGY_PRIME or 32003)");
  cmd->add_option("--seed", o.seed, "Random seed; drawn and printed when missing");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--output", o.output, "Write the report here instead of stdout");
  cmd->add_flag("--reproducible", o.reproducible, "Write elapsed_ms as 0 so identical runs give identical bytes");
}

PrimeField resolve_field(const CommonOptions& o) {
  std::uint64_t p = kDefaultPrime;
  if (o.prime) {
    p = *o.prime;
  } else if (const char* env = std::getenv("SYZYGY_PRIME"); env && *env) {
    std::size_t used = 0;
    try {
      p = std::stoull(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0') throw UsageError(std::string("SYZYGY_PRIME is not a number: ") + env);
  }
  if (p > 0xFFFFFFFFull) throw UsageError("prime " + std::to_string(p) + " does not fit in 32 bits");
  try {
    return PrimeField(static_cast<std::uint32_t>(p));
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
}

std::uint64_t draw_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::uint64_t resolve_seed(const CommonOptions& o, std::ostream& err) {
  if (o.seed) return *o.seed;
  const std::uint64_t seed = draw_seed();
  err << "seed: " << seed << " (drawn; pass --seed " << seed << " to reproduce)\n";
  return seed;
}

void emit(const CommonOptions& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw UsageError("cannot open " + o.output + " for writing");
  file << text;
  if (!file) throw UsageError("failed writing " + o.output);
}

void emit_report(const CommonOptions& o, VerificationReport report, std::ostream& out) {
  if (o.reproducible) report.elapsed_ms = 0;
  if (o.format == "json") {
    emit(o, render_json(report), out);
  } else if (o.format == "csv") {
    emit(o, render_csv(report), out);
  } else {
    emit(o, render_text(report), out);
  }
}

int exit_code_for(const VerificationReport& r, std::ostream& err) {
  switch (r.verdict) {
    case Verdict::verified: return kExitOk;
    case Verdict::violated:
      err << "violated: " << r.message << "\n";
      return kExitViolated;
    case Verdict::genericity_failure:
      err << "genericity failure: " << r.message << "\n";
      return kExitGenericity;
    case Verdict::hypothesis_failure:
      err << "hypothesis failure: " << r.message << "\n";
      return kExitUsage;
    case Verdict::error:
      err << "error: " << r.message << "\n";
      return kExitUsage;
  }
  return kExitUsage;
}

void reject_unknown(const ordered_json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw UsageError(where + ": unknown key '" + key + "'");
}

GridConfig parse_grid_config(const std::string& path, const PrimeField& default_field, const CommonOptions& o,
                             std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read grid config " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("grid config is not valid JSON: " + std::string(ex.what()));
  }
  reject_unknown(j, {"items", "seeds", "primes", "sharpness", "theorem2_acceptance_grid"}, "grid config");
  GridConfig config;
  try {
    if (j.contains("items")) {
      for (const auto& item : j.at("items")) {
        reject_unknown(item, {"theorem", "params"}, "grid item");
        GridItem g{item.at("theorem").get<std::string>(), item.at("params").get<std::vector<long long>>()};
        if (g.theorem != "thm2" && g.theorem != "cor4") throw UsageError("grid item: theorem must be thm2 or cor4");
        if (g.params.size() != 4) throw UsageError("grid item: params needs 4 integers");
        config.items.push_back(std::move(g));
      }
    }
    if (j.value("theorem2_acceptance_grid", false)) {
      for (auto& item : theorem2_acceptance_grid()) config.items.push_back(std::move(item));
    }
    if (j.contains("seeds")) config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("primes")) config.primes = j.at("primes").get<std::vector<std::uint32_t>>();
    config.options.sharpness = j.value("sharpness", false);
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("grid config: " + std::string(ex.what()));
  }
  if (!j.contains("primes")) config.primes = {default_field.modulus()};
  for (std::uint32_t p : config.primes) {
    try {
      PrimeField check(p);
    } catch (const std::invalid_argument& ex) {
      throw UsageError(std::string("grid config: ") + ex.what());
    }
  }
  if (!j.contains("seeds")) config.seeds = {resolve_seed(o, err)};
  return config;
}

struct SurfaceArgs {
  int e = 0;
  int alpha = 0;
  int beta = 0;
  long long gamma = 0;
};

struct CurveArgs {
  int e = 0;
  int k = 0;
  int m = 0;
  long long gamma = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Koszul cohomology K_{p,1} on blown-up Hirzebruch surfaces and nodal curves", "syzygy"};
  app.require_subcommand(1);

  // betti
  CommonOptions betti_opts;
  SurfaceArgs betti_surface;
  CurveArgs betti_curve;
  bool canonical = false;
  std::optional<int> p_min, p_max;
  CLI::App* betti = app.add_subcommand("betti", "Print the q = 1 Betti row with the vanishing threshold marked");
  add_common(betti, betti_opts);
  betti->add_flag("--canonical", canonical, "Canonical row of a nodal curve (needs --k, --m)");
  betti->add_option("--e", betti_surface.e, "Hirzebruch index e")->required();
  betti->add_option("--alpha", betti_surface.alpha, "Coefficient of C0");
  betti->add_option("--beta", betti_surface.beta, "Coefficient of f");
  betti->add_option("--k", betti_curve.k, "Curve class coefficient of C0");
  betti->add_option("--m", betti_curve.m, "Curve class coefficient of f");
  betti->add_option("--gamma", betti_surface.gamma, "Number of points / nodes")->required();
  betti->add_option("--p-min", p_min, "First p (default: one below the threshold)");
  betti->add_option("--p-max", p_max, "Last p (default: dim V - 1)");

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Run a theorem harness and report a verdict");
  verify->require_subcommand(1);
  CommonOptions thm2_opts, cor4_opts, compare_opts, grid_opts;
  SurfaceArgs thm2_args, compare_args;
  CurveArgs cor4_args;
  bool thm2_sharpness = false, compare_sharpness = false;
  CLI::App* thm2 = verify->add_subcommand("thm2", "Vanishing of K_{p,1} for sections of aC0+bf through gamma points");
  add_common(thm2, thm2_opts);
  thm2->add_option("--e", thm2_args.e)->required();
  thm2->add_option("--alpha", thm2_args.alpha)->required();
  thm2->add_option("--beta", thm2_args.beta)->required();
  thm2->add_option("--gamma", thm2_args.gamma)->required();
  thm2->add_flag("--sharpness", thm2_sharpness, "Also report K_{p,1} one below the claimed range");
  CLI::App* cor4 = verify->add_subcommand("cor4", "Canonical vanishing for the normalization of a nodal curve");
  add_common(cor4, cor4_opts);
  cor4->add_option("--e", cor4_args.e)->required();
  cor4->add_option("--k", cor4_args.k)->required();
  cor4->add_option("--m", cor4_args.m)->required();
  cor4->add_option("--gamma", cor4_args.gamma)->required();
  CLI::App* compare = verify->add_subcommand("compare", "Surface row next to the row of a smooth member");
  add_common(compare, compare_opts);
  compare->add_option("--e", compare_args.e)->required();
  compare->add_option("--alpha", compare_args.alpha)->required();
  compare->add_option("--beta", compare_args.beta)->required();
  compare->add_option("--gamma", compare_args.gamma)->required();
  compare->add_flag("--sharpness", compare_sharpness, "Also report K_{p,1} one below the claimed range");
  std::string grid_config;
  bool grid_acceptance = false;
  CLI::App* grid = verify->add_subcommand("grid", "Run a list of harnesses from a JSON config");
  add_common(grid, grid_opts);
  grid->add_option("--config", grid_config, "JSON with keys items, seeds, primes, sharpness, theorem2_acceptance_grid");
  grid->add_flag("--acceptance", grid_acceptance, "The built-in thm2 grid with seeds 1, 2, 3");

  // plan
  CommonOptions plan_opts;
  int plan_k = 0;
  long long plan_g = 0;
  CLI::App* plan = app.add_subcommand("plan", "Nodal model on Sigma_1 for gonality k and genus g");
  plan->add_option("--k", plan_k, "Gonality")->required();
  plan->add_option("--g", plan_g, "Genus")->required();
  plan->add_option("--format", plan_opts.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  plan->add_option("--output", plan_opts.output, "Write here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*betti) {
      const PrimeField field = resolve_field(betti_opts);
      VerificationReport r;
      if (canonical) {
        if (betti->count("--k") == 0 || betti->count("--m") == 0) throw UsageError("--canonical needs --k and --m");
        if (betti->count("--alpha") || betti->count("--beta")) throw UsageError("--canonical takes --k/--m, not --alpha/--beta");
        if (!nodal_hypotheses_hold(betti_surface.e, betti_curve.k, betti_curve.m, betti_surface.gamma)) {
          throw UsageError("nodal curve hypotheses fail: need k >= 4, m >= max((k-1)e+2, k+2e), "
                           "0 <= gamma <= m-e-2-(k-2)(e-1)");
        }
        const std::uint64_t seed = resolve_seed(betti_opts, err);
        r = canonical_betti_row(betti_surface.e, betti_curve.k, betti_curve.m, betti_surface.gamma, field, seed, p_min,
                                p_max);
      } else {
        if (betti->count("--alpha") == 0 || betti->count("--beta") == 0) throw UsageError("betti needs --alpha and --beta");
        if (betti->count("--k") || betti->count("--m")) throw UsageError("--k/--m need --canonical");
        const std::uint64_t seed = resolve_seed(betti_opts, err);
        r = surface_betti_row(betti_surface.e, betti_surface.alpha, betti_surface.beta, betti_surface.gamma, field, seed,
                              p_min, p_max);
      }
      emit_report(betti_opts, r, out);
      if (r.verdict == Verdict::genericity_failure) return exit_code_for(r, err);
      if (r.verdict == Verdict::hypothesis_failure) err << "note: " << r.message << "\n";
      return kExitOk;
    }

    if (*thm2 || *cor4 || *compare) {
      const CommonOptions& o = *thm2 ? thm2_opts : *cor4 ? cor4_opts : compare_opts;
      const PrimeField field = resolve_field(o);
      const std::uint64_t seed = resolve_seed(o, err);
      VerifyOptions vopt;
      VerificationReport r;
      if (*thm2) {
        vopt.sharpness = thm2_sharpness;
        r = verify_theorem2(thm2_args.e, thm2_args.alpha, thm2_args.beta, thm2_args.gamma, field, seed, vopt);
      } else if (*cor4) {
        r = verify_corollary4(cor4_args.e, cor4_args.k, cor4_args.m, cor4_args.gamma, field, seed, vopt);
      } else {
        vopt.sharpness = compare_sharpness;
        r = compare_surface_curve(compare_args.e, compare_args.alpha, compare_args.beta, compare_args.gamma, field, seed,
                                  vopt);
      }
      emit_report(o, r, out);
      return exit_code_for(r, err);
    }

    if (*grid) {
      if (grid_config.empty() == !grid_acceptance) throw UsageError("verify grid needs exactly one of --config, --acceptance");
      const PrimeField field = resolve_field(grid_opts);
      GridConfig config;
      if (grid_acceptance) {
        config.items = theorem2_acceptance_grid();
        config.seeds = {1, 2, 3};
        config.primes = {field.modulus()};
      } else {
        config = parse_grid_config(grid_config, field, grid_opts, err);
      }
      std::vector<VerificationReport> reports = run_grid(config);
      if (grid_opts.reproducible)
        for (auto& r : reports) r.elapsed_ms = 0;
      if (grid_opts.format == "json") {
        emit(grid_opts, render_json(reports), out);
      } else if (grid_opts.format == "csv") {
        emit(grid_opts, render_csv(reports), out);
      } else {
        emit(grid_opts, render_summary(reports), out);
      }
      const int code = aggregate_exit_code(reports);
      if (code != kExitOk) err << "grid: not every report is verified\n";
      return code;
    }

    if (*plan) {
      const auto result = plan_theorem1(plan_k, plan_g);
      if (!result) {
        if (plan_k < 4) throw UsageError("plan needs k >= 4");
        throw UsageError("no nodal model: g = " + std::to_string(plan_g) + " is below k(k-1)/2 = " +
                         std::to_string(static_cast<long long>(plan_k) * (plan_k - 1) / 2));
      }
      const long long value = static_cast<long long>(plan_k - 1) * (2LL * result->m - 2 - plan_k) / 2;
      std::ostringstream text;
      if (plan_opts.format == "json") {
        ordered_json j;
        j["k"] = plan_k;
        j["g"] = plan_g;
        j["e"] = 1;
        j["m"] = result->m;
        j["gamma"] = result->gamma;
        text << j.dump(2) << "\n";
      } else {
        text << "m=" << result->m << " gamma=" << result->gamma << "\n";
        text << "check: (k-1)(m-1-k/2) - gamma = " << plan_k - 1 << "*(" << 2 * result->m - 2 - plan_k << ")/2 - "
             << result->gamma << " = " << value - result->gamma << " = g\n";
        text << "curve class " << plan_k << "C0 + " << result->m << "f on Sigma_1 with " << result->gamma << " nodes\n";
      }
      emit(plan_opts, text.str(), out);
      return kExitOk;
    }
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const GenericityError& ex) {
    err << "genericity failure: " << ex.what() << "\n";
    return kExitGenericity;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace syzygy
