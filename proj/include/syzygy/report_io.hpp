#pragma once

// JSON, CSV and text renderings of verification reports.
//
// JSON keys, in order: theorem, params, prime, seed, h0, threshold, betti_q1,
// informational, [curve_q1,] hypotheses, checks {independence, d1_injective,
// d2_d1_zero, dims}, verdict, message, elapsed_ms. Betti maps are keyed by p as
// a decimal string. curve_q1 appears only when non-empty.

#include <string>
#include <vector>

#include "json.hpp"
#include "syzygy/verify.hpp"

namespace syzygy {

nlohmann::ordered_json report_to_json(const VerificationReport& report);
/// Throws std::invalid_argument on missing or unknown keys.
VerificationReport report_from_json(const nlohmann::ordered_json& json);

/// Two-space indented JSON with a trailing newline.
std::string render_json(const VerificationReport& report);
std::string render_json(const std::vector<VerificationReport>& reports);

/// Header "p,dim" and one row per computed p, informational values included.
std::string render_csv(const VerificationReport& report);
/// Header "index,theorem,params,prime,seed,p,dim,verdict" and one row per
/// (report, p); reports without Betti values get one row with p and dim empty.
std::string render_csv(const std::vector<VerificationReport>& reports);

/// Human-readable row with the threshold marked.
std::string render_text(const VerificationReport& report);
/// One summary line per report.
std::string render_summary(const std::vector<VerificationReport>& reports);

}  // namespace syzygy
