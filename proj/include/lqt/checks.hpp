#pragma once

#include "lqt/gallery.hpp"
#include "lqt/scenario_io.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lqt {

enum class Verdict { Pass, Fail, NotApplicable };

std::string verdict_name(Verdict v);

struct CheckOutcome {
    std::string name;
    Verdict verdict = Verdict::NotApplicable;
    std::string summary;
    Json witness;
};

// Per-check knobs. Defaults follow the acceptance runs.
struct CheckOptions {
    std::size_t window = 50;                 // switching-witness without an idle direction
    // Default: f = second variable, g = first variable.
    std::optional<Monomial> ratio_f;
    std::optional<Monomial> ratio_g;
    Rational ratio_eps{1, 1000};
    std::size_t ratio_steps = 60;
    std::size_t chain_length = 50;
    Exponent contraction_degree = 5;
    std::size_t tau_chain = 20;
    std::size_t prefix_limit = 512;          // change-of-direction prefixes
    std::size_t word_limit = 100000;         // longest monomial word materialized
};

struct RunConfig {
    Scenario scenario;
    std::vector<std::string> checks;         // empty: trace only
    CheckOptions options;
    Rational interval_width{1, 1000000};
    std::size_t trace_limit = 2000;          // rows kept in the JSON report
    bool timings = false;
};

// Config file schema:
//   {"preset": NAME} or an inline scenario (see scenario_from_json), plus
//   "mode": "argmin" | "scripted", "steps", "seed", "checks", "options",
//   "output": {"interval_width": "1/1000000", "trace_limit": 2000}.
// In argmin mode without a plan the plan is `steps` argmin steps.
// `steps` and `seed` overrides win over the file.
RunConfig config_from_json(const Json& j, std::optional<std::size_t> steps = std::nullopt,
                           std::optional<std::uint64_t> seed = std::nullopt);

struct RunReport {
    Json document;
    std::vector<CheckOutcome> outcomes;
    bool all_pass() const;
};

// Replays the scenario, runs the requested checks and builds the report.
// Writes one CSV row per history record to `csv` when given.
RunReport run(const RunConfig& config, std::ostream* csv = nullptr);

inline constexpr const char* kCsvHeader = "step,kind,dir,m_lo,m_hi,E_lo,E_hi";

std::vector<std::string> check_names();

// One paragraph on what the check verifies. Throws UnknownCheck.
std::string explain(const std::string& check);

// The d frame values have linearly independent coefficient vectors over the
// basis; with the basis contract this certifies rational independence.
bool certified_independent(const ParameterFrame& frame);

} // namespace lqt
