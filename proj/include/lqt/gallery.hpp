#pragma once

#include "lqt/sequence.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace lqt {

struct PlanStep {
    enum class Kind { Monomial, Rescale, Argmin };

    Kind kind = Kind::Monomial;
    // Monomial: direction and run length.
    Direction dir = 0;
    Integer repeat = 1;
    // Rescale: optional direction of the translated transform and the frame
    // it installs.
    std::optional<Direction> rescale_dir;
    std::vector<ValueVector> values;
    // Argmin: number of steps; on a tied minimum either fail or, with
    // reset_on_tie, rescale in the first tied direction back to the initial
    // frame.
    std::size_t count = 0;
    bool reset_on_tie = false;

    static PlanStep monomial(Direction dir, Integer repeat = 1);
    static PlanStep rescale(std::optional<Direction> dir, std::vector<ValueVector> values);
    static PlanStep argmin(std::size_t count, bool reset_on_tie = false);
};

enum class ScenarioKind { ShannonType, NotUnionRR1, Divergent2, Divergent3, Dvr, RandomIndependent, Custom };

// Expected partial sum once plan step `after` has been replayed.
struct Checkpoint {
    std::size_t after = 0;
    Rational partial_sum;
};

// A plan step whose terms (a run of equal m-values) must sum to `sum`.
struct TermGroup {
    std::size_t plan_index = 0;
    Rational sum;
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::Custom;
    ParameterFrame frame;
    std::vector<PlanStep> plan;

    std::vector<Checkpoint> checkpoints;
    std::optional<Rational> limit;
    std::vector<TermGroup> groups;
    // Coordinate that is never a direction (embedded examples).
    std::optional<Direction> idle_direction;
    // Random scenarios: number of steps after which the frame is known to
    // be below 10^-6.
    std::optional<std::size_t> small_by_step;
};

// Called after every transform (each argmin step, each plan step otherwise).
using ReplayObserver = std::function<void(const SequenceState&, std::size_t plan_index)>;

SequenceState replay(const Scenario& scenario, const ReplayObserver& observer = {});

// Default episode count used by the presets.
inline constexpr std::size_t kDefaultEpisodes = 20;

Scenario gen_shannon_418(std::size_t episodes);
Scenario gen_notunion_rr1(std::size_t steps, bool embed3d);
Scenario gen_713(std::size_t episodes, bool embed3d = false);
Scenario gen_714(std::size_t episodes);
Scenario gen_dvr(std::size_t d, std::size_t steps = 10000);

// Frame over {1, sqrt(p), ...} that an argmin run drives below 10^-6 within
// the first `small_by_step` steps, followed by `steps` argmin steps in all.
Scenario gen_random_independent(std::size_t d, std::uint64_t seed, std::size_t steps = 10000);

// Values c * sqrt(p) (one slot rational) scaled into [1, 2); used for the
// v-ideal chains.
ParameterFrame random_unit_frame(std::size_t d, std::uint64_t seed);

std::vector<std::string> list_presets();

// Preset by name; `steps` means episodes for the episodic examples.
Scenario preset(const std::string& name, std::optional<std::size_t> steps = std::nullopt,
                std::uint64_t seed = 1);

} // namespace lqt
