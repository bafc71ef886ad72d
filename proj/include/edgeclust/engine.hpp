#pragma once

#include "edgeclust/config.hpp"
#include "edgeclust/delay.hpp"
#include "edgeclust/policy.hpp"
#include "edgeclust/rng.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <variant>
#include <vector>

namespace edgeclust {

/// Sub-stream offset separating evaluation replications from training
/// episodes, which use the episode index directly.
inline constexpr std::uint64_t kEvaluationStreamBase = std::uint64_t{1} << 32;

/// One placement decision of the Q agent.
struct StepRecord {
    std::uint32_t step = 0;
    std::uint32_t device_id = 0;
    AgentState state;
    Action chosen = Action::Increment;
    Action executed = Action::Increment;  // Increment when a Decrement had no free VM
    int reward = 0;
    bool delayed = false;  // at the provisional cluster size
    bool forced = false;
    std::uint32_t vm_index = 0;
};

struct EpisodeOutcome {
    std::vector<Device> devices;
    std::vector<Cluster> clusters;           // non-empty clusters only
    std::vector<DelayReport> delay_reports;  // final sizes, same order as devices
    std::uint32_t clusters_used = 0;
    std::uint32_t delayed_count = 0;
    std::uint32_t forced_increments = 0;
    std::int64_t total_reward = 0;
    std::vector<StepRecord> steps;  // empty for the random baseline
};

struct RandomPolicy {};

struct QPolicy {
    QTable table;
    double epsilon = 0.0;
};

using Policy = std::variant<RandomPolicy, QPolicy>;

[[nodiscard]] std::string_view policy_name(const Policy& policy) noexcept;

/// Streams `batch` through `policy` in order.
///
/// For the Q policy each candidate sees (occupancy, class, vms_remaining) and
/// picks Increment (join the filling cluster) or Decrement (seal it and open
/// the next free VM). With no VM left, Decrement is coerced to Increment:
/// sealed clusters stay closed, so the device joins the filling one. The step reward
/// is booked on the executed action; it counts as delayed when some member of
/// the target cluster, candidate included, becomes late at the new size.
/// When `learn` is set the chosen action's value is updated; the last
/// device's transition is terminal.
///
/// Throws std::invalid_argument on an empty batch.
EpisodeOutcome run_episode(std::span<const Device> batch, Policy& policy, const ScenarioConfig& cfg, bool learn,
                           RngStream& rng);

struct TraceRow {
    std::uint32_t episode = 0;
    std::int64_t total_reward = 0;
    std::uint32_t clusters_used = 0;
    std::uint32_t delayed_count = 0;
    double epsilon = 0.0;
};

struct TrainingResult {
    QTable table;
    std::vector<TraceRow> trace;
};

/// Produces the batch for a training episode from its dedicated stream.
using BatchSource = std::function<std::vector<Device>(std::uint32_t episode, RngStream& rng)>;

/// Runs learn.episodes episodes with epsilon decaying multiplicatively per
/// episode. Episode k draws from RngStream(seed, k): substream 0 for the
/// batch, substream 1 for exploration.
[[nodiscard]] TrainingResult train(const ScenarioConfig& cfg);
[[nodiscard]] TrainingResult train(const ScenarioConfig& cfg, const BatchSource& batches);

/// Frozen-policy replications on fresh batches; replication k uses
/// RngStream(seed, 2^32 + k). The Q policy runs greedily.
[[nodiscard]] std::vector<EpisodeOutcome> evaluate(const Policy& policy, const ScenarioConfig& cfg,
                                                   std::uint32_t replications);

/// CSV `step,device_id,state_occ,state_class,state_vms,action,reward,delayed,forced`.
void write_episode_log(std::ostream& out, const EpisodeOutcome& outcome);

/// CSV `episode,total_reward,clusters_used,delayed_count,epsilon`.
void write_training_trace(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace edgeclust
