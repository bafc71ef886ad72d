#include "edgeclust/engine.hpp"

#include "edgeclust/format.hpp"
#include "edgeclust/workload.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace edgeclust {

std::string_view policy_name(const Policy& policy) noexcept {
    return std::holds_alternative<RandomPolicy>(policy) ? "random" : "rl";
}

namespace {

// Members are batch positions, not device ids.
using Partition = std::vector<std::vector<std::size_t>>;

void finalize(EpisodeOutcome& out, const Partition& partition, std::span<const Device> batch,
              const ScenarioConfig& cfg) {
    out.devices.assign(batch.begin(), batch.end());
    out.delay_reports.assign(batch.size(), DelayReport{});
    out.clusters.clear();
    for (std::size_t v = 0; v < partition.size(); ++v) {
        const auto& members = partition[v];
        if (members.empty()) {
            continue;
        }
        Cluster c;
        c.vm_index = static_cast<std::uint32_t>(v);
        const auto n = static_cast<std::uint32_t>(members.size());
        for (auto pos : members) {
            c.member_ids.push_back(batch[pos].id);
            out.delay_reports[pos] = device_delay(batch[pos], n, cfg.vm, cfg.radio_rate_bps);
        }
        out.clusters.push_back(std::move(c));
    }
    out.clusters_used = static_cast<std::uint32_t>(out.clusters.size());
    out.delayed_count = static_cast<std::uint32_t>(
        std::count_if(out.delay_reports.begin(), out.delay_reports.end(), [](const auto& r) { return r.delayed; }));
}

EpisodeOutcome run_random(std::span<const Device> batch, const ScenarioConfig& cfg, RngStream& rng) {
    const auto assigned = random_assign(batch, cfg.vm, rng);
    std::unordered_map<std::uint32_t, std::size_t> position;
    for (std::size_t pos = 0; pos < batch.size(); ++pos) {
        position.emplace(batch[pos].id, pos);
    }
    Partition partition(assigned.size());
    for (std::size_t v = 0; v < assigned.size(); ++v) {
        for (auto id : assigned[v].member_ids) {
            partition[v].push_back(position.at(id));
        }
    }
    EpisodeOutcome out;
    finalize(out, partition, batch, cfg);
    return out;
}

// True when adding `candidate` to `members` makes any of them, or the
// candidate itself, late at the enlarged size.
bool joining_causes_delay(const std::vector<std::size_t>& members, std::size_t candidate,
                          std::span<const Device> batch, const ScenarioConfig& cfg) {
    const auto old_size = static_cast<std::uint32_t>(members.size());
    const auto new_size = old_size + 1;
    if (device_delay(batch[candidate], new_size, cfg.vm, cfg.radio_rate_bps).delayed) {
        return true;
    }
    for (auto pos : members) {
        const bool before = device_delay(batch[pos], old_size, cfg.vm, cfg.radio_rate_bps).delayed;
        const bool after = device_delay(batch[pos], new_size, cfg.vm, cfg.radio_rate_bps).delayed;
        if (after && !before) {
            return true;
        }
    }
    return false;
}

EpisodeOutcome run_q(std::span<const Device> batch, QPolicy& policy, const ScenarioConfig& cfg, bool learn,
                     RngStream& rng) {
    const std::uint32_t cap = cfg.learn.max_occupancy_state;
    Partition partition;
    std::optional<std::size_t> filling;

    auto observe = [&](std::size_t pos) {
        AgentState s;
        s.occupancy = filling ? std::min<std::uint32_t>(static_cast<std::uint32_t>(partition[*filling].size()), cap)
                              : 0;
        s.candidate_class = batch[pos].delay_class;
        s.vms_remaining = cfg.vm.count - static_cast<std::uint32_t>(partition.size());
        return s;
    };

    EpisodeOutcome out;
    out.steps.reserve(batch.size());
    for (std::size_t pos = 0; pos < batch.size(); ++pos) {
        StepRecord rec;
        rec.step = static_cast<std::uint32_t>(pos);
        rec.device_id = batch[pos].id;
        rec.state = observe(pos);
        rec.chosen = select_action(policy.table, rec.state, policy.epsilon, rng);
        rec.executed = rec.chosen;

        std::size_t target = 0;
        if (!filling) {
            // First device: either action opens the first cluster.
            partition.emplace_back();
            target = partition.size() - 1;
        } else if (rec.chosen == Action::Increment) {
            target = *filling;
        } else if (rec.state.vms_remaining > 0) {
            partition.emplace_back();
            target = partition.size() - 1;
        } else {
            rec.forced = true;
            rec.executed = Action::Increment;
            // Sealed clusters stay closed, so the filling one is the only open cluster.
            target = *filling;
            ++out.forced_increments;
        }
        filling = target;

        rec.delayed = joining_causes_delay(partition[target], pos, batch, cfg);
        partition[target].push_back(pos);
        rec.vm_index = static_cast<std::uint32_t>(target);
        rec.reward = reward(rec.executed, rec.delayed, cfg.rewards);
        out.total_reward += rec.reward;

        if (learn) {
            const bool terminal = pos + 1 == batch.size();
            const AgentState next = terminal ? rec.state : observe(pos + 1);
            q_update(policy.table, rec.state, rec.chosen, rec.reward, next, terminal, cfg.learn.alpha,
                     cfg.learn.gamma);
        }
        out.steps.push_back(rec);
    }
    finalize(out, partition, batch, cfg);
    return out;
}

}  // namespace

EpisodeOutcome run_episode(std::span<const Device> batch, Policy& policy, const ScenarioConfig& cfg, bool learn,
                           RngStream& rng) {
    if (batch.empty()) {
        throw std::invalid_argument("run_episode: empty batch");
    }
    if (auto* q = std::get_if<QPolicy>(&policy)) {
        return run_q(batch, *q, cfg, learn, rng);
    }
    return run_random(batch, cfg, rng);
}

TrainingResult train(const ScenarioConfig& cfg) {
    return train(cfg, [&cfg](std::uint32_t, RngStream& rng) { return generate_batch(cfg, rng); });
}

TrainingResult train(const ScenarioConfig& cfg, const BatchSource& batches) {
    Policy policy = QPolicy{QTable(cfg.learn.max_occupancy_state, cfg.vm.count), cfg.learn.epsilon_start};
    auto& agent = std::get<QPolicy>(policy);
    TrainingResult result;
    result.trace.reserve(cfg.learn.episodes);
    for (std::uint32_t ep = 0; ep < cfg.learn.episodes; ++ep) {
        const RngStream stream(cfg.seed, ep);
        auto batch_rng = stream.substream(0);
        auto policy_rng = stream.substream(1);
        const auto batch = batches(ep, batch_rng);
        const auto outcome = run_episode(batch, policy, cfg, true, policy_rng);
        result.trace.push_back({ep, outcome.total_reward, outcome.clusters_used, outcome.delayed_count, agent.epsilon});
        agent.epsilon = std::max(cfg.learn.epsilon_end, agent.epsilon * cfg.learn.epsilon_decay);
    }
    result.table = std::move(agent.table);
    return result;
}

std::vector<EpisodeOutcome> evaluate(const Policy& policy, const ScenarioConfig& cfg, std::uint32_t replications) {
    Policy frozen = policy;
    if (auto* q = std::get_if<QPolicy>(&frozen)) {
        q->epsilon = 0.0;
    }
    std::vector<EpisodeOutcome> outcomes;
    outcomes.reserve(replications);
    for (std::uint32_t rep = 0; rep < replications; ++rep) {
        const RngStream stream(cfg.seed, kEvaluationStreamBase + rep);
        auto batch_rng = stream.substream(0);
        auto policy_rng = stream.substream(1);
        const auto batch = generate_batch(cfg, batch_rng);
        outcomes.push_back(run_episode(batch, frozen, cfg, false, policy_rng));
    }
    return outcomes;
}

void write_episode_log(std::ostream& out, const EpisodeOutcome& outcome) {
    out << "step,device_id,state_occ,state_class,state_vms,action,reward,delayed,forced\n";
    for (const auto& s : outcome.steps) {
        out << s.step << ',' << s.device_id << ',' << s.state.occupancy << ',' << to_string(s.state.candidate_class)
            << ',' << s.state.vms_remaining << ',' << to_string(s.executed) << ',' << s.reward << ','
            << (s.delayed ? 1 : 0) << ',' << (s.forced ? 1 : 0) << '\n';
    }
}

void write_training_trace(std::ostream& out, std::span<const TraceRow> trace) {
    out << "episode,total_reward,clusters_used,delayed_count,epsilon\n";
    for (const auto& r : trace) {
        out << r.episode << ',' << r.total_reward << ',' << r.clusters_used << ',' << r.delayed_count << ','
            << format_number(r.epsilon) << '\n';
    }
}

}  // namespace edgeclust
