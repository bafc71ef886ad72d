#pragma once

#include "edgeclust/config.hpp"
#include "edgeclust/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace edgeclust {

enum class Action : std::uint8_t { Increment, Decrement };

[[nodiscard]] std::string_view to_string(Action a) noexcept;

/// What the clustering agent observes before placing a candidate device.
struct AgentState {
    std::uint32_t occupancy = 0;  // members of the filling cluster, saturated at the cap
    DelayLabel candidate_class = DelayLabel::Strict;
    std::uint32_t vms_remaining = 0;

    bool operator==(const AgentState&) const = default;
};

/// Dense state-action value table. Unvisited entries read as 0.
class QTable {
public:
    QTable() = default;
    QTable(std::uint32_t max_occupancy, std::uint32_t vm_count);

    [[nodiscard]] std::uint32_t max_occupancy() const noexcept { return max_occupancy_; }
    [[nodiscard]] std::uint32_t vm_count() const noexcept { return vm_count_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    /// Clamps occupancy to the cap; throws std::out_of_range when
    /// vms_remaining exceeds vm_count.
    [[nodiscard]] double value(const AgentState& s, Action a) const;
    void set(const AgentState& s, Action a, double v);
    [[nodiscard]] double max_value(const AgentState& s) const;

    [[nodiscard]] std::span<const double> raw() const noexcept { return values_; }

    /// CSV `occupancy,class,vms_remaining,action,q_value`, every entry, fixed
    /// order, shortest round-trip number formatting.
    void write_csv(std::ostream& out) const;
    [[nodiscard]] static QTable read_csv(std::istream& in);

    bool operator==(const QTable&) const = default;

private:
    [[nodiscard]] std::size_t index(const AgentState& s, Action a) const;

    std::uint32_t max_occupancy_ = 0;
    std::uint32_t vm_count_ = 0;
    std::vector<double> values_;
};

/// One-step Q-learning:
///   Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') - Q(s,a))
/// with the bootstrap term dropped when `terminal`.
void q_update(QTable& q, const AgentState& s, Action a, double reward, const AgentState& s_next, bool terminal,
              double alpha, double gamma);

[[nodiscard]] int reward(Action a, bool delayed_occurred, const RewardTable& table);

/// Epsilon-greedy. Greedy ties go to Increment. No draw is consumed when
/// epsilon is 0.
[[nodiscard]] Action select_action(const QTable& q, const AgentState& s, double epsilon, RngStream& rng);

/// Baseline: each device lands on a VM drawn uniformly from 0..count-1.
/// Returns one cluster per VM in index order; empty clusters are unused VMs.
[[nodiscard]] std::vector<Cluster> random_assign(std::span<const Device> devices, const VmSpec& vm, RngStream& rng);

}  // namespace edgeclust
