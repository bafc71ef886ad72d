#pragma once

#include "edgeclust/config.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace edgeclust {

struct DelayReport {
    std::uint32_t device_id = 0;
    double transmission_ms = 0.0;
    double processing_ms = 0.0;
    double total_ms = 0.0;
    bool delayed = false;

    bool operator==(const DelayReport&) const = default;
};

/// Completion delay of `device` when it shares one VM with `cluster_size - 1`
/// other devices under egalitarian processor sharing:
///
///   transmission = bits / radio_rate
///   processing   = bits * cluster_size / capacity
///
/// A device is delayed iff total > deadline; finishing exactly on the
/// deadline is on time. Cluster-head relay cost is not modeled.
[[nodiscard]] DelayReport device_delay(const Device& device, std::uint32_t cluster_size, const VmSpec& vm,
                                       double radio_rate_bps);

/// device_delay for every member with cluster_size = members.size(); order
/// is preserved.
[[nodiscard]] std::vector<DelayReport> cluster_delays(std::span<const Device> members, const VmSpec& vm,
                                                      double radio_rate_bps);

}  // namespace edgeclust
