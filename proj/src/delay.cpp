#include "edgeclust/delay.hpp"

namespace edgeclust {

DelayReport device_delay(const Device& device, std::uint32_t cluster_size, const VmSpec& vm, double radio_rate_bps) {
    const double bits = static_cast<double>(device.packet_bits);
    DelayReport r;
    r.device_id = device.id;
    // Scale to ms before dividing so round figures stay exact.
    r.transmission_ms = bits * 1000.0 / radio_rate_bps;
    r.processing_ms = bits * static_cast<double>(cluster_size) * 1000.0 / vm.capacity_bps;
    r.total_ms = r.transmission_ms + r.processing_ms;
    r.delayed = r.total_ms > device.deadline_ms;
    return r;
}

std::vector<DelayReport> cluster_delays(std::span<const Device> members, const VmSpec& vm, double radio_rate_bps) {
    std::vector<DelayReport> out;
    out.reserve(members.size());
    const auto n = static_cast<std::uint32_t>(members.size());
    for (const auto& d : members) {
        out.push_back(device_delay(d, n, vm, radio_rate_bps));
    }
    return out;
}

}  // namespace edgeclust
