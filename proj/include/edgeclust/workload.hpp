#pragma once

#include "edgeclust/config.hpp"
#include "edgeclust/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace edgeclust {

/// Packet size in bits, uniform on [packet_min_bits, packet_max_bits].
std::uint64_t sample_packet_size(RngStream& rng, const WorkloadSpec& workload = {});

/// Deadline in ms, uniform on the closed band of `cls`.
double sample_deadline(RngStream& rng, const DelayClass& cls);

/// `cfg.device_count` devices with ids 0..n-1 in arrival order. Each device
/// consumes exactly three draws (class, packet, deadline), so batches that
/// differ only in class_mix share packet sizes and deadline quantiles.
std::vector<Device> generate_batch(const ScenarioConfig& cfg, RngStream& rng);

/// CSV with header `id,packet_bits,deadline_ms,class`.
void write_batch_csv(std::ostream& out, std::span<const Device> devices);

}  // namespace edgeclust
