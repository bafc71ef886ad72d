#include "edgeclust/workload.hpp"

#include "edgeclust/format.hpp"

#include <ostream>

namespace edgeclust {

std::uint64_t sample_packet_size(RngStream& rng, const WorkloadSpec& workload) {
    return rng.uniform_int(workload.packet_min_bits, workload.packet_max_bits);
}

double sample_deadline(RngStream& rng, const DelayClass& cls) {
    return rng.uniform(cls.deadline_low_ms, cls.deadline_high_ms);
}

std::vector<Device> generate_batch(const ScenarioConfig& cfg, RngStream& rng) {
    std::vector<Device> batch;
    batch.reserve(cfg.device_count);
    for (std::uint32_t id = 0; id < cfg.device_count; ++id) {
        const auto label = rng.bernoulli(cfg.class_mix) ? DelayLabel::Strict : DelayLabel::Lenient;
        const auto bits = sample_packet_size(rng, cfg.workload);
        const auto deadline = sample_deadline(rng, cfg.workload.delay_class(label));
        batch.push_back({id, bits, deadline, label});
    }
    return batch;
}

void write_batch_csv(std::ostream& out, std::span<const Device> devices) {
    out << "id,packet_bits,deadline_ms,class\n";
    for (const auto& d : devices) {
        out << d.id << ',' << d.packet_bits << ',' << format_number(d.deadline_ms) << ',' << to_string(d.delay_class)
            << '\n';
    }
}

}  // namespace edgeclust
