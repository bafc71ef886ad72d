#include "edgeclust/kpi.hpp"

#include "edgeclust/format.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

namespace edgeclust {

namespace {

// Total bits per used cluster, in outcome.clusters order.
std::vector<double> cluster_bits(const EpisodeOutcome& outcome) {
    std::vector<double> bits;
    bits.reserve(outcome.clusters.size());
    for (const auto& c : outcome.clusters) {
        double sum = 0.0;
        for (auto id : c.member_ids) {
            const auto it = std::find_if(outcome.devices.begin(), outcome.devices.end(),
                                         [id](const Device& d) { return d.id == id; });
            if (it != outcome.devices.end()) {
                sum += static_cast<double>(it->packet_bits);
            }
        }
        bits.push_back(sum);
    }
    return bits;
}

}  // namespace

double vm_utilization(const EpisodeOutcome& outcome, const ScenarioConfig& cfg) {
    const auto bits = cluster_bits(outcome);
    if (bits.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (double b : bits) {
        const double busy_ms = b * 1000.0 / cfg.vm.capacity_bps;
        sum += std::min(1.0, busy_ms / cfg.utilization_window_ms);
    }
    return sum / static_cast<double>(bits.size());
}

KpiRow kpi_row(const EpisodeOutcome& outcome, const ScenarioConfig& cfg) {
    KpiRow row;
    row.clusters_used = outcome.clusters_used;
    row.vm_utilization = vm_utilization(outcome, cfg);
    row.delayed_devices = outcome.delayed_count;

    double total_bits = 0.0;
    for (const auto& d : outcome.devices) {
        total_bits += static_cast<double>(d.packet_bits);
    }
    double busy_s = 0.0;
    for (double b : cluster_bits(outcome)) {
        busy_s += b / cfg.vm.capacity_bps;
    }
    row.energy_j = cfg.energy.tx_joule_per_bit * total_bits + cfg.energy.vm_power_w * busy_s;

    double sum_ms = 0.0;
    double makespan_ms = 0.0;
    for (const auto& r : outcome.delay_reports) {
        sum_ms += r.total_ms;
        makespan_ms = std::max(makespan_ms, r.total_ms);
    }
    if (!outcome.delay_reports.empty()) {
        row.response_time_ms = sum_ms / static_cast<double>(outcome.delay_reports.size());
    }
    if (makespan_ms > 0.0) {
        row.throughput_bps = total_bits / (makespan_ms / 1000.0);
    }
    return row;
}

KpiReport aggregate(std::span<const EpisodeOutcome> outcomes, const ScenarioConfig& cfg) {
    if (outcomes.empty()) {
        throw EmptyInputError();
    }
    KpiReport report;
    report.replication_count = static_cast<std::uint32_t>(outcomes.size());
    report.per_replication.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        report.per_replication.push_back(kpi_row(o, cfg));
    }

    const auto n = static_cast<double>(outcomes.size());
    auto mean_of = [&](double KpiRow::*column) {
        std::vector<double> values;
        values.reserve(report.per_replication.size());
        for (const auto& r : report.per_replication) {
            values.push_back(r.*column);
        }
        std::sort(values.begin(), values.end());
        double sum = 0.0;
        for (double v : values) {
            sum += v;
        }
        return sum / n;
    };
    report.mean_clusters_used = mean_of(&KpiRow::clusters_used);
    report.mean_vm_utilization = mean_of(&KpiRow::vm_utilization);
    report.mean_delayed_devices = mean_of(&KpiRow::delayed_devices);
    report.mean_response_time_ms = mean_of(&KpiRow::response_time_ms);
    report.energy_j = mean_of(&KpiRow::energy_j);
    report.throughput_bps = mean_of(&KpiRow::throughput_bps);
    return report;
}

bool reports(KpiPreset preset, KpiColumn column) noexcept {
    switch (column) {
        case KpiColumn::Clusters:
        case KpiColumn::Utilization:
        case KpiColumn::Delayed:
            return true;
        case KpiColumn::ResponseTime:
            return preset != KpiPreset::HomeSensors;
        case KpiColumn::Energy:
        case KpiColumn::Throughput:
            return preset == KpiPreset::EHealth || preset == KpiPreset::FaceRecognition || preset == KpiPreset::All;
    }
    return false;
}

namespace {

struct ColumnSpec {
    KpiColumn column;
    const char* name;
    const char* row_name;
    double KpiRow::*row_field;
};

constexpr ColumnSpec kColumns[] = {
    {KpiColumn::Clusters, "mean_clusters", "clusters", &KpiRow::clusters_used},
    {KpiColumn::Utilization, "mean_util", "util", &KpiRow::vm_utilization},
    {KpiColumn::Delayed, "mean_delayed", "delayed", &KpiRow::delayed_devices},
    {KpiColumn::ResponseTime, "mean_response_ms", "response_ms", &KpiRow::response_time_ms},
    {KpiColumn::Energy, "energy_j", "energy_j", &KpiRow::energy_j},
    {KpiColumn::Throughput, "throughput_bps", "throughput_bps", &KpiRow::throughput_bps},
};

double report_value(const KpiReport& r, KpiColumn c) {
    switch (c) {
        case KpiColumn::Clusters: return r.mean_clusters_used;
        case KpiColumn::Utilization: return r.mean_vm_utilization;
        case KpiColumn::Delayed: return r.mean_delayed_devices;
        case KpiColumn::ResponseTime: return r.mean_response_time_ms;
        case KpiColumn::Energy: return r.energy_j;
        case KpiColumn::Throughput: return r.throughput_bps;
    }
    return 0.0;
}

}  // namespace

void write_kpi_csv(std::ostream& out, std::span<const KpiRecord> records, KpiPreset preset) {
    out << "policy,device_count,class_mix";
    for (const auto& c : kColumns) {
        if (reports(preset, c.column)) {
            out << ',' << c.name;
        }
    }
    out << ",reps,seed\n";
    for (const auto& rec : records) {
        out << rec.policy << ',' << rec.device_count << ',' << format_number(rec.class_mix);
        for (const auto& c : kColumns) {
            if (reports(preset, c.column)) {
                out << ',' << format_number(report_value(rec.report, c.column));
            }
        }
        out << ',' << rec.report.replication_count << ',' << rec.seed << '\n';
    }
}

void write_replication_csv(std::ostream& out, std::span<const KpiRecord> records, KpiPreset preset) {
    out << "policy,device_count,class_mix,replication";
    for (const auto& c : kColumns) {
        if (reports(preset, c.column)) {
            out << ',' << c.row_name;
        }
    }
    out << '\n';
    for (const auto& rec : records) {
        for (std::size_t i = 0; i < rec.report.per_replication.size(); ++i) {
            const auto& row = rec.report.per_replication[i];
            out << rec.policy << ',' << rec.device_count << ',' << format_number(rec.class_mix) << ',' << i;
            for (const auto& c : kColumns) {
                if (reports(preset, c.column)) {
                    out << ',' << format_number(row.*(c.row_field));
                }
            }
            out << '\n';
        }
    }
}

}  // namespace edgeclust
