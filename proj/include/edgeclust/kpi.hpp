#pragma once

#include "edgeclust/config.hpp"
#include "edgeclust/engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgeclust {

/// Thrown by aggregate() on an empty outcome list.
class EmptyInputError : public std::invalid_argument {
public:
    EmptyInputError() : std::invalid_argument("aggregate: no outcomes") {}
};

/// KPI values of one replication.
struct KpiRow {
    double clusters_used = 0.0;
    double vm_utilization = 0.0;
    double delayed_devices = 0.0;
    double response_time_ms = 0.0;
    double energy_j = 0.0;
    double throughput_bps = 0.0;

    bool operator==(const KpiRow&) const = default;
};

struct KpiReport {
    double mean_clusters_used = 0.0;
    double mean_vm_utilization = 0.0;
    double mean_delayed_devices = 0.0;
    double mean_response_time_ms = 0.0;
    double energy_j = 0.0;
    double throughput_bps = 0.0;
    std::uint32_t replication_count = 0;
    std::vector<KpiRow> per_replication;
};

/// Busy time of one used VM is its members' bits / capacity. Utilization is
/// the mean over used VMs of min(1, busy / utilization_window); 0 when no VM
/// is used.
[[nodiscard]] double vm_utilization(const EpisodeOutcome& outcome, const ScenarioConfig& cfg);

/// Per-replication KPIs:
///   energy     = e_tx * total bits + p_vm * total VM busy seconds
///   throughput = total bits / slowest device completion (s)
///   response   = mean device completion time (ms)
[[nodiscard]] KpiRow kpi_row(const EpisodeOutcome& outcome, const ScenarioConfig& cfg);

/// Arithmetic means of kpi_row over the outcomes, summed in a canonical
/// order so that permuting the outcomes gives bit-identical means.
[[nodiscard]] KpiReport aggregate(std::span<const EpisodeOutcome> outcomes, const ScenarioConfig& cfg);

enum class KpiColumn : std::uint8_t { Clusters, Utilization, Delayed, ResponseTime, Energy, Throughput };

/// Which KPI columns an application profile reports. Cluster count,
/// utilization and delayed devices are always reported.
[[nodiscard]] bool reports(KpiPreset preset, KpiColumn column) noexcept;

/// One row of the KPI table: a policy at one sweep point.
struct KpiRecord {
    std::string policy;
    std::uint32_t device_count = 0;
    double class_mix = 0.0;
    std::uint64_t seed = 0;
    KpiReport report;
};

/// Header `policy,device_count,class_mix,mean_clusters,mean_util,mean_delayed,
/// mean_response_ms,energy_j,throughput_bps,reps,seed`, minus the columns the
/// preset hides.
void write_kpi_csv(std::ostream& out, std::span<const KpiRecord> records, KpiPreset preset);

/// One line per replication with the same KPI columns, for plotting.
void write_replication_csv(std::ostream& out, std::span<const KpiRecord> records, KpiPreset preset);

}  // namespace edgeclust
