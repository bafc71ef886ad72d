#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edgeclust {

enum class DelayLabel : std::uint8_t { Strict, Lenient };

[[nodiscard]] std::string_view to_string(DelayLabel label) noexcept;

/// Completion-deadline band of a device group. Deadlines are drawn uniformly
/// from [deadline_low_ms, deadline_high_ms].
struct DelayClass {
    DelayLabel label = DelayLabel::Strict;
    double deadline_low_ms = 100.0;
    double deadline_high_ms = 900.0;

    [[nodiscard]] double mean_ms() const noexcept { return 0.5 * (deadline_low_ms + deadline_high_ms); }

    static constexpr DelayClass strict_default() noexcept { return {DelayLabel::Strict, 100.0, 900.0}; }
    static constexpr DelayClass lenient_default() noexcept { return {DelayLabel::Lenient, 500.0, 1500.0}; }

    bool operator==(const DelayClass&) const = default;
};

struct Device {
    std::uint32_t id = 0;
    std::uint64_t packet_bits = 0;
    double deadline_ms = 0.0;
    DelayLabel delay_class = DelayLabel::Strict;

    bool operator==(const Device&) const = default;
};

/// Edge VM pool. Every VM has the same processing rate.
struct VmSpec {
    double capacity_bps = 3e9;  // see README, "Model constants"
    std::uint32_t count = 5;

    bool operator==(const VmSpec&) const = default;
};

/// A set of devices bound to exactly one VM.
struct Cluster {
    std::uint32_t vm_index = 0;
    std::vector<std::uint32_t> member_ids;

    bool operator==(const Cluster&) const = default;
};

struct RewardTable {
    int inc_ok = 5;
    int dec_ok = -1;
    int inc_delayed = -10;
    int dec_delayed = 5;

    bool operator==(const RewardTable&) const = default;
};

struct LearnSpec {
    double alpha = 0.1;
    double gamma = 0.9;
    double epsilon_start = 1.0;
    double epsilon_end = 0.01;
    double epsilon_decay = 0.999;
    std::uint32_t episodes = 5000;
    std::uint32_t max_occupancy_state = 3;

    bool operator==(const LearnSpec&) const = default;
};

/// Packet-size range (bits, 1 kb = 1000 bits) and the two deadline bands.
struct WorkloadSpec {
    std::uint64_t packet_min_bits = 500'000;
    std::uint64_t packet_max_bits = 4'000'000;
    DelayClass strict = DelayClass::strict_default();
    DelayClass lenient = DelayClass::lenient_default();

    [[nodiscard]] const DelayClass& delay_class(DelayLabel label) const noexcept {
        return label == DelayLabel::Strict ? strict : lenient;
    }

    bool operator==(const WorkloadSpec&) const = default;
};

/// Model constants for the energy KPI. Not measured values.
struct EnergySpec {
    double tx_joule_per_bit = 1e-7;
    double vm_power_w = 20.0;

    bool operator==(const EnergySpec&) const = default;
};

/// Application profile selecting which KPI columns are reported.
enum class KpiPreset : std::uint8_t { EHealth, FaceRecognition, Vehicular, HomeSensors, All };

[[nodiscard]] std::string_view to_string(KpiPreset preset) noexcept;

struct ScenarioConfig {
    VmSpec vm;
    RewardTable rewards;
    LearnSpec learn;
    WorkloadSpec workload;
    EnergySpec energy;
    std::uint32_t device_count = 40;
    double class_mix = 0.5;  // fraction of STRICT devices
    double radio_rate_bps = 20e6;
    double utilization_window_ms = 1500.0;
    std::uint64_t seed = 1;
    KpiPreset kpi_preset = KpiPreset::All;

    bool operator==(const ScenarioConfig&) const = default;
};

struct Violation {
    std::string field;
    std::string reason;

    bool operator==(const Violation&) const = default;
};

/// Raised when a configuration fails to parse or validate. Carries every
/// violation found, not only the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<Violation> violations);

    [[nodiscard]] const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Every invariant violated by `cfg`. Empty means valid.
[[nodiscard]] std::vector<Violation> find_violations(const ScenarioConfig& cfg);

/// Returns `cfg` unchanged when valid; throws ConfigError listing all
/// violations otherwise.
const ScenarioConfig& validate_config(const ScenarioConfig& cfg);

/// key=value text, one field path per line, in a fixed key order.
[[nodiscard]] std::string to_config_text(const ScenarioConfig& cfg);

/// Parses key=value text on top of the defaults. Blank lines and lines
/// starting with '#' are ignored. Unknown keys, duplicate keys and malformed
/// values are errors. The result is not validated.
[[nodiscard]] ScenarioConfig parse_config_text(std::string_view text);

/// Reads and parses a config file, then validates it.
[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace edgeclust
