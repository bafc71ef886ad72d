#include "edgeclust/config.hpp"

#include "edgeclust/format.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace edgeclust {

std::string_view to_string(DelayLabel label) noexcept {
    return label == DelayLabel::Strict ? "STRICT" : "LENIENT";
}

std::string_view to_string(KpiPreset preset) noexcept {
    switch (preset) {
        case KpiPreset::EHealth: return "EHEALTH";
        case KpiPreset::FaceRecognition: return "FACE_RECOGNITION";
        case KpiPreset::Vehicular: return "VEHICULAR";
        case KpiPreset::HomeSensors: return "HOME_SENSORS";
        case KpiPreset::All: return "ALL";
    }
    return "ALL";
}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) {
        msg += "\n  " + v.field + ": " + v.reason;
    }
    return msg;
}

}  // namespace

ConfigError::ConfigError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<Violation> find_violations(const ScenarioConfig& cfg) {
    std::vector<Violation> out;
    auto require = [&out](bool ok, std::string field, std::string reason) {
        if (!ok) {
            out.push_back({std::move(field), std::move(reason)});
        }
    };
    auto finite = [](double x) { return std::isfinite(x); };
    auto unit = [&](double x) { return finite(x) && x >= 0.0 && x <= 1.0; };

    require(finite(cfg.vm.capacity_bps) && cfg.vm.capacity_bps > 0.0, "vm.capacity", "must be > 0");
    require(cfg.vm.count >= 1, "vm.count", "must be >= 1");

    const auto& l = cfg.learn;
    require(unit(l.alpha), "learn.alpha", "must lie in [0,1]");
    require(finite(l.gamma) && l.gamma >= 0.0 && l.gamma < 1.0, "learn.gamma", "must lie in [0,1)");
    require(unit(l.epsilon_start), "learn.epsilon_start", "must lie in [0,1]");
    require(unit(l.epsilon_end), "learn.epsilon_end", "must lie in [0,1]");
    require(!(unit(l.epsilon_start) && unit(l.epsilon_end)) || l.epsilon_end <= l.epsilon_start,
            "learn.epsilon_end", "must be <= learn.epsilon_start");
    require(finite(l.epsilon_decay) && l.epsilon_decay > 0.0 && l.epsilon_decay <= 1.0,
            "learn.epsilon_decay", "must lie in (0,1]");
    require(l.max_occupancy_state >= 1, "learn.max_occupancy_state", "must be >= 1");

    const auto& w = cfg.workload;
    require(w.packet_min_bits > 0, "workload.packet_min_bits", "must be > 0");
    require(w.packet_min_bits <= w.packet_max_bits, "workload.packet_max_bits",
            "must be >= workload.packet_min_bits");
    for (const auto* dc : {&w.strict, &w.lenient}) {
        const std::string prefix = dc->label == DelayLabel::Strict ? "strict" : "lenient";
        require(finite(dc->deadline_low_ms) && dc->deadline_low_ms > 0.0, prefix + ".deadline_low",
                "must be > 0");
        require(finite(dc->deadline_high_ms) && dc->deadline_low_ms < dc->deadline_high_ms,
                prefix + ".deadline_high", "must be > " + prefix + ".deadline_low");
    }
    require(w.strict.label == DelayLabel::Strict, "strict", "label must be STRICT");
    require(w.lenient.label == DelayLabel::Lenient, "lenient", "label must be LENIENT");

    require(finite(cfg.energy.tx_joule_per_bit) && cfg.energy.tx_joule_per_bit >= 0.0, "energy.e_tx",
            "must be >= 0");
    require(finite(cfg.energy.vm_power_w) && cfg.energy.vm_power_w >= 0.0, "energy.p_vm", "must be >= 0");

    require(cfg.device_count >= 1, "device_count", "must be >= 1");
    require(unit(cfg.class_mix), "class_mix", "must lie in [0,1]");
    require(finite(cfg.radio_rate_bps) && cfg.radio_rate_bps > 0.0, "radio_rate", "must be > 0");
    require(finite(cfg.utilization_window_ms) && cfg.utilization_window_ms > 0.0, "utilization_window",
            "must be > 0");
    return out;
}

const ScenarioConfig& validate_config(const ScenarioConfig& cfg) {
    auto violations = find_violations(cfg);
    if (!violations.empty()) {
        throw ConfigError(std::move(violations));
    }
    return cfg;
}

namespace {

struct Field {
    std::string_view key;
    std::function<std::string(const ScenarioConfig&)> get;
    // Returns false when the text is not a well-formed value for this field.
    std::function<bool(ScenarioConfig&, std::string_view)> set;
};

template <typename Get>
Field real_field(std::string_view key, Get access) {
    return {key, [access](const ScenarioConfig& c) { return format_number(access(c)); },
            [access](ScenarioConfig& c, std::string_view text) {
                auto v = parse_double(text);
                if (v) {
                    access(c) = *v;
                }
                return v.has_value();
            }};
}

template <typename UInt, typename Get>
Field uint_field(std::string_view key, Get access) {
    return {key,
            [access](const ScenarioConfig& c) {
                return format_number(static_cast<std::uint64_t>(access(c)));
            },
            [access](ScenarioConfig& c, std::string_view text) {
                auto v = parse_uint(text);
                if (!v || *v > std::numeric_limits<UInt>::max()) {
                    return false;
                }
                access(c) = static_cast<UInt>(*v);
                return true;
            }};
}

template <typename Get>
Field int_field(std::string_view key, Get access) {
    return {key,
            [access](const ScenarioConfig& c) {
                return format_number(static_cast<std::int64_t>(access(c)));
            },
            [access](ScenarioConfig& c, std::string_view text) {
                auto v = parse_int(text);
                if (!v || *v > std::numeric_limits<int>::max() || *v < std::numeric_limits<int>::min()) {
                    return false;
                }
                access(c) = static_cast<int>(*v);
                return true;
            }};
}

Field preset_field() {
    return {"kpi_preset", [](const ScenarioConfig& c) { return std::string(to_string(c.kpi_preset)); },
            [](ScenarioConfig& c, std::string_view text) {
                text = trim(text);
                for (auto p : {KpiPreset::EHealth, KpiPreset::FaceRecognition, KpiPreset::Vehicular,
                               KpiPreset::HomeSensors, KpiPreset::All}) {
                    if (text == to_string(p)) {
                        c.kpi_preset = p;
                        return true;
                    }
                }
                return false;
            }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        real_field("vm.capacity", [](auto& c) -> auto& { return c.vm.capacity_bps; }),
        uint_field<std::uint32_t>("vm.count", [](auto& c) -> auto& { return c.vm.count; }),
        int_field("rewards.inc_ok", [](auto& c) -> auto& { return c.rewards.inc_ok; }),
        int_field("rewards.dec_ok", [](auto& c) -> auto& { return c.rewards.dec_ok; }),
        int_field("rewards.inc_delayed", [](auto& c) -> auto& { return c.rewards.inc_delayed; }),
        int_field("rewards.dec_delayed", [](auto& c) -> auto& { return c.rewards.dec_delayed; }),
        real_field("learn.alpha", [](auto& c) -> auto& { return c.learn.alpha; }),
        real_field("learn.gamma", [](auto& c) -> auto& { return c.learn.gamma; }),
        real_field("learn.epsilon_start", [](auto& c) -> auto& { return c.learn.epsilon_start; }),
        real_field("learn.epsilon_end", [](auto& c) -> auto& { return c.learn.epsilon_end; }),
        real_field("learn.epsilon_decay", [](auto& c) -> auto& { return c.learn.epsilon_decay; }),
        uint_field<std::uint32_t>("learn.episodes",
                                  [](auto& c) -> auto& { return c.learn.episodes; }),
        uint_field<std::uint32_t>("learn.max_occupancy_state",
                                  [](auto& c) -> auto& { return c.learn.max_occupancy_state; }),
        uint_field<std::uint64_t>("workload.packet_min_bits",
                                  [](auto& c) -> auto& { return c.workload.packet_min_bits; }),
        uint_field<std::uint64_t>("workload.packet_max_bits",
                                  [](auto& c) -> auto& { return c.workload.packet_max_bits; }),
        real_field("strict.deadline_low",
                   [](auto& c) -> auto& { return c.workload.strict.deadline_low_ms; }),
        real_field("strict.deadline_high",
                   [](auto& c) -> auto& { return c.workload.strict.deadline_high_ms; }),
        real_field("lenient.deadline_low",
                   [](auto& c) -> auto& { return c.workload.lenient.deadline_low_ms; }),
        real_field("lenient.deadline_high",
                   [](auto& c) -> auto& { return c.workload.lenient.deadline_high_ms; }),
        real_field("energy.e_tx", [](auto& c) -> auto& { return c.energy.tx_joule_per_bit; }),
        real_field("energy.p_vm", [](auto& c) -> auto& { return c.energy.vm_power_w; }),
        uint_field<std::uint32_t>("device_count", [](auto& c) -> auto& { return c.device_count; }),
        real_field("class_mix", [](auto& c) -> auto& { return c.class_mix; }),
        real_field("radio_rate", [](auto& c) -> auto& { return c.radio_rate_bps; }),
        real_field("utilization_window", [](auto& c) -> auto& { return c.utilization_window_ms; }),
        uint_field<std::uint64_t>("seed", [](auto& c) -> auto& { return c.seed; }),
        preset_field(),
    };
    return table;
}

}  // namespace

std::string to_config_text(const ScenarioConfig& cfg) {
    std::string out;
    for (const auto& f : fields()) {
        out += f.key;
        out += '=';
        out += f.get(cfg);
        out += '\n';
    }
    return out;
}

ScenarioConfig parse_config_text(std::string_view text) {
    ScenarioConfig cfg;
    std::vector<Violation> errors;
    std::set<std::string, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back({"line " + std::to_string(line_no), "expected key=value"});
            continue;
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const Field* field = nullptr;
        for (const auto& f : fields()) {
            if (f.key == key) {
                field = &f;
                break;
            }
        }
        if (field == nullptr) {
            errors.push_back({std::string(key), "unknown key"});
            continue;
        }
        if (!seen.emplace(key).second) {
            errors.push_back({std::string(key), "duplicate key"});
            continue;
        }
        if (!field->set(cfg, value)) {
            errors.push_back({std::string(key), "malformed value '" + std::string(value) + "'"});
        }
    }
    if (!errors.empty()) {
        throw ConfigError(std::move(errors));
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError({Violation{path.string(), "cannot open config file"}});
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto cfg = parse_config_text(buf.str());
    validate_config(cfg);
    return cfg;
}

}  // namespace edgeclust
