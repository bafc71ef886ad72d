#include "edgeclust/config.hpp"
#include "edgeclust/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace edgeclust;

namespace {

bool has_field(const std::vector<Violation>& vs, std::string_view field) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.field == field; });
}

ScenarioConfig random_valid_config(RngStream& rng) {
    ScenarioConfig c;
    c.vm.capacity_bps = rng.uniform(1e5, 1e10);
    c.vm.count = static_cast<std::uint32_t>(rng.uniform_int(1, 12));
    c.rewards = {static_cast<int>(rng.uniform_int(0, 20)) - 10, static_cast<int>(rng.uniform_int(0, 20)) - 10,
                 static_cast<int>(rng.uniform_int(0, 20)) - 10, static_cast<int>(rng.uniform_int(0, 20)) - 10};
    c.learn.alpha = rng.uniform01();
    c.learn.gamma = rng.uniform01();
    c.learn.epsilon_start = rng.uniform(0.5, 1.0);
    c.learn.epsilon_end = rng.uniform(0.0, 0.5);
    c.learn.epsilon_decay = rng.uniform(0.5, 1.0);
    c.learn.episodes = static_cast<std::uint32_t>(rng.uniform_int(0, 100000));
    c.learn.max_occupancy_state = static_cast<std::uint32_t>(rng.uniform_int(1, 64));
    c.workload.packet_min_bits = rng.uniform_int(1, 1'000'000);
    c.workload.packet_max_bits = c.workload.packet_min_bits + rng.uniform_int(0, 9'000'000);
    c.workload.strict.deadline_low_ms = rng.uniform(1.0, 500.0);
    c.workload.strict.deadline_high_ms = c.workload.strict.deadline_low_ms + rng.uniform(1.0, 1000.0);
    c.workload.lenient.deadline_low_ms = rng.uniform(1.0, 800.0);
    c.workload.lenient.deadline_high_ms = c.workload.lenient.deadline_low_ms + rng.uniform(1.0, 2000.0);
    c.energy.tx_joule_per_bit = rng.uniform(0.0, 1e-5);
    c.energy.vm_power_w = rng.uniform(0.0, 200.0);
    c.device_count = static_cast<std::uint32_t>(rng.uniform_int(1, 500));
    c.class_mix = rng.uniform01();
    c.radio_rate_bps = rng.uniform(1e5, 1e9);
    c.utilization_window_ms = rng.uniform(1.0, 1e4);
    c.seed = rng.next_u64();
    c.kpi_preset = static_cast<KpiPreset>(rng.uniform_int(0, 4));
    return c;
}

}  // namespace

TEST_CASE("defaults carry the published case-study constants") {
    const ScenarioConfig c;
    CHECK(c.vm.count == 5);
    CHECK(c.learn.alpha == 0.1);
    CHECK(c.learn.gamma == 0.9);
    CHECK(c.learn.epsilon_start == 1.0);
    CHECK(c.learn.epsilon_end == 0.01);
    CHECK(c.learn.epsilon_decay == 0.999);
    CHECK(c.learn.episodes == 5000);
    CHECK(c.rewards == RewardTable{5, -1, -10, 5});
    CHECK(c.workload.packet_min_bits == 500'000);
    CHECK(c.workload.packet_max_bits == 4'000'000);
    CHECK(c.workload.strict == DelayClass{DelayLabel::Strict, 100.0, 900.0});
    CHECK(c.workload.lenient == DelayClass{DelayLabel::Lenient, 500.0, 1500.0});
    CHECK(c.workload.strict.mean_ms() == 500.0);
    CHECK(c.workload.lenient.mean_ms() == 1000.0);
    CHECK(find_violations(c).empty());
}

TEST_CASE("validate_config returns a valid config unchanged") {
    const ScenarioConfig c;
    CHECK(&validate_config(c) == &c);
    CHECK(validate_config(c) == ScenarioConfig{});
}

TEST_CASE("alpha of zero is a valid frozen learner") {
    ScenarioConfig c;
    c.learn.alpha = 0.0;
    CHECK_NOTHROW(validate_config(c));
}

TEST_CASE("zero VMs is rejected") {
    ScenarioConfig c;
    c.vm.count = 0;
    try {
        validate_config(c);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.violations().size() == 1);
        CHECK(e.violations()[0].field == "vm.count");
    }
}

TEST_CASE("every violation is reported, not just the first") {
    ScenarioConfig c;
    c.vm.count = 0;
    c.vm.capacity_bps = -1.0;
    c.learn.alpha = 1.5;
    c.learn.gamma = 1.0;
    c.class_mix = -0.1;
    c.device_count = 0;
    c.workload.packet_min_bits = 10;
    c.workload.packet_max_bits = 5;
    c.workload.lenient.deadline_high_ms = c.workload.lenient.deadline_low_ms;
    const auto vs = find_violations(c);
    CHECK(vs.size() == 8);
    for (auto f : {"vm.count", "vm.capacity", "learn.alpha", "learn.gamma", "class_mix", "device_count",
                   "workload.packet_max_bits", "lenient.deadline_high"}) {
        CHECK_MESSAGE(has_field(vs, f), f);
    }
}

TEST_CASE("epsilon schedule bounds") {
    ScenarioConfig c;
    c.learn.epsilon_end = 0.5;
    c.learn.epsilon_start = 0.2;
    CHECK(has_field(find_violations(c), "learn.epsilon_end"));
    c = {};
    c.learn.epsilon_decay = 0.0;
    CHECK(has_field(find_violations(c), "learn.epsilon_decay"));
    c.learn.epsilon_decay = 1.0;
    CHECK(find_violations(c).empty());
}

TEST_CASE("non-finite numbers are rejected") {
    ScenarioConfig c;
    c.radio_rate_bps = std::numeric_limits<double>::infinity();
    c.utilization_window_ms = std::numeric_limits<double>::quiet_NaN();
    const auto vs = find_violations(c);
    CHECK(has_field(vs, "radio_rate"));
    CHECK(has_field(vs, "utilization_window"));
}

TEST_CASE("validation is pure") {
    ScenarioConfig c;
    c.vm.count = 0;
    const ScenarioConfig before = c;
    (void)find_violations(c);
    CHECK_THROWS_AS(validate_config(c), ConfigError);
    CHECK(c == before);
}

TEST_CASE("config text round-trips for random valid configs") {
    RngStream rng(99, 0);
    for (int i = 0; i < 2000; ++i) {
        const auto c = random_valid_config(rng);
        REQUIRE(find_violations(c).empty());
        const auto text = to_config_text(c);
        CHECK(parse_config_text(text) == c);
        CHECK(to_config_text(parse_config_text(text)) == text);
    }
}

TEST_CASE("parsing tolerates comments, blank lines and spacing") {
    const auto c = parse_config_text("# scenario\n\n  vm.count = 7 \r\nclass_mix=0.25\nkpi_preset = VEHICULAR\n");
    CHECK(c.vm.count == 7);
    CHECK(c.class_mix == 0.25);
    CHECK(c.kpi_preset == KpiPreset::Vehicular);
    CHECK(c.learn.alpha == 0.1);
}

TEST_CASE("parse errors are collected together") {
    try {
        (void)parse_config_text("bogus=1\nvm.count=abc\nvm.count=3\nno equals sign\nseed=-4\nkpi_preset=GAMES\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const auto& vs = e.violations();
        REQUIRE(vs.size() == 6);
        CHECK(vs[0] == Violation{"bogus", "unknown key"});
        CHECK(vs[1].field == "vm.count");
        CHECK(vs[2] == Violation{"vm.count", "duplicate key"});
        CHECK(vs[3] == Violation{"line 4", "expected key=value"});
        CHECK(vs[4].field == "seed");
        CHECK(vs[5].field == "kpi_preset");
    }
}

TEST_CASE("duplicate keys are rejected") {
    CHECK_THROWS_AS((void)parse_config_text("seed=1\nseed=2\n"), ConfigError);
}

TEST_CASE("values outside the field's integer range are malformed") {
    CHECK_THROWS_AS((void)parse_config_text("vm.count=4294967296\n"), ConfigError);
    CHECK_THROWS_AS((void)parse_config_text("rewards.inc_ok=3000000000\n"), ConfigError);
    CHECK(parse_config_text("rewards.inc_ok=-7\n").rewards.inc_ok == -7);
}

TEST_CASE("load_config validates and reports missing files") {
    const auto dir = std::filesystem::temp_directory_path() / "edgeclust_test_config";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "ok.cfg") << "vm.count=3\n";
        std::ofstream(dir / "bad.cfg") << "vm.count=0\n";
    }
    CHECK(load_config(dir / "ok.cfg").vm.count == 3);
    CHECK_THROWS_AS((void)load_config(dir / "bad.cfg"), ConfigError);
    CHECK_THROWS_AS((void)load_config(dir / "missing.cfg"), ConfigError);
    std::filesystem::remove_all(dir);
}
