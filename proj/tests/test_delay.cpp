#include "edgeclust/delay.hpp"
#include "edgeclust/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace edgeclust;

namespace {

VmSpec vm_at(double capacity) {
    VmSpec vm;
    vm.capacity_bps = capacity;
    return vm;
}

}  // namespace

TEST_CASE("single member: 1 Mb over 20 Mb/s radio and 10 Mb/s VM") {
    const Device d{0, 1'000'000, 500.0, DelayLabel::Strict};
    const auto r = device_delay(d, 1, vm_at(1e7), 2e7);
    CHECK(r.transmission_ms == 50.0);
    CHECK(r.processing_ms == 100.0);
    CHECK(r.total_ms == 150.0);
    CHECK_FALSE(r.delayed);
}

TEST_CASE("five members sharing push a 4 Mb packet past its deadline") {
    const Device d{3, 4'000'000, 900.0, DelayLabel::Strict};
    const auto r = device_delay(d, 5, vm_at(1e7), 2e7);
    CHECK(r.device_id == 3);
    CHECK(r.transmission_ms == 200.0);
    CHECK(r.processing_ms == 2000.0);
    CHECK(r.total_ms == 2200.0);
    CHECK(r.delayed);
}

TEST_CASE("three equal members each see triple processing time") {
    const std::vector<Device> members(3, Device{0, 1'000'000, 1000.0, DelayLabel::Lenient});
    const auto rs = cluster_delays(members, vm_at(1e7), 2e7);
    REQUIRE(rs.size() == 3);
    for (const auto& r : rs) {
        CHECK(r.processing_ms == 300.0);
        CHECK(r.total_ms == 350.0);
        CHECK_FALSE(r.delayed);
    }
}

TEST_CASE("finishing exactly on the deadline is on time") {
    const Device d{0, 1'000'000, 150.0, DelayLabel::Strict};
    CHECK_FALSE(device_delay(d, 1, vm_at(1e7), 2e7).delayed);
    const Device later{0, 1'000'000, 149.999, DelayLabel::Strict};
    CHECK(device_delay(later, 1, vm_at(1e7), 2e7).delayed);
}

TEST_CASE("very fast radio leaves only the processing share") {
    const Device d{0, 2'000'000, 1000.0, DelayLabel::Lenient};
    const auto r = device_delay(d, 2, vm_at(1e7), 1e300);
    CHECK(r.transmission_ms < 1e-280);
    CHECK(r.total_ms == doctest::Approx(400.0));
}

TEST_CASE("matches the independent completion-time oracle") {
    RngStream rng(21, 0);
    for (int i = 0; i < 10000; ++i) {
        const Device d{0, rng.uniform_int(1, 10'000'000), rng.uniform(1.0, 3000.0), DelayLabel::Strict};
        const auto n = static_cast<std::uint32_t>(rng.uniform_int(1, 60));
        const double cap = rng.uniform(1e5, 1e10);
        const double radio = rng.uniform(1e5, 1e9);
        const auto r = device_delay(d, n, vm_at(cap), radio);
        const auto expect = oracle::completion_ms(d, n, cap, radio);
        CHECK(r.total_ms == doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
        // Tie-breaking away from the boundary must agree.
        if (std::abs(static_cast<double>(expect) - d.deadline_ms) > 1e-6 * d.deadline_ms) {
            CHECK(r.delayed == (expect > static_cast<long double>(d.deadline_ms)));
        }
    }
}

TEST_CASE("properties: monotone in cluster size, exact doubling, power-of-two scaling") {
    RngStream rng(22, 0);
    for (int i = 0; i < 10000; ++i) {
        const Device d{0, rng.uniform_int(500'000, 4'000'000), rng.uniform(100.0, 1500.0), DelayLabel::Strict};
        const double cap = rng.uniform(1e6, 1e10);
        const double radio = rng.uniform(1e6, 1e8);
        const auto n = static_cast<std::uint32_t>(rng.uniform_int(1, 30));
        const auto a = device_delay(d, n, vm_at(cap), radio);
        const auto b = device_delay(d, n + 1, vm_at(cap), radio);
        CHECK(b.total_ms >= a.total_ms);
        CHECK((!a.delayed || b.delayed));

        // Duplicating the membership doubles processing exactly.
        CHECK(device_delay(d, 2 * n, vm_at(cap), radio).processing_ms == 2.0 * a.processing_ms);

        // Scaling capacity, radio and deadline by 2^-k scales every term by 2^k.
        const int k = static_cast<int>(rng.uniform_int(1, 8));
        const double f = std::ldexp(1.0, k);
        Device scaled = d;
        scaled.deadline_ms = d.deadline_ms * f;
        const auto s = device_delay(scaled, n, vm_at(cap / f), radio / f);
        CHECK(s.transmission_ms == a.transmission_ms * f);
        CHECK(s.processing_ms == a.processing_ms * f);
        CHECK(s.delayed == a.delayed);
    }
}
