#include "edgeclust/policy.hpp"

#include "edgeclust/format.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace edgeclust {

std::string_view to_string(Action a) noexcept { return a == Action::Increment ? "INCREMENT" : "DECREMENT"; }

QTable::QTable(std::uint32_t max_occupancy, std::uint32_t vm_count)
    : max_occupancy_(max_occupancy),
      vm_count_(vm_count),
      values_(static_cast<std::size_t>(max_occupancy + 1) * 2 * (vm_count + 1) * 2, 0.0) {}

std::size_t QTable::index(const AgentState& s, Action a) const {
    if (s.vms_remaining > vm_count_) {
        throw std::out_of_range("vms_remaining " + std::to_string(s.vms_remaining) + " exceeds VM count");
    }
    const std::size_t occ = std::min(s.occupancy, max_occupancy_);
    const std::size_t cls = s.candidate_class == DelayLabel::Strict ? 0 : 1;
    const std::size_t act = a == Action::Increment ? 0 : 1;
    return ((occ * 2 + cls) * (vm_count_ + 1) + s.vms_remaining) * 2 + act;
}

double QTable::value(const AgentState& s, Action a) const { return values_[index(s, a)]; }

void QTable::set(const AgentState& s, Action a, double v) { values_[index(s, a)] = v; }

double QTable::max_value(const AgentState& s) const {
    return std::max(value(s, Action::Increment), value(s, Action::Decrement));
}

void QTable::write_csv(std::ostream& out) const {
    out << "occupancy,class,vms_remaining,action,q_value\n";
    for (std::uint32_t occ = 0; occ <= max_occupancy_; ++occ) {
        for (auto cls : {DelayLabel::Strict, DelayLabel::Lenient}) {
            for (std::uint32_t vms = 0; vms <= vm_count_; ++vms) {
                for (auto a : {Action::Increment, Action::Decrement}) {
                    const AgentState s{occ, cls, vms};
                    out << occ << ',' << to_string(cls) << ',' << vms << ',' << to_string(a) << ','
                        << format_number(value(s, a)) << '\n';
                }
            }
        }
    }
}

QTable QTable::read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != "occupancy,class,vms_remaining,action,q_value") {
        throw std::runtime_error("QTable CSV: missing header");
    }
    struct Row {
        AgentState s;
        Action a;
        double v;
    };
    std::vector<Row> rows;
    std::uint32_t max_occ = 0;
    std::uint32_t max_vms = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        std::vector<std::string_view> cells;
        std::string_view rest = line;
        for (auto pos = rest.find(','); pos != std::string_view::npos; pos = rest.find(',')) {
            cells.push_back(rest.substr(0, pos));
            rest.remove_prefix(pos + 1);
        }
        cells.push_back(rest);
        const auto bad = [&] { return std::runtime_error("QTable CSV: malformed line " + std::to_string(line_no)); };
        if (cells.size() != 5) {
            throw bad();
        }
        const auto occ = parse_uint(cells[0]);
        const auto vms = parse_uint(cells[2]);
        const auto v = parse_double(cells[4]);
        const auto cls = trim(cells[1]);
        const auto act = trim(cells[3]);
        if (!occ || !vms || !v || (cls != "STRICT" && cls != "LENIENT") || (act != "INCREMENT" && act != "DECREMENT")) {
            throw bad();
        }
        Row r{{static_cast<std::uint32_t>(*occ), cls == "STRICT" ? DelayLabel::Strict : DelayLabel::Lenient,
               static_cast<std::uint32_t>(*vms)},
              act == "INCREMENT" ? Action::Increment : Action::Decrement,
              *v};
        max_occ = std::max(max_occ, r.s.occupancy);
        max_vms = std::max(max_vms, r.s.vms_remaining);
        rows.push_back(r);
    }
    QTable q(max_occ, max_vms);
    for (const auto& r : rows) {
        q.set(r.s, r.a, r.v);
    }
    return q;
}

void q_update(QTable& q, const AgentState& s, Action a, double reward, const AgentState& s_next, bool terminal,
              double alpha, double gamma) {
    const double target = terminal ? reward : reward + gamma * q.max_value(s_next);
    const double old = q.value(s, a);
    q.set(s, a, old + alpha * (target - old));
}

int reward(Action a, bool delayed_occurred, const RewardTable& table) {
    if (a == Action::Increment) {
        return delayed_occurred ? table.inc_delayed : table.inc_ok;
    }
    return delayed_occurred ? table.dec_delayed : table.dec_ok;
}

Action select_action(const QTable& q, const AgentState& s, double epsilon, RngStream& rng) {
    if (epsilon > 0.0 && rng.uniform01() < epsilon) {
        return rng.uniform_int(0, 1) == 0 ? Action::Increment : Action::Decrement;
    }
    return q.value(s, Action::Increment) >= q.value(s, Action::Decrement) ? Action::Increment : Action::Decrement;
}

std::vector<Cluster> random_assign(std::span<const Device> devices, const VmSpec& vm, RngStream& rng) {
    std::vector<Cluster> clusters(vm.count);
    for (std::uint32_t v = 0; v < vm.count; ++v) {
        clusters[v].vm_index = v;
    }
    for (const auto& d : devices) {
        clusters[rng.uniform_int(0, vm.count - 1)].member_ids.push_back(d.id);
    }
    return clusters;
}

}  // namespace edgeclust
