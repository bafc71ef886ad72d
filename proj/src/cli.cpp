#include "edgeclust/cli.hpp"

#include "edgeclust/engine.hpp"
#include "edgeclust/format.hpp"
#include "edgeclust/workload.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace edgeclust {

namespace {

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    writer(f);
    f.flush();
    if (!f) {
        throw IoError("write failed: " + path.string());
    }
}

void prepare_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
}

// Shared error handling: ConfigError -> 1, I/O -> 2.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
}

double mean_reward_tail(const std::vector<TraceRow>& trace, std::size_t window) {
    if (trace.empty()) {
        return 0.0;
    }
    const auto n = std::min(window, trace.size());
    double sum = 0.0;
    for (auto it = trace.end() - static_cast<std::ptrdiff_t>(n); it != trace.end(); ++it) {
        sum += static_cast<double>(it->total_reward);
    }
    return sum / static_cast<double>(n);
}

}  // namespace

ScenarioConfig resolve_config(const RunOptions& opts) {
    ScenarioConfig cfg;
    if (opts.config_path) {
        std::ifstream in(*opts.config_path, std::ios::binary);
        if (!in) {
            throw ConfigError({Violation{opts.config_path->string(), "cannot open config file"}});
        }
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        cfg = parse_config_text(text);
    }
    if (opts.seed) {
        cfg.seed = *opts.seed;
    }
    validate_config(cfg);
    return cfg;
}

std::vector<KpiRecord> compare_policies(const ScenarioConfig& cfg, const std::vector<std::uint32_t>& sweep,
                                        std::uint32_t reps) {
    std::vector<std::uint32_t> points = sweep;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::vector<KpiRecord> rl_rows;
    std::vector<KpiRecord> random_rows;
    for (auto devices : points) {
        ScenarioConfig point = cfg;
        point.device_count = devices;
        validate_config(point);

        const auto trained = train(point);
        const Policy rl = QPolicy{trained.table, 0.0};
        const Policy baseline = RandomPolicy{};

        const auto rl_out = evaluate(rl, point, reps);
        const auto rnd_out = evaluate(baseline, point, reps);
        rl_rows.push_back({"rl", devices, point.class_mix, point.seed, aggregate(rl_out, point)});
        random_rows.push_back({"random", devices, point.class_mix, point.seed, aggregate(rnd_out, point)});
    }
    std::vector<KpiRecord> rows = std::move(random_rows);
    rows.insert(rows.end(), rl_rows.begin(), rl_rows.end());
    return rows;
}

int cmd_train(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = resolve_config(opts);
        prepare_out_dir(opts.out_dir);
        const auto result = train(cfg);
        write_file(opts.out_dir / "qtable.csv", [&](std::ostream& f) { result.table.write_csv(f); });
        write_file(opts.out_dir / "training_trace.csv",
                   [&](std::ostream& f) { write_training_trace(f, result.trace); });
        const double final_eps = result.trace.empty() ? cfg.learn.epsilon_start : result.trace.back().epsilon;
        out << "episodes: " << cfg.learn.episodes << '\n'
            << "final epsilon: " << format_number(final_eps) << '\n'
            << "mean reward (last 500 episodes): " << format_number(mean_reward_tail(result.trace, 500)) << '\n';
        return kExitOk;
    });
}

int cmd_compare(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = resolve_config(opts);
        if (opts.reps == 0) {
            throw ConfigError({Violation{"--reps", "must be >= 1"}});
        }
        if (opts.sweep.empty() || std::find(opts.sweep.begin(), opts.sweep.end(), 0u) != opts.sweep.end()) {
            throw ConfigError({Violation{"--sweep", "device counts must be >= 1"}});
        }
        prepare_out_dir(opts.out_dir);
        const auto rows = compare_policies(cfg, opts.sweep, opts.reps);

        write_file(opts.out_dir / "kpi.csv", [&](std::ostream& f) { write_kpi_csv(f, rows, cfg.kpi_preset); });
        write_file(opts.out_dir / "kpi_replications.csv",
                   [&](std::ostream& f) { write_replication_csv(f, rows, cfg.kpi_preset); });
        write_file(opts.out_dir / "kpi_model_constants.txt", [&](std::ostream& f) {
            f << "# model constants (not measured values)\n"
              << "energy.e_tx=" << format_number(cfg.energy.tx_joule_per_bit) << " J/bit\n"
              << "energy.p_vm=" << format_number(cfg.energy.vm_power_w) << " W\n";
        });

        // device_count -> (rl, random)
        auto plot = [&](const char* name, double KpiReport::*field) {
            std::map<std::uint32_t, std::pair<double, double>> points;
            for (const auto& r : rows) {
                auto& cell = points[r.device_count];
                (r.policy == "rl" ? cell.first : cell.second) = r.report.*field;
            }
            write_file(opts.out_dir / name, [&](std::ostream& f) {
                f << "device_count,rl,random\n";
                for (const auto& [n, v] : points) {
                    f << n << ',' << format_number(v.first) << ',' << format_number(v.second) << '\n';
                }
            });
        };
        plot("sweep_clusters.csv", &KpiReport::mean_clusters_used);
        plot("sweep_utilization.csv", &KpiReport::mean_vm_utilization);
        plot("sweep_delayed.csv", &KpiReport::mean_delayed_devices);

        out << "policy  devices  clusters  util      delayed\n";
        for (const auto& r : rows) {
            out << r.policy << (r.policy == "rl" ? "      " : "  ") << r.device_count << "       "
                << format_number(r.report.mean_clusters_used) << "  " << format_number(r.report.mean_vm_utilization)
                << "  " << format_number(r.report.mean_delayed_devices) << '\n';
        }
        out << "model constants: e_tx=" << format_number(cfg.energy.tx_joule_per_bit)
            << " J/bit, p_vm=" << format_number(cfg.energy.vm_power_w) << " W\n";
        return kExitOk;
    });
}

int cmd_episode(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto cfg = resolve_config(opts);
        prepare_out_dir(opts.out_dir);
        const auto trained = train(cfg);
        const Policy rl = QPolicy{trained.table, 0.0};
        const auto outcome = evaluate(rl, cfg, 1).front();
        write_file(opts.out_dir / "batch.csv", [&](std::ostream& f) { write_batch_csv(f, outcome.devices); });
        write_file(opts.out_dir / "episode_log.csv", [&](std::ostream& f) { write_episode_log(f, outcome); });
        out << "clusters used: " << outcome.clusters_used << '\n'
            << "delayed devices: " << outcome.delayed_count << '\n'
            << "forced increments: " << outcome.forced_increments << '\n'
            << "total reward: " << outcome.total_reward << '\n';
        return kExitOk;
    });
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Edge-IoT device clustering: Q-learning vs random VM assignment"};
    app.require_subcommand(1);

    RunOptions opts;
    std::string config_path;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value scenario file (defaults when omitted)");
        sub->add_option("--seed", seed, "override the configured seed");
        sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    };

    auto* train_cmd = app.add_subcommand("train", "train an agent; write qtable.csv and training_trace.csv");
    add_common(train_cmd);

    auto* compare_cmd = app.add_subcommand("compare", "sweep device counts; RL vs random KPI tables");
    add_common(compare_cmd);
    compare_cmd->add_option("--sweep", opts.sweep, "device counts, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    compare_cmd->add_option("--reps", opts.reps, "evaluation replications per point")->capture_default_str();

    auto* episode_cmd = app.add_subcommand("episode", "train, then log one greedy episode step by step");
    add_common(episode_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    auto* active = app.get_subcommands().front();
    if (active->count("--config") > 0) {
        opts.config_path = config_path;
    }
    if (active->count("--seed") > 0) {
        opts.seed = seed;
    }
    if (active == train_cmd) {
        return cmd_train(opts, std::cout, std::cerr);
    }
    if (active == compare_cmd) {
        return cmd_compare(opts, std::cout, std::cerr);
    }
    return cmd_episode(opts, std::cout, std::cerr);
}

}  // namespace edgeclust
