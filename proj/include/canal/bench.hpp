#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "canal/generator.hpp"
#include "canal/strategy_bank.hpp"

namespace canal {

/// Random instances used by `bench` unless told otherwise.
GeneratorParams standard_suite();

struct BenchOptions {
    int instances = 200;
    std::uint64_t seed = 0;
    int row_slack = 2;  // max_rows = density + row_slack
    GeneratorParams suite = standard_suite();
    std::optional<StrategyBank> bank;  // trained on the fly when absent
    int train_trials = 20;
};

struct BenchRow {
    std::string router;
    int instances = 0;
    int successes = 0;
    double success_rate = 0.0;
    // Means over successful routings.
    double mean_tracks = 0.0;
    double mean_length = 0.0;
    double mean_vias = 0.0;
};

/// Rows: left-edge, dogleg, adaptive (bank), then adaptive under each fixed policy.
std::vector<BenchRow> run_bench(const BenchOptions& options);

std::string format_bench_table(std::span<const BenchRow> rows);

}  // namespace canal
