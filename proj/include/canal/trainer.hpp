#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "canal/generator.hpp"
#include "canal/strategy_bank.hpp"

namespace canal {

struct TrainingInstance {
    ChannelSpec spec;
    int max_rows = 1;
};

/// Produces one instance, steered toward the feature cell `hint`. The trainer rejects
/// instances whose features land elsewhere, so the hint only needs to be a good guess.
using InstanceFamily = std::function<TrainingInstance(std::mt19937_64& rng, CellKey hint, int bucket_count)>;

struct RandomFamilyParams {
    int min_columns = 10;
    int max_columns = 40;
    int row_slack = 2;  // max_rows = density + row_slack
    double multi_terminal_prob = 0.2;
};

InstanceFamily random_family(RandomFamilyParams params = {});

struct PolicyScore {
    RowSelectionPolicy policy;
    int successes = 0;
    int trials = 0;
    double mean_tracks = 0.0;  // over successful routings
};

struct TrainReport {
    StrategyBank bank;
    std::vector<CellKey> empty_cells;
    std::vector<std::pair<CellKey, std::vector<PolicyScore>>> scores;
};

/// Fills every (balance bucket, density band) cell with the policy that routed the most
/// cell instances (ties: fewer mean tracks, then earlier in `policies`).
/// Cells that attract no instance keep middle_out with weight 0 and are listed as empty.
TrainReport train_bank(std::span<const InstanceFamily> families, std::span<const RowSelectionPolicy> policies,
                       int trials, std::uint64_t seed, int bucket_count = kDefaultBucketCount);

}  // namespace canal
