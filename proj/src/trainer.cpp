#include "canal/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "canal/constraints.hpp"
#include "canal/router.hpp"

namespace canal {

namespace {

constexpr int kAttemptsPerTrial = 200;

StrategyBank single_policy_bank(const RowSelectionPolicy& policy, int bucket_count) {
    StrategyBank bank(bucket_count, policy.kind);
    for (int b = 0; b < bucket_count; ++b)
        for (int d = 0; d < kDensityBands; ++d) bank.set({b, d}, {policy, 0.0});
    return bank;
}

double round6(double x) { return std::round(x * 1e6) / 1e6; }

}  // namespace

InstanceFamily random_family(RandomFamilyParams params) {
    return [params](std::mt19937_64& rng, CellKey hint, int bucket_count) {
        GeneratorParams g;
        g.min_columns = params.min_columns;
        g.max_columns = params.max_columns;
        g.multi_terminal_prob = params.multi_terminal_prob;
        std::uniform_real_distribution<double> within(0.0, 1.0);
        g.left_bias = std::clamp((hint.bucket + within(rng)) / bucket_count, 0.0, 1.0);
        switch (hint.band) {
            case 0:
                g.min_nets = 1, g.max_nets = 3, g.max_span = 3;
                break;
            case 1:
                g.min_nets = 3, g.max_nets = 8, g.max_span = std::max(2, params.max_columns / 4);
                break;
            default:
                g.min_nets = 8, g.max_nets = 20, g.max_span = 0;
                break;
        }
        TrainingInstance inst;
        inst.spec = random_channel(rng, g);
        inst.max_rows = std::max(1, channel_density(inst.spec).density + params.row_slack);
        return inst;
    };
}

TrainReport train_bank(std::span<const InstanceFamily> families, std::span<const RowSelectionPolicy> policies,
                       int trials, std::uint64_t seed, int bucket_count) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (families.empty()) throw std::invalid_argument("no instance families");
    if (policies.empty()) throw std::invalid_argument("no candidate policies");

    std::vector<StrategyBank> candidates;
    for (const auto& p : policies) candidates.push_back(single_policy_bank(p, bucket_count));

    TrainReport report{StrategyBank(bucket_count), {}, {}};
    for (int b = 0; b < bucket_count; ++b) {
        for (int d = 0; d < kDensityBands; ++d) {
            const CellKey cell{b, d};
            std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(d)};
            std::mt19937_64 rng(seq);

            std::vector<TrainingInstance> pool;
            for (int attempt = 0; attempt < trials * kAttemptsPerTrial && static_cast<int>(pool.size()) < trials;
                 ++attempt) {
                TrainingInstance inst = families[attempt % families.size()](rng, cell, bucket_count);
                if (nets_of(inst.spec).empty()) continue;
                if (report.bank.cell_for(extract_features(inst.spec)) == cell) pool.push_back(std::move(inst));
            }
            if (pool.empty()) {
                report.empty_cells.push_back(cell);
                report.bank.set(cell, {{PolicyKind::middle_out, {}}, 0.0});
                continue;
            }

            std::vector<PolicyScore> scores;
            for (std::size_t p = 0; p < policies.size(); ++p) {
                PolicyScore score{policies[p], 0, static_cast<int>(pool.size()), 0.0};
                long tracks = 0;
                for (const auto& inst : pool) {
                    RouterConfig cfg;
                    cfg.max_rows = inst.max_rows;
                    cfg.seed = seed;
                    auto result = route_adaptive(inst.spec, cfg, candidates[p]);
                    if (result.ok()) {
                        ++score.successes;
                        tracks += static_cast<long>(result.routed.rows_used.size());
                    }
                }
                score.mean_tracks = score.successes > 0 ? static_cast<double>(tracks) / score.successes
                                                        : std::numeric_limits<double>::infinity();
                scores.push_back(score);
            }

            std::size_t best = 0;
            for (std::size_t p = 1; p < scores.size(); ++p) {
                if (scores[p].successes > scores[best].successes ||
                    (scores[p].successes == scores[best].successes &&
                     scores[p].mean_tracks < scores[best].mean_tracks)) {
                    best = p;
                }
            }
            const double rate = static_cast<double>(scores[best].successes) / scores[best].trials;
            report.bank.set(cell, {scores[best].policy, round6(rate)});
            report.scores.emplace_back(cell, std::move(scores));
        }
    }
    return report;
}

}  // namespace canal
