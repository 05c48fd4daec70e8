#include "canal/bench.hpp"

#include <cstdio>
#include <random>

#include "canal/constraints.hpp"
#include "canal/layout.hpp"
#include "canal/router.hpp"
#include "canal/trainer.hpp"

namespace canal {

GeneratorParams standard_suite() {
    GeneratorParams p;
    p.min_columns = 10;
    p.max_columns = 40;
    p.min_nets = 3;
    p.max_nets = 15;
    p.multi_terminal_prob = 0.2;
    return p;
}

namespace {

struct Tally {
    BenchRow row;
    double tracks = 0, length = 0, vias = 0;

    void add(const RouteResult& r) {
        ++row.instances;
        if (!r.ok()) return;
        ++row.successes;
        Metrics m = metrics(r.routed);
        tracks += m.tracks_used;
        length += m.total_length;
        vias += m.via_count;
    }

    BenchRow finish() {
        if (row.instances > 0) row.success_rate = static_cast<double>(row.successes) / row.instances;
        if (row.successes > 0) {
            row.mean_tracks = tracks / row.successes;
            row.mean_length = length / row.successes;
            row.mean_vias = vias / row.successes;
        }
        return row;
    }
};

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& options) {
    StrategyBank bank;
    if (options.bank) {
        bank = *options.bank;
    } else {
        RandomFamilyParams fp;
        fp.min_columns = options.suite.min_columns;
        fp.max_columns = options.suite.max_columns;
        fp.row_slack = options.row_slack;
        fp.multi_terminal_prob = options.suite.multi_terminal_prob;
        std::vector<InstanceFamily> families{random_family(fp)};
        std::vector<RowSelectionPolicy> policies;
        for (PolicyKind k : all_policy_kinds()) policies.push_back({k, {}});
        bank = train_bank(families, policies, options.train_trials, options.seed + 1).bank;
    }

    std::vector<Tally> tallies;
    tallies.push_back({{"left-edge"}});
    tallies.push_back({{"dogleg"}});
    tallies.push_back({{"adaptive"}});
    std::vector<StrategyBank> fixed;
    for (PolicyKind k : all_policy_kinds()) {
        tallies.push_back({{std::string("adaptive/") + to_string(k)}});
        fixed.emplace_back(bank.bucket_count(), k);
    }

    std::mt19937_64 rng(options.seed);
    for (int i = 0; i < options.instances; ++i) {
        ChannelSpec spec = random_channel(rng, options.suite);
        RouterConfig cfg;
        cfg.max_rows = std::max(1, channel_density(spec).density + options.row_slack);
        cfg.seed = options.seed;
        tallies[0].add(route_left_edge(spec, cfg));
        tallies[1].add(route_dogleg(spec, cfg));
        tallies[2].add(route_adaptive(spec, cfg, bank));
        for (std::size_t k = 0; k < fixed.size(); ++k) tallies[3 + k].add(route_adaptive(spec, cfg, fixed[k]));
    }

    std::vector<BenchRow> rows;
    for (auto& t : tallies) rows.push_back(t.finish());
    return rows;
}

std::string format_bench_table(std::span<const BenchRow> rows) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %9s %9s %8s %11s %11s %9s\n", "router", "instances", "successes",
                  "success", "mean_tracks", "mean_length", "mean_vias");
    out += line;
    for (const BenchRow& r : rows) {
        std::snprintf(line, sizeof line, "%-28s %9d %9d %8.4f %11.3f %11.3f %9.3f\n", r.router.c_str(), r.instances,
                      r.successes, r.success_rate, r.mean_tracks, r.mean_length, r.mean_vias);
        out += line;
    }
    return out;
}

}  // namespace canal
