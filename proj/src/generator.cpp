#include "canal/generator.hpp"

#include <algorithm>

namespace canal {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

ChannelSpec random_channel(std::mt19937_64& rng, const GeneratorParams& params) {
    ChannelSpec spec;
    spec.columns = uniform(rng, params.min_columns, std::max(params.min_columns, params.max_columns));
    spec.top.assign(spec.columns, 0);
    spec.bottom.assign(spec.columns, 0);
    const int mid = spec.columns / 2;
    const int net_target = uniform(rng, std::min(params.min_nets, spec.columns),
                                   std::max(0, std::min(params.max_nets, spec.columns)));

    NetId next_id = 1;
    std::bernoulli_distribution coin(0.5);
    for (int attempt = 0; attempt < net_target; ++attempt) {
        int wanted = 2;
        if (std::bernoulli_distribution(params.multi_terminal_prob)(rng)) wanted = uniform(rng, 3, 4);

        int anchor = uniform(rng, 0, spec.columns - 1);
        if (params.left_bias >= 0.0 && mid > 0) {
            anchor = std::bernoulli_distribution(params.left_bias)(rng) ? uniform(rng, 0, mid - 1)
                                                                        : uniform(rng, mid, spec.columns - 1);
        }
        int lo = 0, hi = spec.columns - 1;
        if (params.max_span > 0) {
            lo = std::max(0, anchor - params.max_span);
            hi = std::min(spec.columns - 1, anchor + params.max_span);
        }

        std::vector<Terminal> placed;
        for (int k = 0; k < wanted; ++k) {
            for (int tries = 0; tries < 20; ++tries) {
                int column = k == 0 ? anchor : uniform(rng, lo, hi);
                if (k == 1 && !params.allow_single_column && column == placed.front().column) continue;
                Side side = coin(rng) ? Side::top : Side::bottom;
                auto slot = [&](Side s) -> NetId& { return s == Side::top ? spec.top[column] : spec.bottom[column]; };
                if (slot(side) != 0) side = side == Side::top ? Side::bottom : Side::top;
                if (slot(side) != 0) continue;
                slot(side) = next_id;
                placed.push_back({side, column});
                break;
            }
            if (placed.empty()) break;  // anchor itself is full
        }
        if (placed.size() < 2) {
            for (const Terminal& t : placed) (t.side == Side::top ? spec.top : spec.bottom)[t.column] = 0;
            continue;
        }
        ++next_id;
    }
    return spec;
}

}  // namespace canal
