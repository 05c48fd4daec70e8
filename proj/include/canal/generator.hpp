#pragma once

#include <random>

#include "canal/netlist.hpp"

namespace canal {

/// Knobs for random channel instances. Every generated net has at least two terminals.
struct GeneratorParams {
    int min_columns = 10;
    int max_columns = 100;
    int min_nets = 5;
    int max_nets = 50;
    double multi_terminal_prob = 0.2;  // chance a net gets 3 or 4 terminals
    bool allow_single_column = false;  // allow nets whose two terminals share a column
    double left_bias = -1.0;           // < 0: uniform anchors; else P(anchor left of the midpoint)
    int max_span = 0;                  // 0: unbounded distance between a net's terminals
};

ChannelSpec random_channel(std::mt19937_64& rng, const GeneratorParams& params);

}  // namespace canal
