#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "canal/constraints.hpp"
#include "canal/layout.hpp"
#include "canal/netlist.hpp"
#include "canal/router_config.hpp"
#include "canal/strategy_bank.hpp"

namespace canal {

/// Two-terminal piece of a net. Unsplit nets keep subnet index 0.
struct Subnet {
    NetId parent = 0;
    int index = 0;
    std::array<Terminal, 2> terminals{};
    int leftmost = 0;
    int rightmost = 0;

    bool single_column() const { return leftmost == rightmost; }
};

/// Splits every k-terminal net into k-1 chained subnets over consecutive terminals.
std::vector<Subnet> decompose_multiterminal(std::span<const Net> nets);

/// Constraint graphs over subnets, keyed by position in the subnet sequence.
struct SubnetGraphs {
    UndirectedGraph hcg;
    Digraph vcg;
};

SubnetGraphs subnet_constraints(std::span<const Subnet> subnets);

enum class FailureKind { CyclicVcg, RowsExhausted };
const char* to_string(FailureKind kind);

struct RouteFailure {
    FailureKind kind = FailureKind::RowsExhausted;
    std::vector<NetId> cycle;  // CyclicVcg witness, in net ids
    std::string message;
};

/// On failure `routed` keeps whatever was placed before the router gave up.
struct RouteResult {
    RoutedChannel routed;
    std::optional<RouteFailure> failure;

    bool ok() const { return !failure.has_value(); }
};

RouteResult route_left_edge(const ChannelSpec& spec, const RouterConfig& cfg);
RouteResult route_dogleg(const ChannelSpec& spec, const RouterConfig& cfg);
RouteResult route_adaptive(const ChannelSpec& spec, const RouterConfig& cfg, const StrategyBank& bank);

enum class Algorithm { left_edge, dogleg, adaptive };
const char* to_string(Algorithm algorithm);
std::optional<Algorithm> algorithm_from_string(std::string_view name);

RouteResult route(Algorithm algorithm, const ChannelSpec& spec, const RouterConfig& cfg,
                  const StrategyBank& bank);

/// Rows in the order a fixed-order policy visits them (middle_out, top_down, bottom_up).
std::vector<int> policy_row_order(PolicyKind kind, int max_rows);

struct PlacedTrunk {
    int node = 0;  // subnet index
    int row = 0;
};

/// Picks the row for the trunk of subnet `pending`, or nullopt when every row conflicts.
std::optional<int> select_row(const Digraph& vcg, const UndirectedGraph& hcg,
                              const FeatureVector& features, std::span<const PlacedTrunk> placed,
                              int pending, const RouterConfig& cfg, const StrategyBank& bank);

}  // namespace canal
