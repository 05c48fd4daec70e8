#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "canal/constraints.hpp"
#include "canal/layout.hpp"
#include "canal/netlist.hpp"
#include "canal/router.hpp"

namespace canal {

struct RenderStyle {
    int cell_size = 24;  // pixels per grid unit, >= 4
    std::vector<std::string> palette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    int margin = 16;
};

/// Terminal connectivity graph: nodes `UP<c>`/`DOWN<c>`, one edge per consecutive terminal pair of a net.
std::string netlist_to_dot(const ChannelSpec& spec);
std::string vcg_to_dot(const Digraph& vcg);
std::string hcg_to_dot(const UndirectedGraph& hcg);

std::string render_svg(const ChannelSpec& spec, const RoutedChannel& routed, const RenderStyle& style = {});

/// JSON document with a fixed key order; see README for the layout.
std::string report(const ChannelSpec& spec, const RoutedChannel& routed, const Metrics& m,
                   std::span<const Violation> violations, std::string_view router,
                   const std::optional<RouteFailure>& failure = std::nullopt);

}  // namespace canal
