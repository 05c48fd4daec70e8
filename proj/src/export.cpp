#include "canal/export.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace canal {

namespace {

std::string node_name(const Terminal& t) {
    return (t.side == Side::top ? "UP" : "DOWN") + std::to_string(t.column);
}

}  // namespace

std::string netlist_to_dot(const ChannelSpec& spec) {
    std::string out = "graph netlist {\n";
    for (int c = 0; c < spec.columns; ++c) {
        for (Side side : {Side::top, Side::bottom})
            if (spec.at({side, c}) != 0) out += "  " + node_name({side, c}) + ";\n";
    }
    std::vector<std::pair<Terminal, Terminal>> edges;
    for (const Net& n : nets_of(spec))
        for (std::size_t i = 1; i < n.terminals.size(); ++i) edges.emplace_back(n.terminals[i - 1], n.terminals[i]);
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) out += "  " + node_name(a) + " -- " + node_name(b) + ";\n";
    out += "}\n";
    return out;
}

std::string vcg_to_dot(const Digraph& vcg) {
    std::string out = "digraph vcg {\n";
    for (int v : vcg.nodes()) out += "  " + std::to_string(v) + ";\n";
    for (auto [a, b] : vcg.edges()) out += "  " + std::to_string(a) + " -> " + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

std::string hcg_to_dot(const UndirectedGraph& hcg) {
    std::string out = "graph hcg {\n";
    for (int v : hcg.nodes()) out += "  " + std::to_string(v) + ";\n";
    for (auto [a, b] : hcg.edges()) out += "  " + std::to_string(a) + " -- " + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

std::string render_svg(const ChannelSpec& spec, const RoutedChannel& routed, const RenderStyle& style) {
    if (style.cell_size < 4) throw std::invalid_argument("cell_size must be >= 4");
    if (style.palette.empty()) throw std::invalid_argument("palette is empty");

    const int max_rows = routed.config.max_rows;
    const int cell = style.cell_size;
    const int width = 2 * style.margin + std::max(spec.columns - 1, 0) * cell;
    const int height = 2 * style.margin + (max_rows + 1) * cell;
    auto x = [&](int column) { return std::to_string(style.margin + column * cell); };
    auto y = [&](int row) { return std::to_string(style.margin + (max_rows + 1 - row) * cell); };
    auto attr = [](const char* name, const std::string& value) { return std::string(" ") + name + "=\"" + value + "\""; };

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\"" + attr("width", std::to_string(width)) +
           attr("height", std::to_string(height)) +
           attr("viewBox", "0 0 " + std::to_string(width) + " " + std::to_string(height)) + ">\n";

    out += "  <g id=\"grid\" stroke=\"#e0e0e0\" stroke-width=\"1\">\n";
    for (int c = 0; c < spec.columns; ++c)
        out += "    <line" + attr("x1", x(c)) + attr("y1", y(max_rows + 1)) + attr("x2", x(c)) + attr("y2", y(0)) + "/>\n";
    for (int r = 0; r <= max_rows + 1; ++r)
        out += "    <line" + attr("x1", x(0)) + attr("y1", y(r)) + attr("x2", x(spec.columns - 1)) + attr("y2", y(r)) +
               "/>\n";
    out += "  </g>\n";

    std::set<NetId> ids;
    const auto nets = nets_of(spec);
    for (const Net& n : nets) ids.insert(n.id);
    for (const auto& [id, _] : routed.tracks) ids.insert(id);

    const int half = std::max(cell / 6, 2);
    for (NetId id : ids) {
        const std::string& color = style.palette[static_cast<std::size_t>(id) % style.palette.size()];
        out += "  <g" + attr("id", "net-" + std::to_string(id)) + attr("class", "net") + attr("stroke", color) +
               attr("fill", color) + ">\n";
        if (auto it = routed.tracks.find(id); it != routed.tracks.end()) {
            for (const Segment& s : it->second) {
                out += "    <polyline" +
                       attr("points", x(s.p0.column) + "," + y(s.p0.row) + " " + x(s.p1.column) + "," + y(s.p1.row)) +
                       attr("fill", "none") + attr("stroke-width", s.layer == kHorizontalLayer ? "4" : "2") +
                       attr("data-layer", std::to_string(s.layer)) + "/>\n";
            }
        }
        for (const Net& n : nets) {
            if (n.id != id) continue;
            for (const Terminal& t : n.terminals) {
                const int row = terminal_row(t.side, max_rows);
                out += "    <rect" + attr("x", std::to_string(style.margin + t.column * cell - half)) +
                       attr("y", std::to_string(style.margin + (max_rows + 1 - row) * cell - half)) +
                       attr("width", std::to_string(2 * half)) + attr("height", std::to_string(2 * half)) + "/>\n";
            }
        }
        if (auto it = routed.vias.find(id); it != routed.vias.end()) {
            for (const Via& v : it->second)
                out += "    <circle" + attr("cx", x(v.at.column)) + attr("cy", y(v.at.row)) +
                       attr("r", std::to_string(half)) + "/>\n";
        }
        out += "  </g>\n";
    }
    out += "</svg>\n";
    return out;
}

std::string report(const ChannelSpec& spec, const RoutedChannel& routed, const Metrics& m,
                   std::span<const Violation> violations, std::string_view router,
                   const std::optional<RouteFailure>& failure) {
    using nlohmann::ordered_json;
    const auto nets = nets_of(spec);
    std::size_t terminals = 0;
    for (const Net& n : nets) terminals += n.terminals.size();
    const Density density = channel_density(spec);

    ordered_json doc;
    doc["router"] = router;
    doc["status"] = failure ? "failed" : (violations.empty() ? "ok" : "invalid");
    if (failure) {
        doc["failure"] = {{"kind", to_string(failure->kind)}, {"message", failure->message}, {"cycle", failure->cycle}};
    } else {
        doc["failure"] = nullptr;
    }
    doc["instance"] = {{"columns", spec.columns}, {"nets", nets.size()}, {"terminals", terminals}};
    doc["density"] = density.density;
    doc["density_column"] = density.column;
    doc["max_rows"] = routed.config.max_rows;
    doc["metrics"] = {{"layers_used", m.layers_used},
                      {"tracks_used", m.tracks_used},
                      {"total_length", m.total_length},
                      {"via_count", m.via_count}};
    ordered_json list = ordered_json::array();
    for (const Violation& v : violations) list.push_back({{"kind", violation_kind(v)}, {"detail", describe(v)}});
    doc["violations"] = std::move(list);
    return doc.dump(2) + "\n";
}

}  // namespace canal
