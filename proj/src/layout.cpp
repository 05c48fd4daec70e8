#include "canal/layout.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <tuple>

namespace canal {

namespace {

std::string point_text(GridPoint p) {
    return "(" + std::to_string(p.column) + "," + std::to_string(p.row) + ")";
}

std::string segment_text(const Segment& s) {
    return "L" + std::to_string(s.layer) + " " + point_text(s.p0) + "-" + point_text(s.p1);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct LayerPoint {
    GridPoint p;
    int layer = 0;
    friend auto operator<=>(const LayerPoint&, const LayerPoint&) = default;
};

}  // namespace

int Segment::length() const { return std::abs(p1.column - p0.column) + std::abs(p1.row - p0.row); }

std::vector<GridPoint> rasterize(const Segment& s) {
    std::vector<GridPoint> pts;
    if (s.is_vertical()) {
        auto [lo, hi] = std::minmax(s.p0.row, s.p1.row);
        for (int r = lo; r <= hi; ++r) pts.push_back({s.p0.column, r});
    } else if (s.is_horizontal()) {
        auto [lo, hi] = std::minmax(s.p0.column, s.p1.column);
        for (int c = lo; c <= hi; ++c) pts.push_back({c, s.p0.row});
    } else {
        pts = {s.p0, s.p1};
    }
    return pts;
}

std::vector<Via> derive_vias(std::span<const Segment> path) {
    std::vector<Via> vias;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const Segment& a = path[i - 1];
        const Segment& b = path[i];
        if (a.layer == b.layer) continue;
        for (GridPoint p : {a.p0, a.p1}) {
            if (p == b.p0 || p == b.p1) {
                if (std::find(vias.begin(), vias.end(), Via{p}) == vias.end()) vias.push_back({p});
                break;
            }
        }
    }
    return vias;
}

void add_net_path(RoutedChannel& routed, NetId net, std::span<const Segment> path) {
    auto& track = routed.tracks[net];
    track.insert(track.end(), path.begin(), path.end());
    routed.vias[net] = derive_vias(track);
    for (const Segment& s : path)
        if (s.layer == kHorizontalLayer) routed.rows_used.insert(s.p0.row);
}

std::string violation_kind(const Violation& v) {
    return std::visit(overloaded{
                          [](const ShortCircuit&) { return std::string("ShortCircuit"); },
                          [](const Disconnected&) { return std::string("Disconnected"); },
                          [](const OutOfBounds&) { return std::string("OutOfBounds"); },
                          [](const WrongOrientation&) { return std::string("WrongOrientation"); },
                      },
                      v);
}

std::string describe(const Violation& v) {
    return std::visit(
        overloaded{
            [](const ShortCircuit& s) {
                return "ShortCircuit net " + std::to_string(s.net_a) + " / net " + std::to_string(s.net_b) +
                       " at " + point_text(s.at) + " layer " + std::to_string(s.layer);
            },
            [](const Disconnected& d) {
                return "Disconnected net " + std::to_string(d.net) + " at " + point_text(d.at);
            },
            [](const OutOfBounds& o) {
                return "OutOfBounds net " + std::to_string(o.net) + " segment " + segment_text(o.segment);
            },
            [](const WrongOrientation& w) {
                return "WrongOrientation net " + std::to_string(w.net) + " segment " + segment_text(w.segment);
            },
        },
        v);
}

UnknownNetError::UnknownNetError(NetId net)
    : std::invalid_argument("routing references unknown net " + std::to_string(net)), net_(net) {}

std::vector<Violation> validate(const ChannelSpec& spec, const RoutedChannel& routed) {
    const auto nets = nets_of(spec);
    std::map<NetId, const Net*> by_id;
    for (const Net& n : nets) by_id[n.id] = &n;
    for (const auto& [id, _] : routed.tracks)
        if (!by_id.contains(id)) throw UnknownNetError(id);
    for (const auto& [id, _] : routed.vias)
        if (!by_id.contains(id)) throw UnknownNetError(id);

    const int max_rows = routed.config.max_rows;
    const int top_row = max_rows + 1;
    std::vector<Violation> out;

    // Owners of every (point, layer). Terminals sit on the vertical layer; vias block both.
    std::map<LayerPoint, std::set<NetId>> owners;
    auto claim = [&](NetId id, GridPoint p, int layer) { owners[{p, layer}].insert(id); };

    for (const Net& n : nets)
        for (const Terminal& t : n.terminals) claim(n.id, {t.column, terminal_row(t.side, max_rows)}, kVerticalLayer);

    for (const auto& [id, segs] : routed.tracks) {
        for (const Segment& s : segs) {
            const bool axis = s.is_vertical() || s.is_horizontal();
            const bool oriented = (s.layer == kVerticalLayer && s.is_vertical()) ||
                                  (s.layer == kHorizontalLayer && s.is_horizontal());
            if (!oriented) out.push_back(WrongOrientation{id, s});
            const int row_lo = s.layer == kHorizontalLayer ? 1 : 0;
            const int row_hi = s.layer == kHorizontalLayer ? max_rows : top_row;
            bool in_bounds = true;
            for (GridPoint p : {s.p0, s.p1}) {
                if (p.column < 0 || p.column >= spec.columns || p.row < row_lo || p.row > row_hi) in_bounds = false;
            }
            if (!in_bounds) out.push_back(OutOfBounds{id, s});
            if (!axis || (s.layer != kVerticalLayer && s.layer != kHorizontalLayer)) continue;
            for (GridPoint p : rasterize(s)) claim(id, p, s.layer);
        }
    }
    for (const auto& [id, vias] : routed.vias) {
        for (const Via& v : vias) {
            claim(id, v.at, kVerticalLayer);
            claim(id, v.at, kHorizontalLayer);
        }
    }

    std::set<std::tuple<NetId, NetId, int>> reported;
    for (int layer : {kVerticalLayer, kHorizontalLayer}) {
        for (const auto& [lp, ids] : owners) {
            if (lp.layer != layer || ids.size() < 2) continue;
            for (auto a = ids.begin(); a != ids.end(); ++a) {
                for (auto b = std::next(a); b != ids.end(); ++b) {
                    if (reported.insert({*a, *b, layer}).second) out.push_back(ShortCircuit{*a, *b, lp.p, layer});
                }
            }
        }
    }

    // Connectivity: nodes are (point, layer); segments link neighbours on their layer, vias link layers.
    for (const Net& n : nets) {
        std::map<LayerPoint, std::vector<LayerPoint>> adj;
        auto link = [&](LayerPoint a, LayerPoint b) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        };
        for (const Terminal& t : n.terminals) adj[{{t.column, terminal_row(t.side, max_rows)}, kVerticalLayer}];
        if (auto it = routed.tracks.find(n.id); it != routed.tracks.end()) {
            for (const Segment& s : it->second) {
                if (!(s.is_vertical() || s.is_horizontal())) continue;
                auto pts = rasterize(s);
                adj[{pts.front(), s.layer}];
                for (std::size_t i = 1; i < pts.size(); ++i) link({pts[i - 1], s.layer}, {pts[i], s.layer});
            }
        }
        if (auto it = routed.vias.find(n.id); it != routed.vias.end()) {
            for (const Via& v : it->second) link({v.at, kVerticalLayer}, {v.at, kHorizontalLayer});
        }

        const Terminal& first = n.terminals.front();
        const LayerPoint start{{first.column, terminal_row(first.side, max_rows)}, kVerticalLayer};
        std::set<LayerPoint> seen{start};
        std::deque<LayerPoint> queue{start};
        while (!queue.empty()) {
            LayerPoint cur = queue.front();
            queue.pop_front();
            for (const LayerPoint& nb : adj[cur])
                if (seen.insert(nb).second) queue.push_back(nb);
        }
        for (const Terminal& t : n.terminals) {
            GridPoint p{t.column, terminal_row(t.side, max_rows)};
            if (!seen.contains({p, kVerticalLayer})) out.push_back(Disconnected{n.id, p});
        }
        std::set<LayerPoint> terminal_nodes;
        for (const Terminal& t : n.terminals)
            terminal_nodes.insert({{t.column, terminal_row(t.side, max_rows)}, kVerticalLayer});
        for (const auto& [node, _] : adj) {
            if (!seen.contains(node) && !terminal_nodes.contains(node)) {
                out.push_back(Disconnected{n.id, node.p});
                break;
            }
        }
    }
    return out;
}

Metrics metrics(const RoutedChannel& routed) {
    Metrics m;
    std::set<int> layers;
    for (const auto& [_, segs] : routed.tracks) {
        for (const Segment& s : segs) {
            layers.insert(s.layer);
            m.total_length += s.length();
        }
    }
    for (const auto& [_, vias] : routed.vias) m.via_count += static_cast<int>(vias.size());
    m.layers_used = static_cast<int>(layers.size());
    m.tracks_used = static_cast<int>(routed.rows_used.size());
    return m;
}

bool better_quality(const Metrics& a, const Metrics& b) {
    return std::tie(a.layers_used, a.tracks_used, a.total_length) <
           std::tie(b.layers_used, b.tracks_used, b.total_length);
}

}  // namespace canal
