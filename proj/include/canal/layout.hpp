#pragma once

#include <compare>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "canal/netlist.hpp"
#include "canal/router_config.hpp"

namespace canal {

/// Row 0 is the bottom terminal row, row max_rows+1 the top terminal row.
struct GridPoint {
    int column = 0;
    int row = 0;

    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

inline constexpr int kVerticalLayer = 0;
inline constexpr int kHorizontalLayer = 1;

struct Segment {
    int layer = kVerticalLayer;
    GridPoint p0;
    GridPoint p1;

    bool is_vertical() const { return p0.column == p1.column; }
    bool is_horizontal() const { return p0.row == p1.row; }
    int length() const;

    friend bool operator==(const Segment&, const Segment&) = default;
};

struct Via {
    GridPoint at;
    friend bool operator==(const Via&, const Via&) = default;
};

/// Routed geometry per net: an ordered path of segments plus the vias on it.
struct RoutedChannel {
    std::map<NetId, std::vector<Segment>> tracks;
    std::map<NetId, std::vector<Via>> vias;
    std::set<int> rows_used;
    RouterConfig config;

    friend bool operator==(const RoutedChannel&, const RoutedChannel&) = default;
};

/// Grid points covered by an axis-aligned segment, endpoints included.
std::vector<GridPoint> rasterize(const Segment& s);

/// Points where consecutive segments change layer, deduplicated in first-seen order.
std::vector<Via> derive_vias(std::span<const Segment> path);

/// Appends a net's path and refreshes its vias and the used rows.
void add_net_path(RoutedChannel& routed, NetId net, std::span<const Segment> path);

struct ShortCircuit {
    NetId net_a = 0;
    NetId net_b = 0;
    GridPoint at;
    int layer = 0;
};
struct Disconnected {
    NetId net = 0;
    GridPoint at;  // terminal (or stray geometry) not reached from the first terminal
};
struct OutOfBounds {
    NetId net = 0;
    Segment segment;
};
struct WrongOrientation {
    NetId net = 0;
    Segment segment;
};

using Violation = std::variant<ShortCircuit, Disconnected, OutOfBounds, WrongOrientation>;

std::string violation_kind(const Violation& v);
std::string describe(const Violation& v);

class UnknownNetError : public std::invalid_argument {
public:
    explicit UnknownNetError(NetId net);
    NetId net() const { return net_; }

private:
    NetId net_;
};

std::vector<Violation> validate(const ChannelSpec& spec, const RoutedChannel& routed);

struct Metrics {
    int layers_used = 0;
    int tracks_used = 0;
    int total_length = 0;
    int via_count = 0;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

Metrics metrics(const RoutedChannel& routed);

/// Quality order: fewer layers, then fewer tracks, then shorter wire.
bool better_quality(const Metrics& a, const Metrics& b);

}  // namespace canal
