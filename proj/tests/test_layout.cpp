#include <deque>
#include <random>

#include "doctest.h"

#include "canal/generator.hpp"
#include "canal/layout.hpp"
#include "canal/router.hpp"
#include "oracles.hpp"

using namespace canal;

namespace {

RoutedChannel with_rows(int max_rows) {
    RoutedChannel r;
    r.config.max_rows = max_rows;
    return r;
}

template <class T>
int count_kind(const std::vector<Violation>& v) {
    return static_cast<int>(std::count_if(v.begin(), v.end(), [](const Violation& x) { return std::holds_alternative<T>(x); }));
}

// Two-terminal net 1 from (top,0) to (bottom,3) on trunk row `row` of a 3-row channel.
std::vector<Segment> l_route(int row) {
    return {{kVerticalLayer, {0, 4}, {0, row}}, {kHorizontalLayer, {0, row}, {3, row}}, {kVerticalLayer, {3, row}, {3, 0}}};
}

/// Flood fill over rasterized geometry, ignoring layers; used to double-check connectivity verdicts.
bool flood_connected(const std::vector<Segment>& segs, GridPoint from, GridPoint to) {
    std::set<GridPoint> cells;
    for (const auto& s : segs)
        for (auto p : rasterize(s)) cells.insert(p);
    std::set<GridPoint> seen{from};
    std::deque<GridPoint> q{from};
    while (!q.empty()) {
        auto p = q.front();
        q.pop_front();
        for (GridPoint n : {GridPoint{p.column + 1, p.row}, GridPoint{p.column - 1, p.row}, GridPoint{p.column, p.row + 1},
                            GridPoint{p.column, p.row - 1}})
            if (cells.contains(n) && seen.insert(n).second) q.push_back(n);
    }
    return seen.contains(to);
}

}  // namespace

TEST_CASE("validate: same-column net routed as one vertical is clean") {
    auto spec = oracle::spec_from_rows({0, 1}, {0, 1});
    auto r = with_rows(2);
    std::vector<Segment> path{{kVerticalLayer, {1, 3}, {1, 0}}};
    add_net_path(r, 1, path);
    CHECK(validate(spec, r).empty());
    auto m = metrics(r);
    CHECK(m.total_length == 3);
    CHECK(m.layers_used == 1);
    CHECK(m.via_count == 0);
    CHECK(m.tracks_used == 0);
}

TEST_CASE("validate: overlapping trunks on one row short at their first shared point") {
    auto spec = oracle::spec_from_rows({1, 2, 0, 0}, {0, 0, 1, 2});
    auto r = with_rows(2);
    std::vector<Segment> a{{kVerticalLayer, {0, 3}, {0, 1}}, {kHorizontalLayer, {0, 1}, {2, 1}}, {kVerticalLayer, {2, 1}, {2, 0}}};
    std::vector<Segment> b{{kVerticalLayer, {1, 3}, {1, 1}}, {kHorizontalLayer, {1, 1}, {3, 1}}, {kVerticalLayer, {3, 1}, {3, 0}}};
    add_net_path(r, 1, a);
    add_net_path(r, 2, b);
    auto v = validate(spec, r);

    // Oracle: the smallest grid point both trunks rasterize to.
    std::set<GridPoint> pa, pb;
    for (auto p : rasterize(a[1])) pa.insert(p);
    for (auto p : rasterize(b[1])) pb.insert(p);
    std::vector<GridPoint> shared;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(shared));
    REQUIRE(!shared.empty());

    bool found = false;
    for (const auto& x : v) {
        if (auto* s = std::get_if<ShortCircuit>(&x); s && s->layer == kHorizontalLayer) {
            CHECK(s->net_a == 1);
            CHECK(s->net_b == 2);
            CHECK(s->at == shared.front());
            found = true;
        }
    }
    CHECK(found);
    CHECK(count_kind<Disconnected>(v) == 0);
}

TEST_CASE("validate: a trunk without its rise leaves the right terminal disconnected") {
    auto spec = oracle::spec_from_rows({1, 0, 0, 0}, {0, 0, 0, 1});
    auto r = with_rows(3);
    auto path = l_route(2);
    path.pop_back();
    add_net_path(r, 1, path);
    auto v = validate(spec, r);
    REQUIRE(v.size() == 1);
    auto* d = std::get_if<Disconnected>(&v[0]);
    REQUIRE(d != nullptr);
    CHECK(d->net == 1);
    CHECK(d->at == GridPoint{3, 0});
    CHECK_FALSE(flood_connected(path, {0, 4}, {3, 0}));
    CHECK(flood_connected(l_route(2), {0, 4}, {3, 0}));
}

TEST_CASE("validate: crossing layers without a via does not connect") {
    auto spec = oracle::spec_from_rows({1, 0, 0, 0}, {0, 0, 0, 1});
    auto r = with_rows(3);
    auto path = l_route(2);
    r.tracks[1] = path;
    r.rows_used = {2};
    auto v = validate(spec, r);
    CHECK(count_kind<Disconnected>(v) >= 1);
}

TEST_CASE("validate: bounds and orientation") {
    auto spec = oracle::spec_from_rows({1, 0, 0, 0}, {0, 0, 0, 1});
    auto r = with_rows(3);
    add_net_path(r, 1, l_route(4));  // trunk on the top terminal row
    CHECK(count_kind<OutOfBounds>(validate(spec, r)) == 1);

    auto w = with_rows(3);
    std::vector<Segment> wrong{{kHorizontalLayer, {0, 4}, {0, 2}}, {kVerticalLayer, {0, 2}, {3, 2}},
                               {kHorizontalLayer, {3, 2}, {3, 0}}};
    add_net_path(w, 1, wrong);
    CHECK(count_kind<WrongOrientation>(validate(spec, w)) == 3);

    auto wide = with_rows(3);
    std::vector<Segment> off{{kVerticalLayer, {0, 4}, {0, 2}}, {kHorizontalLayer, {0, 2}, {7, 2}},
                             {kVerticalLayer, {7, 2}, {7, 0}}};
    add_net_path(wide, 1, off);
    CHECK(count_kind<OutOfBounds>(validate(spec, wide)) == 2);
}

TEST_CASE("validate: unknown net is an error") {
    auto spec = oracle::spec_from_rows({1, 1}, {0, 0});
    auto r = with_rows(1);
    std::vector<Segment> path{{kVerticalLayer, {0, 2}, {0, 0}}};
    add_net_path(r, 9, path);
    CHECK_THROWS_AS(validate(spec, r), UnknownNetError);
}

TEST_CASE("validate: a net touching another net's terminal shorts") {
    auto spec = oracle::spec_from_rows({1, 2}, {2, 1});
    auto r = with_rows(2);
    // Net 1 runs straight down column 0 onto net 2's bottom pin.
    std::vector<Segment> p1{{kVerticalLayer, {0, 3}, {0, 0}}};
    add_net_path(r, 1, p1);
    auto v = validate(spec, r);
    bool on_pin = false;
    for (const auto& x : v)
        if (auto* s = std::get_if<ShortCircuit>(&x)) on_pin |= s->at == GridPoint{0, 0} && s->layer == kVerticalLayer;
    CHECK(on_pin);
}

TEST_CASE("metrics: two-terminal net with trunk sums drop, trunk and rise") {
    auto r = with_rows(3);
    add_net_path(r, 1, l_route(2));
    auto m = metrics(r);
    CHECK(m.total_length == 2 + 3 + 2);
    CHECK(m.via_count == 2);
    CHECK(m.layers_used == 2);
    CHECK(m.tracks_used == 1);
    CHECK(metrics(with_rows(3)) == Metrics{});
}

TEST_CASE("derive_vias marks each layer change once") {
    auto vias = derive_vias(l_route(2));
    CHECK(vias == std::vector<Via>{{{0, 2}}, {{3, 2}}});
}

TEST_CASE("better_quality orders layers, then tracks, then length") {
    CHECK(better_quality({1, 5, 100, 0}, {2, 1, 1, 0}));
    CHECK(better_quality({2, 2, 100, 9}, {2, 3, 1, 0}));
    CHECK(better_quality({2, 2, 10, 9}, {2, 2, 11, 0}));
    CHECK_FALSE(better_quality({2, 2, 10, 0}, {2, 2, 10, 5}));
}

TEST_CASE("clean routings: monotone under net removal, raster length and disjoint rasters") {
    std::mt19937_64 rng(44);
    GeneratorParams p;
    p.min_columns = 8, p.max_columns = 30, p.min_nets = 3, p.max_nets = 12;
    p.allow_single_column = true;
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        ChannelSpec spec = random_channel(rng, p);
        RouterConfig cfg;
        cfg.max_rows = 40;
        auto res = route_dogleg(spec, cfg);
        if (!res.ok()) continue;
        REQUIRE(validate(spec, res.routed).empty());
        ++checked;

        CHECK(metrics(res.routed).total_length == oracle::raster_length(res.routed));

        std::map<std::pair<GridPoint, int>, NetId> owner;
        for (const auto& [id, segs] : res.routed.tracks)
            for (const auto& s : segs)
                for (auto pt : rasterize(s)) {
                    auto [it, fresh] = owner.try_emplace({pt, s.layer}, id);
                    CHECK((fresh || it->second == id));
                }

        auto nets = nets_of(spec);
        if (nets.empty()) continue;
        NetId drop = nets[nets.size() / 2].id;
        ChannelSpec smaller = spec;
        for (auto& x : smaller.top) if (x == drop) x = 0;
        for (auto& x : smaller.bottom) if (x == drop) x = 0;
        RoutedChannel fewer = res.routed;
        fewer.tracks.erase(drop);
        fewer.vias.erase(drop);
        CHECK(validate(smaller, fewer).empty());
    }
    CHECK(checked > 50);
}
