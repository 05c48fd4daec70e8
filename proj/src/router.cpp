#include "canal/router.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>

namespace canal {

namespace {

GridPoint terminal_point(const Terminal& t, int max_rows) { return {t.column, terminal_row(t.side, max_rows)}; }

/// Trunk at `row` joined to every terminal by a vertical branch, terminals visited in column order.
std::vector<Segment> trunk_path(std::span<const Terminal> terminals, int row, int max_rows) {
    std::vector<Segment> path;
    if (terminals.front().column == terminals.back().column) {
        path.push_back({kVerticalLayer, terminal_point(terminals.front(), max_rows),
                        terminal_point(terminals.back(), max_rows)});
        return path;
    }
    const int c0 = terminals.front().column;
    path.push_back({kVerticalLayer, terminal_point(terminals.front(), max_rows), {c0, row}});
    for (std::size_t i = 1; i < terminals.size(); ++i) {
        const int prev = terminals[i - 1].column;
        const int cur = terminals[i].column;
        if (cur != prev) path.push_back({kHorizontalLayer, {prev, row}, {cur, row}});
        path.push_back({kVerticalLayer, {cur, row}, terminal_point(terminals[i], max_rows)});
    }
    return path;
}

struct TrunkJob {
    int key = 0;
    int left = 0;
    int right = 0;
};

struct TrackAssignment {
    std::map<int, int> row_of;  // key -> row
    bool exhausted = false;
};

/// Constrained left-edge: fill rows from the top, each row packed left to right with jobs
/// whose VCG predecessors all sit in rows already closed.
TrackAssignment assign_left_edge(std::vector<TrunkJob> jobs, const Digraph& vcg, int max_rows) {
    std::map<int, std::vector<int>> preds;
    for (auto [from, to] : vcg.edges()) preds[to].push_back(from);

    std::sort(jobs.begin(), jobs.end(), [](const TrunkJob& a, const TrunkJob& b) {
        return a.left != b.left ? a.left < b.left : a.key < b.key;
    });
    std::set<int> job_keys;
    for (const auto& j : jobs) job_keys.insert(j.key);

    TrackAssignment out;
    std::set<int> closed;  // keys placed in earlier rows
    for (int row = max_rows; !jobs.empty(); --row) {
        if (row < 1) {
            out.exhausted = true;
            return out;
        }
        int watermark = INT_MIN;
        std::vector<TrunkJob> rest;
        std::vector<int> placed_here;
        for (const TrunkJob& job : jobs) {
            bool ready = job.left > watermark;
            for (int p : preds[job.key]) {
                if (ready && job_keys.contains(p) && !closed.contains(p)) ready = false;
            }
            if (ready) {
                out.row_of[job.key] = row;
                watermark = job.right;
                placed_here.push_back(job.key);
            } else {
                rest.push_back(job);
            }
        }
        if (placed_here.empty()) {
            // Only reachable with a cyclic VCG; callers reject those first.
            out.exhausted = true;
            return out;
        }
        closed.insert(placed_here.begin(), placed_here.end());
        jobs = std::move(rest);
    }
    return out;
}

RouteFailure rows_exhausted(int max_rows) {
    return {FailureKind::RowsExhausted, {}, "no free row among " + std::to_string(max_rows) + " track rows"};
}

RouteFailure cyclic(std::vector<NetId> cycle) {
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
    std::string text;
    for (NetId id : cycle) text += (text.empty() ? "" : " -> ") + std::to_string(id);
    return {FailureKind::CyclicVcg, std::move(cycle), "vertical constraint cycle: " + text};
}

std::set<int> reach(const Digraph& g, int from, bool forward) {
    std::map<int, std::vector<int>> back;
    if (!forward)
        for (auto [a, b] : g.edges()) back[b].push_back(a);
    std::set<int> seen;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        auto visit = [&](int w) {
            if (seen.insert(w).second) queue.push_back(w);
        };
        if (forward) {
            for (int w : g.successors(v)) visit(w);
        } else {
            for (int w : back[v]) visit(w);
        }
    }
    return seen;
}

std::vector<Subnet> sorted_subnets(const ChannelSpec& spec) {
    auto nets = nets_of(spec);
    auto subs = decompose_multiterminal(nets);
    std::stable_sort(subs.begin(), subs.end(), [](const Subnet& a, const Subnet& b) {
        return std::tie(a.leftmost, a.parent, a.index) < std::tie(b.leftmost, b.parent, b.index);
    });
    return subs;
}

}  // namespace

std::vector<Subnet> decompose_multiterminal(std::span<const Net> nets) {
    std::vector<Subnet> out;
    for (const Net& n : nets) {
        for (std::size_t i = 0; i + 1 < n.terminals.size(); ++i) {
            Subnet s;
            s.parent = n.id;
            s.index = static_cast<int>(i);
            s.terminals = {n.terminals[i], n.terminals[i + 1]};
            s.leftmost = n.terminals[i].column;
            s.rightmost = n.terminals[i + 1].column;
            out.push_back(s);
        }
    }
    return out;
}

SubnetGraphs subnet_constraints(std::span<const Subnet> subnets) {
    std::vector<ConstraintItem> items;
    items.reserve(subnets.size());
    for (std::size_t i = 0; i < subnets.size(); ++i) {
        const Subnet& s = subnets[i];
        items.push_back({static_cast<int>(i), s.parent, s.leftmost, s.rightmost, {s.terminals[0], s.terminals[1]}});
    }
    return {overlap_graph(items), column_graph(items)};
}

const char* to_string(FailureKind kind) {
    switch (kind) {
        case FailureKind::CyclicVcg: return "CyclicVcg";
        case FailureKind::RowsExhausted: return "RowsExhausted";
    }
    return "?";
}

const char* to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::left_edge: return "left-edge";
        case Algorithm::dogleg: return "dogleg";
        case Algorithm::adaptive: return "adaptive";
    }
    return "?";
}

std::optional<Algorithm> algorithm_from_string(std::string_view name) {
    for (Algorithm a : {Algorithm::left_edge, Algorithm::dogleg, Algorithm::adaptive})
        if (name == to_string(a)) return a;
    return std::nullopt;
}

RouteResult route_left_edge(const ChannelSpec& spec, const RouterConfig& cfg) {
    const auto nets = nets_of(spec);
    const Digraph vcg = build_vcg(nets);
    if (auto cycle = find_vcg_cycle(vcg)) {
        if (cfg.dogleg_enabled) return route_dogleg(spec, cfg);
        RouteResult r;
        r.routed.config = cfg;
        r.failure = cyclic(*cycle);
        return r;
    }

    std::vector<TrunkJob> jobs;
    for (const Net& n : nets)
        if (!n.single_column()) jobs.push_back({n.id, n.leftmost, n.rightmost});
    const auto assignment = assign_left_edge(jobs, vcg, cfg.max_rows);

    RouteResult r;
    r.routed.config = cfg;
    for (const Net& n : nets) {
        int row = 0;
        if (!n.single_column()) {
            auto it = assignment.row_of.find(n.id);
            if (it == assignment.row_of.end()) continue;
            row = it->second;
        }
        add_net_path(r.routed, n.id, trunk_path(n.terminals, row, cfg.max_rows));
    }
    if (assignment.exhausted) r.failure = rows_exhausted(cfg.max_rows);
    return r;
}

RouteResult route_dogleg(const ChannelSpec& spec, const RouterConfig& cfg) {
    const auto nets = nets_of(spec);
    const auto subs = decompose_multiterminal(nets);
    const auto graphs = subnet_constraints(subs);

    RouteResult r;
    r.routed.config = cfg;
    if (auto cycle = find_vcg_cycle(graphs.vcg)) {
        std::vector<NetId> parents;
        for (int key : *cycle) parents.push_back(subs[key].parent);
        r.failure = cyclic(std::move(parents));
        return r;
    }

    std::vector<TrunkJob> jobs;
    for (std::size_t i = 0; i < subs.size(); ++i)
        if (!subs[i].single_column()) jobs.push_back({static_cast<int>(i), subs[i].leftmost, subs[i].rightmost});
    const auto assignment = assign_left_edge(jobs, graphs.vcg, cfg.max_rows);

    // Subnets are grouped by parent and in chain order, so appending them yields one connected path.
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const Subnet& s = subs[i];
        int row = 0;
        if (!s.single_column()) {
            auto it = assignment.row_of.find(static_cast<int>(i));
            if (it == assignment.row_of.end()) continue;
            row = it->second;
        }
        add_net_path(r.routed, s.parent, trunk_path(s.terminals, row, cfg.max_rows));
    }
    if (assignment.exhausted) r.failure = rows_exhausted(cfg.max_rows);
    return r;
}

std::vector<int> policy_row_order(PolicyKind kind, int max_rows) {
    std::vector<int> rows;
    switch (kind) {
        case PolicyKind::top_down:
            for (int r = max_rows; r >= 1; --r) rows.push_back(r);
            break;
        case PolicyKind::bottom_up:
            for (int r = 1; r <= max_rows; ++r) rows.push_back(r);
            break;
        case PolicyKind::middle_out:
        case PolicyKind::density_weighted: {
            const int mid = max_rows / 2;
            auto keep = [&](int r) {
                if (r >= 1 && r <= max_rows) rows.push_back(r);
            };
            keep(mid);
            for (int step = 1; mid + step <= max_rows || mid - step >= 1; ++step) {
                keep(mid + step);
                keep(mid - step);
            }
            break;
        }
    }
    return rows;
}

std::optional<int> select_row(const Digraph& vcg, const UndirectedGraph& hcg, const FeatureVector& features,
                              std::span<const PlacedTrunk> placed, int pending, const RouterConfig& cfg,
                              const StrategyBank& bank) {
    const RowSelectionPolicy& policy = bank.lookup(features);
    std::vector<int> order = policy_row_order(policy.kind, cfg.max_rows);

    const auto& rivals = hcg.neighbors(pending);
    if (policy.kind == PolicyKind::density_weighted) {
        std::map<int, int> crowding;
        for (int r : order) {
            int n = 0;
            for (const PlacedTrunk& p : placed)
                if ((p.row == r - 1 || p.row == r + 1) && rivals.contains(p.node)) ++n;
            crowding[r] = n;
        }
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return crowding[a] < crowding[b]; });
    }

    const auto ancestors = reach(vcg, pending, false);
    const auto descendants = reach(vcg, pending, true);
    for (int r : order) {
        bool ok = true;
        for (const PlacedTrunk& p : placed) {
            if (p.row == r && rivals.contains(p.node)) ok = false;
            if (ancestors.contains(p.node) && p.row <= r) ok = false;
            if (descendants.contains(p.node) && p.row >= r) ok = false;
            if (!ok) break;
        }
        if (ok) return r;
    }
    return std::nullopt;
}

RouteResult route_adaptive(const ChannelSpec& spec, const RouterConfig& cfg, const StrategyBank& bank) {
    const auto subs = sorted_subnets(spec);
    const auto graphs = subnet_constraints(subs);
    const auto features = extract_features(spec);

    RouteResult r;
    r.routed.config = cfg;
    // No row choice can satisfy a cyclic VCG; say so instead of running out of rows.
    if (auto cycle = find_vcg_cycle(graphs.vcg)) {
        std::vector<NetId> parents;
        for (int key : *cycle) parents.push_back(subs[key].parent);
        r.failure = cyclic(std::move(parents));
        return r;
    }
    const auto middle = policy_row_order(PolicyKind::middle_out, cfg.max_rows);
    if (middle.empty()) {
        r.failure = rows_exhausted(cfg.max_rows);
        return r;
    }
    int row = middle.front();
    std::vector<PlacedTrunk> placed;

    for (std::size_t i = 0; i < subs.size(); ++i) {
        const Subnet& s = subs[i];
        add_net_path(r.routed, s.parent, trunk_path(s.terminals, row, cfg.max_rows));
        if (s.single_column()) continue;
        placed.push_back({static_cast<int>(i), row});

        auto next = std::find_if(subs.begin() + static_cast<std::ptrdiff_t>(i) + 1, subs.end(),
                                 [](const Subnet& t) { return !t.single_column(); });
        if (next == subs.end()) continue;
        auto chosen = select_row(graphs.vcg, graphs.hcg, features, placed,
                                 static_cast<int>(next - subs.begin()), cfg, bank);
        if (!chosen) {
            r.failure = rows_exhausted(cfg.max_rows);
            return r;
        }
        row = *chosen;
    }
    return r;
}

RouteResult route(Algorithm algorithm, const ChannelSpec& spec, const RouterConfig& cfg, const StrategyBank& bank) {
    switch (algorithm) {
        case Algorithm::left_edge: return route_left_edge(spec, cfg);
        case Algorithm::dogleg: return route_dogleg(spec, cfg);
        case Algorithm::adaptive: return route_adaptive(spec, cfg, bank);
    }
    return {};
}

}  // namespace canal
