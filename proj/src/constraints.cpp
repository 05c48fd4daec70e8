#include "canal/constraints.hpp"

#include <algorithm>

namespace canal {

namespace {

const std::set<int>& empty_set() {
    static const std::set<int> empty;
    return empty;
}

std::vector<ConstraintItem> items_of(std::span<const Net> nets) {
    std::vector<ConstraintItem> items;
    items.reserve(nets.size());
    for (const Net& n : nets) items.push_back({n.id, n.id, n.leftmost, n.rightmost, n.terminals});
    return items;
}

}  // namespace

void UndirectedGraph::add_edge(int a, int b) {
    adj_[a].insert(b);
    adj_[b].insert(a);
}

bool UndirectedGraph::has_edge(int a, int b) const {
    auto it = adj_.find(a);
    return it != adj_.end() && it->second.contains(b);
}

const std::set<int>& UndirectedGraph::neighbors(int v) const {
    auto it = adj_.find(v);
    return it == adj_.end() ? empty_set() : it->second;
}

std::vector<int> UndirectedGraph::nodes() const {
    std::vector<int> out;
    for (const auto& [v, _] : adj_) out.push_back(v);
    return out;
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [a, ns] : adj_)
        for (int b : ns)
            if (a < b) out.emplace_back(a, b);
    return out;
}

std::size_t UndirectedGraph::edge_count() const { return edges().size(); }

void Digraph::add_edge(int from, int to) {
    succ_[from].insert(to);
    succ_[to];
}

bool Digraph::has_edge(int from, int to) const {
    auto it = succ_.find(from);
    return it != succ_.end() && it->second.contains(to);
}

const std::set<int>& Digraph::successors(int v) const {
    auto it = succ_.find(v);
    return it == succ_.end() ? empty_set() : it->second;
}

std::vector<int> Digraph::nodes() const {
    std::vector<int> out;
    for (const auto& [v, _] : succ_) out.push_back(v);
    return out;
}

std::vector<std::pair<int, int>> Digraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [a, ns] : succ_)
        for (int b : ns) out.emplace_back(a, b);
    return out;
}

std::size_t Digraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& [_, ns] : succ_) n += ns.size();
    return n;
}

UndirectedGraph overlap_graph(std::span<const ConstraintItem> items) {
    UndirectedGraph g;
    for (const auto& it : items) g.add_node(it.key);

    // Sweep by left edge; an item only needs comparing with items starting before its right edge.
    std::vector<const ConstraintItem*> order;
    for (const auto& it : items) order.push_back(&it);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        return a->leftmost != b->leftmost ? a->leftmost < b->leftmost : a->key < b->key;
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size() && order[j]->leftmost <= order[i]->rightmost; ++j) {
            if (order[i]->group != order[j]->group) g.add_edge(order[i]->key, order[j]->key);
        }
    }
    return g;
}

Digraph column_graph(std::span<const ConstraintItem> items) {
    Digraph g;
    std::map<int, std::vector<const ConstraintItem*>> top_at;
    std::map<int, std::vector<const ConstraintItem*>> bottom_at;
    for (const auto& it : items) {
        g.add_node(it.key);
        for (const Terminal& t : it.terminals) {
            (t.side == Side::top ? top_at : bottom_at)[t.column].push_back(&it);
        }
    }
    for (const auto& [column, uppers] : top_at) {
        auto lower = bottom_at.find(column);
        if (lower == bottom_at.end()) continue;
        for (const auto* a : uppers)
            for (const auto* b : lower->second)
                if (a->group != b->group) g.add_edge(a->key, b->key);
    }
    return g;
}

UndirectedGraph build_hcg(std::span<const Net> nets) {
    auto items = items_of(nets);
    return overlap_graph(items);
}

Digraph build_vcg(std::span<const Net> nets) {
    auto items = items_of(nets);
    return column_graph(items);
}

std::optional<std::vector<int>> find_vcg_cycle(const Digraph& vcg) {
    enum class Mark { white, gray, black };
    std::map<int, Mark> mark;
    for (int v : vcg.nodes()) mark[v] = Mark::white;

    struct Frame {
        int node;
        std::set<int>::const_iterator next;
    };
    for (int root : vcg.nodes()) {
        if (mark[root] != Mark::white) continue;
        std::vector<Frame> stack{{root, vcg.successors(root).begin()}};
        mark[root] = Mark::gray;
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next == vcg.successors(top.node).end()) {
                mark[top.node] = Mark::black;
                stack.pop_back();
                continue;
            }
            int w = *top.next++;
            if (mark[w] == Mark::gray) {
                std::vector<int> cycle;
                auto from = std::find_if(stack.begin(), stack.end(), [w](const Frame& f) { return f.node == w; });
                for (auto it = from; it != stack.end(); ++it) cycle.push_back(it->node);
                std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
                return cycle;
            }
            if (mark[w] == Mark::white) {
                mark[w] = Mark::gray;
                stack.push_back({w, vcg.successors(w).begin()});
            }
        }
    }
    return std::nullopt;
}

Density channel_density(const ChannelSpec& spec) {
    std::vector<int> cover(spec.columns + 1, 0);
    for (const Net& n : nets_of(spec)) {
        ++cover[n.leftmost];
        --cover[n.rightmost + 1];
    }
    Density best;
    int running = 0;
    for (int c = 0; c < spec.columns; ++c) {
        running += cover[c];
        if (running > best.density) best = {running, c};
    }
    return best;
}

ConstraintGraphs analyze_constraints(const ChannelSpec& spec) {
    auto nets = nets_of(spec);
    auto density = channel_density(spec);
    return {build_hcg(nets), build_vcg(nets), density.density, density.column};
}

}  // namespace canal
