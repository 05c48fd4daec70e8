#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "canal/netlist.hpp"

namespace canal {

class UndirectedGraph {
public:
    void add_node(int v) { adj_[v]; }
    void add_edge(int a, int b);
    bool has_edge(int a, int b) const;
    const std::set<int>& neighbors(int v) const;

    std::vector<int> nodes() const;
    /// Edges as (a, b) with a < b, ascending.
    std::vector<std::pair<int, int>> edges() const;
    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const;

    friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

private:
    std::map<int, std::set<int>> adj_;
};

class Digraph {
public:
    void add_node(int v) { succ_[v]; }
    void add_edge(int from, int to);
    bool has_edge(int from, int to) const;
    const std::set<int>& successors(int v) const;

    std::vector<int> nodes() const;
    /// Edges ascending by (source, target).
    std::vector<std::pair<int, int>> edges() const;
    std::size_t node_count() const { return succ_.size(); }
    std::size_t edge_count() const;

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    std::map<int, std::set<int>> succ_;
};

/// Anything with a column span and terminals: a whole net or a decomposed subnet.
/// Items sharing a `group` belong to one electrical net and never constrain each other.
struct ConstraintItem {
    int key = 0;
    int group = 0;
    int leftmost = 0;
    int rightmost = 0;
    std::vector<Terminal> terminals;
};

/// Edge {a,b} iff the closed spans of a and b intersect.
UndirectedGraph overlap_graph(std::span<const ConstraintItem> items);
/// Edge a->b iff some column has a terminal of a on top and of b on the bottom.
Digraph column_graph(std::span<const ConstraintItem> items);

UndirectedGraph build_hcg(std::span<const Net> nets);
Digraph build_vcg(std::span<const Net> nets);

/// Some directed cycle, rotated to start at its smallest node, or nullopt if acyclic.
std::optional<std::vector<int>> find_vcg_cycle(const Digraph& vcg);

struct Density {
    int density = 0;
    int column = 0;
};

/// Max number of net spans covering one column; witness is the smallest such column.
Density channel_density(const ChannelSpec& spec);

struct ConstraintGraphs {
    UndirectedGraph hcg;
    Digraph vcg;
    int density = 0;
    int density_column = 0;
};

ConstraintGraphs analyze_constraints(const ChannelSpec& spec);

}  // namespace canal
