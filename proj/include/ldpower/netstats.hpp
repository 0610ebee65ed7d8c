#pragma once

#include "ldpower/delegation.hpp"

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ldpower {

// Directed truster -> trustee graph; parallel delegations in different scopes collapse.
class DelegationGraph {
public:
    DelegationGraph() = default;
    explicit DelegationGraph(const DelegationSnapshot& snapshot);

    // Throws InvalidInput on a self-loop.
    void add_edge(const VoterId& from, const VoterId& to);
    void add_node(const VoterId& node);

    const std::set<VoterId>& nodes() const noexcept { return nodes_; }
    const std::set<std::pair<VoterId, VoterId>>& edges() const noexcept { return edges_; }

    std::vector<double> indegrees() const;    // over all nodes, in node order
    DelegationGraph reversed() const;

private:
    std::set<VoterId> nodes_;
    std::set<std::pair<VoterId, VoterId>> edges_;
};

// Share of edges whose reverse edge also exists; nullopt without edges.
std::optional<double> reciprocity(const DelegationGraph& graph);

// 3 * triangles / connected triples on the undirected projection; nullopt without wedges.
std::optional<double> clustering_coefficient(const DelegationGraph& graph);

// Nodes in the largest weakly connected component.
std::size_t largest_component(const DelegationGraph& graph);

enum class GiniDomain {
    all_nodes,      // every node in the snapshot graph
    receivers_only, // nodes with indegree >= 1
};

struct NetStatsRow {
    Timestamp date{};
    std::size_t nodes = 0;
    std::size_t edges = 0;       // raw delegations in force
    std::size_t added = 0;       // raw delegations new since the previous row
    std::size_t removed = 0;     // raw delegations gone since the previous row
    double mean_indegree = 0.0;  // over graph nodes
    std::optional<double> indegree_gini;
    std::optional<double> reciprocity;
    std::optional<double> clustering;
    std::size_t largest_component = 0;
};

// One row per day at 00:00 UTC, from the day after the first event to the day after the last.
std::vector<NetStatsRow> stats_time_series(std::span<const DelegationEdge> log,
                                           GiniDomain domain = GiniDomain::all_nodes);

NetStatsRow snapshot_stats(const DelegationSnapshot& snapshot, Timestamp at, GiniDomain domain);

} // namespace ldpower
