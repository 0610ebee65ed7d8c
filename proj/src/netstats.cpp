#include "ldpower/netstats.hpp"

#include "ldpower/error.hpp"
#include "ldpower/estimation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ldpower {

DelegationGraph::DelegationGraph(const DelegationSnapshot& snapshot) {
    for (const auto& e : snapshot.edges()) add_edge(e.truster, e.trustee);
}

void DelegationGraph::add_edge(const VoterId& from, const VoterId& to) {
    if (from == to) throw InvalidInput("delegation graph: self-loop at '" + from + "'");
    nodes_.insert(from);
    nodes_.insert(to);
    edges_.emplace(from, to);
}

void DelegationGraph::add_node(const VoterId& node) {
    nodes_.insert(node);
}

std::vector<double> DelegationGraph::indegrees() const {
    std::map<VoterId, double> in;
    for (const auto& n : nodes_) in[n] = 0.0;
    for (const auto& [from, to] : edges_) in[to] += 1.0;
    std::vector<double> out;
    out.reserve(in.size());
    for (const auto& [n, d] : in) out.push_back(d);
    return out;
}

DelegationGraph DelegationGraph::reversed() const {
    DelegationGraph g;
    for (const auto& n : nodes_) g.add_node(n);
    for (const auto& [from, to] : edges_) g.add_edge(to, from);
    return g;
}

std::optional<double> reciprocity(const DelegationGraph& graph) {
    const auto& edges = graph.edges();
    if (edges.empty()) return std::nullopt;
    const auto mutual = std::count_if(edges.begin(), edges.end(), [&](const auto& e) {
        return edges.contains({e.second, e.first});
    });
    return static_cast<double>(mutual) / static_cast<double>(edges.size());
}

namespace {

// Undirected adjacency over dense node indices.
std::vector<std::vector<std::size_t>> undirected(const DelegationGraph& graph) {
    std::map<VoterId, std::size_t> index;
    for (const auto& n : graph.nodes()) index.emplace(n, index.size());
    std::vector<std::vector<std::size_t>> adj(index.size());
    for (const auto& [from, to] : graph.edges()) {
        adj[index[from]].push_back(index[to]);
        adj[index[to]].push_back(index[from]);
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

} // namespace

std::optional<double> clustering_coefficient(const DelegationGraph& graph) {
    const auto adj = undirected(graph);
    double wedges = 0.0;
    double closed = 0.0; // each triangle is seen once per vertex as a closed wedge
    for (std::size_t v = 0; v < adj.size(); ++v) {
        const auto d = static_cast<double>(adj[v].size());
        wedges += d * (d - 1.0) / 2.0;
        for (std::size_t a = 0; a < adj[v].size(); ++a)
            for (std::size_t b = a + 1; b < adj[v].size(); ++b)
                if (std::binary_search(adj[adj[v][a]].begin(), adj[adj[v][a]].end(), adj[v][b])) closed += 1.0;
    }
    if (wedges == 0.0) return std::nullopt;
    return closed / wedges;
}

std::size_t largest_component(const DelegationGraph& graph) {
    const auto adj = undirected(graph);
    std::vector<std::size_t> parent(adj.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (auto u : adj[v]) parent[find(u)] = find(v);
    std::vector<std::size_t> size(adj.size(), 0);
    std::size_t best = 0;
    for (std::size_t v = 0; v < adj.size(); ++v) best = std::max(best, ++size[find(v)]);
    return best;
}

NetStatsRow snapshot_stats(const DelegationSnapshot& snapshot, Timestamp at, GiniDomain domain) {
    const DelegationGraph graph(snapshot);
    NetStatsRow row;
    row.date = at;
    row.nodes = graph.nodes().size();
    row.edges = snapshot.edges().size();
    auto in = graph.indegrees();
    if (!in.empty())
        row.mean_indegree = std::accumulate(in.begin(), in.end(), 0.0) / static_cast<double>(in.size());
    if (domain == GiniDomain::receivers_only) std::erase(in, 0.0);
    row.indegree_gini = gini(in);
    row.reciprocity = reciprocity(graph);
    row.clustering = clustering_coefficient(graph);
    row.largest_component = largest_component(graph);
    return row;
}

std::vector<NetStatsRow> stats_time_series(std::span<const DelegationEdge> log, GiniDomain domain) {
    std::vector<NetStatsRow> rows;
    if (log.empty()) return rows;
    Timestamp first = log.front().valid_from;
    Timestamp last = first;
    for (const auto& e : log) {
        first = std::min(first, e.valid_from);
        last = std::max(last, e.valid_from);
        if (e.valid_to) last = std::max(last, *e.valid_to);
    }
    using std::chrono::days;
    std::vector<bool> previous(log.size(), false);
    for (Timestamp day = start_of_day(first) + days{1}; day <= start_of_day(last) + days{1}; day += days{1}) {
        std::vector<DelegationEdge> active;
        std::size_t added = 0;
        std::size_t removed = 0;
        for (std::size_t i = 0; i < log.size(); ++i) {
            const bool now = log[i].active_at(day);
            if (now) active.push_back(log[i]);
            if (now && !previous[i]) ++added;
            if (!now && previous[i]) ++removed;
            previous[i] = now;
        }
        auto row = snapshot_stats(DelegationSnapshot(active), day, domain);
        row.added = added;
        row.removed = removed;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace ldpower
