#include "ldpower/delegation.hpp"

#include "ldpower/error.hpp"

#include <unordered_set>

namespace ldpower {

std::string to_string(ScopeKind kind) {
    switch (kind) {
    case ScopeKind::global: return "global";
    case ScopeKind::area: return "area";
    case ScopeKind::issue: return "issue";
    }
    return "global";
}

ScopeKind parse_scope_kind(const std::string& text) {
    if (text == "global") return ScopeKind::global;
    if (text == "area") return ScopeKind::area;
    if (text == "issue") return ScopeKind::issue;
    throw InvalidInput("unknown delegation scope '" + text + "'");
}

void validate(const DelegationEdge& edge) {
    if (edge.truster == edge.trustee) throw InvalidInput("self-delegation of '" + edge.truster + "'");
    if (edge.valid_to && !(edge.valid_from < *edge.valid_to))
        throw InvalidInput("delegation " + edge.truster + "->" + edge.trustee + " has an empty validity interval");
    if ((edge.scope.kind == ScopeKind::global) != edge.scope.id.empty())
        throw InvalidInput("delegation " + edge.truster + "->" + edge.trustee +
                           ": area and issue scopes need an id, global scope must not have one");
}

DelegationSnapshot::DelegationSnapshot(std::span<const DelegationEdge> edges)
    : edges_(edges.begin(), edges.end()) {
    for (const auto& e : edges_) {
        validate(e);
        auto& out = outgoing_[e.truster];
        const auto duplicate = [&] {
            return InvalidInput("voter '" + e.truster + "' has two active delegations in scope " +
                                to_string(e.scope.kind) + (e.scope.id.empty() ? "" : " " + e.scope.id));
        };
        switch (e.scope.kind) {
        case ScopeKind::global:
            if (out.global) throw duplicate();
            out.global = e.trustee;
            break;
        case ScopeKind::area:
            if (!out.by_area.emplace(e.scope.id, e.trustee).second) throw duplicate();
            break;
        case ScopeKind::issue:
            if (!out.by_issue.emplace(e.scope.id, e.trustee).second) throw duplicate();
            break;
        }
    }
}

std::optional<VoterId> DelegationSnapshot::active_edge(const VoterId& voter, const IssueRef& issue) const {
    const auto it = outgoing_.find(voter);
    if (it == outgoing_.end()) return std::nullopt;
    const auto& out = it->second;
    if (auto i = out.by_issue.find(issue.issue); i != out.by_issue.end()) return i->second;
    if (auto a = out.by_area.find(issue.area); a != out.by_area.end()) return a->second;
    return out.global;
}

std::optional<VoterId> active_edge(const DelegationSnapshot& snapshot, const VoterId& voter,
                                   const IssueRef& issue) {
    return snapshot.active_edge(voter, issue);
}

DelegationSnapshot delegation_graph_at(std::span<const DelegationEdge> log, Timestamp t) {
    std::vector<DelegationEdge> active;
    for (const auto& e : log)
        if (e.active_at(t)) active.push_back(e);
    return DelegationSnapshot(active);
}

EffectiveWeights resolve_weights(const DelegationSnapshot& snapshot, const IssueRef& issue,
                                 const std::set<VoterId>& direct_voters,
                                 const std::set<VoterId>& eligible) {
    EffectiveWeights out;
    for (const auto& v : direct_voters) {
        if (!eligible.contains(v)) throw InvalidInput("direct voter '" + v + "' is not eligible");
        out.weight[v] = 1;
        out.absorbed[v];
    }
    for (const auto& voter : eligible) {
        if (direct_voters.contains(voter)) continue;
        std::unordered_set<VoterId> seen{voter};
        std::optional<VoterId> sink;
        VoterId current = voter;
        // Every hop visits a new voter, so the walk ends after at most |eligible| steps
        // plus one step off the eligible set.
        while (true) {
            auto next = snapshot.active_edge(current, issue);
            if (!next || !seen.insert(*next).second) break;
            if (direct_voters.contains(*next)) {
                sink = *next;
                break;
            }
            current = *next;
        }
        if (sink) {
            ++out.weight[*sink];
            out.absorbed[*sink].push_back(voter);
        } else {
            out.unresolved.insert(voter);
        }
    }
    return out;
}

} // namespace ldpower
