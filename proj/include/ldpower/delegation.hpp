#pragma once

#include "ldpower/game.hpp"
#include "ldpower/time.hpp"

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ldpower {

enum class ScopeKind { global, area, issue };

struct Scope {
    ScopeKind kind = ScopeKind::global;
    std::string id; // area or issue id; empty for global

    friend auto operator<=>(const Scope&, const Scope&) = default;
};

std::string to_string(ScopeKind kind);
ScopeKind parse_scope_kind(const std::string& text);

struct DelegationEdge {
    VoterId truster;
    VoterId trustee;
    Scope scope;
    Timestamp valid_from{};
    std::optional<Timestamp> valid_to;

    bool active_at(Timestamp t) const noexcept {
        return valid_from <= t && (!valid_to || t < *valid_to);
    }

    friend bool operator==(const DelegationEdge&, const DelegationEdge&) = default;
};

// Throws InvalidInput for self-delegation, an empty interval, or a scoped edge without id.
void validate(const DelegationEdge& edge);

struct IssueRef {
    std::string issue;
    std::string area;
};

// Delegations in force at one instant; at most one trustee per truster and scope.
class DelegationSnapshot {
public:
    DelegationSnapshot() = default;
    explicit DelegationSnapshot(std::span<const DelegationEdge> edges);

    // Most specific applicable delegation: issue, then area, then global.
    std::optional<VoterId> active_edge(const VoterId& voter, const IssueRef& issue) const;

    const std::vector<DelegationEdge>& edges() const noexcept { return edges_; }
    bool empty() const noexcept { return edges_.empty(); }

private:
    struct Outgoing {
        std::optional<VoterId> global;
        std::map<std::string, VoterId> by_area;
        std::map<std::string, VoterId> by_issue;
    };
    std::vector<DelegationEdge> edges_;
    std::unordered_map<VoterId, Outgoing> outgoing_;
};

std::optional<VoterId> active_edge(const DelegationSnapshot& snapshot, const VoterId& voter,
                                   const IssueRef& issue);

// Edges with valid_from <= t < valid_to.
DelegationSnapshot delegation_graph_at(std::span<const DelegationEdge> log, Timestamp t);

struct EffectiveWeights {
    // Direct voters only: 1 + number of voters whose chain ends at them.
    std::map<VoterId, std::int64_t> weight;
    // For each direct voter, the delegators absorbed (sorted).
    std::map<VoterId, std::vector<VoterId>> absorbed;
    // Eligible non-direct voters whose chain hits a cycle or a non-voting sink.
    std::set<VoterId> unresolved;
};

EffectiveWeights resolve_weights(const DelegationSnapshot& snapshot, const IssueRef& issue,
                                 const std::set<VoterId>& direct_voters,
                                 const std::set<VoterId>& eligible);

} // namespace ldpower
