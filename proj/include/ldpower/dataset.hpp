#pragma once

#include "ldpower/delegation.hpp"
#include "ldpower/quorum.hpp"
#include "ldpower/time.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ldpower {

struct Area {
    std::string id;
    std::string name;
    friend bool operator==(const Area&, const Area&) = default;
};

struct Issue {
    std::string id;
    std::string area_id;
    Quorum quorum{2, 3};
    friend bool operator==(const Issue&, const Issue&) = default;
};

struct Initiative {
    std::string id;
    std::string issue_id;
    std::optional<VoterId> author;
    friend bool operator==(const Initiative&, const Initiative&) = default;
};

struct Ballot {
    std::string initiative_id;
    VoterId voter;
    bool yes = false;
    Timestamp ts{};
    friend bool operator==(const Ballot&, const Ballot&) = default;
};

// Raw voting platform data: users, areas, issues, initiatives, ballots, delegation log.
struct Dataset {
    std::vector<VoterId> users;
    std::vector<Area> areas;
    std::vector<Issue> issues;
    std::vector<Initiative> initiatives;
    std::vector<Ballot> ballots;
    std::vector<DelegationEdge> delegations;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Referential integrity and uniqueness checks. Collects every violation, then throws
// DataError naming file and row (row 1 is the CSV header).
void validate(const Dataset& dataset);

} // namespace ldpower
