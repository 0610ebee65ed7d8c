#include "ldpower/dataset.hpp"

#include "ldpower/error.hpp"

#include <set>
#include <sstream>
#include <unordered_set>

namespace ldpower {

void validate(const Dataset& d) {
    std::vector<std::string> problems;
    const auto report = [&](const std::string& file, std::size_t index, const std::string& what) {
        problems.push_back(file + " row " + std::to_string(index + 2) + ": " + what);
    };

    std::unordered_set<std::string> users;
    for (std::size_t i = 0; i < d.users.size(); ++i)
        if (!users.insert(d.users[i]).second) report("users.csv", i, "duplicate user '" + d.users[i] + "'");

    std::unordered_set<std::string> areas;
    for (std::size_t i = 0; i < d.areas.size(); ++i)
        if (!areas.insert(d.areas[i].id).second) report("areas.csv", i, "duplicate area '" + d.areas[i].id + "'");

    std::unordered_set<std::string> issues;
    for (std::size_t i = 0; i < d.issues.size(); ++i) {
        const auto& issue = d.issues[i];
        if (!issues.insert(issue.id).second) report("issues.csv", i, "duplicate issue '" + issue.id + "'");
        if (!areas.contains(issue.area_id))
            report("issues.csv", i, "issue '" + issue.id + "' references unknown area '" + issue.area_id + "'");
    }

    std::unordered_set<std::string> initiatives;
    for (std::size_t i = 0; i < d.initiatives.size(); ++i) {
        const auto& ini = d.initiatives[i];
        if (!initiatives.insert(ini.id).second)
            report("initiatives.csv", i, "duplicate initiative '" + ini.id + "'");
        if (!issues.contains(ini.issue_id))
            report("initiatives.csv", i, "initiative '" + ini.id + "' references unknown issue '" + ini.issue_id + "'");
        if (ini.author && !users.contains(*ini.author))
            report("initiatives.csv", i, "initiative '" + ini.id + "' has unknown author '" + *ini.author + "'");
    }

    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < d.ballots.size(); ++i) {
        const auto& b = d.ballots[i];
        if (!initiatives.contains(b.initiative_id))
            report("ballots.csv", i, "ballot references unknown initiative '" + b.initiative_id + "'");
        if (!users.contains(b.voter)) report("ballots.csv", i, "ballot references unknown user '" + b.voter + "'");
        if (!seen.emplace(b.initiative_id, b.voter).second)
            report("ballots.csv", i, "duplicate ballot of '" + b.voter + "' on initiative '" + b.initiative_id + "'");
    }

    for (std::size_t i = 0; i < d.delegations.size(); ++i) {
        const auto& e = d.delegations[i];
        try {
            validate(e);
        } catch (const InvalidInput& err) {
            report("delegations.csv", i, err.what());
        }
        if (!users.contains(e.truster)) report("delegations.csv", i, "unknown truster '" + e.truster + "'");
        if (!users.contains(e.trustee)) report("delegations.csv", i, "unknown trustee '" + e.trustee + "'");
        if (e.scope.kind == ScopeKind::area && !areas.contains(e.scope.id))
            report("delegations.csv", i, "unknown area '" + e.scope.id + "'");
        if (e.scope.kind == ScopeKind::issue && !issues.contains(e.scope.id))
            report("delegations.csv", i, "unknown issue '" + e.scope.id + "'");
    }

    if (!problems.empty()) {
        std::ostringstream msg;
        msg << problems.size() << " dataset integrity violation(s):";
        for (const auto& p : problems) msg << "\n  " << p;
        throw DataError(msg.str());
    }
}

} // namespace ldpower
