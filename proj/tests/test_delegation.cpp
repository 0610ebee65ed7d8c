#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldpower/delegation.hpp"
#include "ldpower/error.hpp"

#include <random>

using namespace ldpower;

namespace {

const Timestamp t0 = parse_timestamp("2012-01-01");

DelegationEdge global(VoterId from, VoterId to) { return {from, to, {ScopeKind::global, ""}, t0, {}}; }
DelegationEdge area(VoterId from, VoterId to, std::string id) {
    return {from, to, {ScopeKind::area, std::move(id)}, t0, {}};
}
DelegationEdge issue(VoterId from, VoterId to, std::string id) {
    return {from, to, {ScopeKind::issue, std::move(id)}, t0, {}};
}

const IssueRef issue_i{"I", "X"};

} // namespace

TEST_CASE("scope precedence") {
    const std::vector<DelegationEdge> both{global("A", "B"), area("A", "C", "X")};
    CHECK(active_edge(DelegationSnapshot(both), "A", issue_i) == "C");
    CHECK(active_edge(DelegationSnapshot(both), "A", IssueRef{"J", "Y"}) == "B");
    const std::vector<DelegationEdge> only{global("A", "B")};
    CHECK(active_edge(DelegationSnapshot(only), "A", issue_i) == "B");
    const std::vector<DelegationEdge> all{issue("A", "D", "I"), area("A", "C", "X"), global("A", "B")};
    CHECK(active_edge(DelegationSnapshot(all), "A", issue_i) == "D");
    CHECK(active_edge(DelegationSnapshot(all), "Z", issue_i) == std::nullopt);
}

TEST_CASE("chain through a non-voting intermediate") {
    const std::vector<DelegationEdge> edges{global("A", "B"), area("B", "C", "X")};
    const auto r = resolve_weights(DelegationSnapshot(edges), issue_i, {"C"}, {"A", "B", "C"});
    CHECK(r.weight.at("C") == 3);
    CHECK(r.unresolved.empty());
    CHECK(r.absorbed.at("C") == std::vector<VoterId>{"A", "B"});
}

TEST_CASE("cycles") {
    // A->B and B->A globally, nobody votes
    const std::vector<DelegationEdge> mutual{global("A", "B"), global("B", "A")};
    const auto none = resolve_weights(DelegationSnapshot(mutual), issue_i, {}, {"A", "B"});
    CHECK(none.weight.empty());
    CHECK(none.unresolved == std::set<VoterId>{"A", "B"});

    const auto b_votes = resolve_weights(DelegationSnapshot(mutual), issue_i, {"B"}, {"A", "B"});
    CHECK(b_votes.weight.at("B") == 2);
    CHECK(b_votes.unresolved.empty());

    // A cycle reached from outside leaves the entrant unresolved too.
    const std::vector<DelegationEdge> tail{global("A", "B"), global("B", "C"), global("C", "B")};
    const auto r = resolve_weights(DelegationSnapshot(tail), issue_i, {"D"}, {"A", "B", "C", "D"});
    CHECK(r.weight.at("D") == 1);
    CHECK(r.unresolved == std::set<VoterId>{"A", "B", "C"});
}

TEST_CASE("dead ends and direct voter keeps incoming weight") {
    const std::vector<DelegationEdge> edges{global("A", "B"), global("C", "D"), global("D", "E")};
    const auto r = resolve_weights(DelegationSnapshot(edges), issue_i, {"D"}, {"A", "B", "C", "D", "E"});
    CHECK(r.weight.at("D") == 2);
    CHECK(r.unresolved == std::set<VoterId>{"A", "B", "E"});
}

TEST_CASE("snapshot validation") {
    const std::vector<DelegationEdge> dup{global("A", "B"), global("A", "C")};
    CHECK_THROWS_AS(DelegationSnapshot{dup}, InvalidInput);
    const std::vector<DelegationEdge> ok{global("A", "B"), area("A", "C", "X"), area("A", "C", "Y")};
    CHECK_NOTHROW(DelegationSnapshot{ok});
    CHECK_THROWS_AS(validate(global("A", "A")), InvalidInput);
    CHECK_THROWS_AS(validate(DelegationEdge{"A", "B", {ScopeKind::area, ""}, t0, {}}), InvalidInput);
    CHECK_THROWS_AS(validate(DelegationEdge{"A", "B", {ScopeKind::global, ""}, t0, t0}), InvalidInput);
    CHECK(parse_scope_kind("area") == ScopeKind::area);
    CHECK(to_string(ScopeKind::issue) == "issue");
    CHECK_THROWS_AS(parse_scope_kind("galaxy"), InvalidInput);
}

TEST_CASE("validity intervals are half-open") {
    CHECK(delegation_graph_at({}, t0).empty());
    const Timestamp t10 = t0 + std::chrono::seconds(10), t20 = t0 + std::chrono::seconds(20);
    const std::vector<DelegationEdge> log{{"A", "B", {ScopeKind::global, ""}, t10, t20}};
    CHECK(delegation_graph_at(log, t0 + std::chrono::seconds(15)).edges().size() == 1);
    CHECK(delegation_graph_at(log, t10).edges().size() == 1);
    CHECK(delegation_graph_at(log, t20).empty());
    CHECK(delegation_graph_at(log, t0).empty());
}

TEST_CASE("no delegations leaves every direct voter at weight 1") {
    const auto r = resolve_weights(DelegationSnapshot{}, issue_i, {"A", "C"}, {"A", "B", "C", "D"});
    CHECK(r.weight.at("A") == 1);
    CHECK(r.weight.at("C") == 1);
    CHECK(r.unresolved == std::set<VoterId>{"B", "D"});
}

namespace {

// Follows each chain for at most n hops; independent of the library's walk.
std::pair<std::map<VoterId, std::int64_t>, std::set<VoterId>>
naive_resolve(const DelegationSnapshot& s, const std::set<VoterId>& direct, const std::set<VoterId>& eligible) {
    std::map<VoterId, std::int64_t> weight;
    std::set<VoterId> unresolved;
    for (const auto& v : direct) weight[v] = 1;
    for (const auto& v : eligible) {
        if (direct.count(v)) continue;
        VoterId at = v;
        bool done = false;
        for (std::size_t hop = 0; hop <= eligible.size(); ++hop) {
            const auto next = s.active_edge(at, issue_i);
            if (!next) break;
            at = *next;
            if (direct.count(at)) {
                ++weight[at];
                done = true;
                break;
            }
        }
        if (!done) unresolved.insert(v);
    }
    return {weight, unresolved};
}

} // namespace

TEST_CASE("conservation on random snapshots") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 30;
        std::vector<VoterId> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back("v" + std::to_string(i));
        std::vector<DelegationEdge> edges;
        for (std::size_t i = 0; i < n; ++i) {
            auto pick = [&] {
                std::size_t j;
                do j = rng() % n;
                while (j == i);
                return ids[j];
            };
            if (rng() % 2) edges.push_back(global(ids[i], pick()));
            if (rng() % 3 == 0) edges.push_back(area(ids[i], pick(), rng() % 2 ? "X" : "Y"));
            if (rng() % 5 == 0) edges.push_back(issue(ids[i], pick(), "I"));
        }
        std::set<VoterId> eligible(ids.begin(), ids.end()), direct;
        for (const auto& v : ids)
            if (rng() % 3 == 0) direct.insert(v);
        const DelegationSnapshot snap(edges);
        const auto r = resolve_weights(snap, issue_i, direct, eligible);
        std::int64_t sum = 0;
        for (const auto& [v, w] : r.weight) {
            CHECK(w >= 1);
            CHECK(direct.count(v) == 1);
            sum += w;
        }
        REQUIRE(sum + static_cast<std::int64_t>(r.unresolved.size()) == static_cast<std::int64_t>(n));
        CHECK(r.weight.size() == direct.size());
        const auto [weight, unresolved] = naive_resolve(snap, direct, eligible);
        CHECK(r.weight == weight);
        CHECK(r.unresolved == unresolved);

        // Shuffled edge order yields the same answer.
        auto shuffled = edges;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto again = resolve_weights(DelegationSnapshot(shuffled), issue_i, direct, eligible);
        CHECK(again.weight == r.weight);
        CHECK(again.unresolved == r.unresolved);
    }
}
