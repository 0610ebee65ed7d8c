#pragma once

#include "ldpower/dataset.hpp"
#include "ldpower/power_curve.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ldpower {

struct Vote {
    VoterId voter;
    bool yes = false;
    // 1 for the voter's own vote plus one per absorbed delegation.
    std::int64_t weight = 1;
    Timestamp ts{};
    std::vector<VoterId> delegators;
};

// Votes on one initiative with their resolved weights.
class BallotSet {
public:
    BallotSet(std::string initiative, std::string issue, Quorum quorum, std::vector<Vote> votes);

    const std::string& initiative() const noexcept { return initiative_; }
    const std::string& issue() const noexcept { return issue_; }
    const Quorum& quorum() const noexcept { return quorum_; }
    const std::vector<Vote>& votes() const noexcept { return votes_; }

    std::int64_t yes_weight() const noexcept { return yes_weight_; }
    std::int64_t no_weight() const noexcept { return no_weight_; }
    std::int64_t total_weight() const noexcept { return yes_weight_ + no_weight_; }
    // Unweighted direct votes.
    std::size_t yes_count() const noexcept { return yes_count_; }
    std::size_t no_count() const noexcept { return votes_.size() - yes_count_; }

    const Vote& vote_of(const VoterId& voter) const;

    std::optional<VoterId> author;
    std::string area;
    // Eligible voters whose delegation chain ended in a cycle or a non-voting sink.
    std::uint64_t unresolved = 0;

private:
    std::string initiative_;
    std::string issue_;
    Quorum quorum_;
    std::vector<Vote> votes_;
    std::unordered_map<VoterId, std::size_t> index_;
    std::int64_t yes_weight_ = 0;
    std::int64_t no_weight_ = 0;
    std::size_t yes_count_ = 0;
};

// Ballot sets of a whole dataset, sorted by initiative id.
struct ResolvedDataset {
    std::vector<BallotSet> ballot_sets;
    std::uint64_t unresolved = 0;

    const BallotSet* find(const std::string& initiative) const;
};

// Resolves delegations per initiative at the instant of its last ballot; every user is eligible.
ResolvedDataset resolve_dataset(const Dataset& dataset);

enum class Outcome { accepted, rejected };

// Accepted iff W^p / (W^p + W^n) > q.
Outcome outcome(const BallotSet& ballots);
Outcome outcome(std::int64_t yes_weight, std::int64_t no_weight, const Quorum& quorum);

// 1 iff w > q(W^p + W^n) - W^p + w v' > 0, evaluated exactly as written.
int potential_power(const BallotSet& ballots, const VoterId& voter);
int potential_power(std::int64_t yes_weight, std::int64_t no_weight, const Quorum& quorum,
                    std::int64_t weight, bool yes);

// 1 iff removing the voter's weighted vote changes the outcome. Removing the only voter
// leaves an empty vote, which counts as rejected.
int exercised_power(const BallotSet& ballots, const VoterId& voter);
int exercised_power(std::int64_t yes_weight, std::int64_t no_weight, const Quorum& quorum,
                    std::int64_t weight, bool yes);

struct HistoryEntry {
    std::string issue;
    std::string initiative;
    bool yes = false;
    std::int64_t weight = 1;
    Timestamp ts{};
    bool direct = true;
};

struct VoterHistory {
    VoterId voter;
    std::vector<HistoryEntry> entries; // chronological
};

enum class HistoryKind {
    direct,    // ballots the voter cast
    effective, // plus votes cast on the voter's behalf by a delegate
};

std::map<VoterId, VoterHistory> build_histories(const ResolvedDataset& data, HistoryKind kind);

double approval_rate(const VoterHistory& history);
double approval_rate(const BallotSet& ballots);

inline constexpr std::size_t default_min_votes = 10;

// Per-user rate for aggregates; nullopt when the user has fewer than min_votes votes.
std::optional<double> user_approval_rate(const VoterHistory& history,
                                         std::size_t min_votes = default_min_votes);

// Fraction of the voter's votes that match the unweighted majority of the other direct
// voters on the same initiative. A tied majority counts as disagreement. nullopt when no
// vote has another direct voter.
std::optional<double> agreement_rate(const VoterHistory& history, const ResolvedDataset& data);

// Single-vote agreement: nullopt when there are no other direct voters.
std::optional<bool> agrees_with_majority(const BallotSet& ballots, const VoterId& voter);

// Fraction of initiatives whose outcome is unchanged when every direct vote counts once.
double reversal_analysis(const ResolvedDataset& data);

struct CurveOptions {
    std::int64_t max_weight = 100;
    std::uint64_t min_support = 30;
    // Ignore votes an author casts on their own initiative.
    bool exclude_authors = false;
};

struct LearningRow {
    std::size_t k = 0;
    PowerCurve::Bucket direct;
    PowerCurve::Bucket effective;
};

struct ApprovalByWeightRow {
    std::int64_t weight = 0;
    PowerCurve::Bucket per_vote;
    // Mean over voters of each voter's approval rate at this weight.
    PowerCurve::Bucket per_voter;
    PowerCurve::Bucket agreement;
};

struct PowerCurves {
    PowerCurve potential;
    PowerCurve exercised;
    std::vector<LearningRow> learning;
    std::vector<ApprovalByWeightRow> approval_by_weight;
    // Σ γ^e / Σ γ^p over all votes; nullopt when no vote has potential power.
    std::optional<double> exercised_to_potential;
    std::uint64_t min_support = 30;
};

PowerCurves power_curves(const ResolvedDataset& data, const CurveOptions& options = {});

struct CorrelationResult {
    std::optional<double> rho;
    std::optional<double> p_value;
    std::size_t samples = 0;
};

// Spearman rank correlation (average ranks for ties); nullopt for a constant series.
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

// Two-sided permutation p-value: (1 + #{|rho_perm| >= |rho|}) / (1 + permutations).
CorrelationResult spearman_test(std::span<const double> x, std::span<const double> y,
                                std::size_t permutations, std::uint64_t seed);

// Correlation between each voter's mean potential and mean exercised power.
CorrelationResult power_correlation(const ResolvedDataset& data, std::size_t permutations = 10'000,
                                    std::uint64_t seed = 0);

} // namespace ldpower
